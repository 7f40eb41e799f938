#include "adeg/witness.hpp"

#include <algorithm>

namespace adeg {

DualWitness::DualWitness(int n, std::vector<Rational> values) : n_(n), values_(std::move(values)) {
  check_arity(n);
  if (values_.size() != (size_t{1} << n)) throw DimensionMismatch("witness has wrong length");
}

Rational DualWitness::l1_norm() const {
  Rational s = 0;
  for (const auto& v : values_) s += abs(v);
  return s;
}

Rational DualWitness::sum() const {
  Rational s = 0;
  for (const auto& v : values_) s += v;
  return s;
}

Rational DualWitness::correlation(const TruthTable& f) const {
  if (f.arity() != n_) throw DimensionMismatch("witness/function arity mismatch");
  Rational s = 0;
  for (size_t x = 0; x < values_.size(); ++x) {
    if (f[x] > 0) s += values_[x];
    else s -= values_[x];
  }
  return s;
}

int DualWitness::pure_high_degree(int cap) const {
  cap = std::min(cap, n_);
  const auto sums = character_sums(values_);
  int lowest = n_ + 1;
  for (size_t S = 0; S < sums.size(); ++S)
    if (sums[S] != 0) lowest = std::min(lowest, __builtin_popcountll(S));
  return std::min(lowest - 1, cap);
}

bool DualWitness::one_sided_for(const TruthTable& f) const {
  if (f.arity() != n_) throw DimensionMismatch("witness/function arity mismatch");
  for (size_t x = 0; x < values_.size(); ++x)
    if (f.is_true(x) && values_[x] > 0) return false;
  return true;
}

DualWitness DualWitness::normalized() const {
  const Rational l1 = l1_norm();
  if (l1 == 0) return *this;
  auto v = values_;
  for (auto& e : v) e /= l1;
  return DualWitness(n_, std::move(v));
}

DualWitness from_dual_lp(const lp::LPSolution& sol, DualKind kind, const TruthTable& f, int d) {
  if (sol.status != lp::Status::Optimal)
    throw PreconditionViolated("from_dual_lp needs an optimal solution");
  const bool one_sided = kind == DualKind::OneSided;
  const DualLayout L = dual_layout(f, one_sided);
  if (sol.primal.size() != L.columns)
    throw DimensionMismatch("solution does not match the dual layout of this function");
  std::vector<Rational> phi(f.size());
  for (size_t x = 0; x < phi.size(); ++x) {
    if (L.pos[x] >= 0) phi[x] = sol.primal[L.pos[x]];
    phi[x] -= sol.primal[L.neg[x]];
  }
  DualWitness psi(f.arity(), std::move(phi));
  if (psi.pure_high_degree(d) < d)
    throw CertificateViolation("dual solution is not orthogonal to all degree-" +
                               std::to_string(d) + " characters");
  if (one_sided && !psi.one_sided_for(f))
    throw CertificateViolation("one-sided dual solution is positive on a TRUE input");
  if (psi.l1_norm() > 1) throw CertificateViolation("dual solution exceeds unit L1 mass");
  if (psi.correlation(f) != sol.objective_value)
    throw CertificateViolation("dual correlation differs from the LP objective");
  return psi.normalized();
}

WitnessReport verify(const DualWitness& psi, const TruthTable& f, int d, const Rational& eps,
                     bool one_sided) {
  if (psi.arity() != f.arity()) throw DimensionMismatch("witness/function arity mismatch");
  WitnessReport r;
  r.correlation = psi.correlation(f);
  r.l1 = psi.l1_norm();
  r.phd = psi.pure_high_degree();
  r.correlation_ok = r.correlation > eps;
  r.l1_ok = r.l1 == 1;
  r.phd_ok = r.phd >= d;
  r.one_sided_ok = psi.one_sided_for(f);
  r.one_sided_required = one_sided;
  for (size_t x = 0; x < psi.size(); ++x) {
    if (psi[x] > 0 && f.is_true(x)) r.wrong_side_mass_pos += psi[x];
    if (psi[x] < 0 && !f.is_true(x)) r.wrong_side_mass_neg -= psi[x];
  }
  return r;
}

}  // namespace adeg
