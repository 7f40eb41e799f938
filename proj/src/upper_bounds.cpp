#include "adeg/upper_bounds.hpp"

#include <algorithm>

#include "adeg/approx_lp.hpp"

namespace adeg {

int RationalApproximator::degree() const { return std::max(p.degree(), q.degree()); }

Rational RationalApproximator::weight() const { return std::max(adeg::weight(p), adeg::weight(q)); }

void certify(RationalApproximator& r) {
  if (r.p.arity() != r.f.arity() || r.q.arity() != r.f.arity())
    throw DimensionMismatch("rational approximator arity mismatch");
  const auto pv = r.p.values(), qv = r.q.values();
  r.error = 0;
  for (uint64_t x = 0; x < r.f.size(); ++x) {
    if (qv[x] <= 0) throw CertificateViolation("denominator is not positive on the cube");
    r.error = std::max(r.error, Rational(abs(r.f[x] - pv[x] / qv[x])));
  }
  if (r.error > r.claimed) throw CertificateViolation("rational approximation misses its error bound");
}

namespace {

MultilinearPoly constant(int n, const Rational& c) {
  MultilinearPoly p(n);
  p.set(0, c);
  return p;
}

// (ts - 1 + t L) / (ts + 1 + t L) for a sum L of s +-1 valued terms.
RationalApproximator and_of_terms(const TruthTable& f, const MultilinearPoly& sum, int s, int t) {
  RationalApproximator r;
  r.f = f;
  const int n = f.arity();
  const Rational ts = static_cast<long>(t) * s;
  r.p = constant(n, ts - 1) + sum.scaled(t);
  r.q = constant(n, ts + 1) + sum.scaled(t);
  r.claimed = frac(1, t);
  certify(r);
  return r;
}

void check_ptf(const PtfResult& r) {
  if (!sign_represents(r.ptf, r.F)) throw CertificateViolation("constructed PTF fails the sign check");
}

}  // namespace

RationalApproximator rational_and(int s, int t) {
  if (s < 1 || t < 1) throw PreconditionViolated("rational_and needs s, t >= 1");
  MultilinearPoly sum(s);
  for (int i = 0; i < s; ++i) sum.set(uint64_t{1} << i, 1);
  return and_of_terms(make_and(s), sum, s, t);
}

PtfResult or_of_rational_ptf(const RationalApproximator& r, int t) {
  if (t < 1) throw PreconditionViolated("t must be positive");
  if (r.error >= frac(1, t))
    throw PreconditionViolated("rational approximation error " + to_string(r.error) +
                               " is not below 1/t");
  const int m = r.f.arity();
  const int n = m * t;
  check_arity(n);
  std::vector<MultilinearPoly> ps, qs;
  for (int i = 0; i < t; ++i) {
    ps.push_back(embed(r.p, n, i * m));
    qs.push_back(embed(r.q, n, i * m));
  }
  // (1 - t) prod q_j + sum_i p_i prod_{j != i} q_j
  MultilinearPoly all = constant(n, 1);
  for (const auto& q : qs) all = all * q;
  MultilinearPoly P = all.scaled(1 - t);
  for (int i = 0; i < t; ++i) {
    MultilinearPoly term = ps[i];
    for (int j = 0; j < t; ++j)
      if (j != i) term = term * qs[j];
    P = P + term;
  }
  PtfResult out;
  out.F = compose(make_or(t), r.f, t);
  out.ptf = integer_multiple(P);
  out.degree = out.ptf.degree();
  out.weight = weight(out.ptf);
  const Rational w = r.weight();
  out.weight_bound = pow(w, t) * (m + t * w);
  check_ptf(out);
  return out;
}

MultilinearPoly ptf_to_approx(const MultilinearPoly& p, const TruthTable& f, const Rational& w) {
  if (p.arity() != f.arity()) throw DimensionMismatch("ptf_to_approx: arity mismatch");
  for (const auto& [S, c] : p.terms())
    if (!is_integer(c)) throw PreconditionViolated("PTF coefficients must be integers");
  if (!sign_represents(p, f)) throw PreconditionViolated("p does not sign-represent f");
  if (weight(p) != w) throw PreconditionViolated("stated weight differs from the PTF's weight");
  const MultilinearPoly q = p.scaled(1 / w);
  if (linf_error(q, f) > 1 - 1 / w) throw CertificateViolation("p/w misses the 1 - 1/w bound");
  return q;
}

PtfResult cheb_or_of_and_ptf(int m, int t, const Rational& eps) {
  if (t < 1) throw PreconditionViolated("t must be positive");
  check_arity(static_cast<long>(m) * t);
  if (eps >= frac(1, t)) throw PreconditionViolated("target error must be below 1/t");
  const auto ca = chebyshev_and_approx(m, eps);
  if (ca.error >= frac(1, t))
    throw PreconditionViolated("Chebyshev error " + to_string(ca.error) + " is not below 1/t");
  const int n = m * t;
  MultilinearPoly P = constant(n, 1 - t);
  for (int i = 0; i < t; ++i) P = P + embed(ca.poly, n, i * m);
  PtfResult out;
  out.F = compose(make_or(t), make_and(m), t);
  out.ptf = integer_multiple(P);
  out.degree = out.ptf.degree();
  out.weight = weight(out.ptf);
  out.weight_bound = t * weight(integer_multiple(ca.poly)) + t + 1;
  check_ptf(out);
  return out;
}

RationalApproximator rational_ed(int N, int R, int t) {
  if (t < 1) throw PreconditionViolated("t must be positive");
  const TruthTable ed = make_ed(N, R);
  const int b = ed.arity() / N;
  const int n = ed.arity();
  MultilinearPoly sum(n);
  int clauses = 0;
  for (int i = 0; i < N; ++i)
    for (int j = i + 1; j < N; ++j) {
      // OR_k of "bit k differs" (x_ik x_jk = -1): 2 prod_k (1 + x_ik x_jk)/2 - 1.
      MultilinearPoly same = constant(n, 1);
      for (int k = 0; k < b; ++k) {
        MultilinearPoly f(n);
        f.set(0, frac(1, 2));
        f.set((uint64_t{1} << (i * b + k)) | (uint64_t{1} << (j * b + k)), frac(1, 2));
        same = same * f;
      }
      sum = sum + same.scaled(2) - constant(n, 1);
      ++clauses;
    }
  return and_of_terms(ed, sum, clauses, t);
}

SharpThresholdRow sharp_threshold_row(int m, int t) {
  if (m < 1 || t < 1 || m * t > 8) throw PreconditionViolated("sharp-threshold rows need m * t <= 8");
  SharpThresholdRow row;
  row.m = m;
  row.t = t;
  const auto ptf = or_of_rational_ptf(rational_and(m, t), t);
  ptf_to_approx(ptf.ptf, ptf.F, ptf.weight);
  row.construction_degree = ptf.degree;
  row.construction_weight = ptf.weight;
  row.construction_error = 1 - 1 / ptf.weight;
  row.lp_degree = approx_degree(ptf.F, 1 - pow2(-t), false);
  const TruthTable f = make_and(m);
  for (int d = 0; d <= m; ++d)
    if (best_error(f, d, true).value > Rational(1, 2)) row.precondition_degree = d;
  row.consistent = row.lp_degree > row.precondition_degree;
  return row;
}

}  // namespace adeg
