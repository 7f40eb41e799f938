#include "adeg/approx_lp.hpp"

#include <cstdlib>

namespace adeg {

using lp::Direction;
using lp::LinearProgram;
using lp::Sense;
using lp::Status;
using lp::VarBound;

size_t node_budget_from_env() {
  if (const char* env = std::getenv("ADEG_NODE_BUDGET")) {
    const long v = std::atol(env);
    if (v > 0) return static_cast<size_t>(v);
  }
  return 200000;
}

DualLayout dual_layout(const TruthTable& f, bool one_sided) {
  DualLayout L;
  L.pos.assign(f.size(), -1);
  L.neg.assign(f.size(), -1);
  long col = 0;
  for (uint64_t x = 0; x < f.size(); ++x) {
    if (!(one_sided && f.is_true(x))) L.pos[x] = col++;
    L.neg[x] = col++;
  }
  L.columns = static_cast<size_t>(col);
  return L;
}

namespace {

void check_degree(const TruthTable& f, int d) {
  if (d < 0 || d > f.arity())
    throw PreconditionViolated("degree " + std::to_string(d) + " outside [0, " +
                               std::to_string(f.arity()) + "]");
}

// Row of sum_x phi(x) chi_S(x) over the dual layout.
std::vector<Rational> character_row(const TruthTable& f, const DualLayout& L, uint64_t S) {
  std::vector<Rational> row(L.columns);
  for (uint64_t x = 0; x < f.size(); ++x) {
    const int c = chi(S, x);
    if (L.pos[x] >= 0) row[L.pos[x]] = c;
    row[L.neg[x]] = -c;
  }
  return row;
}

std::vector<Rational> phi_from(const DualLayout& L, const std::vector<Rational>& cols) {
  std::vector<Rational> phi(L.pos.size());
  for (size_t x = 0; x < phi.size(); ++x) {
    if (L.pos[x] >= 0) phi[x] = cols[L.pos[x]];
    phi[x] -= cols[L.neg[x]];
  }
  return phi;
}

// Max error on f^{-1}(1) and max violation of p <= -1 + eps on f^{-1}(-1).
bool approximates(const std::vector<Rational>& pv, const TruthTable& f, const Rational& eps,
                  bool one_sided) {
  for (size_t x = 0; x < pv.size(); ++x) {
    if (one_sided && f.is_true(x)) {
      if (pv[x] > -1 + eps) return false;
    } else if (abs(pv[x] - f[x]) > eps) {
      return false;
    }
  }
  return true;
}

lp::SolverOptions solver_options(const MeasureOptions& o) { return {o.rule}; }

}  // namespace

MeasureResult best_error(const TruthTable& f, int d, bool one_sided, const MeasureOptions& opts) {
  check_degree(f, d);
  const auto subsets = subsets_up_to(f.arity(), d);
  const DualLayout L = dual_layout(f, one_sided);

  LinearProgram prog;
  prog.direction = Direction::Maximize;
  prog.objective.resize(L.columns);
  prog.bounds.assign(L.columns, VarBound::NonNegative);
  for (uint64_t x = 0; x < f.size(); ++x) {
    if (L.pos[x] >= 0) prog.objective[L.pos[x]] = f[x];
    prog.objective[L.neg[x]] = -f[x];
  }
  for (uint64_t S : subsets) prog.add_row(character_row(f, L, S), Sense::Equal, 0);
  prog.add_row(std::vector<Rational>(L.columns, Rational(1)), Sense::LessEqual, 1);

  MeasureResult r;
  r.kind = one_sided ? MeasureKind::OdegEps : MeasureKind::AdegEps;
  r.degree = d;
  r.solution = lp::solve_lp(prog, solver_options(opts));
  if (r.solution.status != Status::Optimal)
    throw CertificateViolation("approximation-error LP is always feasible and bounded");
  r.value = r.solution.objective_value;
  r.primal = MultilinearPoly(f.arity());
  for (size_t k = 0; k < subsets.size(); ++k) r.primal.set(subsets[k], r.solution.dual[k]);
  if (r.solution.dual.back() != r.value)
    throw CertificateViolation("error multiplier differs from the LP optimum");
  r.dual_raw = phi_from(L, r.solution.primal);
  if (!approximates(r.primal.values(), f, r.value, one_sided))
    throw CertificateViolation("extracted polynomial does not achieve the optimal error");
  return r;
}

MeasureResult approx_weight(const TruthTable& f, int d, const Rational& eps,
                            bool one_sided_nonconstant, const MeasureOptions& opts) {
  check_degree(f, d);
  if (eps < 0 || eps > 2) throw PreconditionViolated("eps must lie in [0, 2]");
  const bool one_sided = one_sided_nonconstant;
  const auto subsets = subsets_up_to(f.arity(), d);
  const DualLayout L = dual_layout(f, one_sided);

  LinearProgram prog;
  prog.direction = Direction::Maximize;
  prog.objective.resize(L.columns);
  prog.bounds.assign(L.columns, VarBound::NonNegative);
  for (uint64_t x = 0; x < f.size(); ++x) {
    if (L.pos[x] >= 0) prog.objective[L.pos[x]] = f[x] - eps;
    prog.objective[L.neg[x]] = -f[x] - eps;
  }
  // Per subset: the row index pair (<= 1, >= -1), or a single equality for the
  // constant term in the non-constant variant.
  struct RowPair {
    long le = -1, ge = -1, eq = -1;
  };
  std::vector<RowPair> rows(subsets.size());
  for (size_t k = 0; k < subsets.size(); ++k) {
    auto row = character_row(f, L, subsets[k]);
    if (one_sided_nonconstant && subsets[k] == 0) {
      rows[k].eq = static_cast<long>(prog.add_row(std::move(row), Sense::Equal, 0));
      continue;
    }
    rows[k].le = static_cast<long>(prog.add_row(row, Sense::LessEqual, 1));
    rows[k].ge = static_cast<long>(prog.add_row(std::move(row), Sense::GreaterEqual, -1));
  }

  MeasureResult r;
  r.kind = one_sided_nonconstant ? MeasureKind::OwWeight : MeasureKind::Weight;
  r.degree = d;
  r.solution = lp::solve_lp(prog, solver_options(opts));
  if (r.solution.status == Status::Unbounded) {
    r.value_kind = ValueKind::Infinite;
    return r;
  }
  if (r.solution.status != Status::Optimal)
    throw CertificateViolation("weight LP is feasible at phi = 0");
  r.value = r.solution.objective_value;
  r.primal = MultilinearPoly(f.arity());
  for (size_t k = 0; k < subsets.size(); ++k) {
    const auto& y = r.solution.dual;
    r.primal.set(subsets[k], rows[k].eq >= 0 ? y[rows[k].eq] : y[rows[k].le] + y[rows[k].ge]);
  }
  r.dual_raw = phi_from(L, r.solution.primal);
  if (!approximates(r.primal.values(), f, eps, one_sided))
    throw CertificateViolation("extracted polynomial is not an eps-approximation");
  if (weight(r.primal, !one_sided_nonconstant) != r.value)
    throw CertificateViolation("extracted polynomial weight differs from the LP optimum");
  return r;
}

namespace {

// Rows f(x) p(x) >= 1. With `absolute`, columns are (c_S free, t_S >= 0) with
// t_S >= |c_S| and objective sum t_S; otherwise c_S alone and a zero objective.
LinearProgram margin_program(const TruthTable& f, const std::vector<uint64_t>& subsets,
                             bool absolute) {
  const size_t K = subsets.size();
  LinearProgram prog;
  prog.direction = Direction::Minimize;
  prog.objective.assign(K, 0);
  prog.bounds.assign(K, VarBound::Free);
  if (absolute) {
    prog.objective.resize(2 * K, 1);
    prog.bounds.resize(2 * K, VarBound::NonNegative);
  }
  for (uint64_t x = 0; x < f.size(); ++x) {
    std::vector<Rational> row(prog.objective.size());
    for (size_t k = 0; k < K; ++k) row[k] = f[x] * chi(subsets[k], x);
    prog.add_row(std::move(row), Sense::GreaterEqual, 1);
  }
  if (absolute)
    for (size_t k = 0; k < K; ++k)
      for (int sign : {1, -1}) {
        std::vector<Rational> row(2 * K);
        row[K + k] = 1;
        row[k] = sign;
        prog.add_row(std::move(row), Sense::GreaterEqual, 0);
      }
  return prog;
}

MultilinearPoly poly_from_columns(int n, const std::vector<uint64_t>& subsets,
                                  const std::vector<Rational>& x) {
  MultilinearPoly p(n);
  for (size_t k = 0; k < subsets.size(); ++k) p.set(subsets[k], x[k]);
  return p;
}

}  // namespace

bool has_threshold_degree_at_most(const TruthTable& f, int d) {
  check_degree(f, d);
  const auto subsets = subsets_up_to(f.arity(), d);
  return lp::solve_lp(margin_program(f, subsets, false)).status == Status::Optimal;
}

MeasureResult threshold_weight(const TruthTable& f, int d, const MeasureOptions& opts) {
  check_degree(f, d);
  if (f.arity() > 5) throw PreconditionViolated("threshold_weight is limited to n <= 5");
  const auto subsets = subsets_up_to(f.arity(), d);
  MeasureResult r;
  r.kind = MeasureKind::ThreshWeightIp;
  r.degree = d;
  if (!has_threshold_degree_at_most(f, d)) {
    r.value_kind = ValueKind::Infinite;
    return r;
  }
  const LinearProgram prog = margin_program(f, subsets, true);
  std::vector<size_t> ints(subsets.size());
  for (size_t j = 0; j < ints.size(); ++j) ints[j] = j;
  lp::IpOptions ipo;
  ipo.lp = solver_options(opts);
  ipo.node_budget = opts.node_budget ? opts.node_budget : node_budget_from_env();
  ipo.integral_objective = true;
  // Scaling the relaxation optimum by its common denominator keeps every
  // margin >= 1, so it seeds the search with a feasible integer point.
  auto relax = lp::solve_lp(prog, ipo.lp);
  Integer den = 1;
  for (const auto& v : relax.primal) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), v.get_den_mpz_t());
  for (auto& v : relax.primal) v *= den;
  ipo.initial_incumbent = relax.primal;
  try {
    r.solution = lp::solve_ip(prog, ints, ipo);
  } catch (const lp::NodeBudgetExceeded& e) {
    r.value_kind = ValueKind::Bracket;
    r.lower = Rational(ceil(e.relaxation_bound()));
    r.solution = *e.incumbent();
    r.upper = r.solution.objective_value;
    r.value = r.upper;
    r.primal = poly_from_columns(f.arity(), subsets, r.solution.primal);
    return r;
  }
  if (r.solution.status != Status::Optimal)
    throw CertificateViolation("threshold IP infeasible although the margin LP is feasible");
  r.value = r.solution.objective_value;
  r.primal = poly_from_columns(f.arity(), subsets, r.solution.primal);
  if (!sign_represents(r.primal, f) || weight(r.primal) != r.value)
    throw CertificateViolation("threshold IP solution is not a sign representation of its weight");
  return r;
}

HardestDistribution hardest_distribution(const TruthTable& f, int d,
                                         std::optional<Rational> threshold_weight,
                                         const MeasureOptions& opts) {
  check_degree(f, d);
  if (f.arity() > 12) throw PreconditionViolated("hardest_distribution is limited to n <= 12");
  const auto subsets = subsets_up_to(f.arity(), d);
  const size_t N = f.size();
  LinearProgram prog;
  prog.direction = Direction::Minimize;
  prog.objective.assign(N + 1, 0);
  prog.objective[N] = 1;
  prog.bounds.assign(N + 1, VarBound::NonNegative);
  for (uint64_t S : subsets) {
    std::vector<Rational> row(N + 1);
    for (uint64_t x = 0; x < N; ++x) row[x] = f[x] * chi(S, x);
    row[N] = 1;
    prog.add_row(row, Sense::GreaterEqual, 0);
    for (uint64_t x = 0; x < N; ++x) row[x] = -row[x];
    prog.add_row(std::move(row), Sense::GreaterEqual, 0);
  }
  std::vector<Rational> total(N + 1, Rational(1));
  total[N] = 0;
  prog.add_row(std::move(total), Sense::Equal, 1);

  auto sol = lp::solve_lp(prog, solver_options(opts));
  if (sol.status != Status::Optimal) throw CertificateViolation("minimax LP must be optimal");
  HardestDistribution out;
  out.mu.assign(sol.primal.begin(), sol.primal.begin() + static_cast<long>(N));
  out.value = sol.objective_value;
  if (threshold_weight) {
    out.weight = threshold_weight;
    out.satisfies_weight_bound = *threshold_weight > 0 && out.value * *threshold_weight >= 1;
  }
  return out;
}

int approx_degree(const TruthTable& f, const Rational& eps, bool one_sided,
                  const MeasureOptions& opts) {
  for (int d = 0; d <= f.arity(); ++d)
    if (best_error(f, d, one_sided, opts).value <= eps) return d;
  return f.arity() + 1;
}

}  // namespace adeg
