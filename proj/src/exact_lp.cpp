#include "adeg/exact_lp.hpp"

#include <algorithm>
#include <limits>
#include <string>
#include <utility>

namespace adeg::lp {

size_t LinearProgram::add_row(std::vector<Rational> coeffs, Sense sense, Rational rhs_value) {
  rows.push_back(std::move(coeffs));
  senses.push_back(sense);
  rhs.push_back(std::move(rhs_value));
  return rows.size() - 1;
}

void LinearProgram::validate() const {
  const size_t n = objective.size();
  if (bounds.size() != n)
    throw DimensionMismatch("bounds has " + std::to_string(bounds.size()) + " entries, expected " +
                            std::to_string(n));
  if (senses.size() != rows.size() || rhs.size() != rows.size())
    throw DimensionMismatch("senses/rhs length differs from number of rows");
  for (size_t i = 0; i < rows.size(); ++i)
    if (rows[i].size() != n)
      throw DimensionMismatch("row " + std::to_string(i) + " has width " +
                              std::to_string(rows[i].size()) + ", expected " + std::to_string(n));
  for (size_t j = 0; j < n; ++j) {
    if (bounds[j] == VarBound::NonNegative) continue;
    bool touched = false;
    for (const auto& row : rows)
      if (row[j] != 0) {
        touched = true;
        break;
      }
    if (!touched)
      throw DimensionMismatch("free variable " + std::to_string(j) + " appears in no constraint");
  }
}

namespace {

constexpr size_t kNone = std::numeric_limits<size_t>::max();
constexpr size_t kDegenerateRunBeforeBland = 64;

enum class ColumnKind { Positive, Negative, Slack, Artificial };

class Tableau {
 public:
  Tableau(size_t rows, size_t cols) : m_(rows), n_(cols), a_(rows * (cols + 1)), d_(cols + 1) {}

  Rational& at(size_t i, size_t j) { return a_[i * (n_ + 1) + j]; }
  const Rational& at(size_t i, size_t j) const { return a_[i * (n_ + 1) + j]; }
  Rational& rhs(size_t i) { return at(i, n_); }
  const Rational& rhs(size_t i) const { return at(i, n_); }
  size_t rows() const { return m_; }
  size_t cols() const { return n_; }

  std::vector<Rational>& reduced() { return d_; }
  std::vector<size_t>& basis() { return basis_; }
  const std::vector<size_t>& basis() const { return basis_; }

  void pivot(size_t r, size_t c) {
    const size_t stride = n_ + 1;
    Rational* prow = &a_[r * stride];
    const Rational inv = 1 / prow[c];
    nz_.clear();
    for (size_t k = 0; k < stride; ++k) {
      if (prow[k] != 0) {
        prow[k] *= inv;
        nz_.push_back(k);
      }
    }
    Rational f;
    for (size_t i = 0; i < m_; ++i) {
      if (i == r) continue;
      Rational* row = &a_[i * stride];
      if (row[c] == 0) continue;
      f = row[c];
      for (size_t k : nz_) {
        tmp_ = f * prow[k];
        row[k] -= tmp_;
      }
    }
    if (d_[c] != 0) {
      f = d_[c];
      for (size_t k : nz_) {
        tmp_ = f * prow[k];
        d_[k] -= tmp_;
      }
    }
    basis_[r] = c;
  }

  void reset_costs(const std::vector<Rational>& cost) {
    for (size_t j = 0; j <= n_; ++j) d_[j] = j < n_ ? Rational(-cost[j]) : Rational(0);
    for (size_t i = 0; i < m_; ++i) {
      const Rational& cb = cost[basis_[i]];
      if (cb == 0) continue;
      for (size_t j = 0; j <= n_; ++j)
        if (at(i, j) != 0) d_[j] += cb * at(i, j);
    }
  }

 private:
  size_t m_, n_;
  std::vector<Rational> a_;
  std::vector<Rational> d_;
  std::vector<size_t> basis_;
  std::vector<size_t> nz_;
  Rational tmp_;
};

enum class PhaseResult { Optimal, Unbounded };

// Maximizes the objective encoded in the reduced-cost row.
PhaseResult run_phase(Tableau& t, const std::vector<char>& allowed, PivotRule rule,
                      size_t& pivots) {
  auto& d = t.reduced();
  size_t degenerate_run = 0;
  for (;;) {
    const bool bland = rule == PivotRule::Bland || degenerate_run >= kDegenerateRunBeforeBland;
    size_t enter = kNone;
    for (size_t j = 0; j < t.cols(); ++j) {
      if (!allowed[j] || d[j] >= 0) continue;
      if (enter == kNone) {
        enter = j;
        if (bland) break;
      } else if (d[j] < d[enter]) {
        enter = j;
      }
    }
    if (enter == kNone) return PhaseResult::Optimal;

    size_t leave = kNone;
    for (size_t i = 0; i < t.rows(); ++i) {
      const Rational& coef = t.at(i, enter);
      if (coef <= 0) continue;
      if (leave == kNone) {
        leave = i;
        continue;
      }
      // Compare rhs_i / coef_i against rhs_l / coef_l without dividing.
      const Rational lhs = t.rhs(i) * t.at(leave, enter);
      const Rational rhs = t.rhs(leave) * coef;
      if (lhs < rhs || (lhs == rhs && t.basis()[i] < t.basis()[leave])) leave = i;
    }
    if (leave == kNone) return PhaseResult::Unbounded;

    degenerate_run = t.rhs(leave) == 0 ? degenerate_run + 1 : 0;
    t.pivot(leave, enter);
    ++pivots;
  }
}

}  // namespace

LPSolution solve_lp(const LinearProgram& lp, const SolverOptions& options) {
  lp.validate();
  const size_t nv = lp.num_vars();
  const size_t m = lp.num_rows();

  // Column layout: split free variables, then slacks, then artificials.
  std::vector<size_t> pos_col(nv), neg_col(nv, kNone);
  std::vector<ColumnKind> kinds;
  for (size_t j = 0; j < nv; ++j) {
    pos_col[j] = kinds.size();
    kinds.push_back(ColumnKind::Positive);
    if (lp.bounds[j] == VarBound::Free) {
      neg_col[j] = kinds.size();
      kinds.push_back(ColumnKind::Negative);
    }
  }
  std::vector<int> row_sign(m, 1);
  std::vector<size_t> slack_col(m, kNone);
  for (size_t i = 0; i < m; ++i) {
    if (lp.senses[i] == Sense::Equal) {
      if (lp.rhs[i] < 0) row_sign[i] = -1;
      continue;
    }
    const int slack_coef = lp.senses[i] == Sense::LessEqual ? 1 : -1;
    // Flip so the rhs is nonnegative, preferring a +1 slack when rhs == 0.
    if (lp.rhs[i] < 0 || (lp.rhs[i] == 0 && slack_coef < 0)) row_sign[i] = -1;
    slack_col[i] = kinds.size();
    kinds.push_back(ColumnKind::Slack);
  }
  std::vector<size_t> init_col(m, kNone);
  for (size_t i = 0; i < m; ++i) {
    if (slack_col[i] != kNone) {
      const int slack_coef = (lp.senses[i] == Sense::LessEqual ? 1 : -1) * row_sign[i];
      if (slack_coef == 1) {
        init_col[i] = slack_col[i];
        continue;
      }
    }
    init_col[i] = kinds.size();
    kinds.push_back(ColumnKind::Artificial);
  }

  const size_t ncols = kinds.size();
  Tableau t(m, ncols);
  t.basis().assign(m, kNone);
  for (size_t i = 0; i < m; ++i) {
    const Rational sign(row_sign[i]);
    for (size_t j = 0; j < nv; ++j) {
      const Rational& v = lp.rows[i][j];
      if (v == 0) continue;
      t.at(i, pos_col[j]) = sign * v;
      if (neg_col[j] != kNone) t.at(i, neg_col[j]) = -sign * v;
    }
    if (slack_col[i] != kNone)
      t.at(i, slack_col[i]) = Rational((lp.senses[i] == Sense::LessEqual ? 1 : -1) * row_sign[i]);
    if (kinds[init_col[i]] == ColumnKind::Artificial) t.at(i, init_col[i]) = 1;
    t.rhs(i) = sign * lp.rhs[i];
    t.basis()[i] = init_col[i];
  }

  LPSolution sol;
  std::vector<char> allowed(ncols, 1);

  // Phase 1: maximize -(sum of artificials).
  bool has_artificial = false;
  std::vector<Rational> cost1(ncols);
  for (size_t j = 0; j < ncols; ++j)
    if (kinds[j] == ColumnKind::Artificial) {
      cost1[j] = -1;
      has_artificial = true;
    }
  if (has_artificial) {
    t.reset_costs(cost1);
    run_phase(t, allowed, options.rule, sol.pivots);
    if (t.reduced()[ncols] != 0) {
      sol.status = Status::Infeasible;
      return sol;
    }
    for (size_t j = 0; j < ncols; ++j)
      if (kinds[j] == ColumnKind::Artificial) allowed[j] = 0;
    // Drive zero-level artificials out of the basis where possible.
    for (size_t i = 0; i < m; ++i) {
      if (kinds[t.basis()[i]] != ColumnKind::Artificial) continue;
      for (size_t j = 0; j < ncols; ++j) {
        if (kinds[j] == ColumnKind::Artificial || t.at(i, j) == 0) continue;
        t.pivot(i, j);
        ++sol.pivots;
        break;
      }
    }
  }

  // Phase 2.
  const bool minimize = lp.direction == Direction::Minimize;
  std::vector<Rational> cost2(ncols);
  for (size_t j = 0; j < nv; ++j) {
    const Rational c = minimize ? Rational(-lp.objective[j]) : lp.objective[j];
    cost2[pos_col[j]] = c;
    if (neg_col[j] != kNone) cost2[neg_col[j]] = -c;
  }
  t.reset_costs(cost2);
  if (run_phase(t, allowed, options.rule, sol.pivots) == PhaseResult::Unbounded) {
    sol.status = Status::Unbounded;
    return sol;
  }

  std::vector<Rational> colval(ncols);
  for (size_t i = 0; i < m; ++i) colval[t.basis()[i]] = t.rhs(i);
  sol.primal.resize(nv);
  for (size_t j = 0; j < nv; ++j) {
    sol.primal[j] = colval[pos_col[j]];
    if (neg_col[j] != kNone) sol.primal[j] -= colval[neg_col[j]];
  }
  sol.dual.resize(m);
  for (size_t i = 0; i < m; ++i) {
    Rational y = t.reduced()[init_col[i]] * row_sign[i];
    sol.dual[i] = minimize ? Rational(-y) : y;
  }
  sol.objective_value = 0;
  for (size_t j = 0; j < nv; ++j) sol.objective_value += lp.objective[j] * sol.primal[j];
  sol.status = Status::Optimal;

  if (dual_objective(lp, sol.dual) != sol.objective_value)
    throw CertificateViolation("simplex: primal and dual objectives differ at optimum");
  return sol;
}

bool primal_feasible(const LinearProgram& lp, const std::vector<Rational>& x) {
  if (x.size() != lp.num_vars()) return false;
  for (size_t j = 0; j < x.size(); ++j)
    if (lp.bounds[j] == VarBound::NonNegative && x[j] < 0) return false;
  for (size_t i = 0; i < lp.num_rows(); ++i) {
    Rational s = 0;
    for (size_t j = 0; j < x.size(); ++j)
      if (lp.rows[i][j] != 0) s += lp.rows[i][j] * x[j];
    switch (lp.senses[i]) {
      case Sense::LessEqual:
        if (s > lp.rhs[i]) return false;
        break;
      case Sense::GreaterEqual:
        if (s < lp.rhs[i]) return false;
        break;
      case Sense::Equal:
        if (s != lp.rhs[i]) return false;
        break;
    }
  }
  return true;
}

bool dual_feasible(const LinearProgram& lp, const std::vector<Rational>& y) {
  if (y.size() != lp.num_rows()) return false;
  const bool minimize = lp.direction == Direction::Minimize;
  for (size_t i = 0; i < y.size(); ++i) {
    const Sense s = lp.senses[i];
    if (s == Sense::Equal) continue;
    // Nonnegative multiplier exactly when the row "pushes" the objective.
    const bool want_nonneg = minimize ? s == Sense::GreaterEqual : s == Sense::LessEqual;
    if (want_nonneg ? y[i] < 0 : y[i] > 0) return false;
  }
  for (size_t j = 0; j < lp.num_vars(); ++j) {
    Rational s = 0;
    for (size_t i = 0; i < y.size(); ++i)
      if (lp.rows[i][j] != 0) s += lp.rows[i][j] * y[i];
    if (lp.bounds[j] == VarBound::Free) {
      if (s != lp.objective[j]) return false;
    } else if (minimize ? s > lp.objective[j] : s < lp.objective[j]) {
      return false;
    }
  }
  return true;
}

Rational dual_objective(const LinearProgram& lp, const std::vector<Rational>& y) {
  Rational s = 0;
  for (size_t i = 0; i < y.size(); ++i) s += lp.rhs[i] * y[i];
  return s;
}

NodeBudgetExceeded::NodeBudgetExceeded(std::optional<LPSolution> incumbent,
                                       Rational relaxation_bound)
    : Error("branch-and-bound node budget exceeded"),
      incumbent_(std::move(incumbent)),
      relaxation_bound_(std::move(relaxation_bound)) {}

namespace {

struct BoundRow {
  size_t var;
  Sense sense;
  Integer value;
};

}  // namespace

LPSolution solve_ip(const LinearProgram& lp, const std::vector<size_t>& integer_vars,
                    const IpOptions& options) {
  lp.validate();
  for (size_t v : integer_vars)
    if (v >= lp.num_vars()) throw DimensionMismatch("integer variable index out of range");
  std::vector<size_t> ints = integer_vars;
  std::sort(ints.begin(), ints.end());
  ints.erase(std::unique(ints.begin(), ints.end()), ints.end());

  const bool minimize = lp.direction == Direction::Minimize;
  auto better = [&](const Rational& a, const Rational& b) { return minimize ? a < b : a > b; };

  std::optional<LPSolution> incumbent;
  if (options.initial_incumbent) {
    const auto& x = *options.initial_incumbent;
    if (x.size() != lp.num_vars() || !primal_feasible(lp, x))
      throw PreconditionViolated("initial incumbent is not feasible");
    for (size_t v : ints)
      if (!is_integer(x[v])) throw PreconditionViolated("initial incumbent is not integral");
    LPSolution s;
    s.status = Status::Optimal;
    s.primal = x;
    for (size_t j = 0; j < x.size(); ++j) s.objective_value += lp.objective[j] * x[j];
    incumbent = std::move(s);
  }
  std::optional<Rational> root_bound;
  size_t nodes = 0;
  std::vector<std::vector<BoundRow>> stack{{}};

  while (!stack.empty()) {
    std::vector<BoundRow> bounds = std::move(stack.back());
    stack.pop_back();
    if (nodes >= options.node_budget)
      throw NodeBudgetExceeded(incumbent, root_bound.value_or(Rational(0)));
    ++nodes;

    LinearProgram node = lp;
    for (const auto& b : bounds) {
      std::vector<Rational> row(lp.num_vars());
      row[b.var] = 1;
      node.add_row(std::move(row), b.sense, Rational(b.value));
    }
    LPSolution relax = solve_lp(node, options.lp);
    if (relax.status == Status::Unbounded) {
      if (bounds.empty()) return relax;
      throw PreconditionViolated("branch-and-bound: unbounded relaxation below the root");
    }
    if (relax.status == Status::Infeasible) continue;
    if (!root_bound) root_bound = relax.objective_value;
    if (incumbent) {
      Rational bound = relax.objective_value;
      if (options.integral_objective) bound = Rational(minimize ? ceil(bound) : floor(bound));
      if (!better(bound, incumbent->objective_value)) continue;
    }

    size_t frac = kNone;
    for (size_t v : ints)
      if (!is_integer(relax.primal[v])) {
        frac = v;
        break;
      }
    if (frac == kNone) {
      relax.dual.resize(lp.num_rows());
      incumbent = std::move(relax);
      continue;
    }
    // Push ceil branch first so the floor branch is explored first.
    auto up = bounds;
    up.push_back({frac, Sense::GreaterEqual, ceil(relax.primal[frac])});
    auto down = std::move(bounds);
    down.push_back({frac, Sense::LessEqual, floor(relax.primal[frac])});
    stack.push_back(std::move(up));
    stack.push_back(std::move(down));
  }

  if (!incumbent) {
    LPSolution none;
    none.status = Status::Infeasible;
    return none;
  }
  return *incumbent;
}

}  // namespace adeg::lp
