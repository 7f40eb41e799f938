#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "adeg/rational.hpp"

namespace adeg::lp {

enum class Sense { LessEqual, Equal, GreaterEqual };
enum class VarBound { Free, NonNegative };
enum class Direction { Minimize, Maximize };

/// Dense LP:  opt  objective . x   s.t.  rows[i] . x  (senses[i])  rhs[i].
struct LinearProgram {
  Direction direction = Direction::Minimize;
  std::vector<Rational> objective;
  std::vector<std::vector<Rational>> rows;
  std::vector<Sense> senses;
  std::vector<Rational> rhs;
  std::vector<VarBound> bounds;

  size_t num_vars() const { return objective.size(); }
  size_t num_rows() const { return rows.size(); }

  /// Appends a constraint row; returns its index.
  size_t add_row(std::vector<Rational> coeffs, Sense sense, Rational rhs_value);

  /// Throws DimensionMismatch when widths disagree or a variable is
  /// neither bounded nor touched by any constraint.
  void validate() const;
};

enum class Status { Optimal, Infeasible, Unbounded };

/// Dual sign convention (the standard one):
///   minimize: y_i >= 0 on >= rows, y_i <= 0 on <= rows, free on = rows,
///             A^T y <= c on nonnegative columns, = c on free columns.
///   maximize: y_i >= 0 on <= rows, y_i <= 0 on >= rows, free on = rows,
///             A^T y >= c on nonnegative columns, = c on free columns.
/// When optimal, rhs . y equals objective . primal exactly.
struct LPSolution {
  Status status = Status::Infeasible;
  std::vector<Rational> primal;
  std::vector<Rational> dual;
  Rational objective_value;
  size_t pivots = 0;
};

enum class PivotRule {
  Bland,
  /// Dantzig's most-negative reduced cost; switches to Bland's rule after a
  /// run of degenerate pivots so termination is still guaranteed.
  LargestCoefficient,
};

struct SolverOptions {
  PivotRule rule = PivotRule::Bland;
};

/// Two-phase dense tableau simplex over exact rationals.
LPSolution solve_lp(const LinearProgram& lp, const SolverOptions& options = {});

/// Exact checks used by tests and by callers that want to certify a result.
bool primal_feasible(const LinearProgram& lp, const std::vector<Rational>& x);
bool dual_feasible(const LinearProgram& lp, const std::vector<Rational>& y);
Rational dual_objective(const LinearProgram& lp, const std::vector<Rational>& y);

struct IpOptions {
  SolverOptions lp;
  size_t node_budget = 200000;
  /// Every integer-feasible point has an integer objective, so node bounds
  /// may be rounded before pruning.
  bool integral_objective = false;
  /// Optional feasible integer point to start from; without one, a branch on
  /// an unbounded free variable may descend without ever pruning.
  std::optional<std::vector<Rational>> initial_incumbent;
};

/// Thrown by solve_ip when the node budget runs out. Carries the best
/// integer solution found (if any) and the root relaxation bound.
class NodeBudgetExceeded : public Error {
 public:
  NodeBudgetExceeded(std::optional<LPSolution> incumbent, Rational relaxation_bound);
  const std::optional<LPSolution>& incumbent() const { return incumbent_; }
  const Rational& relaxation_bound() const { return relaxation_bound_; }

 private:
  std::optional<LPSolution> incumbent_;
  Rational relaxation_bound_;
};

/// Depth-first branch and bound on the exact LP relaxation. Branches on the
/// lowest-index fractional integer variable, floor branch first. The dual
/// vector of the result is the dual of the final node's relaxation.
LPSolution solve_ip(const LinearProgram& lp, const std::vector<size_t>& integer_vars,
                    const IpOptions& options = {});

}  // namespace adeg::lp
