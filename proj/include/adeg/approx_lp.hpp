#pragma once

#include <optional>
#include <vector>

#include "adeg/boolfn.hpp"
#include "adeg/exact_lp.hpp"
#include "adeg/poly.hpp"

namespace adeg {

enum class MeasureKind { AdegEps, OdegEps, Weight, OwWeight, ThreshMargin, ThreshWeightIp, HardestDist };

enum class ValueKind {
  Finite,
  Infinite,
  /// Node budget ran out: the optimum lies in [lower, upper].
  Bracket,
};

struct MeasureResult {
  MeasureKind kind = MeasureKind::AdegEps;
  ValueKind value_kind = ValueKind::Finite;
  Rational value;         // meaningful when Finite; equals upper for Bracket
  Rational lower, upper;  // Bracket only
  int degree = 0;
  MultilinearPoly primal;
  /// Optimal dual function phi over inputs in index order (raw, unnormalized).
  std::vector<Rational> dual_raw;
  /// Solution of the LP actually solved (see the layout notes on each builder).
  lp::LPSolution solution;

  bool finite() const { return value_kind == ValueKind::Finite; }
};

/// LP options shared by the measure builders.
struct MeasureOptions {
  lp::PivotRule rule = lp::PivotRule::LargestCoefficient;
  /// Node budget for threshold_weight; 0 means read ADEG_NODE_BUDGET (default 200000).
  size_t node_budget = 0;
};

/// Column layout of the dual programs: for each input x in index order,
/// phi+(x) then phi-(x). phi+ is absent on TRUE inputs when one-sided.
struct DualLayout {
  std::vector<long> pos, neg;  // column index or -1
  size_t columns = 0;
};
DualLayout dual_layout(const TruthTable& f, bool one_sided);

/// Optimal error of a degree-d (one-sided) approximation of f.
/// Solved in dual form: max sum f phi s.t. sum phi chi_S = 0 (|S| <= d), sum |phi| <= 1.
MeasureResult best_error(const TruthTable& f, int d, bool one_sided,
                         const MeasureOptions& opts = {});

/// Minimal weight of a degree-d eps-approximation; with one_sided_nonconstant,
/// the minimal non-constant weight of a one-sided eps-approximation.
/// Infinite when no degree-d approximation reaches eps.
MeasureResult approx_weight(const TruthTable& f, int d, const Rational& eps,
                            bool one_sided_nonconstant, const MeasureOptions& opts = {});

/// Exact minimum integer weight of a degree-d sign representation.
MeasureResult threshold_weight(const TruthTable& f, int d, const MeasureOptions& opts = {});

/// Rational margin LP: does a degree-d sign representation exist?
bool has_threshold_degree_at_most(const TruthTable& f, int d);

struct HardestDistribution {
  std::vector<Rational> mu;
  Rational value;  // min over mu of max_{|S|<=d} |E_mu[f chi_S]|
  std::optional<Rational> weight;          // W(f, d) if supplied
  std::optional<bool> satisfies_weight_bound;  // value >= 1/W
};
HardestDistribution hardest_distribution(const TruthTable& f, int d,
                                         std::optional<Rational> threshold_weight = std::nullopt,
                                         const MeasureOptions& opts = {});

/// Least d with best_error(f, d) <= eps.
int approx_degree(const TruthTable& f, const Rational& eps, bool one_sided,
                  const MeasureOptions& opts = {});

size_t node_budget_from_env();

}  // namespace adeg
