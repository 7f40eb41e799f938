#pragma once

#include <optional>
#include <string>
#include <vector>

#include "adeg/witness.hpp"

namespace adeg {

/// Psi on t bits: 1/2 at 1^t, -1/2 at (-1)^t, zero elsewhere.
DualWitness canonical_or_outer(int t);

/// zeta(x_1..x_t) = 2^t outer(s~gn psi(x_1), ..., s~gn psi(x_t)) prod |psi(x_i)|.
/// Block i occupies bits [i*m, (i+1)*m). Inner must be balanced with unit L1 mass.
DualWitness combine(const DualWitness& outer, const DualWitness& inner);

/// Same product with an explicit normalization in place of 2^t; no
/// precondition on the inner witness.
DualWitness combine_scaled(const DualWitness& outer, const DualWitness& inner, const Rational& scale);

struct AmplifyResult {
  TruthTable F;              // OR_t(f, ..., f)
  DualWitness inner;         // normalized one-sided witness for f
  Rational inner_error;      // one-sided best_error(f, d)
  DualWitness zeta;
  WitnessReport report;      // against F, d, 1 - 2^-t, one-sided
  Rational target;           // 1 - 2^-t
  Rational block_pos;        // correlation contributed by z = 1^t
  Rational block_neg;        // correlation contributed by z = (-1)^t
  Rational block_neg_bound;  // (1/2)(1 - 2^{-t+1})
};

AmplifyResult or_amplify(const TruthTable& f, int d, int t, const MeasureOptions& opts = {});

struct WeightAmplifyResult {
  TruthTable F;
  DualWitness psi;            // raw optimal dual of the W*_{3/4} program
  Rational inner_weight;      // W*_{3/4}(f, d)
  Rational w;                 // bound being amplified (defaults to inner_weight)
  Rational M_t;
  DualWitness zeta;
  Rational correlation;       // sum zeta F
  Rational l1;
  Rational lhs;               // sum zeta F - (1 - 2^-t) sum |zeta|
  Rational rhs;               // 2^{-5t} w
  Rational max_low_degree_corr;  // max_{|S|<=d} |sum zeta chi_S|
  bool margin_ok = false;
  bool low_degree_ok = false;
};

/// Weight version of the OR combiner. When w is supplied it must lie below
/// W*_{3/4}(f, d); otherwise the LP optimum itself is used.
WeightAmplifyResult weight_amplify(const TruthTable& f, int d, int t,
                                   std::optional<Rational> w = std::nullopt,
                                   const MeasureOptions& opts = {});

struct CascadeStage {
  std::string name;
  std::string function;  // description of the function this stage is checked against
  TruthTable f;
  DualWitness psi;
  int degree = 0;        // degree used when building the stage (LP stages)
  Rational lp_error;     // LP optimum for LP stages
  Rational l1;
  int phd = -1;
  Rational correlation;
  bool one_sided = false;
  Rational wrong_side_mass_pos;
  Rational wrong_side_mass_neg;
};

struct CascadeResult {
  int M = 0, t = 0;
  std::vector<CascadeStage> stages;  // psi_1 .. psi_7
  Rational bad_mass_psi5;            // sum over A_{-1} of |psi_5|
  Rational bad_mass_bound;           // 2 * sum over B_{-1} of |psi_3|
  bool bad_mass_ok = false;
  bool psi4_nonneg_at_ones = false;
  int phd5_bound = 0;                // (phd4+1)(phd3+1) - 1
  int phd7_bound = 0;                // (phd6+1)(phd5+1) - 1
};

/// Depth-3 AND-OR cascade at fan-in M with the inner OR split t.
CascadeResult cascade_depth3(int M, int t, const MeasureOptions& opts = {});

}  // namespace adeg
