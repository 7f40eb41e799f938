#pragma once

#include <vector>

#include "adeg/poly.hpp"

namespace adeg {

/// p/q approximating f with q > 0 on the cube; `error` is the exact maximum
/// of |f - p/q| and `claimed` the bound the construction promises.
struct RationalApproximator {
  TruthTable f;
  MultilinearPoly p, q;
  Rational error;
  Rational claimed;
  int degree() const;
  Rational weight() const;  // max of the two weights
};

/// Recomputes q > 0 and the exact error; throws CertificateViolation when
/// the error exceeds `claimed`.
void certify(RationalApproximator& r);

/// (ts - 1 + t sum x) / (ts + 1 + t sum x) for AND_s, error < 1/t.
RationalApproximator rational_and(int s, int t);

struct PtfResult {
  TruthTable F;
  MultilinearPoly ptf;       // integer coefficients
  int degree = 0;
  Rational weight;
  Rational weight_bound;     // reported analytic bound, not asserted
};

/// Clears denominators in 1 - t + sum_i p(x_i)/q(x_i); needs error < 1/t.
PtfResult or_of_rational_ptf(const RationalApproximator& r, int t);

/// p / w, a (1 - 1/w)-approximation when p is an integer PTF of weight w.
MultilinearPoly ptf_to_approx(const MultilinearPoly& p, const TruthTable& f, const Rational& w);

/// 1 - t + sum_i p(x_i) with p the Chebyshev approximation of AND_m at eps < 1/t.
PtfResult cheb_or_of_and_ptf(int m, int t, const Rational& eps);

/// ED(N, R) from its CNF: rational_and over the C(N,2) clauses "blocks i, j
/// differ", each clause an exact OR of bit disagreements.
RationalApproximator rational_ed(int N, int R, int t);

struct SharpThresholdRow {
  int m = 0, t = 0;
  int construction_degree = 0;
  Rational construction_weight;
  Rational construction_error;   // 1 - 1/W of the PTF-derived approximation
  int lp_degree = 0;             // least d with best_error(F, d) <= 1 - 2^-t
  int precondition_degree = -1;  // largest d with one-sided error of AND_m at d above 1/2
  bool consistent = false;       // lp_degree > precondition_degree
};

/// F = OR_t(AND_m) with the rational construction against the exact LP
/// degree at error 1 - 2^-t. Limited to m * t <= 8.
SharpThresholdRow sharp_threshold_row(int m, int t);

}  // namespace adeg
