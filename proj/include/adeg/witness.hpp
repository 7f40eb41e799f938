#pragma once

#include <vector>

#include "adeg/approx_lp.hpp"
#include "adeg/boolfn.hpp"

namespace adeg {

/// s~gn: -1 for t <= 0, else 1.
inline int tsgn(const Rational& t) { return t <= 0 ? -1 : 1; }

class DualWitness {
 public:
  DualWitness() = default;
  DualWitness(int n, std::vector<Rational> values);

  int arity() const { return n_; }
  size_t size() const { return values_.size(); }
  const Rational& operator[](uint64_t idx) const { return values_[idx]; }
  const std::vector<Rational>& values() const { return values_; }

  Rational l1_norm() const;
  Rational sum() const;
  bool balanced() const { return sum() == 0; }
  Rational correlation(const TruthTable& f) const;
  /// Largest D <= cap with sum psi chi_S = 0 for all |S| <= D; -1 if sum psi != 0.
  int pure_high_degree(int cap) const;
  int pure_high_degree() const { return pure_high_degree(n_); }
  /// psi(x) <= 0 on every TRUE input of f.
  bool one_sided_for(const TruthTable& f) const;
  DualWitness normalized() const;

  bool operator==(const DualWitness&) const = default;

 private:
  int n_ = 0;
  std::vector<Rational> values_{Rational(0)};
};

struct WitnessReport {
  Rational correlation;
  Rational l1;
  int phd = -1;
  bool correlation_ok = false;  // correlation > eps
  bool l1_ok = false;           // l1 == 1
  bool phd_ok = false;          // phd >= d
  bool one_sided_ok = false;    // psi <= 0 on f^{-1}(-1)
  bool one_sided_required = false;
  Rational wrong_side_mass_pos;  // sum over {psi > 0, f = -1} of |psi|
  Rational wrong_side_mass_neg;  // sum over {psi < 0, f = 1} of |psi|

  bool passed() const {
    return correlation_ok && l1_ok && phd_ok && (!one_sided_required || one_sided_ok);
  }
};

enum class DualKind { TwoSided, OneSided };

/// Rebuilds phi from the solution of best_error's dual program, checks the
/// dual feasibility identities exactly, and normalizes to unit L1 mass.
DualWitness from_dual_lp(const lp::LPSolution& sol, DualKind kind, const TruthTable& f, int d);

WitnessReport verify(const DualWitness& psi, const TruthTable& f, int d, const Rational& eps,
                     bool one_sided);

}  // namespace adeg
