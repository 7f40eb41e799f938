#pragma once

#include <vector>

#include "adeg/witness.hpp"

namespace adeg {

/// Reads x in {-1,1}^m as g_x: [N] -> [R], block i holding g_x(i) in binary
/// (most significant bit first, -1 = binary 1). Values are 0-based.
struct PropertyEncoding {
  int N = 0;
  int R = 0;

  PropertyEncoding(int N, int R);
  int bits() const;
  int arity() const { return N * bits(); }
  std::vector<int> decode(uint64_t idx) const;
  uint64_t encode(const std::vector<int>& g) const;
};

using Permutation = std::vector<int>;

/// All permutations of {0..k-1} in lexicographic order.
std::vector<Permutation> permutations(int k);

/// Index of sigma . x . pi, i.e. the y with g_y = sigma o g_x o pi.
uint64_t act(const PropertyEncoding& enc, uint64_t idx, const Permutation& sigma,
             const Permutation& pi);

bool is_symmetric_property(const TruthTable& f, const PropertyEncoding& enc);

/// Exact average of values over the orbit of each input under range and
/// domain permutations. Throws OrbitTooLarge when N! R! > 2^14.
std::vector<Rational> psym_values(const std::vector<Rational>& values, const PropertyEncoding& enc);
MultilinearPoly psym(const MultilinearPoly& p, const PropertyEncoding& enc);

struct RepairResult {
  MultilinearPoly psym;
  MultilinearPoly r;
  Rational v;              // constant value of psym on f^{-1}(-1)
  bool rescaled = false;   // false when psym was already a two-sided approximation
  Rational error;          // linf_error(r, f)
};

/// Turns an eps one-sided approximation of a symmetric property whose TRUE
/// set is one orbit into a two-sided eps-approximation.
RepairResult one_sided_repair(const MultilinearPoly& p, const TruthTable& f,
                              const PropertyEncoding& enc, const Rational& eps);

/// Average of psi over block permutations of the domain only, rescaled to
/// unit L1 mass (the zero witness stays zero). N <= 6.
DualWitness symmetrize_dual_domain(const DualWitness& psi, const PropertyEncoding& enc);

}  // namespace adeg
