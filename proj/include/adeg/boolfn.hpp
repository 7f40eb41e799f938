#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "adeg/rational.hpp"

namespace adeg {

/// Largest arity a dense table may have. Reads ADEG_MAX_ARITY once (default 22).
int max_arity();
/// Throws ArityOverflow when n exceeds max_arity().
void check_arity(long n);

/// f: {-1,1}^n -> {-1,1}. Index bit k set <=> x_k = -1, so index 0 is the
/// all-ones input. -1 means TRUE.
class TruthTable {
 public:
  TruthTable() = default;
  TruthTable(int n, std::vector<int8_t> values);

  static TruthTable constant(int n, int value);
  template <class F>
  static TruthTable generate(int n, F&& fn) {
    check_arity(n);
    std::vector<int8_t> v(size_t{1} << n);
    for (size_t i = 0; i < v.size(); ++i) v[i] = fn(static_cast<uint64_t>(i)) ? -1 : 1;
    return TruthTable(n, std::move(v));
  }

  int arity() const { return n_; }
  size_t size() const { return values_.size(); }
  int operator[](uint64_t idx) const { return values_[idx]; }
  const std::vector<int8_t>& values() const { return values_; }
  bool is_true(uint64_t idx) const { return values_[idx] < 0; }

  TruthTable negated() const;

  bool operator==(const TruthTable&) const = default;

 private:
  int n_ = 0;
  std::vector<int8_t> values_{1};
};

/// Input coordinate k of index idx, as +1 or -1.
inline int coord(uint64_t idx, int k) { return (idx >> k) & 1 ? -1 : 1; }
/// chi_S(x) for subset mask S.
inline int chi(uint64_t S, uint64_t idx) { return __builtin_popcountll(S & idx) & 1 ? -1 : 1; }

/// Value in [0, 2^bits) of block `block`: bits read most-significant first,
/// coordinate -1 is binary 1.
inline uint64_t block_value(uint64_t idx, int block, int bits) {
  uint64_t v = 0;
  for (int k = 0; k < bits; ++k) v = (v << 1) | ((idx >> (block * bits + k)) & 1);
  return v;
}

TruthTable make_and(int m);
TruthTable make_or(int m);
TruthTable make_parity(int m);
TruthTable make_character(int n, uint64_t S);
/// Element distinctness on N blocks of log2(R) bits: TRUE iff all block values differ.
TruthTable make_ed(int N, int R);
/// TRUE iff exactly N/2 range values each appear exactly twice. The promise
/// variant is not modeled: every other input is FALSE.
TruthTable make_two_to_one(int N, int R);
/// Alternating AND/OR tree, fan-ins listed from the root down.
TruthTable make_andor_tree(const std::vector<int>& fanins, bool top_is_and = true);
/// OR of `terms` disjoint ANDs of width `width`.
TruthTable make_read_once_dnf(int terms, int width);

struct NamedParams {
  int m = 0;                 // AND/OR/PARITY arity
  int N = 0, R = 0;          // ED, TWO_TO_ONE
  std::vector<int> fanins;   // ANDOR_TREE
  bool top_is_and = true;    // ANDOR_TREE
  int terms = 0, width = 0;  // READ_ONCE_DNF
};
TruthTable make_named(std::string_view name, const NamedParams& params);

/// F(x_1..x_t) = outer(inner(x_1), ..., inner(x_t)); block i is bits [i*m, (i+1)*m).
TruthTable compose(const TruthTable& outer, const TruthTable& inner, int copies);
/// Blocks may differ in arity; they are laid out consecutively.
TruthTable compose_blocks(const TruthTable& outer, const std::vector<TruthTable>& inners);

/// Max number of disjoint blocks whose flip at a changes f(a). Subset DP, O(3^n).
int block_sensitivity(const TruthTable& f, uint64_t a);
int block_sensitivity(const TruthTable& f);

/// Pr[f(a xor noise) != f(a)] when each bit flips independently with probability gamma.
Rational flip_probability(const TruthTable& f, uint64_t a, const Rational& gamma);

/// "n=<k>" header line then one '+'/'-' per entry in index order.
std::string to_text(const TruthTable& f);
TruthTable table_from_text(std::string_view text);
/// "n=<k>" header then hex digits; digit j packs entries 4j..4j+3 (bit b set <=> entry 4j+b is -1).
std::string to_hex(const TruthTable& f);
TruthTable table_from_hex(std::string_view text);

}  // namespace adeg
