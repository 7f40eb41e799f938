#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "adeg/approx_lp.hpp"

namespace adeg {

/// F'(x, y, z) = F(Sel_z(x, y)) on 3n variables: x in bits [0, n), y in
/// [n, 2n), z in [2n, 3n). z_i = -1 selects y_i, z_i = +1 selects x_i.
TruthTable krause_selector(const TruthTable& F);

/// Sel_z(x, y) as an n-bit index, from a 3n-bit index of (x, y, z).
uint64_t select_index(uint64_t xyz, int n);

struct KrauseReport {
  std::vector<Rational> mu;        // hardest distribution for (F, d)
  Rational mu_value;               // max_{|S|<=d} |E_mu[F chi_S]|
  ValueKind weight_kind = ValueKind::Finite;
  Rational weight;                 // W(F, d) when finite
  Rational bound_sq;               // max{2n / W(F, d), 2^-d}, with 2n/inf = 0
  std::vector<Rational> lifted;    // mu' on 3n bits
  std::vector<Rational> correlations;  // E_{mu'}[F' chi_S] for every S of [3n]
  Rational max_abs_corr;
  bool bound_ok = false;           // max |E|^2 <= bound_sq
  bool structure_ok = false;       // every E matches the contributing-z formula
};

/// Lifts the hardest distribution for (F, d) through the selector and checks
/// every character of [3n] exactly. n <= 4.
KrauseReport krause_distribution(const TruthTable& F, int d, const MeasureOptions& opts = {});

/// +-1 matrix, rows indexed by x, columns by y, entries row-major.
struct CommMatrix {
  size_t rows = 0, cols = 0;
  std::vector<int8_t> entries;

  int operator()(size_t r, size_t c) const { return entries[r * cols + c]; }
  CommMatrix transposed() const;
  CommMatrix negated() const;
  bool operator==(const CommMatrix&) const = default;
};

CommMatrix all_ones(size_t rows, size_t cols);

/// F'(x, y) = F(..., OR_j (x_{i,j} AND y_{i,j}), ...), j = 0..3, bit 4i + j.
CommMatrix pattern_matrix(const TruthTable& F);

/// Probability mass over the cells of a matrix, row-major.
struct Distribution {
  std::vector<Rational> mass;
  static Distribution uniform(size_t cells);
  /// Throws DimensionMismatch unless nonnegative and summing to 1.
  void validate(size_t cells) const;
};

enum class DiscMode { Exact, GreedyLowerBound, SpectralUpperBound };

struct DiscResult {
  DiscMode mode = DiscMode::Exact;
  Rational value;                       // exact or the best rectangle found
  std::vector<size_t> row_set, col_set; // an optimal (or best found) rectangle
  double enclosure_lo = 0, enclosure_hi = 0;  // spectral mode only
};

struct DiscOptions {
  uint64_t seed = 1;
  int restarts = 64;
};

/// max over rectangles A x B of |sum mu M|. Exact mode needs min(rows, cols) <= 20.
DiscResult discrepancy(const CommMatrix& M, const Distribution& mu, DiscMode mode,
                       const DiscOptions& opts = {});

/// Basis change between parity monomials and +-1 conjunctions
/// AND_S (-1 iff x_i = -1 for all i in S; AND_empty = -1).
struct MonomialBasisReport {
  MultilinearPoly parity;
  std::vector<std::pair<uint64_t, Rational>> conjunction;  // (S, c_S), S ascending
  Rational conjunction_weight;
  Rational parity_weight;
  bool within_three = false;    // parity_weight <= 3 * conjunction_weight
  Rational min_abs_value;       // margin over the cube
  Rational margin_bound;        // 2n * parity_weight^2 (bounds W(f) when margin >= 1)
};

MonomialBasisReport monomial_basis_from_parity(const MultilinearPoly& p);
MonomialBasisReport monomial_basis_from_conjunctions(
    int n, const std::vector<std::pair<uint64_t, Rational>>& conj);

/// "rows cols" header then one line of '+'/'-' per row.
std::string matrix_to_text(const CommMatrix& M);
CommMatrix matrix_from_text(std::string_view text);

}  // namespace adeg
