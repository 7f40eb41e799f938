#include "adeg/transforms.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

namespace adeg {

uint64_t select_index(uint64_t xyz, int n) {
  const uint64_t mask = (uint64_t{1} << n) - 1;
  const uint64_t x = xyz & mask, y = (xyz >> n) & mask, z = (xyz >> (2 * n)) & mask;
  return (x & ~z) | (y & z);
}

TruthTable krause_selector(const TruthTable& F) {
  const int n = F.arity();
  check_arity(3L * n);
  return TruthTable::generate(3 * n, [&](uint64_t idx) { return F.is_true(select_index(idx, n)); });
}

KrauseReport krause_distribution(const TruthTable& F, int d, const MeasureOptions& opts) {
  const int n = F.arity();
  if (n < 1 || n > 4) throw PreconditionViolated("krause_distribution needs 1 <= n <= 4");
  KrauseReport r;
  const auto tw = threshold_weight(F, d, opts);
  r.weight_kind = tw.value_kind;
  // A bracket only certifies W >= lower, which still yields a valid bound.
  if (tw.value_kind == ValueKind::Finite) r.weight = tw.value;
  if (tw.value_kind == ValueKind::Bracket) r.weight = tw.lower;
  const Rational two_n_over_w =
      tw.value_kind == ValueKind::Infinite ? Rational(0) : Rational(2 * n) / r.weight;
  r.bound_sq = std::max(two_n_over_w, pow2(-d));

  const auto hd = hardest_distribution(F, d, std::nullopt, opts);
  r.mu = hd.mu;
  r.mu_value = hd.value;

  const TruthTable Fp = krause_selector(F);
  const Rational lift = pow2(-2 * n);
  r.lifted.resize(Fp.size());
  std::vector<Rational> g(Fp.size());
  for (uint64_t idx = 0; idx < Fp.size(); ++idx) {
    r.lifted[idx] = lift * r.mu[select_index(idx, n)];
    g[idx] = Fp[idx] * r.lifted[idx];
  }
  r.correlations = character_sums(g);

  std::vector<Rational> fmu(F.size());
  for (uint64_t w = 0; w < F.size(); ++w) fmu[w] = F[w] * r.mu[w];
  const auto base = character_sums(fmu);
  const uint64_t mask = (uint64_t{1} << n) - 1;
  r.structure_ok = true;
  for (uint64_t S = 0; S < r.correlations.size(); ++S) {
    const uint64_t S1 = S & mask, S2 = (S >> n) & mask, S3 = (S >> (2 * n)) & mask;
    Rational expect = 0;
    if ((S1 & S2) == 0 && (S3 & ~(S1 | S2)) == 0) {
      expect = pow2(-__builtin_popcountll(S1) - __builtin_popcountll(S2)) * base[S1 | S2];
      if (__builtin_popcountll(S3 & S2) & 1) expect = -expect;
    }
    if (expect != r.correlations[S]) r.structure_ok = false;
    r.max_abs_corr = std::max(r.max_abs_corr, Rational(abs(r.correlations[S])));
  }
  r.bound_ok = r.max_abs_corr * r.max_abs_corr <= r.bound_sq;
  return r;
}

CommMatrix CommMatrix::transposed() const {
  CommMatrix t{cols, rows, std::vector<int8_t>(entries.size())};
  for (size_t r = 0; r < rows; ++r)
    for (size_t c = 0; c < cols; ++c) t.entries[c * rows + r] = entries[r * cols + c];
  return t;
}

CommMatrix CommMatrix::negated() const {
  CommMatrix m = *this;
  for (auto& e : m.entries) e = static_cast<int8_t>(-e);
  return m;
}

CommMatrix all_ones(size_t rows, size_t cols) {
  return CommMatrix{rows, cols, std::vector<int8_t>(rows * cols, 1)};
}

CommMatrix pattern_matrix(const TruthTable& F) {
  const int n = F.arity();
  if (n > 3) throw ArityOverflow("pattern_matrix is limited to n <= 3 (4096 x 4096)");
  const size_t side = size_t{1} << (4 * n);
  CommMatrix M{side, side, std::vector<int8_t>(side * side)};
  for (uint64_t x = 0; x < side; ++x)
    for (uint64_t y = 0; y < side; ++y) {
      // x_{i,j} AND y_{i,j} is TRUE iff both bits are set; OR over j per block.
      const uint64_t both = x & y;
      uint64_t w = 0;
      for (int i = 0; i < n; ++i)
        if ((both >> (4 * i)) & 0xF) w |= uint64_t{1} << i;
      M.entries[x * side + y] = static_cast<int8_t>(F[w]);
    }
  return M;
}

Distribution Distribution::uniform(size_t cells) {
  if (cells == 0) throw DimensionMismatch("uniform distribution over no cells");
  return {std::vector<Rational>(cells, Rational(1) / Rational(static_cast<unsigned long>(cells)))};
}

void Distribution::validate(size_t cells) const {
  if (mass.size() != cells) throw DimensionMismatch("distribution size does not match the matrix");
  Rational total = 0;
  for (const auto& m : mass) {
    if (m < 0) throw DimensionMismatch("distribution has a negative mass");
    total += m;
  }
  if (total != 1) throw DimensionMismatch("distribution does not sum to 1");
}

namespace {

// Integer weights K = D * mu * M with D the common denominator.
struct Scaled {
  size_t rows, cols;
  std::vector<Integer> K;
  Integer D = 1;
};

Scaled scale(const CommMatrix& M, const Distribution& mu) {
  Scaled s{M.rows, M.cols, {}, 1};
  for (const auto& m : mu.mass) mpz_lcm(s.D.get_mpz_t(), s.D.get_mpz_t(), m.get_den_mpz_t());
  s.K.resize(M.entries.size());
  for (size_t i = 0; i < s.K.size(); ++i) {
    const Rational v = mu.mass[i] * s.D;
    s.K[i] = v.get_num() * M.entries[i];
  }
  return s;
}

template <typename T>
DiscResult exact_disc(const Scaled& s, const std::vector<T>& K) {
  const size_t R = s.rows, C = s.cols;
  std::vector<T> col(C, 0);
  T best = 0;
  uint64_t best_set = 0;
  uint64_t set = 0;
  for (uint64_t step = 1; step < (uint64_t{1} << R); ++step) {
    const int r = __builtin_ctzll(step);
    set ^= uint64_t{1} << r;
    const bool added = (set >> r) & 1;
    const T* row = &K[r * C];
    T pos = 0, neg = 0;
    for (size_t c = 0; c < C; ++c) {
      col[c] += added ? row[c] : -row[c];
      if (col[c] > 0) pos += col[c];
      else neg -= col[c];
    }
    const T v = std::max(pos, neg);
    if (v > best) {
      best = v;
      best_set = set;
    }
  }
  DiscResult out;
  for (size_t r = 0; r < R; ++r)
    if ((best_set >> r) & 1) out.row_set.push_back(r);
  std::fill(col.begin(), col.end(), T(0));
  for (size_t r : out.row_set)
    for (size_t c = 0; c < C; ++c) col[c] += K[r * C + c];
  T pos = 0, neg = 0;
  for (size_t c = 0; c < C; ++c) (col[c] > 0 ? pos : neg) += col[c] > 0 ? col[c] : -col[c];
  for (size_t c = 0; c < C; ++c)
    if (pos >= neg ? col[c] > 0 : col[c] < 0) out.col_set.push_back(c);
  out.value = Rational(Integer(best)) / Rational(s.D);
  return out;
}

Integer rect_sum(const Scaled& s, const std::vector<char>& A, const std::vector<char>& B) {
  Integer t = 0;
  for (size_t r = 0; r < s.rows; ++r)
    if (A[r])
      for (size_t c = 0; c < s.cols; ++c)
        if (B[c]) t += s.K[r * s.cols + c];
  return t;
}

DiscResult greedy_disc(const Scaled& s, const DiscOptions& opts) {
  std::mt19937_64 rng(opts.seed);
  Integer best = 0;
  std::vector<char> bestA(s.rows, 0), bestB(s.cols, 0);
  for (int it = 0; it < std::max(1, opts.restarts); ++it) {
    for (int sign : {1, -1}) {
      std::vector<char> A(s.rows), B(s.cols);
      for (auto& a : A) a = static_cast<char>(rng() & 1);
      Integer cur = -1;
      for (int round = 0; round < 100; ++round) {
        for (size_t c = 0; c < s.cols; ++c) {
          Integer t = 0;
          for (size_t r = 0; r < s.rows; ++r)
            if (A[r]) t += s.K[r * s.cols + c];
          B[c] = sign * t > 0;
        }
        for (size_t r = 0; r < s.rows; ++r) {
          Integer t = 0;
          for (size_t c = 0; c < s.cols; ++c)
            if (B[c]) t += s.K[r * s.cols + c];
          A[r] = sign * t > 0;
        }
        const Integer v = sign * rect_sum(s, A, B);
        if (v <= cur) break;
        cur = v;
      }
      if (cur > best) {
        best = cur;
        bestA = A;
        bestB = B;
      }
    }
  }
  DiscResult out;
  out.mode = DiscMode::GreedyLowerBound;
  for (size_t r = 0; r < s.rows; ++r)
    if (bestA[r]) out.row_set.push_back(r);
  for (size_t c = 0; c < s.cols; ++c)
    if (bestB[c]) out.col_set.push_back(c);
  out.value = Rational(best) / Rational(s.D);
  return out;
}

DiscResult spectral_disc(const CommMatrix& M, const Distribution& mu) {
  Eigen::MatrixXd K(M.rows, M.cols);
  for (size_t r = 0; r < M.rows; ++r)
    for (size_t c = 0; c < M.cols; ++c) K(r, c) = mu.mass[r * M.cols + c].get_d() * M(r, c);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(K);
  const double sigma = svd.singularValues().size() ? svd.singularValues()(0) : 0.0;
  const double bound = sigma * std::sqrt(static_cast<double>(M.rows) * static_cast<double>(M.cols));
  DiscResult out;
  out.mode = DiscMode::SpectralUpperBound;
  // Double rounding in the SVD: widen by a relative and an absolute margin.
  const double slack = 1e-9 * bound + 1e-12;
  out.enclosure_lo = std::max(0.0, bound - slack);
  out.enclosure_hi = bound + slack;
  return out;
}

}  // namespace

DiscResult discrepancy(const CommMatrix& M, const Distribution& mu, DiscMode mode,
                       const DiscOptions& opts) {
  if (M.entries.size() != M.rows * M.cols || M.rows == 0 || M.cols == 0)
    throw DimensionMismatch("malformed communication matrix");
  mu.validate(M.entries.size());
  if (mode == DiscMode::SpectralUpperBound) return spectral_disc(M, mu);
  if (mode == DiscMode::GreedyLowerBound) return greedy_disc(scale(M, mu), opts);

  if (std::min(M.rows, M.cols) > 20)
    throw PreconditionViolated("exact discrepancy needs min(rows, cols) <= 20");
  const bool flip = M.rows > M.cols;
  Distribution m2 = mu;
  if (flip) {
    for (size_t r = 0; r < M.rows; ++r)
      for (size_t c = 0; c < M.cols; ++c) m2.mass[c * M.rows + r] = mu.mass[r * M.cols + c];
  }
  const Scaled s = scale(flip ? M.transposed() : M, m2);
  // Column sums never exceed sum |K|; use 64-bit arithmetic when that fits.
  Integer total = 0;
  for (const auto& k : s.K) total += abs(k);
  DiscResult out;
  if (total < Integer(std::numeric_limits<int64_t>::max() / 2)) {
    std::vector<int64_t> K(s.K.size());
    for (size_t i = 0; i < K.size(); ++i) K[i] = s.K[i].get_si();
    out = exact_disc(s, K);
  } else {
    out = exact_disc(s, s.K);
  }
  if (flip) std::swap(out.row_set, out.col_set);
  out.mode = DiscMode::Exact;
  return out;
}

namespace {

MonomialBasisReport finish(MonomialBasisReport r) {
  const int n = r.parity.arity();
  r.conjunction_weight = 0;
  for (const auto& [S, c] : r.conjunction) r.conjunction_weight += abs(c);
  r.parity_weight = weight(r.parity);
  r.within_three = r.parity_weight <= 3 * r.conjunction_weight;
  const auto v = r.parity.values();
  r.min_abs_value = v.empty() ? Rational(0) : Rational(abs(v[0]));
  for (const auto& e : v) r.min_abs_value = std::min(r.min_abs_value, Rational(abs(e)));
  r.margin_bound = 2 * n * r.parity_weight * r.parity_weight;
  return r;
}

// b_S = prod_{i in S} (1 - x_i)/2 in the parity basis.
MultilinearPoly indicator(int n, uint64_t S) {
  MultilinearPoly p(n);
  const Rational scale = pow2(-__builtin_popcountll(S));
  for (uint64_t T = S;; T = (T - 1) & S) {
    p.set(T, (__builtin_popcountll(T) & 1) ? Rational(-scale) : scale);
    if (T == 0) break;
  }
  return p;
}

}  // namespace

MonomialBasisReport monomial_basis_from_parity(const MultilinearPoly& p) {
  const int n = p.arity();
  if (n > 16) throw ArityOverflow("basis change is limited to n <= 16");
  // chi_T = prod (1 - 2 b_i) = sum_{U subset T} (-2)^|U| b_U.
  std::map<uint64_t, Rational> beta;
  for (const auto& [T, a] : p.terms())
    for (uint64_t U = T;; U = (U - 1) & T) {
      const int k = __builtin_popcountll(U);
      beta[U] += a * ((k & 1) ? Rational(-pow2(k)) : pow2(k));
      if (U == 0) break;
    }
  // b_U = (1 - AND_U)/2 for U nonempty; constants go to -AND_empty.
  Rational constant = 0;
  std::map<uint64_t, Rational> conj;
  for (const auto& [U, b] : beta) {
    if (b == 0) continue;
    if (U == 0) {
      constant += b;
    } else {
      constant += b / 2;
      conj[U] -= b / 2;
    }
  }
  if (constant != 0) conj[0] -= constant;
  MonomialBasisReport r;
  r.parity = p;
  for (const auto& [S, c] : conj)
    if (c != 0) r.conjunction.emplace_back(S, c);
  return finish(std::move(r));
}

MonomialBasisReport monomial_basis_from_conjunctions(
    int n, const std::vector<std::pair<uint64_t, Rational>>& conj) {
  if (n > 16) throw ArityOverflow("basis change is limited to n <= 16");
  MultilinearPoly p(n);
  for (const auto& [S, c] : conj) {
    if (n < 64 && (S >> n) != 0) throw DimensionMismatch("conjunction support exceeds arity");
    if (S == 0) {
      p.add(0, -c);
      continue;
    }
    // AND_S = 1 - 2 b_S
    p.add(0, c);
    p = p - indicator(n, S).scaled(2 * c);
  }
  MonomialBasisReport r;
  r.parity = p;
  std::map<uint64_t, Rational> merged;
  for (const auto& [S, c] : conj) merged[S] += c;
  for (const auto& [S, c] : merged)
    if (c != 0) r.conjunction.emplace_back(S, c);
  return finish(std::move(r));
}

std::string matrix_to_text(const CommMatrix& M) {
  std::string s = std::to_string(M.rows) + " " + std::to_string(M.cols) + "\n";
  for (size_t r = 0; r < M.rows; ++r) {
    for (size_t c = 0; c < M.cols; ++c) s.push_back(M(r, c) < 0 ? '-' : '+');
    s.push_back('\n');
  }
  return s;
}

CommMatrix matrix_from_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  long rows = -1, cols = -1;
  if (!(in >> rows >> cols) || rows <= 0 || cols <= 0)
    throw UsageError("matrix text must start with '<rows> <cols>'");
  if (rows * cols > (1L << 26)) throw ArityOverflow("matrix too large");
  CommMatrix M{static_cast<size_t>(rows), static_cast<size_t>(cols), {}};
  char ch;
  while (in >> ch) {
    if (ch == '+') M.entries.push_back(1);
    else if (ch == '-') M.entries.push_back(-1);
    else throw UsageError("unexpected character in matrix text");
  }
  if (M.entries.size() != M.rows * M.cols)
    throw DimensionMismatch("matrix text has " + std::to_string(M.entries.size()) +
                            " entries, expected " + std::to_string(M.rows * M.cols));
  return M;
}

}  // namespace adeg
