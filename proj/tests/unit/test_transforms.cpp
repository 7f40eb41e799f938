#include <doctest.h>

#include <random>

#include "adeg/transforms.hpp"

using namespace adeg;

namespace {

// Oracle: every rectangle by brute force over both sides.
Rational brute_disc(const CommMatrix& M, const Distribution& mu) {
  Rational best = 0;
  for (uint64_t A = 1; A < (uint64_t{1} << M.rows); ++A)
    for (uint64_t B = 1; B < (uint64_t{1} << M.cols); ++B) {
      Rational s = 0;
      for (size_t r = 0; r < M.rows; ++r)
        for (size_t c = 0; c < M.cols; ++c)
          if (((A >> r) & 1) && ((B >> c) & 1)) s += mu.mass[r * M.cols + c] * M(r, c);
      best = std::max(best, Rational(abs(s)));
    }
  return best;
}

CommMatrix random_matrix(std::mt19937_64& rng, size_t r, size_t c) {
  CommMatrix M{r, c, std::vector<int8_t>(r * c)};
  for (auto& e : M.entries) e = (rng() & 1) ? 1 : -1;
  return M;
}

Distribution random_mu(std::mt19937_64& rng, size_t cells) {
  Distribution mu;
  long total = 0;
  std::vector<long> w(cells);
  for (auto& v : w) total += v = static_cast<long>(rng() % 5);
  if (total == 0) {
    w[0] = total = 1;
  }
  for (long v : w) mu.mass.push_back(frac(v, total));
  return mu;
}

}  // namespace

TEST_CASE("selector") {
  const auto id = make_character(1, 1);
  const auto Fp = krause_selector(id);
  CHECK(Fp.arity() == 3);
  for (uint64_t idx = 0; idx < 8; ++idx) {
    const int x = coord(idx, 0), y = coord(idx, 1), z = coord(idx, 2);
    CHECK(Fp[idx] == (z == 1 ? x : y));
  }
  const auto c = krause_selector(TruthTable::constant(2, 1));
  for (uint64_t idx = 0; idx < c.size(); ++idx) CHECK(c[idx] == 1);
}

TEST_CASE("Krause lift: bound and contributing-z structure") {
  struct Case {
    TruthTable F;
    int d;
  };
  std::vector<Case> cases{{make_character(1, 1), 1}, {make_and(2), 2}, {make_and(2), 1},
                          {make_and(3), 2}, {make_parity(2), 1}, {make_or(3), 3}};
  for (const auto& [F, d] : cases) {
    const auto r = krause_distribution(F, d);
    CHECK(r.correlations.size() == (size_t{1} << (3 * F.arity())));
    Rational total = 0;
    for (const auto& m : r.lifted) total += m;
    CHECK(total == 1);
    CHECK(r.structure_ok);
    CHECK(r.bound_ok);
    // Independent recomputation of a few correlations from the lifted measure.
    const auto Fp = krause_selector(F);
    for (uint64_t S : {uint64_t{0}, uint64_t{1}, (uint64_t{1} << F.arity()) | 1,
                       uint64_t{1} << (2 * F.arity())}) {
      Rational e = 0;
      for (uint64_t idx = 0; idx < Fp.size(); ++idx) e += r.lifted[idx] * Fp[idx] * chi(S, idx);
      CHECK(e == r.correlations[S]);
    }
    // S3 outside S1 u S2 contributes nothing.
    const int n = F.arity();
    CHECK(r.correlations[uint64_t{1} << (2 * n)] == 0);
  }
}

TEST_CASE("pattern matrix") {
  const auto M = pattern_matrix(make_character(1, 1));
  REQUIRE(M.rows == 16);
  REQUIRE(M.cols == 16);
  for (size_t x = 0; x < 16; ++x)
    for (size_t y = 0; y < 16; ++y) CHECK(M(x, y) == ((x & y) ? -1 : 1));
  CHECK(pattern_matrix(TruthTable::constant(1, 1)) == all_ones(16, 16));
  CHECK(pattern_matrix(make_character(1, 1).negated()) == M.negated());
  CHECK_THROWS_AS(pattern_matrix(make_and(4)), ArityOverflow);
}

TEST_CASE("discrepancy examples") {
  CHECK(discrepancy(all_ones(2, 2), Distribution::uniform(4), DiscMode::Exact).value == 1);
  const CommMatrix H{2, 2, {1, 1, 1, -1}};
  const auto r = discrepancy(H, Distribution::uniform(4), DiscMode::Exact);
  CHECK(r.value == frac(1, 2));
  CHECK(r.value == brute_disc(H, Distribution::uniform(4)));
  CHECK_THROWS_AS(discrepancy(H, Distribution::uniform(3), DiscMode::Exact), DimensionMismatch);
  CHECK_THROWS_AS(discrepancy(all_ones(21, 21), Distribution::uniform(441), DiscMode::Exact),
                  PreconditionViolated);
}

TEST_CASE("exact discrepancy against brute force; invariances") {
  std::mt19937_64 rng(11);
  for (int it = 0; it < 60; ++it) {
    const size_t r = 1 + rng() % 5, c = 1 + rng() % 6;
    const auto M = random_matrix(rng, r, c);
    const auto mu = random_mu(rng, r * c);
    const auto d = discrepancy(M, mu, DiscMode::Exact);
    REQUIRE(d.value == brute_disc(M, mu));
    CHECK(d.value >= 0);
    CHECK(d.value <= 1);
    Distribution mt;
    mt.mass.resize(r * c);
    for (size_t i = 0; i < r; ++i)
      for (size_t j = 0; j < c; ++j) mt.mass[j * r + i] = mu.mass[i * c + j];
    CHECK(discrepancy(M.transposed(), mt, DiscMode::Exact).value == d.value);
    CHECK(discrepancy(M.negated(), mu, DiscMode::Exact).value == d.value);
    // The reported rectangle attains the value.
    Rational s = 0;
    for (size_t a : d.row_set)
      for (size_t b : d.col_set) s += mu.mass[a * c + b] * M(a, b);
    CHECK(abs(s) == d.value);
    const auto g = discrepancy(M, mu, DiscMode::GreedyLowerBound);
    CHECK(g.value <= d.value);
    const auto sp = discrepancy(M, mu, DiscMode::SpectralUpperBound);
    CHECK(sp.enclosure_hi + 1e-9 >= d.value.get_d());
  }
}

TEST_CASE("pattern matrix discrepancy bound, identity") {
  const auto F = make_character(1, 1);
  const auto M = pattern_matrix(F);
  const auto disc = discrepancy(M, Distribution::uniform(256), DiscMode::Exact).value;
  // Full rectangle: 81 cells of +1, 175 of -1.
  CHECK(disc >= frac(94, 256));
  for (int d = 1; d <= 2; ++d) {
    const auto w = threshold_weight(F, d - 1);
    const Rational term = w.value_kind == ValueKind::Infinite ? Rational(0) : Rational(2) / w.value;
    CHECK(disc * disc <= std::max(term, pow2(-d)));
  }
}

TEST_CASE("monomial basis") {
  // AND_{1,2} alone: parity weight at most 3.
  const auto a = monomial_basis_from_conjunctions(2, {{3, Rational(1)}});
  CHECK(a.parity_weight <= 3);
  CHECK(a.within_three);
  for (uint64_t x = 0; x < 4; ++x) CHECK(a.parity.evaluate(x) == make_and(2)[x]);

  // x1 x2 = x1 + x2 - 2 AND_{1,2} - AND_empty.
  MultilinearPoly p(2);
  p.set(3, 1);
  const auto b = monomial_basis_from_parity(p);
  const std::vector<std::pair<uint64_t, Rational>> expect{
      {0, Rational(-1)}, {1, Rational(1)}, {2, Rational(1)}, {3, Rational(-2)}};
  CHECK(b.conjunction == expect);
  CHECK(b.conjunction_weight == 5);

  MultilinearPoly k(3);
  k.set(0, 4);
  const auto c = monomial_basis_from_parity(k);
  CHECK(c.conjunction_weight == c.parity_weight);
  CHECK(c.conjunction_weight == 4);

  // Round trip on random integer polynomials.
  std::mt19937_64 rng(3);
  for (int it = 0; it < 30; ++it) {
    MultilinearPoly q(3);
    for (uint64_t S = 0; S < 8; ++S) q.set(S, static_cast<long>(rng() % 7) - 3);
    const auto fwd = monomial_basis_from_parity(q);
    const auto back = monomial_basis_from_conjunctions(3, fwd.conjunction);
    CHECK(back.parity == fwd.parity);
    CHECK(fwd.parity_weight <= 3 * fwd.conjunction_weight);
  }
}

TEST_CASE("matrix text round trip") {
  std::mt19937_64 rng(5);
  const auto M = random_matrix(rng, 3, 7);
  const auto text = matrix_to_text(M);
  CHECK(text.substr(0, 4) == "3 7\n");
  CHECK(matrix_from_text(text) == M);
  CHECK_THROWS_AS(matrix_from_text("2 2\n++\n+"), DimensionMismatch);
  CHECK_THROWS_AS(matrix_from_text("2 2\n+x\n++"), UsageError);
}
