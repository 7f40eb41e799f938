#include <doctest.h>

#include <random>

#include "adeg/poly.hpp"

using namespace adeg;

namespace {

TruthTable random_table(int n, std::mt19937_64& rng) {
  return TruthTable::generate(n, [&](uint64_t) { return rng() & 1; });
}

// Oracle: sum_x f(x) chi_S(x) / 2^n evaluated directly.
Rational direct_coeff(const TruthTable& f, uint64_t S) {
  long s = 0;
  for (uint64_t x = 0; x < f.size(); ++x) s += f[x] * chi(S, x);
  return Rational(s) / Rational(pow2(f.arity()));
}

}  // namespace

TEST_CASE("subset order is size then lexicographic") {
  const auto s = subsets_up_to(3, 2);
  CHECK(s == std::vector<uint64_t>{0, 1, 2, 4, 3, 5, 6});
  CHECK(subsets_up_to(4, 4).size() == 16);
  CHECK(subsets_up_to(5, 9).size() == 32);
}

TEST_CASE("fourier examples") {
  auto c = fourier(TruthTable::constant(3, 1));
  CHECK(c.terms().size() == 1);
  CHECK(c.coeff(0) == 1);
  auto a = fourier(make_and(2));
  CHECK(a.coeff(0) == Rational(1, 2));
  CHECK(a.coeff(1) == Rational(1, 2));
  CHECK(a.coeff(2) == Rational(1, 2));
  CHECK(a.coeff(3) == Rational(-1, 2));
  auto p = fourier(make_parity(3));
  CHECK(p.terms().size() == 1);
  CHECK(p.coeff(7) == 1);
}

TEST_CASE("fourier reproduces f and satisfies Parseval") {
  std::mt19937_64 rng(1);
  for (int n = 0; n <= 10; ++n)
    for (int rep = 0; rep < (n <= 6 ? 5 : 1); ++rep) {
      const auto f = random_table(n, rng);
      const auto p = fourier(f);
      Rational parseval = 0;
      for (const auto& [S, c] : p.terms()) {
        parseval += c * c;
        if (n <= 6) REQUIRE(c == direct_coeff(f, S));
      }
      CHECK(parseval == 1);
      for (uint64_t x = 0; x < f.size(); ++x) REQUIRE(p.evaluate(x) == f[x]);
      CHECK(MultilinearPoly::from_values(n, p.values()) == p);
    }
}

TEST_CASE("weight and linf error") {
  const auto a = fourier(make_and(2));
  CHECK(weight(a) == 2);
  CHECK(weight(a, false) == Rational(3, 2));
  CHECK(weight(MultilinearPoly(3)) == 0);
  MultilinearPoly x1(2);
  x1.set(1, 1);
  CHECK(weight(x1) == 1);
  CHECK(weight(x1, false) == 1);
  CHECK(linf_error(a, make_and(2)) == 0);
  CHECK(linf_error(MultilinearPoly(2), make_and(2)) == 1);
  CHECK_THROWS_AS(linf_error(MultilinearPoly(3), make_and(2)), DimensionMismatch);
}

TEST_CASE("OR counterexample polynomial has error 1 - 1/(2n)") {
  for (int n : {4, 8}) {
    // q = (1/n)(1/2 - sum y) with y = (1 - x)/2 the TRUE indicator.
    MultilinearPoly q(n);
    q.set(0, frac(1 - n, 2 * n));
    for (int i = 0; i < n; ++i) q.set(uint64_t{1} << i, frac(1, 2 * n));
    // Oracle: evaluate the {0,1} form directly.
    Rational worst = 0;
    for (uint64_t x = 0; x < (uint64_t{1} << n); ++x) {
      const Rational v = (Rational(1, 2) - __builtin_popcountll(x)) / n;
      CHECK(v == q.evaluate(x));
      const int orv = x ? -1 : 1;
      worst = std::max(worst, Rational(abs(v - orv)));
    }
    CHECK(worst == 1 - frac(1, 2 * n));
    CHECK(linf_error(q, make_or(n)) == 1 - frac(1, 2 * n));
  }
}

TEST_CASE("univariate algebra") {
  UnivariatePoly T3 = UnivariatePoly::chebyshev(3);
  CHECK(T3.coeffs() == std::vector<Rational>{0, -3, 0, 4});
  for (int k = 0; k <= 8; ++k) {
    auto T = UnivariatePoly::chebyshev(k);
    CHECK(T(1) == 1);
    CHECK(T(-1) == (k % 2 ? -1 : 1));
    CHECK(T(Rational(1, 2)) == std::vector<Rational>{1, Rational(1, 2), Rational(-1, 2), -1,
                                                     Rational(-1, 2), Rational(1, 2), 1,
                                                     Rational(1, 2), Rational(-1, 2)}[k]);
  }
  UnivariatePoly p({1, 2, 3, 4}), d({1, 1});
  auto [q, r] = p.divmod(d);
  CHECK(q * d + r == p);
  CHECK(r.degree() < d.degree());
  auto comp = p.compose_affine(2, -1);
  for (int i = -3; i <= 3; ++i) CHECK(comp(i) == p(Rational(2 * i - 1)));
}

TEST_CASE("diagonal profile of a symmetric function") {
  for (int n = 1; n <= 6; ++n)
    for (auto f : {make_and(n), make_or(n), make_parity(n)}) {
      const auto p = fourier(f);
      const auto P = diagonal_profile(p);
      CHECK(P(1) == p.evaluate(0));
      CHECK(P(-1) == p.evaluate((uint64_t{1} << n) - 1));
    }
}

TEST_CASE("Chebyshev AND approximation") {
  auto one = chebyshev_and_approx(1, Rational(1, 5));
  CHECK(one.error == 0);
  CHECK(one.poly.terms().size() == 1);
  CHECK(one.poly.coeff(1) == 1);

  auto check = [](int m, const Rational& eps) {
    auto r = chebyshev_and_approx(m, eps);
    const auto f = make_and(m);
    Rational worst = 0;
    const auto vals = r.poly.values();
    for (uint64_t x = 0; x < f.size(); ++x) {
      // Oracle: the univariate form at s = sum x / m; direct term sums on small m.
      const Rational s = frac(m - 2 * __builtin_popcountll(x), m);
      REQUIRE(r.univariate(s) == vals[x]);
      if (m <= 9) REQUIRE(r.poly.evaluate(x) == vals[x]);
      worst = std::max(worst, Rational(abs(vals[x] - f[x])));
    }
    CHECK(worst == r.error);
    CHECK(worst <= eps);
    CHECK(r.poly.degree() <= m);
    if (!r.exact_fallback) CHECK(r.poly.degree() <= r.chebyshev_degree);
    return r;
  };
  check(4, Rational(1, 3));
  check(9, Rational(1, 8));
  auto tight = check(3, Rational(1, 1000000));
  CHECK(tight.exact_fallback);
  for (int m = 2; m <= 10; ++m)
    for (auto eps : {Rational(1, 2), Rational(1, 4), Rational(1, 16)}) check(m, eps);
  // Degree grows like sqrt(m) at fixed error.
  auto big = check(16, Rational(1, 3));
  CHECK(big.chebyshev_degree <= 6);
  CHECK_THROWS_AS(chebyshev_and_approx(4, 0), PreconditionViolated);
}

TEST_CASE("Markov-type checker") {
  auto r = markov_bound_check(UnivariatePoly({0, 1}), 1, 1);
  CHECK(r.max_abs_p.lower == 1);
  CHECK(r.max_abs_p.exact());
  CHECK(r.max_abs_dp.lower == 1);
  CHECK(r.max_abs_dp.exact());
  CHECK(!r.ratio.has_value());

  auto t3 = markov_bound_check(UnivariatePoly::chebyshev(3), 4, 1);
  CHECK(t3.max_abs_p.lower == 1);
  CHECK(t3.max_abs_p.upper - 1 <= pow2(-30));
  CHECK(t3.max_abs_dp.lower == 9);
  CHECK(t3.max_abs_dp.exact());
  REQUIRE(t3.ratio.has_value());

  auto half = markov_bound_check(UnivariatePoly({Rational(1, 2), Rational(1, 2)}), 1, 1);
  CHECK(half.max_abs_p.lower == 1);
  CHECK(half.max_abs_dp.lower == Rational(1, 2));
  CHECK_THROWS_AS(markov_bound_check(UnivariatePoly(), 1, 1), PreconditionViolated);

  std::mt19937_64 rng(9);
  std::uniform_int_distribution<int> c(-5, 5);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<Rational> co;
    for (int i = 0; i <= 2 + trial % 5; ++i) co.push_back(Rational(c(rng), 1 + trial % 3));
    UnivariatePoly P(co);
    if (P.is_zero()) continue;
    auto e = max_abs_on_interval(P);
    CHECK(e.lower <= e.upper);
    CHECK(e.upper - e.lower <= pow2(-20));
    for (int i = -200; i <= 200; ++i) REQUIRE(abs(P(frac(i, 200))) <= e.upper);
  }
}
