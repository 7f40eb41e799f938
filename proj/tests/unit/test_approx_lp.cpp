#include <doctest.h>

#include <random>

#include "adeg/approx_lp.hpp"

using namespace adeg;
using namespace adeg::lp;

namespace {

TruthTable table_from_bits(int n, uint64_t bits) {
  return TruthTable::generate(n, [&](uint64_t x) { return (bits >> x) & 1; });
}

// Oracle: the primal boxed program solved directly, min eps over (c_S, eps).
Rational primal_error(const TruthTable& f, int d, bool one_sided) {
  const auto subsets = subsets_up_to(f.arity(), d);
  LinearProgram lp;
  lp.direction = Direction::Minimize;
  lp.objective.assign(subsets.size() + 1, 0);
  lp.objective.back() = 1;
  lp.bounds.assign(subsets.size(), VarBound::Free);
  lp.bounds.push_back(VarBound::NonNegative);
  for (uint64_t x = 0; x < f.size(); ++x) {
    std::vector<Rational> row;
    for (uint64_t S : subsets) row.push_back(chi(S, x));
    row.push_back(-1);
    lp.add_row(row, Sense::LessEqual, f[x]);  // p - eps <= f
    if (one_sided && f.is_true(x)) continue;
    row.back() = 1;
    lp.add_row(row, Sense::GreaterEqual, f[x]);  // p + eps >= f
  }
  auto sol = solve_lp(lp);
  REQUIRE(sol.status == Status::Optimal);
  return sol.objective_value;
}

}  // namespace

TEST_CASE("best_error examples") {
  CHECK(best_error(make_and(2), 1, false).value == Rational(1, 2));
  auto one = best_error(make_and(2), 1, true);
  CHECK(one.value == Rational(1, 2));
  // The stated witness p = 1/2 + (x1 + x2)/2 is a one-sided 1/2-approximation.
  MultilinearPoly p(2);
  p.set(0, Rational(1, 2));
  p.set(1, Rational(1, 2));
  p.set(2, Rational(1, 2));
  const auto v = p.values();
  CHECK(v == std::vector<Rational>{Rational(3, 2), Rational(1, 2), Rational(1, 2), Rational(-1, 2)});
  for (uint64_t x = 0; x < 3; ++x) CHECK(abs(v[x] - 1) <= Rational(1, 2));
  CHECK(v[3] <= Rational(-1, 2));
  CHECK(best_error(make_and(4), 1, true).value > Rational(1, 2));
}

TEST_CASE("best_error agrees with the primal program") {
  for (int n = 1; n <= 3; ++n)
    for (uint64_t bits = 0; bits < (uint64_t{1} << (1u << n)); bits += (n == 3 ? 7 : 1)) {
      const auto f = table_from_bits(n, bits);
      for (int d = 0; d <= n; ++d)
        for (bool os : {false, true}) {
          const auto r = best_error(f, d, os);
          REQUIRE(r.value == primal_error(f, d, os));
        }
    }
}

TEST_CASE("monotone in degree; one-sided never exceeds two-sided") {
  std::mt19937_64 rng(4);
  std::vector<TruthTable> fs;
  for (int n = 1; n <= 3; ++n)
    for (uint64_t bits = 0; bits < (uint64_t{1} << (1u << n)); ++bits) fs.push_back(table_from_bits(n, bits));
  for (int i = 0; i < 40; ++i) fs.push_back(table_from_bits(4, rng() & 0xffff));
  for (const auto& f : fs) {
    Rational prev_two = 2, prev_one = 3;
    for (int d = 0; d <= f.arity(); ++d) {
      const auto two = best_error(f, d, false).value;
      const auto one = best_error(f, d, true).value;
      REQUIRE(two <= prev_two);
      REQUIRE(one <= prev_one);
      REQUIRE(one <= two);
      prev_two = two;
      prev_one = one;
    }
    CHECK(prev_two == 0);
  }
}

TEST_CASE("one-sided and two-sided degree of AND agree at 1/3") {
  for (int m = 2; m <= 4; ++m)
    CHECK(approx_degree(make_and(m), Rational(1, 3), true) ==
          approx_degree(make_and(m), Rational(1, 3), false));
}

TEST_CASE("approx_weight") {
  const auto x1 = make_character(1, 1);
  CHECK(approx_weight(x1, 1, 0, false).value == 1);
  CHECK(approx_weight(make_and(2), 1, 2, false).value == 0);
  CHECK(approx_weight(make_and(2), 1, Rational(1, 4), false).value_kind == ValueKind::Infinite);
  CHECK(approx_weight(make_and(2), 1, Rational(1, 2), false).finite());

  const auto ow = approx_weight(make_and(2), 1, Rational(3, 4), true);
  REQUIRE(ow.finite());
  // Oracle: grid over a + b1 x1 + b2 x2 with eighths in [-2, 2].
  const auto f = make_and(2);
  Rational best = 100;
  for (int a = -16; a <= 16; ++a)
    for (int b1 = -16; b1 <= 16; ++b1)
      for (int b2 = -16; b2 <= 16; ++b2) {
        bool ok = true;
        for (uint64_t x = 0; x < 4 && ok; ++x) {
          const Rational v = frac(a + b1 * coord(x, 0) + b2 * coord(x, 1), 8);
          ok = f.is_true(x) ? v <= Rational(-1, 4) : abs(v - 1) <= Rational(3, 4);
        }
        if (ok) best = std::min(best, frac(std::abs(b1) + std::abs(b2), 8));
      }
  CHECK(ow.value == best);
  CHECK(ow.value == Rational(1, 2));
}

TEST_CASE("threshold weight") {
  CHECK(threshold_weight(make_character(1, 1), 1).value == 1);
  const auto a = threshold_weight(make_and(2), 1);
  CHECK(a.value == 3);
  CHECK(sign_represents(a.primal, make_and(2)));
  CHECK(threshold_weight(make_parity(2), 1).value_kind == ValueKind::Infinite);
  CHECK(threshold_weight(make_and(2), 2).value == 3);

  // Oracle: exhaustive integer search for every f on 2 variables.
  for (uint64_t bits = 0; bits < 16; ++bits) {
    const auto f = table_from_bits(2, bits);
    for (int d = 0; d <= 2; ++d) {
      const auto subsets = subsets_up_to(2, d);
      int best = -1;
      for (int W = 0; W <= 6 && best < 0; ++W) {
        std::vector<int> c(subsets.size(), -W);
        for (;;) {
          int wsum = 0;
          for (int v : c) wsum += std::abs(v);
          if (wsum == W) {
            bool ok = true;
            for (uint64_t x = 0; x < 4 && ok; ++x) {
              int s = 0;
              for (size_t k = 0; k < c.size(); ++k) s += c[k] * chi(subsets[k], x);
              ok = f[x] * s >= 1;
            }
            if (ok) best = W;
          }
          size_t k = 0;
          while (k < c.size() && c[k] == W) c[k++] = -W;
          if (k == c.size()) break;
          ++c[k];
        }
      }
      const auto r = threshold_weight(f, d);
      if (best < 0) CHECK(r.value_kind == ValueKind::Infinite);
      else CHECK(r.value == best);
    }
  }
}

TEST_CASE("node budget gives a bracket") {
  MeasureOptions o;
  o.node_budget = 1;
  const auto r = threshold_weight(make_ed(2, 4), 2, o);
  if (r.value_kind == ValueKind::Bracket) {
    CHECK(r.lower <= r.upper);
    CHECK(sign_represents(r.primal, make_ed(2, 4)));
    CHECK(weight(r.primal) == r.upper);
  } else {
    CHECK(r.finite());
  }
}

TEST_CASE("hardest distribution") {
  auto check_mu = [](const TruthTable& f, int d, const HardestDistribution& h) {
    Rational total = 0, worst = 0;
    for (const auto& m : h.mu) {
      CHECK(m >= 0);
      total += m;
    }
    CHECK(total == 1);
    for (uint64_t S : subsets_up_to(f.arity(), d)) {
      Rational e = 0;
      for (uint64_t x = 0; x < f.size(); ++x) e += h.mu[x] * f[x] * chi(S, x);
      worst = std::max(worst, Rational(abs(e)));
    }
    CHECK(worst == h.value);
  };
  const auto x1 = make_character(1, 1);
  auto h1 = hardest_distribution(x1, 1, Rational(1));
  check_mu(x1, 1, h1);
  CHECK(h1.value == 1);
  CHECK(*h1.satisfies_weight_bound);
  auto hp = hardest_distribution(make_parity(2), 1);
  check_mu(make_parity(2), 1, hp);
  CHECK(hp.value == 0);
  auto ha = hardest_distribution(make_and(2), 2, threshold_weight(make_and(2), 2).value);
  check_mu(make_and(2), 2, ha);
  CHECK(ha.value >= Rational(1, 3));
  CHECK(*ha.satisfies_weight_bound);
}

TEST_CASE("weight relations chain") {
  std::mt19937_64 rng(8);
  std::vector<TruthTable> fs;
  for (int n = 1; n <= 3; ++n)
    for (uint64_t bits = 0; bits < (uint64_t{1} << (1u << n)); ++bits) fs.push_back(table_from_bits(n, bits));
  for (int i = 0; i < 12; ++i) fs.push_back(table_from_bits(4, rng() & 0xffff));
  const std::vector<Rational> ws{1, Rational(3, 2), 2, 3, 4, 6, 10};
  MeasureOptions small;
  small.node_budget = 300;
  for (const auto& f : fs)
    for (int d = 0; d < f.arity(); ++d) {
      const auto e = best_error(f, d, false).value;
      // n = 4 IPs can be slow; a bracket still certifies W >= lower.
      const auto tw = threshold_weight(f, d, f.arity() == 4 ? small : MeasureOptions{});
      if (f.arity() < 4) REQUIRE(tw.value_kind != ValueKind::Bracket);
      for (const auto& w : ws) {
        const Rational eps = 1 - 1 / w;
        const bool s1 = e > eps;
        const auto aw = approx_weight(f, d, eps, false);
        const bool s2 = !aw.finite() || aw.value > 1;
        const bool s3 = !tw.finite() || (tw.value_kind == ValueKind::Bracket ? tw.lower : tw.value) > w;
        if (s1) REQUIRE(s2);
        if (s2) REQUIRE(s3);
      }
    }
}
