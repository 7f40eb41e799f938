#include <doctest.h>

#include <random>

#include "adeg/exact_lp.hpp"

using namespace adeg;
using namespace adeg::lp;

namespace {

LinearProgram single(Direction dir, Rational c) {
  LinearProgram lp;
  lp.direction = dir;
  lp.objective = {c};
  lp.bounds = {VarBound::NonNegative};
  return lp;
}

}  // namespace

TEST_CASE("min x s.t. x >= 3") {
  auto lp = single(Direction::Minimize, 1);
  lp.add_row({1}, Sense::GreaterEqual, 3);
  auto sol = solve_lp(lp);
  REQUIRE(sol.status == Status::Optimal);
  CHECK(sol.objective_value == 3);
  CHECK(sol.primal[0] == 3);
  CHECK(dual_feasible(lp, sol.dual));
  CHECK(dual_objective(lp, sol.dual) == 3);
}

TEST_CASE("unbounded max") {
  auto lp = single(Direction::Maximize, 1);
  lp.add_row({1}, Sense::GreaterEqual, 0);
  CHECK(solve_lp(lp).status == Status::Unbounded);
}

TEST_CASE("infeasible system") {
  auto lp = single(Direction::Minimize, 1);
  lp.add_row({1}, Sense::LessEqual, 1);
  lp.add_row({1}, Sense::GreaterEqual, 2);
  CHECK(solve_lp(lp).status == Status::Infeasible);
}

TEST_CASE("malformed input") {
  LinearProgram lp;
  lp.objective = {1, 2};
  lp.bounds = {VarBound::NonNegative, VarBound::NonNegative};
  lp.add_row({1}, Sense::LessEqual, 1);
  CHECK_THROWS_AS(solve_lp(lp), DimensionMismatch);
  LinearProgram free_only;
  free_only.objective = {1};
  free_only.bounds = {VarBound::Free};
  CHECK_THROWS_AS(solve_lp(free_only), DimensionMismatch);
}

TEST_CASE("AND_2 degree-1 approximation LP") {
  // Variables (a, b1, b2, eps); |f(x) - a - b1 x1 - b2 x2| <= eps.
  LinearProgram lp;
  lp.direction = Direction::Minimize;
  lp.objective = {0, 0, 0, 1};
  lp.bounds = {VarBound::Free, VarBound::Free, VarBound::Free, VarBound::NonNegative};
  const int f[4] = {1, 1, 1, -1};
  for (int idx = 0; idx < 4; ++idx) {
    Rational x1 = (idx & 1) ? -1 : 1, x2 = (idx & 2) ? -1 : 1;
    lp.add_row({1, x1, x2, 1}, Sense::GreaterEqual, f[idx]);
    lp.add_row({1, x1, x2, -1}, Sense::LessEqual, f[idx]);
  }
  for (auto rule : {PivotRule::Bland, PivotRule::LargestCoefficient}) {
    auto sol = solve_lp(lp, {rule});
    REQUIRE(sol.status == Status::Optimal);
    CHECK(sol.objective_value == Rational(1, 2));
    CHECK(primal_feasible(lp, sol.primal));
    CHECK(dual_feasible(lp, sol.dual));
  }
  // Oracle: symmetric a + b(x1+x2); max error over the three weight classes.
  Rational best = 10;
  for (int an = -8; an <= 8; ++an)
    for (int bn = -8; bn <= 8; ++bn) {
      Rational a(an, 4), b(bn, 4);
      Rational e = 0;
      for (auto [v, fv] : {std::pair{Rational(2), 1}, {Rational(0), 1}, {Rational(-2), -1}}) {
        Rational diff = abs(a + b * v - fv);
        if (diff > e) e = diff;
      }
      if (e < best) best = e;
    }
  CHECK(best == Rational(1, 2));
}

TEST_CASE("random LPs carry exact optimality certificates") {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> coef(-4, 4);
  int optimal = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const int nv = 2 + trial % 4, m = 1 + trial % 5;
    LinearProgram lp;
    lp.direction = trial % 2 ? Direction::Maximize : Direction::Minimize;
    for (int j = 0; j < nv; ++j) {
      lp.objective.push_back(coef(rng));
      lp.bounds.push_back(j % 3 == 0 ? VarBound::Free : VarBound::NonNegative);
    }
    for (int i = 0; i < m; ++i) {
      std::vector<Rational> row;
      for (int j = 0; j < nv; ++j) row.push_back(coef(rng));
      lp.add_row(row, static_cast<Sense>(i % 3), coef(rng));
    }
    // Box every column so most instances are bounded.
    for (int j = 0; j < nv; ++j) {
      std::vector<Rational> row(nv);
      row[j] = 1;
      lp.add_row(row, Sense::LessEqual, 5);
      row[j] = -1;
      lp.add_row(row, Sense::LessEqual, 5);
    }
    auto a = solve_lp(lp, {PivotRule::Bland});
    auto b = solve_lp(lp, {PivotRule::LargestCoefficient});
    REQUIRE(a.status == b.status);
    CHECK(a.status != Status::Unbounded);
    if (a.status != Status::Optimal) continue;
    ++optimal;
    CHECK(primal_feasible(lp, a.primal));
    CHECK(dual_feasible(lp, a.dual));
    CHECK(dual_objective(lp, a.dual) == a.objective_value);
    CHECK(a.objective_value == b.objective_value);
    auto again = solve_lp(lp, {PivotRule::Bland});
    CHECK(again.primal == a.primal);
    CHECK(again.dual == a.dual);
  }
  CHECK(optimal > 50);
}

TEST_CASE("integer programs") {
  SUBCASE("c >= 3/2 rounds up") {
    auto lp = single(Direction::Minimize, 1);
    lp.add_row({1}, Sense::GreaterEqual, Rational(3, 2));
    auto sol = solve_ip(lp, {0});
    REQUIRE(sol.status == Status::Optimal);
    CHECK(sol.primal[0] == 2);
  }
  SUBCASE("no integer point") {
    auto lp = single(Direction::Minimize, 1);
    lp.add_row({1}, Sense::GreaterEqual, Rational(1, 3));
    lp.add_row({1}, Sense::LessEqual, Rational(2, 3));
    CHECK(solve_ip(lp, {0}).status == Status::Infeasible);
  }
  SUBCASE("threshold weight of AND_2 at degree 2") {
    // Columns: c+_S then c-_S for S in (empty, {1}, {2}, {1,2}).
    LinearProgram lp;
    lp.direction = Direction::Minimize;
    lp.objective.assign(8, 1);
    lp.bounds.assign(8, VarBound::NonNegative);
    const int f[4] = {1, 1, 1, -1};
    for (int idx = 0; idx < 4; ++idx) {
      int x1 = (idx & 1) ? -1 : 1, x2 = (idx & 2) ? -1 : 1;
      int chi[4] = {1, x1, x2, x1 * x2};
      std::vector<Rational> row(8);
      for (int s = 0; s < 4; ++s) {
        row[s] = f[idx] * chi[s];
        row[4 + s] = -f[idx] * chi[s];
      }
      lp.add_row(row, Sense::GreaterEqual, 1);
    }
    auto sol = solve_ip(lp, {0, 1, 2, 3, 4, 5, 6, 7});
    REQUIRE(sol.status == Status::Optimal);
    CHECK(sol.objective_value == 3);
    // Oracle: exhaustive integer coefficients with |c_S| <= 3.
    int best = 100;
    for (int c0 = -3; c0 <= 3; ++c0)
      for (int c1 = -3; c1 <= 3; ++c1)
        for (int c2 = -3; c2 <= 3; ++c2)
          for (int c3 = -3; c3 <= 3; ++c3) {
            bool ok = true;
            for (int idx = 0; idx < 4 && ok; ++idx) {
              int x1 = (idx & 1) ? -1 : 1, x2 = (idx & 2) ? -1 : 1;
              ok = f[idx] * (c0 + c1 * x1 + c2 * x2 + c3 * x1 * x2) >= 1;
            }
            if (ok) best = std::min(best, std::abs(c0) + std::abs(c1) + std::abs(c2) + std::abs(c3));
          }
    CHECK(best == 3);
  }
  SUBCASE("node budget") {
    auto lp = single(Direction::Minimize, 1);
    lp.add_row({2}, Sense::GreaterEqual, 1);
    IpOptions opts;
    opts.node_budget = 1;
    CHECK_THROWS_AS(solve_ip(lp, {0}, opts), NodeBudgetExceeded);
  }
}
