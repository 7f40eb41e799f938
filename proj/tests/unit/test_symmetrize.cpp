#include <doctest.h>

#include <random>

#include "adeg/symmetrize.hpp"

using namespace adeg;

namespace {

MultilinearPoly random_poly(std::mt19937_64& rng, int n, int deg) {
  MultilinearPoly p(n);
  for (uint64_t S : subsets_up_to(n, deg)) p.set(S, frac(static_cast<long>(rng() % 11) - 5, 1 + static_cast<long>(rng() % 4)));
  return p;
}

// Oracle: average over the orbit set {y : y ~ x} enumerated by brute force
// over all group elements, counting multiplicities, with direct evaluation.
Rational psym_direct(const MultilinearPoly& p, const PropertyEncoding& enc, uint64_t x) {
  const auto g = enc.decode(x);
  Rational s = 0;
  long count = 0;
  for (const auto& sigma : permutations(enc.R))
    for (const auto& pi : permutations(enc.N)) {
      std::vector<int> h(g.size());
      for (size_t i = 0; i < g.size(); ++i) h[i] = sigma[g[pi[i]]];
      s += p.evaluate(enc.encode(h));
      ++count;
    }
  return s / count;
}

}  // namespace

TEST_CASE("encoding round trip and action") {
  const PropertyEncoding enc(3, 4);
  CHECK(enc.arity() == 6);
  for (uint64_t x = 0; x < 64; ++x) CHECK(enc.encode(enc.decode(x)) == x);
  // Block 0 = (-1, 1) reads as binary 10 = 2.
  CHECK(enc.decode(0b000001)[0] == 2);
  const Permutation sigma{1, 2, 3, 0}, pi{2, 0, 1};
  for (uint64_t x = 0; x < 64; ++x) {
    const auto g = enc.decode(x), h = enc.decode(act(enc, x, sigma, pi));
    for (int i = 0; i < 3; ++i) CHECK(h[i] == sigma[g[pi[i]]]);
  }
  CHECK_THROWS_AS(PropertyEncoding(3, 3), PreconditionViolated);
}

TEST_CASE("psym examples") {
  const PropertyEncoding enc(2, 2);
  MultilinearPoly c(2);
  c.set(0, frac(3, 7));
  CHECK(psym(c, enc) == c);

  MultilinearPoly x11(2);
  x11.set(1, 1);
  const auto s = psym(x11, enc);
  for (uint64_t x = 0; x < 4; ++x) CHECK(s.evaluate(x) == psym_direct(x11, enc, x));
  // The two distinct-valued inputs agree.
  const auto sv = s.values();
  CHECK(sv[1] == sv[2]);

  MultilinearPoly lin(4);
  lin.set(1, 1);
  lin.set(8, 2);
  CHECK(psym(lin, PropertyEncoding(2, 4)).degree() <= 2);
}

TEST_CASE("degree law") {
  std::mt19937_64 rng(12);
  for (auto [N, R] : {std::pair{2, 2}, {3, 2}, {4, 2}, {2, 4}, {3, 4}, {4, 4}})
    for (int deg = 0; deg <= 2; ++deg)
      for (int it = 0; it < 3; ++it) {
        const PropertyEncoding enc(N, R);
        const auto p = random_poly(rng, enc.arity(), deg);
        CHECK(psym(p, enc).degree() <= enc.bits() * deg);
      }
}

TEST_CASE("psym is invariant and matches the direct average") {
  std::mt19937_64 rng(13);
  for (auto [N, R] : {std::pair{2, 2}, {3, 2}, {2, 4}, {3, 4}}) {
    const PropertyEncoding enc(N, R);
    const auto p = random_poly(rng, enc.arity(), 2);
    const auto sv = psym(p, enc).values();
    for (uint64_t x = 0; x < sv.size(); ++x) {
      if (enc.arity() <= 4) CHECK(sv[x] == psym_direct(p, enc, x));
      for (const auto& sigma : permutations(R))
        for (const auto& pi : permutations(N)) REQUIRE(sv[act(enc, x, sigma, pi)] == sv[x]);
    }
  }
  CHECK_THROWS_AS(psym(MultilinearPoly(3), PropertyEncoding(1, 8)), OrbitTooLarge);
}

TEST_CASE("symmetric properties") {
  CHECK(is_symmetric_property(make_ed(2, 2), PropertyEncoding(2, 2)));
  CHECK(is_symmetric_property(make_ed(4, 4), PropertyEncoding(4, 4)));
  CHECK(is_symmetric_property(make_two_to_one(2, 4), PropertyEncoding(2, 4)));
  CHECK_FALSE(is_symmetric_property(make_and(2), PropertyEncoding(2, 2)));
}

TEST_CASE("one-sided repair") {
  const PropertyEncoding enc(2, 2);
  const auto ed = make_ed(2, 2);
  const auto exact = MultilinearPoly::from_values(2, std::vector<Rational>(ed.values().begin(), ed.values().end()));
  const auto r0 = one_sided_repair(exact, ed, enc, 0);
  CHECK(r0.r == exact);
  CHECK(r0.error == 0);

  for (int d = 0; d <= 2; ++d) {
    const auto be = best_error(ed, d, true);
    const auto rep = one_sided_repair(be.primal, ed, enc, be.value);
    CHECK(rep.error <= be.value);
    CHECK(rep.r.degree() <= d * enc.bits());
  }

  // A one-sided approximation far below -1 on the TRUE set gets rescaled.
  MultilinearPoly low(2);
  low.set(0, -1);
  low.set(3, 2);  // values 1, -3, -3, 1
  const auto rl = one_sided_repair(low, ed, enc, Rational(1, 2));
  CHECK(rl.rescaled);
  CHECK(rl.v == -3);
  CHECK(rl.error == 0);

  CHECK_THROWS_AS(one_sided_repair(best_error(make_and(2), 1, true).primal, make_and(2), enc, Rational(1, 2)),
                  OrbitAssumptionViolated);
}

TEST_CASE("repair on ED(4, 4) preserves one-sided approximations") {
  const PropertyEncoding enc(4, 4);
  const auto ed = make_ed(4, 4);
  const auto be = best_error(ed, 1, true);
  const auto sv = psym_values(be.primal.values(), enc);
  for (uint64_t x = 0; x < ed.size(); ++x) {
    if (ed.is_true(x)) CHECK(sv[x] <= -1 + be.value);
    else CHECK(abs(sv[x] - 1) <= be.value);
  }
  const auto rep = one_sided_repair(be.primal, ed, enc, be.value);
  CHECK(rep.error <= be.value);
  CHECK(rep.r.degree() <= 2);
}

TEST_CASE("domain symmetrization of dual witnesses") {
  const PropertyEncoding enc(2, 2);
  const auto ed = make_ed(2, 2);
  std::vector<Rational> v{frac(1, 4), frac(-1, 4), frac(-1, 4), frac(1, 4)};
  const DualWitness sym(2, v);
  CHECK(symmetrize_dual_domain(sym, enc) == sym);

  const auto be = best_error(ed, 0, false);
  const auto psi = from_dual_lp(be.solution, DualKind::TwoSided, ed, 0);
  const auto Psi = symmetrize_dual_domain(psi, enc);
  CHECK(Psi.one_sided_for(ed));
  CHECK(Psi.correlation(ed) >= psi.correlation(ed));

  // Mass on a single character spreads over its block orbit.
  MultilinearPoly c(4);
  c.set(0b0011, 1);
  std::vector<Rational> cv = c.values();
  for (auto& e : cv) e /= 16;
  const DualWitness chi12(4, cv);
  const auto spread = symmetrize_dual_domain(chi12, PropertyEncoding(2, 4));
  CHECK(spread.pure_high_degree() == chi12.pure_high_degree());
  const auto coeffs = MultilinearPoly::from_values(4, spread.values());
  CHECK(coeffs.coeff(0b1100) == coeffs.coeff(0b0011));
}

TEST_CASE("symmetrized ED duals are one-sided below the approximate degree") {
  // ED(4, 4) has approximate degree above 2; its exact LPs beyond d = 2 are
  // too slow for a unit test, so only the low degrees are checked there.
  for (int N : {2, 4}) {
    const PropertyEncoding enc(N, N);
    const auto ed = make_ed(N, N);
    const int deg = N == 2 ? approx_degree(ed, Rational(1, 3), false) : 3;
    for (int d = 0; d < deg; ++d) {
      const auto be = best_error(ed, d, false);
      const auto psi = from_dual_lp(be.solution, DualKind::TwoSided, ed, d);
      const auto Psi = symmetrize_dual_domain(psi, enc);
      const auto rep = verify(Psi, ed, d, be.value * 1023 / 1024, true);
      CHECK(rep.passed());
      for (uint64_t x = 0; x < ed.size(); ++x)
        if (ed.is_true(x)) CHECK(Psi[x] < 0);
    }
  }
}
