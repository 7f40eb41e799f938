#include "adeg/symmetrize.hpp"

#include <algorithm>
#include <numeric>

namespace adeg {

PropertyEncoding::PropertyEncoding(int N_, int R_) : N(N_), R(R_) {
  if (N < 1) throw PreconditionViolated("property encoding needs N >= 1");
  if (R < 2 || (R & (R - 1)) != 0)
    throw PreconditionViolated("range size R must be a power of 2 and at least 2, got " +
                               std::to_string(R));
  check_arity(static_cast<long>(N) * bits());
}

int PropertyEncoding::bits() const { return __builtin_ctz(static_cast<unsigned>(R)); }

std::vector<int> PropertyEncoding::decode(uint64_t idx) const {
  std::vector<int> g(static_cast<size_t>(N));
  for (int i = 0; i < N; ++i) g[i] = static_cast<int>(block_value(idx, i, bits()));
  return g;
}

uint64_t PropertyEncoding::encode(const std::vector<int>& g) const {
  if (static_cast<int>(g.size()) != N) throw DimensionMismatch("encode: wrong number of blocks");
  const int b = bits();
  uint64_t idx = 0;
  for (int i = 0; i < N; ++i) {
    if (g[i] < 0 || g[i] >= R) throw DimensionMismatch("encode: value outside the range");
    for (int k = 0; k < b; ++k)
      if ((g[i] >> (b - 1 - k)) & 1) idx |= uint64_t{1} << (i * b + k);
  }
  return idx;
}

std::vector<Permutation> permutations(int k) {
  Permutation p(static_cast<size_t>(k));
  std::iota(p.begin(), p.end(), 0);
  std::vector<Permutation> all;
  do all.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return all;
}

uint64_t act(const PropertyEncoding& enc, uint64_t idx, const Permutation& sigma,
             const Permutation& pi) {
  const auto g = enc.decode(idx);
  std::vector<int> h(g.size());
  for (size_t i = 0; i < g.size(); ++i) h[i] = sigma[g[pi[i]]];
  return enc.encode(h);
}

namespace {

void check_table(const PropertyEncoding& enc, size_t size) {
  if (size != (size_t{1} << enc.arity()))
    throw DimensionMismatch("table size does not match the property encoding");
}

size_t factorial(int k) {
  size_t r = 1;
  for (int i = 2; i <= k; ++i) r *= static_cast<size_t>(i);
  return r;
}

// Group elements as index maps y = sigma . x . pi, built once per call.
struct Group {
  std::vector<Permutation> sigmas, pis;
};

Group make_group(const PropertyEncoding& enc, bool with_range) {
  const size_t order = factorial(enc.N) * (with_range ? factorial(enc.R) : 1);
  if (enc.N > 12 || (with_range && enc.R > 12) || order > (size_t{1} << 14))
    throw OrbitTooLarge("orbit averaging over " + std::to_string(enc.N) + "!" +
                        (with_range ? " * " + std::to_string(enc.R) + "!" : std::string()) +
                        " group elements exceeds 2^14");
  Group g;
  g.pis = permutations(enc.N);
  if (with_range) {
    g.sigmas = permutations(enc.R);
  } else {
    Permutation id(static_cast<size_t>(enc.R));
    std::iota(id.begin(), id.end(), 0);
    g.sigmas = {id};
  }
  return g;
}

std::vector<Rational> orbit_average(const std::vector<Rational>& values,
                                    const PropertyEncoding& enc, bool with_range) {
  check_table(enc, values.size());
  const Group grp = make_group(enc, with_range);
  const Rational count(static_cast<unsigned long>(grp.sigmas.size() * grp.pis.size()));
  std::vector<Rational> out(values.size());
  std::vector<int> h(static_cast<size_t>(enc.N));
  for (uint64_t x = 0; x < values.size(); ++x) {
    const auto g = enc.decode(x);
    Rational s = 0;
    for (const auto& sigma : grp.sigmas)
      for (const auto& pi : grp.pis) {
        for (int i = 0; i < enc.N; ++i) h[i] = sigma[g[pi[i]]];
        s += values[enc.encode(h)];
      }
    out[x] = s / count;
  }
  return out;
}

}  // namespace

bool is_symmetric_property(const TruthTable& f, const PropertyEncoding& enc) {
  check_table(enc, f.size());
  // Adjacent transpositions generate both groups.
  std::vector<std::pair<Permutation, Permutation>> gens;
  Permutation idN(static_cast<size_t>(enc.N)), idR(static_cast<size_t>(enc.R));
  std::iota(idN.begin(), idN.end(), 0);
  std::iota(idR.begin(), idR.end(), 0);
  for (int i = 0; i + 1 < enc.N; ++i) {
    auto pi = idN;
    std::swap(pi[i], pi[i + 1]);
    gens.emplace_back(idR, pi);
  }
  for (int j = 0; j + 1 < enc.R; ++j) {
    auto sigma = idR;
    std::swap(sigma[j], sigma[j + 1]);
    gens.emplace_back(sigma, idN);
  }
  for (uint64_t x = 0; x < f.size(); ++x)
    for (const auto& [sigma, pi] : gens)
      if (f[act(enc, x, sigma, pi)] != f[x]) return false;
  return true;
}

std::vector<Rational> psym_values(const std::vector<Rational>& values, const PropertyEncoding& enc) {
  return orbit_average(values, enc, true);
}

MultilinearPoly psym(const MultilinearPoly& p, const PropertyEncoding& enc) {
  if (p.arity() != enc.arity()) throw DimensionMismatch("psym: polynomial arity mismatch");
  return MultilinearPoly::from_values(p.arity(), psym_values(p.values(), enc));
}

RepairResult one_sided_repair(const MultilinearPoly& p, const TruthTable& f,
                              const PropertyEncoding& enc, const Rational& eps) {
  if (p.arity() != f.arity() || f.arity() != enc.arity())
    throw DimensionMismatch("one_sided_repair: arity mismatch");
  if (!is_symmetric_property(f, enc))
    throw OrbitAssumptionViolated("f is not invariant under range and domain permutations");
  const auto pv = p.values();
  for (uint64_t x = 0; x < f.size(); ++x) {
    const bool ok = f.is_true(x) ? pv[x] <= -1 + eps : abs(pv[x] - 1) <= eps;
    if (!ok) throw PreconditionViolated("p is not an eps one-sided approximation of f");
  }
  RepairResult out;
  const auto sv = psym_values(pv, enc);
  out.psym = MultilinearPoly::from_values(p.arity(), sv);
  bool have_v = false;
  for (uint64_t x = 0; x < f.size(); ++x) {
    if (!f.is_true(x)) continue;
    if (!have_v) {
      out.v = sv[x];
      have_v = true;
    } else if (sv[x] != out.v) {
      throw OrbitAssumptionViolated("p^sym is not constant on f^{-1}(-1): the TRUE set spans several orbits");
    }
  }
  if (!have_v || out.v >= -1 - eps) {
    out.r = out.psym;
  } else {
    out.rescaled = true;
    const Rational scale = 2 / abs(out.v - 1);
    MultilinearPoly shift(p.arity());
    shift.set(0, 1);
    out.r = shift + (out.psym - shift).scaled(scale);
  }
  out.error = linf_error(out.r, f);
  if (out.error > eps) throw CertificateViolation("repaired polynomial misses the error bound");
  return out;
}

DualWitness symmetrize_dual_domain(const DualWitness& psi, const PropertyEncoding& enc) {
  if (psi.arity() != enc.arity()) throw DimensionMismatch("witness arity mismatch");
  if (enc.N > 6) throw PreconditionViolated("domain symmetrization is limited to N <= 6");
  return DualWitness(psi.arity(), orbit_average(psi.values(), enc, false)).normalized();
}

}  // namespace adeg
