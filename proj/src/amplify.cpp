#include "adeg/amplify.hpp"

namespace adeg {

DualWitness canonical_or_outer(int t) {
  if (t < 1) throw PreconditionViolated("outer arity must be positive");
  check_arity(t);
  std::vector<Rational> v(size_t{1} << t);
  v.front() = Rational(1, 2);
  v.back() = Rational(-1, 2);
  return DualWitness(t, std::move(v));
}

namespace {

// Sign-pattern index z of x: bit i set iff s~gn(psi(x_i)) = -1.
uint64_t sign_pattern(const DualWitness& inner, uint64_t idx, int t) {
  const int m = inner.arity();
  const uint64_t mask = (uint64_t{1} << m) - 1;
  uint64_t z = 0;
  for (int i = 0; i < t; ++i)
    if (inner[(idx >> (i * m)) & mask] <= 0) z |= uint64_t{1} << i;
  return z;
}

}  // namespace

DualWitness combine_scaled(const DualWitness& outer, const DualWitness& inner,
                           const Rational& scale) {
  const int t = outer.arity(), m = inner.arity();
  check_arity(static_cast<long>(t) * m);
  const uint64_t mask = (uint64_t{1} << m) - 1;
  std::vector<Rational> absv(inner.size());
  for (size_t x = 0; x < inner.size(); ++x) absv[x] = abs(inner[x]);
  std::vector<Rational> out(size_t{1} << (t * m));
  Rational prod;
  for (uint64_t idx = 0; idx < out.size(); ++idx) {
    const Rational& o = outer[sign_pattern(inner, idx, t)];
    if (o == 0) continue;
    prod = scale * o;
    for (int i = 0; i < t && prod != 0; ++i) prod *= absv[(idx >> (i * m)) & mask];
    out[idx] = prod;
  }
  return DualWitness(t * m, std::move(out));
}

DualWitness combine(const DualWitness& outer, const DualWitness& inner) {
  if (!inner.balanced()) throw PreconditionViolated("combine: inner witness is not balanced");
  if (inner.l1_norm() != 1) throw PreconditionViolated("combine: inner witness needs unit L1 mass");
  return combine_scaled(outer, inner, pow2(outer.arity()));
}

AmplifyResult or_amplify(const TruthTable& f, int d, int t, const MeasureOptions& opts) {
  if (t < 1) throw PreconditionViolated("t must be positive");
  check_arity(static_cast<long>(t) * f.arity());
  const auto be = best_error(f, d, true, opts);
  if (be.value <= Rational(1, 2))
    throw PreconditionViolated("one-sided degree-" + std::to_string(d) + " error is " +
                               to_string(be.value) +
                               ", not above 1/2: the one-sided degree does not exceed d");
  AmplifyResult r;
  r.inner_error = be.value;
  r.inner = from_dual_lp(be.solution, DualKind::OneSided, f, d);
  r.zeta = combine(canonical_or_outer(t), r.inner);
  r.F = compose(make_or(t), f, t);
  r.target = 1 - pow2(-t);
  r.report = verify(r.zeta, r.F, d, r.target, true);
  const uint64_t all = (uint64_t{1} << t) - 1;
  for (uint64_t idx = 0; idx < r.zeta.size(); ++idx) {
    if (r.zeta[idx] == 0) continue;
    const uint64_t z = sign_pattern(r.inner, idx, t);
    const Rational c = r.F[idx] > 0 ? r.zeta[idx] : Rational(-r.zeta[idx]);
    if (z == 0) r.block_pos += c;
    else if (z == all) r.block_neg += c;
  }
  r.block_neg_bound = Rational(1, 2) * (1 - pow2(1 - t));
  return r;
}

WeightAmplifyResult weight_amplify(const TruthTable& f, int d, int t, std::optional<Rational> w,
                                   const MeasureOptions& opts) {
  if (t < 1) throw PreconditionViolated("t must be positive");
  check_arity(static_cast<long>(t) * f.arity());
  const auto W = approx_weight(f, d, Rational(3, 4), true, opts);
  if (!W.finite())
    throw PreconditionViolated("W*_{3/4}(f, d) is infinite: no finite dual optimum to amplify");
  if (W.value == 0) throw PreconditionViolated("W*_{3/4}(f, d) = 0: nothing to amplify");
  if (w && *w >= W.value)
    throw PreconditionViolated("supplied w = " + to_string(*w) + " is not below W*_{3/4} = " +
                               to_string(W.value));
  WeightAmplifyResult r;
  r.inner_weight = W.value;
  r.w = w.value_or(W.value);
  r.psi = DualWitness(f.arity(), W.dual_raw);
  const Rational norm = r.psi.l1_norm();
  r.M_t = pow2(-2 * t) * pow(norm, 1 - t);
  r.zeta = combine_scaled(canonical_or_outer(t), r.psi, r.M_t);
  r.F = compose(make_or(t), f, t);
  r.correlation = r.zeta.correlation(r.F);
  r.l1 = r.zeta.l1_norm();
  r.lhs = r.correlation - (1 - pow2(-t)) * r.l1;
  r.rhs = pow2(-5 * t) * r.w;
  r.margin_ok = r.lhs > r.rhs;
  const auto sums = character_sums(r.zeta.values());
  for (uint64_t S : subsets_up_to(r.F.arity(), d))
    if (abs(sums[S]) > r.max_low_degree_corr) r.max_low_degree_corr = abs(sums[S]);
  r.low_degree_ok = r.max_low_degree_corr <= 1;
  return r;
}

namespace {

CascadeStage make_stage(std::string name, std::string fn, const TruthTable& f, DualWitness psi) {
  CascadeStage s;
  s.name = std::move(name);
  s.function = std::move(fn);
  s.f = f;
  s.psi = std::move(psi);
  const auto rep = verify(s.psi, f, 0, 0, false);
  s.l1 = rep.l1;
  s.phd = rep.phd;
  s.correlation = rep.correlation;
  s.one_sided = rep.one_sided_ok;
  s.wrong_side_mass_pos = rep.wrong_side_mass_pos;
  s.wrong_side_mass_neg = rep.wrong_side_mass_neg;
  return s;
}

// Largest d whose one-sided error passes `accept`, with its normalized witness.
std::pair<int, MeasureResult> largest_degree(const TruthTable& f,
                                             bool (*accept)(const Rational&),
                                             const MeasureOptions& opts) {
  for (int d = f.arity(); d >= 1; --d) {
    auto r = best_error(f, d, true, opts);
    if (accept(r.value)) return {d, std::move(r)};
  }
  return {0, best_error(f, 0, true, opts)};
}

}  // namespace

CascadeResult cascade_depth3(int M, int t, const MeasureOptions& opts) {
  if (M < 1 || t < 1 || M % t != 0) throw PreconditionViolated("cascade needs t | M");
  check_arity(static_cast<long>(M) * M * M);
  CascadeResult out;
  out.M = M;
  out.t = t;
  const int k = M / t;
  const TruthTable and_m = make_and(M);
  const auto above_half = [](const Rational& e) { return e > Rational(1, 2); };
  const auto high = [](const Rational& e) { return e >= Rational(99, 100); };

  auto [d1, r1] = largest_degree(and_m, above_half, opts);
  DualWitness psi1 = from_dual_lp(r1.solution, DualKind::OneSided, and_m, d1);
  auto s1 = make_stage("psi_1", "AND_" + std::to_string(M), and_m, psi1);
  s1.degree = d1;
  s1.lp_error = r1.value;

  const DualWitness psi2 = canonical_or_outer(t);
  auto s2 = make_stage("psi_2", "OR_" + std::to_string(t), make_or(t), psi2);

  const TruthTable f3 = compose(make_or(t), and_m, t);
  auto s3 = make_stage("psi_3", "OR_t(AND_M)", f3, combine(psi2, psi1));

  // OR_k witness with nonnegative mass at 1^k: negate the one-sided witness
  // for -OR_k, which is TRUE only at 1^k.
  const TruthTable not_or = make_or(k).negated();
  auto [d4, r4] = largest_degree(not_or, high, opts);
  DualWitness g4 = from_dual_lp(r4.solution, DualKind::OneSided, not_or, d4);
  std::vector<Rational> neg4 = g4.values();
  for (auto& v : neg4) v = -v;
  const DualWitness psi4(k, std::move(neg4));
  auto s4 = make_stage("psi_4", "OR_" + std::to_string(k), make_or(k), psi4);
  s4.degree = d4;
  s4.lp_error = r4.value;
  out.psi4_nonneg_at_ones = psi4[0] >= 0;

  const TruthTable f5 = compose(make_or(k), f3, k);
  auto s5 = make_stage("psi_5", "OR_M(AND_M)", f5, combine(psi4, s3.psi));

  auto [d6, r6] = largest_degree(and_m, high, opts);
  DualWitness psi6 = from_dual_lp(r6.solution, DualKind::OneSided, and_m, d6);
  auto s6 = make_stage("psi_6", "AND_" + std::to_string(M), and_m, psi6);
  s6.degree = d6;
  s6.lp_error = r6.value;

  const TruthTable f7 = compose(and_m, f5, M);
  auto s7 = make_stage("psi_7", "AND_M(OR_M(AND_M))", f7, combine(psi6, s5.psi));

  out.bad_mass_psi5 = s5.wrong_side_mass_neg;
  out.bad_mass_bound = 2 * s3.wrong_side_mass_neg;
  out.bad_mass_ok = out.bad_mass_psi5 <= out.bad_mass_bound;
  out.phd5_bound = (s4.phd + 1) * (s3.phd + 1) - 1;
  out.phd7_bound = (s6.phd + 1) * (s5.phd + 1) - 1;
  out.stages = {s1, s2, s3, s4, s5, s6, s7};
  return out;
}

}  // namespace adeg
