#include "adeg/poly.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace adeg {

std::vector<uint64_t> subsets_up_to(int n, int d) {
  std::vector<uint64_t> out;
  d = std::min(d, n);
  std::vector<int> idx;
  for (int k = 0; k <= d; ++k) {
    idx.resize(static_cast<size_t>(k));
    for (int i = 0; i < k; ++i) idx[i] = i;
    for (;;) {
      uint64_t S = 0;
      for (int i : idx) S |= uint64_t{1} << i;
      out.push_back(S);
      int i = k - 1;
      while (i >= 0 && idx[i] == n - k + i) --i;
      if (i < 0) break;
      ++idx[i];
      for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  return out;
}

namespace {

template <class T>
void fwht_impl(std::vector<T>& v) {
  T tmp;
  for (size_t h = 1; h < v.size(); h <<= 1)
    for (size_t i = 0; i < v.size(); i += h << 1)
      for (size_t j = i; j < i + h; ++j) {
        tmp = v[j + h];
        v[j + h] = v[j] - tmp;
        v[j] += tmp;
      }
}

}  // namespace

void fwht(std::vector<Rational>& v) { fwht_impl(v); }
void fwht(std::vector<Integer>& v) { fwht_impl(v); }

std::vector<Rational> character_sums(const std::vector<Rational>& v) {
  Integer den = 1;
  for (const auto& q : v) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), q.get_den_mpz_t());
  std::vector<Integer> scaled(v.size());
  for (size_t i = 0; i < v.size(); ++i) scaled[i] = v[i].get_num() * (den / v[i].get_den());
  fwht(scaled);
  std::vector<Rational> out(v.size());
  for (size_t i = 0; i < v.size(); ++i) {
    out[i] = Rational(scaled[i], den);
    out[i].canonicalize();
  }
  return out;
}

int MultilinearPoly::degree() const {
  int d = -1;
  for (const auto& [S, c] : terms_) d = std::max(d, __builtin_popcountll(S));
  return d;
}

Rational MultilinearPoly::coeff(uint64_t S) const {
  auto it = terms_.find(S);
  return it == terms_.end() ? Rational(0) : it->second;
}

void MultilinearPoly::set(uint64_t S, const Rational& c) {
  if (n_ < 64 && (S >> n_) != 0) throw DimensionMismatch("monomial outside the polynomial's arity");
  if (c == 0) terms_.erase(S);
  else terms_[S] = c;
}

void MultilinearPoly::add(uint64_t S, const Rational& c) { set(S, coeff(S) + c); }

Rational MultilinearPoly::evaluate(uint64_t idx) const {
  Rational s = 0;
  for (const auto& [S, c] : terms_) {
    if (chi(S, idx) > 0) s += c;
    else s -= c;
  }
  return s;
}

std::vector<Rational> MultilinearPoly::values() const {
  check_arity(n_);
  std::vector<Rational> v(size_t{1} << n_);
  for (const auto& [S, c] : terms_) v[S] = c;
  fwht(v);
  return v;
}

MultilinearPoly MultilinearPoly::from_values(int n, const std::vector<Rational>& values) {
  check_arity(n);
  if (values.size() != (size_t{1} << n)) throw DimensionMismatch("value vector has wrong length");
  auto sums = character_sums(values);
  const Rational scale = pow2(-n);
  MultilinearPoly p(n);
  for (size_t S = 0; S < sums.size(); ++S)
    if (sums[S] != 0) p.terms_[S] = sums[S] * scale;
  return p;
}

MultilinearPoly MultilinearPoly::operator+(const MultilinearPoly& o) const {
  if (o.n_ != n_) throw DimensionMismatch("adding polynomials of different arity");
  MultilinearPoly r = *this;
  for (const auto& [S, c] : o.terms_) r.add(S, c);
  return r;
}

MultilinearPoly MultilinearPoly::operator-(const MultilinearPoly& o) const {
  return *this + o.scaled(-1);
}

MultilinearPoly MultilinearPoly::operator*(const MultilinearPoly& o) const {
  if (o.n_ != n_) throw DimensionMismatch("multiplying polynomials of different arity");
  MultilinearPoly r(n_);
  for (const auto& [S, a] : terms_)
    for (const auto& [T, b] : o.terms_) r.add(S ^ T, a * b);
  return r;
}

MultilinearPoly MultilinearPoly::scaled(const Rational& s) const {
  MultilinearPoly r(n_);
  if (s == 0) return r;
  for (const auto& [S, c] : terms_) r.terms_[S] = c * s;
  return r;
}

MultilinearPoly embed(const MultilinearPoly& p, int n, int offset) {
  if (offset < 0 || offset + p.arity() > n) throw DimensionMismatch("embed: block out of range");
  MultilinearPoly r(n);
  for (const auto& [S, c] : p.terms()) r.set(S << offset, c);
  return r;
}

MultilinearPoly integer_multiple(const MultilinearPoly& p) {
  Integer den = 1, num = 0;
  for (const auto& [S, c] : p.terms()) {
    mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), c.get_den_mpz_t());
    mpz_gcd(num.get_mpz_t(), num.get_mpz_t(), c.get_num_mpz_t());
  }
  if (num == 0) return p;
  return p.scaled(Rational(den) / Rational(num));
}

MultilinearPoly fourier(const TruthTable& f) {
  std::vector<Integer> v(f.size());
  for (size_t i = 0; i < v.size(); ++i) v[i] = f[i];
  fwht(v);
  const Rational scale = pow2(-f.arity());
  MultilinearPoly p(f.arity());
  for (size_t S = 0; S < v.size(); ++S)
    if (v[S] != 0) p.set(S, Rational(v[S]) * scale);
  return p;
}

Rational weight(const MultilinearPoly& p, bool include_constant) {
  Rational w = 0;
  for (const auto& [S, c] : p.terms())
    if (include_constant || S != 0) w += abs(c);
  return w;
}

Rational linf_error(const MultilinearPoly& p, const TruthTable& f) {
  if (p.arity() != f.arity())
    throw DimensionMismatch("polynomial arity " + std::to_string(p.arity()) +
                            " vs function arity " + std::to_string(f.arity()));
  const auto v = p.values();
  Rational e = 0;
  for (size_t i = 0; i < v.size(); ++i) {
    Rational d = abs(v[i] - f[i]);
    if (d > e) e = d;
  }
  return e;
}

bool sign_represents(const MultilinearPoly& p, const TruthTable& f) {
  if (p.arity() != f.arity()) throw DimensionMismatch("arity mismatch in sign check");
  const auto v = p.values();
  for (size_t i = 0; i < v.size(); ++i)
    if (sgn(v[i]) != f[i]) return false;
  return true;
}

UnivariatePoly::UnivariatePoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

void UnivariatePoly::trim() {
  while (!c_.empty() && c_.back() == 0) c_.pop_back();
}

UnivariatePoly UnivariatePoly::monomial(int k, const Rational& c) {
  std::vector<Rational> v(static_cast<size_t>(k) + 1);
  v[k] = c;
  return UnivariatePoly(std::move(v));
}

UnivariatePoly UnivariatePoly::chebyshev(int k) {
  UnivariatePoly a({1}), b({0, 1});
  if (k == 0) return a;
  const UnivariatePoly two_t({0, 2});
  for (int i = 1; i < k; ++i) {
    UnivariatePoly c = two_t * b - a;
    a = std::move(b);
    b = std::move(c);
  }
  return b;
}

Rational UnivariatePoly::operator()(const Rational& t) const {
  Rational s = 0;
  for (size_t i = c_.size(); i-- > 0;) s = s * t + c_[i];
  return s;
}

UnivariatePoly UnivariatePoly::derivative() const {
  std::vector<Rational> d;
  for (size_t i = 1; i < c_.size(); ++i) d.push_back(c_[i] * static_cast<long>(i));
  return UnivariatePoly(std::move(d));
}

UnivariatePoly UnivariatePoly::compose_affine(const Rational& a, const Rational& b) const {
  const UnivariatePoly lin({b, a});
  UnivariatePoly r;
  for (size_t i = c_.size(); i-- > 0;) r = r * lin + UnivariatePoly({c_[i]});
  return r;
}

UnivariatePoly UnivariatePoly::operator+(const UnivariatePoly& o) const {
  std::vector<Rational> r(std::max(c_.size(), o.c_.size()));
  for (size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
  for (size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
  return UnivariatePoly(std::move(r));
}

UnivariatePoly UnivariatePoly::operator-(const UnivariatePoly& o) const {
  return *this + o.scaled(-1);
}

UnivariatePoly UnivariatePoly::operator*(const UnivariatePoly& o) const {
  if (c_.empty() || o.c_.empty()) return {};
  std::vector<Rational> r(c_.size() + o.c_.size() - 1);
  for (size_t i = 0; i < c_.size(); ++i)
    for (size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
  return UnivariatePoly(std::move(r));
}

UnivariatePoly UnivariatePoly::scaled(const Rational& s) const {
  auto r = c_;
  for (auto& c : r) c *= s;
  return UnivariatePoly(std::move(r));
}

std::pair<UnivariatePoly, UnivariatePoly> UnivariatePoly::divmod(const UnivariatePoly& d) const {
  if (d.is_zero()) throw std::domain_error("polynomial division by zero");
  std::vector<Rational> rem = c_;
  std::vector<Rational> quo(c_.size() >= d.c_.size() ? c_.size() - d.c_.size() + 1 : 0);
  for (size_t i = quo.size(); i-- > 0;) {
    const Rational q = rem[i + d.c_.size() - 1] / d.c_.back();
    quo[i] = q;
    if (q == 0) continue;
    for (size_t j = 0; j < d.c_.size(); ++j) rem[i + j] -= q * d.c_[j];
  }
  return {UnivariatePoly(std::move(quo)), UnivariatePoly(std::move(rem))};
}

MultilinearPoly symmetric_lift(const UnivariatePoly& P, int m) {
  check_arity(m);
  std::vector<Rational> level(static_cast<size_t>(m) + 1);
  for (int j = 0; j <= m; ++j) level[j] = P(frac(m - 2 * j, m));
  std::vector<Rational> values(size_t{1} << m);
  for (size_t i = 0; i < values.size(); ++i) values[i] = level[__builtin_popcountll(i)];
  return MultilinearPoly::from_values(m, values);
}

UnivariatePoly diagonal_profile(const MultilinearPoly& p) {
  UnivariatePoly r;
  for (const auto& [S, c] : p.terms()) r = r + UnivariatePoly::monomial(__builtin_popcountll(S), c);
  return r;
}

ChebyshevApprox chebyshev_and_approx(int m, const Rational& eps) {
  if (m < 1) throw PreconditionViolated("AND arity must be positive");
  if (eps <= 0 || eps >= 1) throw PreconditionViolated("target error must lie in (0, 1)");
  check_arity(m);
  const TruthTable f = make_and(m);
  ChebyshevApprox out;
  if (m == 1) {
    out.univariate = UnivariatePoly({0, 1});
    out.poly = symmetric_lift(out.univariate, 1);
    out.chebyshev_degree = 1;
    out.error = linf_error(out.poly, f);
    return out;
  }
  // L maps the FALSE weight range [-1 + 2/m, 1] onto [-1, 1]; AND's TRUE point
  // s = -1 lands outside, where T_k grows.
  const Rational scale = frac(m, m - 1);
  const Rational shift = (1 - frac(2, m)) * scale - 1;
  const Rational L_at_true = -scale + shift;
  for (int k = 1; k <= m; ++k) {
    const UnivariatePoly T = UnivariatePoly::chebyshev(k);
    const Rational A = T(L_at_true);
    const Rational bound = 2 / abs(A);
    if (bound > eps && k < m) continue;
    if (bound > eps) break;
    const UnivariatePoly TL = T.compose_affine(scale, shift);
    out.univariate = UnivariatePoly({1}) - TL.scaled(Rational(2) / A);
    out.poly = symmetric_lift(out.univariate, m);
    out.chebyshev_degree = k;
    out.error = linf_error(out.poly, f);
    if (out.error > eps)
      throw CertificateViolation("Chebyshev AND approximation misses its error target");
    return out;
  }
  out.poly = fourier(f);
  out.univariate = UnivariatePoly();
  // Exact interpolation of AND on the weight levels: 1 except at s = -1.
  {
    std::vector<Rational> pts, vals;
    for (int j = 0; j <= m; ++j) {
      pts.push_back(frac(m - 2 * j, m));
      vals.push_back(j == m ? -1 : 1);
    }
    UnivariatePoly acc;
    for (size_t i = 0; i < pts.size(); ++i) {
      UnivariatePoly basis({1});
      for (size_t j = 0; j < pts.size(); ++j)
        if (j != i) basis = basis * UnivariatePoly({-pts[j], 1}).scaled(1 / (pts[i] - pts[j]));
      acc = acc + basis.scaled(vals[i]);
    }
    out.univariate = acc;
  }
  out.chebyshev_degree = -1;
  out.exact_fallback = true;
  out.error = 0;
  return out;
}

namespace {

// Sturm chain of a square-free polynomial.
std::vector<UnivariatePoly> sturm_chain(const UnivariatePoly& p) {
  std::vector<UnivariatePoly> chain{p, p.derivative()};
  while (!chain.back().is_zero()) {
    auto r = chain[chain.size() - 2].divmod(chain.back()).second;
    if (r.is_zero()) break;
    chain.push_back(r.scaled(-1));
  }
  return chain;
}

int sign_changes(const std::vector<UnivariatePoly>& chain, const Rational& x) {
  int changes = 0, last = 0;
  for (const auto& q : chain) {
    const int s = sgn(q(x));
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

UnivariatePoly gcd(UnivariatePoly a, UnivariatePoly b) {
  while (!b.is_zero()) {
    auto r = a.divmod(b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.is_zero() ? a : a.scaled(1 / a.leading());
}

// Naive interval Horner: encloses {P(t) : t in [a, b]}.
Enclosure interval_eval(const UnivariatePoly& P, const Rational& a, const Rational& b) {
  Rational lo = 0, hi = 0;
  for (size_t i = P.coeffs().size(); i-- > 0;) {
    const Rational c[4] = {lo * a, lo * b, hi * a, hi * b};
    lo = *std::min_element(c, c + 4) + P.coeffs()[i];
    hi = *std::max_element(c, c + 4) + P.coeffs()[i];
  }
  return {lo, hi};
}

}  // namespace

Enclosure max_abs_on_interval(const UnivariatePoly& P) {
  Enclosure best{abs(P(-1)), abs(P(1))};
  best.lower = std::max(best.lower, best.upper);
  best.upper = best.lower;
  const UnivariatePoly dP = P.derivative();
  if (dP.is_zero()) return best;
  const UnivariatePoly sq = dP.divmod(gcd(dP, dP.derivative())).first;
  const auto chain = sturm_chain(sq);
  const Rational tol = pow2(-40);

  std::function<void(const Rational&, const Rational&)> isolate = [&](const Rational& a,
                                                                      const Rational& b) {
    // Roots of sq in (a, b].
    const int count = sign_changes(chain, a) - sign_changes(chain, b);
    if (count == 0) return;
    if (sq(b) == 0) {
      const Rational v = abs(P(b));
      best.lower = std::max(best.lower, v);
      best.upper = std::max(best.upper, v);
      if (count == 1) return;
    }
    if (b - a <= tol) {
      const Enclosure e = interval_eval(P, a, b);
      const Rational lo = std::max(abs(P(a)), abs(P(b)));
      const Rational hi = std::max(abs(e.lower), abs(e.upper));
      best.lower = std::max(best.lower, lo);
      best.upper = std::max(best.upper, hi);
      return;
    }
    const Rational mid = (a + b) / 2;
    isolate(a, mid);
    isolate(mid, b);
  };
  isolate(Rational(-1), Rational(1));
  return best;
}

MarkovReport markov_bound_check(const UnivariatePoly& P, const Rational& w, const Rational& R) {
  if (P.is_zero()) throw PreconditionViolated("Markov check needs a nonzero polynomial");
  MarkovReport rep;
  rep.degree = P.degree();
  rep.max_abs_p = max_abs_on_interval(P);
  rep.max_abs_dp = max_abs_on_interval(P.derivative());
  const double logs = std::max(w > 0 ? std::log2(w.get_d()) : 0.0,
                               rep.degree > 0 ? std::log2(static_cast<double>(rep.degree)) : 0.0);
  const double denom = rep.degree * R.get_d() * logs;
  if (denom > 0) rep.ratio = rep.max_abs_dp.upper.get_d() / denom;
  return rep;
}

}  // namespace adeg
