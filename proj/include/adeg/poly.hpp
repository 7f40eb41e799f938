#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "adeg/boolfn.hpp"
#include "adeg/rational.hpp"

namespace adeg {

/// All subsets of [n] of size <= d, ordered by size then lexicographically
/// by sorted element list.
std::vector<uint64_t> subsets_up_to(int n, int d);

/// In-place unnormalized Walsh-Hadamard transform: out[S] = sum_x in[x] chi_S(x).
void fwht(std::vector<Rational>& v);
void fwht(std::vector<Integer>& v);

/// sum_x v[x] chi_S(x) for every S, computed on a common-denominator integer copy.
std::vector<Rational> character_sums(const std::vector<Rational>& v);

/// Multilinear polynomial in the parity basis; zero coefficients are never stored.
class MultilinearPoly {
 public:
  MultilinearPoly() = default;
  explicit MultilinearPoly(int n) : n_(n) {}

  int arity() const { return n_; }
  int degree() const;  // -1 for the zero polynomial
  const std::map<uint64_t, Rational>& terms() const { return terms_; }
  Rational coeff(uint64_t S) const;
  void set(uint64_t S, const Rational& c);
  void add(uint64_t S, const Rational& c);

  Rational evaluate(uint64_t idx) const;
  /// Values at every input in index order (dense inverse transform).
  std::vector<Rational> values() const;
  static MultilinearPoly from_values(int n, const std::vector<Rational>& values);

  MultilinearPoly operator+(const MultilinearPoly& o) const;
  MultilinearPoly operator-(const MultilinearPoly& o) const;
  MultilinearPoly operator*(const MultilinearPoly& o) const;
  MultilinearPoly scaled(const Rational& s) const;

  bool operator==(const MultilinearPoly&) const = default;

 private:
  int n_ = 0;
  std::map<uint64_t, Rational> terms_;
};

/// p on variables [offset, offset + p.arity()) of an arity-n polynomial.
MultilinearPoly embed(const MultilinearPoly& p, int n, int offset);

/// Positive integer multiple of p with coprime integer coefficients.
MultilinearPoly integer_multiple(const MultilinearPoly& p);

MultilinearPoly fourier(const TruthTable& f);

/// sum |c_S|, optionally without the constant term.
Rational weight(const MultilinearPoly& p, bool include_constant = true);

/// max_x |p(x) - f(x)|.
Rational linf_error(const MultilinearPoly& p, const TruthTable& f);

/// True iff f(x) * p(x) > 0 on every input.
bool sign_represents(const MultilinearPoly& p, const TruthTable& f);

class UnivariatePoly {
 public:
  UnivariatePoly() = default;
  explicit UnivariatePoly(std::vector<Rational> coeffs);

  static UnivariatePoly chebyshev(int k);
  static UnivariatePoly monomial(int k, const Rational& c = 1);

  const std::vector<Rational>& coeffs() const { return c_; }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  Rational leading() const { return c_.empty() ? Rational(0) : c_.back(); }

  Rational operator()(const Rational& t) const;
  UnivariatePoly derivative() const;
  /// p(a t + b).
  UnivariatePoly compose_affine(const Rational& a, const Rational& b) const;

  UnivariatePoly operator+(const UnivariatePoly& o) const;
  UnivariatePoly operator-(const UnivariatePoly& o) const;
  UnivariatePoly operator*(const UnivariatePoly& o) const;
  UnivariatePoly scaled(const Rational& s) const;
  /// Euclidean division; divisor must be nonzero.
  std::pair<UnivariatePoly, UnivariatePoly> divmod(const UnivariatePoly& d) const;

  bool operator==(const UnivariatePoly&) const = default;

 private:
  void trim();
  std::vector<Rational> c_;
};

/// Multilinear lift of a symmetric function of Hamming weight: the result
/// equals P(sum_i x_i / m) on every input of {-1,1}^m.
MultilinearPoly symmetric_lift(const UnivariatePoly& P, int m);

/// Univariate profile p(t, ..., t) of a multilinear polynomial.
UnivariatePoly diagonal_profile(const MultilinearPoly& p);

struct ChebyshevApprox {
  UnivariatePoly univariate;  // in s = (sum x_i)/m
  MultilinearPoly poly;
  int chebyshev_degree = 0;   // k, or -1 for the exact-interpolation fallback
  Rational error;             // exact max error over {-1,1}^m
  bool exact_fallback = false;
};

/// Shifted/scaled Chebyshev polynomial approximating AND_m to within target_error.
ChebyshevApprox chebyshev_and_approx(int m, const Rational& target_error);

struct Enclosure {
  Rational lower, upper;
  bool exact() const { return lower == upper; }
};

struct MarkovReport {
  int degree = 0;
  Enclosure max_abs_p;
  Enclosure max_abs_dp;
  /// max|P'| / (d * R * max(log2 w, log2 d)); empty when the denominator is 0.
  std::optional<double> ratio;
};

/// Maximum of |P| over [-1,1] enclosed to within 2^-40 by exact root isolation.
Enclosure max_abs_on_interval(const UnivariatePoly& P);
MarkovReport markov_bound_check(const UnivariatePoly& P, const Rational& w, const Rational& R);

}  // namespace adeg
