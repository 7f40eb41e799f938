#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace adeg {

/// Exact rational scalar. Always canonical (lowest terms, positive
/// denominator) after arithmetic; values built from text go through
/// parse_rational, which canonicalizes.
using Rational = mpq_class;
using Integer = mpz_class;

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: mismatched widths, arities, or sizes.
class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// 2^n would exceed the configured memory cap.
class ArityOverflow : public Error {
 public:
  using Error::Error;
};

/// A mathematical precondition of an operation does not hold.
class PreconditionViolated : public Error {
 public:
  using Error::Error;
};

/// An exact identity that must hold by construction failed. Indicates a bug.
class CertificateViolation : public Error {
 public:
  using Error::Error;
};

/// f is not a symmetric property, or its FALSE side is not a single orbit.
class OrbitAssumptionViolated : public Error {
 public:
  using Error::Error;
};

/// Exact orbit averaging would need more group elements than allowed.
class OrbitTooLarge : public Error {
 public:
  using Error::Error;
};

class UsageError : public Error {
 public:
  using Error::Error;
};

/// num/den in lowest terms (mpq_class's two-argument constructor does not
/// canonicalize).
inline Rational frac(long num, long den) {
  Rational q(num, den);
  q.canonicalize();
  return q;
}

/// Parses "num/den" or "num" (optionally signed) into a canonical rational.
Rational parse_rational(std::string_view text);

/// "num/den", or "num" when the denominator is 1.
std::string to_string(const Rational& q);

/// 2^k for any integer k.
Rational pow2(int k);

/// q^e for integer e; q must be nonzero when e < 0.
Rational pow(const Rational& q, int e);

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

Integer floor(const Rational& q);
Integer ceil(const Rational& q);

}  // namespace adeg
