#include "adeg/rational.hpp"

#include <cctype>

namespace adeg {

Rational parse_rational(std::string_view text) {
  std::string s(text);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
  size_t start = 0;
  while (start < s.size() && std::isspace(static_cast<unsigned char>(s[start]))) ++start;
  s = s.substr(start);
  if (s.empty()) throw UsageError("empty rational literal");
  const auto slash = s.find('/');
  auto valid_int = [](const std::string& part, bool allow_sign) {
    if (part.empty()) return false;
    size_t i = 0;
    if (allow_sign && (part[0] == '-' || part[0] == '+')) i = 1;
    if (i == part.size()) return false;
    for (; i < part.size(); ++i)
      if (!std::isdigit(static_cast<unsigned char>(part[i]))) return false;
    return true;
  };
  std::string num = slash == std::string::npos ? s : s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!valid_int(num, true) || !valid_int(den, false))
    throw UsageError("malformed rational literal '" + std::string(text) + "'");
  if (num[0] == '+') num = num.substr(1);
  Rational q;
  q.get_num().set_str(num, 10);
  q.get_den().set_str(den, 10);
  if (q.get_den() == 0) throw UsageError("zero denominator in '" + std::string(text) + "'");
  q.canonicalize();
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(); }

Rational pow2(int k) {
  Integer p;
  if (k >= 0) {
    mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(k));
    return Rational(p);
  }
  mpz_ui_pow_ui(p.get_mpz_t(), 2, static_cast<unsigned long>(-k));
  return Rational(Integer(1), p);
}

Rational pow(const Rational& q, int e) {
  if (e < 0) {
    if (q == 0) throw std::domain_error("negative power of zero");
    return pow(Rational(1) / q, -e);
  }
  Rational out(1);
  Rational base = q;
  while (e > 0) {
    if (e & 1) out *= base;
    base *= base;
    e >>= 1;
  }
  return out;
}

Integer floor(const Rational& q) {
  Integer r;
  mpz_fdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

Integer ceil(const Rational& q) {
  Integer r;
  mpz_cdiv_q(r.get_mpz_t(), q.get_num_mpz_t(), q.get_den_mpz_t());
  return r;
}

}  // namespace adeg
