#include "adeg/boolfn.hpp"

#include <algorithm>
#include <cstdlib>

namespace adeg {

int max_arity() {
  static const int cap = [] {
    if (const char* env = std::getenv("ADEG_MAX_ARITY")) {
      const int v = std::atoi(env);
      if (v > 0 && v <= 30) return v;
    }
    return 22;
  }();
  return cap;
}

void check_arity(long n) {
  if (n < 0) throw DimensionMismatch("negative arity");
  if (n > max_arity())
    throw ArityOverflow("arity " + std::to_string(n) + " exceeds cap " +
                        std::to_string(max_arity()));
}

TruthTable::TruthTable(int n, std::vector<int8_t> values) : n_(n), values_(std::move(values)) {
  check_arity(n);
  if (values_.size() != (size_t{1} << n))
    throw DimensionMismatch("truth table of arity " + std::to_string(n) + " needs " +
                            std::to_string(size_t{1} << n) + " entries, got " +
                            std::to_string(values_.size()));
  for (int8_t v : values_)
    if (v != 1 && v != -1) throw DimensionMismatch("truth table entries must be +1 or -1");
}

TruthTable TruthTable::constant(int n, int value) {
  check_arity(n);
  return TruthTable(n, std::vector<int8_t>(size_t{1} << n, static_cast<int8_t>(value)));
}

TruthTable TruthTable::negated() const {
  auto v = values_;
  for (auto& e : v) e = static_cast<int8_t>(-e);
  return TruthTable(n_, std::move(v));
}

TruthTable make_and(int m) {
  const uint64_t all = (uint64_t{1} << m) - 1;
  return TruthTable::generate(m, [&](uint64_t i) { return i == all; });
}

TruthTable make_or(int m) {
  return TruthTable::generate(m, [](uint64_t i) { return i != 0; });
}

TruthTable make_parity(int m) {
  return TruthTable::generate(m, [](uint64_t i) { return __builtin_popcountll(i) & 1; });
}

TruthTable make_character(int n, uint64_t S) {
  if (n < 64 && (S >> n) != 0) throw DimensionMismatch("character support exceeds arity");
  return TruthTable::generate(n, [&](uint64_t i) { return chi(S, i) < 0; });
}

namespace {

int log2_exact(int R) {
  if (R < 1 || (R & (R - 1)) != 0)
    throw PreconditionViolated("range size R must be a power of 2, got " + std::to_string(R));
  return __builtin_ctz(static_cast<unsigned>(R));
}

}  // namespace

TruthTable make_ed(int N, int R) {
  if (N < 1) throw PreconditionViolated("ED needs N >= 1");
  const int b = log2_exact(R);
  check_arity(static_cast<long>(N) * b);
  return TruthTable::generate(N * b, [&](uint64_t idx) {
    uint64_t seen = 0;
    for (int i = 0; i < N; ++i) {
      const uint64_t bit = uint64_t{1} << block_value(idx, i, b);
      if (seen & bit) return false;
      seen |= bit;
    }
    return true;
  });
}

TruthTable make_two_to_one(int N, int R) {
  if (N < 2 || N % 2 != 0) throw PreconditionViolated("2-to-1 needs N even and positive");
  const int b = log2_exact(R);
  check_arity(static_cast<long>(N) * b);
  return TruthTable::generate(N * b, [&](uint64_t idx) {
    std::vector<int> count(static_cast<size_t>(R), 0);
    for (int i = 0; i < N; ++i) ++count[block_value(idx, i, b)];
    return std::all_of(count.begin(), count.end(), [](int c) { return c == 0 || c == 2; });
  });
}

TruthTable compose_blocks(const TruthTable& outer, const std::vector<TruthTable>& inners) {
  if (static_cast<int>(inners.size()) != outer.arity())
    throw DimensionMismatch("compose: " + std::to_string(inners.size()) +
                            " inner functions for an outer of arity " +
                            std::to_string(outer.arity()));
  long total = 0;
  for (const auto& g : inners) total += g.arity();
  check_arity(total);
  return TruthTable::generate(static_cast<int>(total), [&](uint64_t idx) {
    uint64_t z = 0;
    int shift = 0;
    for (size_t i = 0; i < inners.size(); ++i) {
      const int m = inners[i].arity();
      const uint64_t block = (idx >> shift) & ((uint64_t{1} << m) - 1);
      if (inners[i].is_true(block)) z |= uint64_t{1} << i;
      shift += m;
    }
    return outer.is_true(z);
  });
}

TruthTable compose(const TruthTable& outer, const TruthTable& inner, int copies) {
  if (copies != outer.arity())
    throw DimensionMismatch("compose: copies must equal the outer arity");
  check_arity(static_cast<long>(copies) * inner.arity());
  return compose_blocks(outer, std::vector<TruthTable>(static_cast<size_t>(copies), inner));
}

TruthTable make_andor_tree(const std::vector<int>& fanins, bool top_is_and) {
  if (fanins.empty()) return make_and(1);
  long total = 1;
  for (int k : fanins) {
    if (k < 1) throw PreconditionViolated("tree fan-ins must be positive");
    total *= k;
    check_arity(total);
  }
  // Build bottom-up; the bottom gate type alternates from the top.
  const size_t depth = fanins.size();
  bool is_and = (depth % 2 == 1) ? top_is_and : !top_is_and;
  TruthTable cur = is_and ? make_and(fanins.back()) : make_or(fanins.back());
  for (size_t level = depth - 1; level-- > 0;) {
    is_and = !is_and;
    const int k = fanins[level];
    cur = compose(is_and ? make_and(k) : make_or(k), cur, k);
  }
  return cur;
}

TruthTable make_read_once_dnf(int terms, int width) {
  if (terms < 1 || width < 1) throw PreconditionViolated("DNF needs positive terms and width");
  check_arity(static_cast<long>(terms) * width);
  return compose(make_or(terms), make_and(width), terms);
}

TruthTable make_named(std::string_view name, const NamedParams& p) {
  if (name == "AND") return make_and(p.m);
  if (name == "OR") return make_or(p.m);
  if (name == "PARITY") return make_parity(p.m);
  if (name == "ED") return make_ed(p.N, p.R);
  if (name == "TWO_TO_ONE") return make_two_to_one(p.N, p.R);
  if (name == "ANDOR_TREE") return make_andor_tree(p.fanins, p.top_is_and);
  if (name == "READ_ONCE_DNF") return make_read_once_dnf(p.terms, p.width);
  throw UsageError("unknown function name '" + std::string(name) + "'");
}

int block_sensitivity(const TruthTable& f, uint64_t a) {
  const int n = f.arity();
  if (n > 20) throw ArityOverflow("block sensitivity is limited to n <= 20");
  const uint64_t full = (uint64_t{1} << n) - 1;
  const int fa = f[a];
  std::vector<int8_t> best(full + 1, 0);
  for (uint64_t U = 1; U <= full; ++U) {
    const uint64_t low = U & (~U + 1);
    int b = best[U ^ low];
    // Blocks containing the lowest element of U.
    const uint64_t rest = U ^ low;
    for (uint64_t sub = rest;; sub = (sub - 1) & rest) {
      const uint64_t B = sub | low;
      if (f[a ^ B] != fa) b = std::max(b, 1 + best[U ^ B]);
      if (sub == 0) break;
    }
    best[U] = static_cast<int8_t>(b);
  }
  return best[full];
}

int block_sensitivity(const TruthTable& f) {
  int b = 0;
  for (uint64_t a = 0; a < f.size(); ++a) b = std::max(b, block_sensitivity(f, a));
  return b;
}

Rational flip_probability(const TruthTable& f, uint64_t a, const Rational& gamma) {
  const int n = f.arity();
  std::vector<Rational> weight(static_cast<size_t>(n) + 1);
  for (int k = 0; k <= n; ++k) weight[k] = pow(gamma, k) * pow(1 - gamma, n - k);
  std::vector<long> changed(static_cast<size_t>(n) + 1, 0);
  for (uint64_t B = 0; B < f.size(); ++B)
    if (f[a ^ B] != f[a]) ++changed[__builtin_popcountll(B)];
  Rational p = 0;
  for (int k = 0; k <= n; ++k) p += weight[k] * changed[k];
  return p;
}

std::string to_text(const TruthTable& f) {
  std::string s = "n=" + std::to_string(f.arity()) + "\n";
  for (int8_t v : f.values()) s.push_back(v < 0 ? '-' : '+');
  s.push_back('\n');
  return s;
}

namespace {

std::pair<int, std::string_view> parse_header(std::string_view text) {
  const auto nl = text.find('\n');
  std::string_view head = text.substr(0, nl);
  while (!head.empty() && (head.back() == '\r' || head.back() == ' ')) head.remove_suffix(1);
  if (head.size() < 3 || head.substr(0, 2) != "n=")
    throw UsageError("truth table must start with 'n=<k>'");
  int n = 0;
  for (char c : head.substr(2)) {
    if (c < '0' || c > '9') throw UsageError("bad arity in truth-table header");
    n = n * 10 + (c - '0');
    if (n > 64) throw ArityOverflow("truth-table arity too large");
  }
  check_arity(n);
  return {n, nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1)};
}

}  // namespace

TruthTable table_from_text(std::string_view text) {
  auto [n, body] = parse_header(text);
  std::vector<int8_t> v;
  v.reserve(size_t{1} << n);
  for (char c : body) {
    if (c == '+') v.push_back(1);
    else if (c == '-') v.push_back(-1);
    else if (c != '\n' && c != '\r' && c != ' ') throw UsageError("unexpected character in truth table");
  }
  return TruthTable(n, std::move(v));
}

std::string to_hex(const TruthTable& f) {
  static const char* digits = "0123456789abcdef";
  std::string s = "n=" + std::to_string(f.arity()) + "\n";
  for (size_t j = 0; j < f.size(); j += 4) {
    int d = 0;
    for (size_t b = 0; b < 4 && j + b < f.size(); ++b)
      if (f.is_true(j + b)) d |= 1 << b;
    s.push_back(digits[d]);
  }
  s.push_back('\n');
  return s;
}

TruthTable table_from_hex(std::string_view text) {
  auto [n, body] = parse_header(text);
  const size_t size = size_t{1} << n;
  std::vector<int8_t> v;
  v.reserve(size);
  for (char c : body) {
    int d;
    if (c >= '0' && c <= '9') d = c - '0';
    else if (c >= 'a' && c <= 'f') d = c - 'a' + 10;
    else if (c >= 'A' && c <= 'F') d = c - 'A' + 10;
    else if (c == '\n' || c == '\r' || c == ' ') continue;
    else throw UsageError("unexpected character in hex truth table");
    for (int b = 0; b < 4 && v.size() < size; ++b) v.push_back((d >> b) & 1 ? -1 : 1);
  }
  return TruthTable(n, std::move(v));
}

}  // namespace adeg
