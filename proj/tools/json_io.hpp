#pragma once

#include <json.hpp>

#include <string>
#include <vector>

#include "adeg/amplify.hpp"
#include "adeg/approx_lp.hpp"
#include "adeg/transforms.hpp"
#include "adeg/witness.hpp"

namespace adeg::io {

// ordered_json keeps insertion order, so identical runs give identical bytes.
using Json = nlohmann::ordered_json;

inline constexpr const char* kSchema = "adeg-lab/1";

inline Json rat(const Rational& q) { return to_string(q); }

inline Json rats(const std::vector<Rational>& v) {
  Json a = Json::array();
  for (const auto& q : v) a.push_back(rat(q));
  return a;
}

inline std::string subset_name(uint64_t S) {
  std::string s = "{";
  for (int i = 0; S; ++i, S >>= 1)
    if (S & 1) s += (s.size() > 1 ? "," : "") + std::to_string(i + 1);
  return s + "}";
}

/// Coefficients keyed by 1-based subsets, e.g. "{1,3}": "1/2".
inline Json poly(const MultilinearPoly& p) {
  Json o = Json::object();
  for (const auto& [S, c] : p.terms()) o[subset_name(S)] = rat(c);
  return Json{{"arity", p.arity()}, {"degree", p.degree()}, {"coefficients", o}};
}

inline Json value_kind(ValueKind k) {
  switch (k) {
    case ValueKind::Finite: return "finite";
    case ValueKind::Infinite: return "infinite";
    case ValueKind::Bracket: return "bracket";
  }
  return "unknown";
}

inline Json measure(const MeasureResult& r) {
  Json o{{"value_kind", value_kind(r.value_kind)}};
  if (r.value_kind == ValueKind::Infinite) {
    o["value"] = "inf";
    return o;
  }
  o["value"] = rat(r.value);
  if (r.value_kind == ValueKind::Bracket) {
    o["lower"] = rat(r.lower);
    o["upper"] = rat(r.upper);
  }
  o["primal"] = poly(r.primal);
  return o;
}

inline Json report(const WitnessReport& w) {
  return Json{{"correlation", rat(w.correlation)},
              {"l1", rat(w.l1)},
              {"pure_high_degree", w.phd},
              {"correlation_ok", w.correlation_ok},
              {"l1_ok", w.l1_ok},
              {"phd_ok", w.phd_ok},
              {"one_sided_ok", w.one_sided_ok},
              {"one_sided_required", w.one_sided_required},
              {"wrong_side_mass_pos", rat(w.wrong_side_mass_pos)},
              {"wrong_side_mass_neg", rat(w.wrong_side_mass_neg)},
              {"passed", w.passed()}};
}

inline Json witness(const DualWitness& psi) {
  return Json{{"arity", psi.arity()}, {"values", rats(psi.values())}};
}

inline Json table(const TruthTable& f) { return Json{{"arity", f.arity()}, {"hex", to_hex(f)}}; }

}  // namespace adeg::io
