#include <CLI11.hpp>

#include <atomic>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include "adeg/symmetrize.hpp"
#include "adeg/upper_bounds.hpp"
#include "json_io.hpp"

using namespace adeg;
using io::Json;
using io::rat;

namespace {

constexpr int kExitCertificate = 1;
constexpr int kExitPrecondition = 2;
constexpr int kExitUsage = 64;

struct FnSpec {
  std::string name;
  std::string table_file;
  NamedParams params;
  std::string fanins;
  int compose_or = 0;
};

void add_fn_options(CLI::App* app, FnSpec& s) {
  app->add_option("--fn", s.name, "AND, OR, PARITY, ED, TWO_TO_ONE, ANDOR_TREE, READ_ONCE_DNF");
  app->add_option("--table", s.table_file, "truth-table file (text or hex format)");
  app->add_option("--m", s.params.m, "arity of AND/OR/PARITY");
  app->add_option("--N", s.params.N, "domain size for ED/TWO_TO_ONE");
  app->add_option("--R", s.params.R, "range size for ED/TWO_TO_ONE");
  app->add_option("--fanins", s.fanins, "ANDOR_TREE fan-ins from the root, comma separated");
  app->add_flag("!--top-or", s.params.top_is_and, "ANDOR_TREE root is OR");
  app->add_option("--terms", s.params.terms, "READ_ONCE_DNF terms");
  app->add_option("--width", s.params.width, "READ_ONCE_DNF term width");
  app->add_option("--compose-or", s.compose_or, "wrap as OR_k(f, ..., f)");
}

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<int> int_list(const std::string& s) {
  std::vector<int> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(std::stoi(item));
  return out;
}

std::vector<Rational> rational_list(const std::string& s) {
  std::vector<Rational> out;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ','))
    if (!item.empty()) out.push_back(parse_rational(item));
  return out;
}

TruthTable build_fn(FnSpec s) {
  TruthTable f;
  if (!s.table_file.empty()) {
    const auto text = slurp(s.table_file);
    try {
      f = table_from_text(text);
    } catch (const Error&) {
      f = table_from_hex(text);
    }
  } else {
    if (s.name.empty()) throw UsageError("one of --fn or --table is required");
    s.params.fanins = int_list(s.fanins);
    f = make_named(s.name, s.params);
  }
  if (s.compose_or > 0) f = compose(make_or(s.compose_or), f, s.compose_or);
  return f;
}

Json fn_json(const FnSpec& s, const TruthTable& f) {
  Json o;
  if (!s.table_file.empty()) o["table"] = s.table_file;
  else o["name"] = s.name;
  if (s.params.m) o["m"] = s.params.m;
  if (s.params.N) o["N"] = s.params.N;
  if (s.params.R) o["R"] = s.params.R;
  if (!s.fanins.empty()) o["fanins"] = s.fanins;
  if (s.params.terms) o["terms"] = s.params.terms;
  if (s.params.width) o["width"] = s.params.width;
  if (s.compose_or) o["compose_or"] = s.compose_or;
  o["arity"] = f.arity();
  return o;
}

Json header(const std::string& command) { return Json{{"schema", io::kSchema}, {"command", command}}; }

/// Runs fn(i) for i < n on up to `jobs` threads; results keep index order.
template <class T, class Fn>
std::vector<T> parallel_map(size_t n, unsigned jobs, Fn fn) {
  std::vector<T> out(n);
  std::atomic<size_t> next{0};
  auto worker = [&] {
    for (size_t i; (i = next++) < n;) out[i] = fn(i);
  };
  std::vector<std::thread> pool;
  for (unsigned k = 1; k < std::min<size_t>(jobs, n); ++k) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  return out;
}

CommMatrix named_matrix(const std::string& name) {
  if (name == "allones2x2") return all_ones(2, 2);
  if (name == "hadamard2x2") return CommMatrix{2, 2, {1, 1, 1, -1}};
  if (name == "identity4x4") {
    CommMatrix M = all_ones(4, 4);
    for (size_t i = 0; i < 4; ++i) M.entries[i * 4 + i] = -1;
    return M;
  }
  return matrix_from_text(slurp(name));
}

Distribution load_mu(const std::string& spec, size_t cells) {
  if (spec == "uniform") return Distribution::uniform(cells);
  std::stringstream ss(slurp(spec));
  Distribution mu;
  for (std::string tok; ss >> tok;) mu.mass.push_back(parse_rational(tok));
  return mu;
}

struct Options {
  FnSpec fn;
  int d = -1;
  std::string eps, w;
  int t = 1;
  int M = 2;
  bool with_weight = false;
  std::string matrix, mu = "uniform", mode = "exact";
  uint64_t seed = 1;
  int restarts = 64;
  std::string degrees, errors;
  bool text = false;
  std::string out;
  unsigned jobs = std::max(1u, std::thread::hardware_concurrency());
  size_t node_budget = 0;
};

MeasureOptions measure_opts(const Options& o) {
  MeasureOptions m;
  m.node_budget = o.node_budget;
  return m;
}

int need_d(const Options& o) {
  if (o.d < 0) throw UsageError("--d is required");
  return o.d;
}

Rational need_eps(const Options& o) {
  if (o.eps.empty()) throw UsageError("--eps is required");
  return parse_rational(o.eps);
}

Json cmd_degree(const Options& o, bool one_sided) {
  const auto f = build_fn(o.fn);
  Json j = header(one_sided ? "odeg" : "adeg");
  j["function"] = fn_json(o.fn, f);
  if (o.d < 0 && o.eps.empty()) throw UsageError("give --d, --eps, or both");
  if (o.d >= 0) {
    const auto r = best_error(f, o.d, one_sided, measure_opts(o));
    const auto psi = from_dual_lp(r.solution, one_sided ? DualKind::OneSided : DualKind::TwoSided, f, o.d);
    j["d"] = o.d;
    j["value"] = rat(r.value);
    j["primal"] = io::poly(r.primal);
    j["primal_error"] = rat(one_sided ? r.value : linf_error(r.primal, f));
    j["witness"] = io::witness(psi);
    // The optimal dual certifies error > eps for every eps below the optimum.
    j["witness_report"] = io::report(verify(psi, f, o.d, r.value, one_sided));
  }
  if (!o.eps.empty()) {
    const auto eps = parse_rational(o.eps);
    j["eps"] = rat(eps);
    j["degree"] = approx_degree(f, eps, one_sided, measure_opts(o));
  }
  return j;
}

Json cmd_weight(const Options& o, bool ow) {
  const auto f = build_fn(o.fn);
  const auto eps = need_eps(o);
  Json j = header(ow ? "owweight" : "weight");
  j["function"] = fn_json(o.fn, f);
  j["d"] = need_d(o);
  j["eps"] = rat(eps);
  j.update(io::measure(approx_weight(f, o.d, eps, ow, measure_opts(o))));
  return j;
}

Json cmd_tweight(const Options& o) {
  const auto f = build_fn(o.fn);
  Json j = header("tweight");
  j["function"] = fn_json(o.fn, f);
  j["d"] = need_d(o);
  const auto r = threshold_weight(f, o.d, measure_opts(o));
  j.update(io::measure(r));
  if (r.value_kind != ValueKind::Infinite) j["sign_represents"] = sign_represents(r.primal, f);
  return j;
}

Json cmd_hardest(const Options& o) {
  const auto f = build_fn(o.fn);
  Json j = header("hardest-dist");
  j["function"] = fn_json(o.fn, f);
  j["d"] = need_d(o);
  std::optional<Rational> W;
  if (o.with_weight) {
    const auto tw = threshold_weight(f, o.d, measure_opts(o));
    if (tw.value_kind == ValueKind::Finite) W = tw.value;
    j["threshold_weight"] = io::measure(tw)["value"];
  }
  const auto h = hardest_distribution(f, o.d, W, measure_opts(o));
  j["value"] = rat(h.value);
  j["mu"] = io::rats(h.mu);
  if (h.satisfies_weight_bound) j["satisfies_weight_bound"] = *h.satisfies_weight_bound;
  return j;
}

Json cmd_amplify(const Options& o) {
  const auto f = build_fn(o.fn);
  const auto r = or_amplify(f, need_d(o), o.t, measure_opts(o));
  Json j = header("amplify");
  j["function"] = fn_json(o.fn, f);
  j["d"] = o.d;
  j["t"] = o.t;
  j["inner_error"] = rat(r.inner_error);
  j["target"] = rat(r.target);
  j["correlation"] = rat(r.report.correlation);
  j["block_pos"] = rat(r.block_pos);
  j["block_neg"] = rat(r.block_neg);
  j["block_neg_bound"] = rat(r.block_neg_bound);
  j["report"] = io::report(r.report);
  if (!r.report.passed()) throw CertificateViolation("amplified witness failed verification");
  return j;
}

Json cmd_wamplify(const Options& o) {
  const auto f = build_fn(o.fn);
  std::optional<Rational> w;
  if (!o.w.empty()) w = parse_rational(o.w);
  const auto r = weight_amplify(f, need_d(o), o.t, w, measure_opts(o));
  Json j = header("wamplify");
  j["function"] = fn_json(o.fn, f);
  j["d"] = o.d;
  j["t"] = o.t;
  j["inner_weight"] = rat(r.inner_weight);
  j["w"] = rat(r.w);
  j["M_t"] = rat(r.M_t);
  j["correlation"] = rat(r.correlation);
  j["l1"] = rat(r.l1);
  j["lhs"] = rat(r.lhs);
  j["rhs"] = rat(r.rhs);
  j["max_low_degree_corr"] = rat(r.max_low_degree_corr);
  j["margin_ok"] = r.margin_ok;
  j["low_degree_ok"] = r.low_degree_ok;
  return j;
}

Json cmd_cascade(const Options& o) {
  const auto r = cascade_depth3(o.M, o.t, measure_opts(o));
  Json j = header("cascade");
  j["M"] = r.M;
  j["t"] = r.t;
  Json stages = Json::array();
  for (const auto& s : r.stages)
    stages.push_back(Json{{"name", s.name},
                          {"function", s.function},
                          {"arity", s.f.arity()},
                          {"degree", s.degree},
                          {"lp_error", rat(s.lp_error)},
                          {"l1", rat(s.l1)},
                          {"pure_high_degree", s.phd},
                          {"correlation", rat(s.correlation)},
                          {"one_sided", s.one_sided},
                          {"wrong_side_mass_pos", rat(s.wrong_side_mass_pos)},
                          {"wrong_side_mass_neg", rat(s.wrong_side_mass_neg)}});
  j["stages"] = stages;
  j["bad_mass_psi5"] = rat(r.bad_mass_psi5);
  j["bad_mass_bound"] = rat(r.bad_mass_bound);
  j["bad_mass_ok"] = r.bad_mass_ok;
  j["psi4_nonneg_at_ones"] = r.psi4_nonneg_at_ones;
  j["phd5_bound"] = r.phd5_bound;
  j["phd7_bound"] = r.phd7_bound;
  return j;
}

Json cmd_symmetrize(const Options& o) {
  const auto f = build_fn(o.fn);
  const PropertyEncoding enc(o.fn.params.N, o.fn.params.R);
  if (enc.arity() != f.arity()) throw UsageError("symmetrize needs --fn ED or TWO_TO_ONE with --N and --R");
  const int d = need_d(o);
  const auto one = best_error(f, d, true, measure_opts(o));
  Json j = header("symmetrize");
  j["function"] = fn_json(o.fn, f);
  j["d"] = d;
  j["one_sided_error"] = rat(one.value);
  const auto rep = one_sided_repair(one.primal, f, enc, one.value);
  j["psym_degree"] = rep.psym.degree();
  j["value_on_false"] = rat(rep.v);
  j["rescaled"] = rep.rescaled;
  j["repaired_degree"] = rep.r.degree();
  j["repaired_error"] = rat(rep.error);
  j["repaired"] = io::poly(rep.r);
  const auto psi = from_dual_lp(one.solution, DualKind::OneSided, f, d);
  const auto sym = symmetrize_dual_domain(psi, enc);
  j["symmetrized_witness"] = io::witness(sym);
  j["symmetrized_one_sided"] = sym.one_sided_for(f);
  j["symmetrized_correlation"] = rat(sym.correlation(f));
  j["symmetrized_phd"] = sym.pure_high_degree(d);
  return j;
}

Json cmd_krause(const Options& o) {
  const auto f = build_fn(o.fn);
  const auto r = krause_distribution(f, need_d(o), measure_opts(o));
  Json j = header("krause");
  j["function"] = fn_json(o.fn, f);
  j["d"] = o.d;
  j["weight_kind"] = io::value_kind(r.weight_kind);
  j["weight"] = r.weight_kind == ValueKind::Infinite ? Json("inf") : rat(r.weight);
  j["mu_value"] = rat(r.mu_value);
  j["mu"] = io::rats(r.mu);
  j["bound_sq"] = rat(r.bound_sq);
  j["max_abs_corr"] = rat(r.max_abs_corr);
  j["characters_checked"] = r.correlations.size();
  j["bound_ok"] = r.bound_ok;
  j["structure_ok"] = r.structure_ok;
  if (!r.structure_ok) throw CertificateViolation("lifted correlations break the contributing-z identity");
  return j;
}

Json cmd_patmat(const Options& o) {
  const auto f = build_fn(o.fn);
  const auto M = pattern_matrix(f);
  Json j = header("patmat");
  j["function"] = fn_json(o.fn, f);
  j["rows"] = M.rows;
  j["cols"] = M.cols;
  j["matrix"] = matrix_to_text(M);
  return j;
}

Json cmd_disc(const Options& o) {
  CommMatrix M;
  Json j = header("disc");
  if (!o.matrix.empty()) {
    M = named_matrix(o.matrix);
    j["matrix"] = o.matrix;
  } else {
    const auto f = build_fn(o.fn);
    M = pattern_matrix(f);
    j["pattern_of"] = fn_json(o.fn, f);
  }
  j["rows"] = M.rows;
  j["cols"] = M.cols;
  j["mu"] = o.mu;
  j["mode"] = o.mode;
  const auto mu = load_mu(o.mu, M.entries.size());
  DiscMode mode;
  if (o.mode == "exact") mode = DiscMode::Exact;
  else if (o.mode == "greedy_lb") mode = DiscMode::GreedyLowerBound;
  else if (o.mode == "spectral_ub") mode = DiscMode::SpectralUpperBound;
  else throw UsageError("--mode must be exact, greedy_lb or spectral_ub");
  const auto r = discrepancy(M, mu, mode, DiscOptions{o.seed, o.restarts});
  if (mode == DiscMode::SpectralUpperBound) {
    j["enclosure"] = Json{{"lo", r.enclosure_lo}, {"hi", r.enclosure_hi}};
  } else {
    j["value"] = rat(r.value);
    j["row_set"] = r.row_set;
    j["col_set"] = r.col_set;
    if (mode == DiscMode::GreedyLowerBound) j["seed"] = o.seed;
  }
  return j;
}

Json cmd_upperbounds(const Options& o) {
  const int m = o.fn.params.m, t = o.t;
  if (m < 1 || t < 1) throw UsageError("upperbounds needs --m >= 1 and --t >= 1");
  Json j = header("upperbounds");
  j["m"] = m;
  j["t"] = t;
  auto ra = rational_and(m, t);
  certify(ra);
  j["rational_and"] = Json{{"degree", ra.degree()}, {"weight", rat(ra.weight())},
                           {"error", rat(ra.error)}, {"claimed", rat(ra.claimed)}};
  const auto ptf = or_of_rational_ptf(ra, t);
  if (!sign_represents(ptf.ptf, ptf.F)) throw CertificateViolation("OR-of-rational PTF fails");
  const auto approx = ptf_to_approx(ptf.ptf, ptf.F, ptf.weight);
  j["or_of_rational_ptf"] = Json{{"arity", ptf.F.arity()}, {"degree", ptf.degree},
                                 {"weight", rat(ptf.weight)}, {"weight_bound", rat(ptf.weight_bound)},
                                 {"approx_error", rat(linf_error(approx, ptf.F))}};
  const Rational eps = o.eps.empty() ? frac(1, t + 1) : parse_rational(o.eps);
  const auto cheb = cheb_or_of_and_ptf(m, t, eps);
  if (!sign_represents(cheb.ptf, cheb.F)) throw CertificateViolation("Chebyshev PTF fails");
  j["cheb_or_of_and_ptf"] = Json{{"eps", rat(eps)}, {"degree", cheb.degree}, {"weight", rat(cheb.weight)}};
  if (m * t <= 8) {
    const auto row = sharp_threshold_row(m, t);
    j["sharp_threshold"] = Json{{"construction_degree", row.construction_degree},
                                {"construction_weight", rat(row.construction_weight)},
                                {"construction_error", rat(row.construction_error)},
                                {"lp_degree", row.lp_degree},
                                {"precondition_degree", row.precondition_degree},
                                {"consistent", row.consistent}};
  }
  return j;
}

struct ReportCell {
  Json row;
  bool failed = false;
};

Json cmd_report(const Options& o, std::string* text) {
  const auto f = build_fn(o.fn);
  const auto degrees = int_list(o.degrees);
  const auto errors = rational_list(o.errors);
  Json j = header("report");
  j["function"] = fn_json(o.fn, f);
  j["errors"] = io::rats(errors);
  const auto cells = parallel_map<ReportCell>(degrees.size(), o.jobs, [&](size_t i) {
    const int d = degrees[i];
    ReportCell c;
    c.row["d"] = d;
    try {
      if (d < 0 || d > f.arity()) throw ArityOverflow("degree outside [0, n]");
      const auto two = best_error(f, d, false, measure_opts(o)).value;
      const auto one = best_error(f, d, true, measure_opts(o)).value;
      c.row["best_error"] = rat(two);
      c.row["one_sided_error"] = rat(one);
      Json feas = Json::array();
      for (const auto& e : errors) feas.push_back(two <= e);
      c.row["feasible"] = feas;
    } catch (const Error& e) {
      c.failed = true;
      c.row["cap_exceeded"] = e.what();
    }
    return c;
  });
  Json rows = Json::array();
  for (const auto& c : cells) rows.push_back(c.row);
  j["rows"] = rows;

  // Sharp-threshold comparison when the function is OR_t(AND_m).
  if (o.fn.name == "AND" && o.fn.compose_or > 0 && o.fn.params.m * o.fn.compose_or <= 8) {
    const auto row = sharp_threshold_row(o.fn.params.m, o.fn.compose_or);
    j["sharp_threshold"] = Json{{"m", row.m},
                                {"t", row.t},
                                {"construction_degree", row.construction_degree},
                                {"construction_weight", rat(row.construction_weight)},
                                {"construction_error", rat(row.construction_error)},
                                {"lp_degree", row.lp_degree},
                                {"precondition_degree", row.precondition_degree},
                                {"consistent", row.consistent}};
  }

  if (text) {
    std::ostringstream ss;
    ss << "d\tbest_error\tone_sided";
    for (const auto& e : errors) ss << "\t<=" << to_string(e);
    ss << "\n";
    for (const auto& c : cells) {
      ss << c.row["d"].get<int>();
      if (c.failed) {
        ss << "\tcap exceeded: " << c.row["cap_exceeded"].get<std::string>() << "\n";
        continue;
      }
      ss << "\t" << c.row["best_error"].get<std::string>() << "\t"
         << c.row["one_sided_error"].get<std::string>();
      for (const auto& b : c.row["feasible"]) ss << "\t" << (b.get<bool>() ? "yes" : "no");
      ss << "\n";
    }
    *text = ss.str();
  }
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact approximate-degree, dual-witness and threshold-weight laboratory"};
  app.require_subcommand(1);
  Options o;
  app.add_option("--out", o.out, "write the record to this file instead of stdout");
  app.add_option("--jobs", o.jobs, "worker threads for multi-cell runs");
  app.add_option("--node-budget", o.node_budget, "IP node budget (default from ADEG_NODE_BUDGET)");

  auto sub = [&](const char* name, const char* help, bool fn = true) {
    auto* c = app.add_subcommand(name, help);
    if (fn) add_fn_options(c, o.fn);
    return c;
  };
  auto* adeg = sub("adeg", "optimal two-sided error at degree d, or least degree at --eps");
  auto* odeg = sub("odeg", "one-sided variant of adeg");
  auto* weight = sub("weight", "least weight of a degree-d eps-approximation");
  auto* owweight = sub("owweight", "least non-constant weight of a one-sided eps-approximation");
  auto* tweight = sub("tweight", "exact degree-d threshold weight");
  auto* hardest = sub("hardest-dist", "hardest distribution for degree-d correlations");
  auto* amplify = sub("amplify", "OR_t hardness amplification of a one-sided witness");
  auto* wamplify = sub("wamplify", "weight version of the OR combiner");
  auto* cascade = sub("cascade", "depth-3 AND-OR cascade", false);
  auto* symm = sub("symmetrize", "repair a one-sided approximation of a symmetric property");
  auto* krause = sub("krause", "Krause selector lift with exhaustive character check");
  auto* patmat = sub("patmat", "pattern matrix of f");
  auto* disc = sub("disc", "rectangle discrepancy of a matrix");
  auto* upper = sub("upperbounds", "rational and Chebyshev PTF constructions", false);
  auto* report = sub("report", "accuracy-vs-degree frontier table");

  for (auto* c : {adeg, odeg, weight, owweight, tweight, hardest, amplify, wamplify, symm, krause, report})
    c->add_option("--d", o.d, "degree");
  for (auto* c : {adeg, odeg, weight, owweight, upper}) c->add_option("--eps", o.eps, "error as num/den");
  for (auto* c : {amplify, wamplify, cascade, upper}) c->add_option("--t", o.t, "copies");
  hardest->add_flag("--with-weight", o.with_weight, "also compute W(f, d) and check value >= 1/W");
  wamplify->add_option("--w", o.w, "weight bound below W*_{3/4}(f, d)");
  cascade->add_option("--M", o.M, "fan-in");
  upper->add_option("--m", o.fn.params.m, "AND arity");
  disc->add_option("--matrix", o.matrix, "allones2x2, hadamard2x2, identity4x4 or a matrix file");
  disc->add_option("--mu", o.mu, "uniform or a file of rationals in row-major order");
  disc->add_option("--mode", o.mode, "exact, greedy_lb or spectral_ub");
  disc->add_option("--seed", o.seed, "greedy_lb seed");
  disc->add_option("--restarts", o.restarts, "greedy_lb restarts");
  report->add_option("--degrees", o.degrees, "comma separated degrees");
  report->add_option("--errors", o.errors, "comma separated error levels");
  report->add_flag("--text", o.text, "tab-separated table instead of JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  try {
    Json j;
    std::string text;
    auto* c = app.get_subcommands().front();
    const std::string name = c->get_name();
    if (name == "adeg") j = cmd_degree(o, false);
    else if (name == "odeg") j = cmd_degree(o, true);
    else if (name == "weight") j = cmd_weight(o, false);
    else if (name == "owweight") j = cmd_weight(o, true);
    else if (name == "tweight") j = cmd_tweight(o);
    else if (name == "hardest-dist") j = cmd_hardest(o);
    else if (name == "amplify") j = cmd_amplify(o);
    else if (name == "wamplify") j = cmd_wamplify(o);
    else if (name == "cascade") j = cmd_cascade(o);
    else if (name == "symmetrize") j = cmd_symmetrize(o);
    else if (name == "krause") j = cmd_krause(o);
    else if (name == "patmat") j = cmd_patmat(o);
    else if (name == "disc") j = cmd_disc(o);
    else if (name == "upperbounds") j = cmd_upperbounds(o);
    else if (name == "report") j = cmd_report(o, o.text ? &text : nullptr);

    const std::string payload = o.text && !text.empty() ? text : j.dump(2) + "\n";
    if (o.out.empty()) {
      std::cout << payload;
    } else {
      std::ofstream out(o.out);
      if (!out) throw UsageError("cannot write " + o.out);
      out << payload;
    }
    return 0;
  } catch (const CertificateViolation& e) {
    std::cerr << "certificate violation: " << e.what() << "\n";
    return kExitCertificate;
  } catch (const UsageError& e) {
    std::cerr << "usage: " << e.what() << "\n";
    return kExitUsage;
  } catch (const DimensionMismatch& e) {
    std::cerr << "bad input: " << e.what() << "\n";
    return kExitUsage;
  } catch (const Error& e) {
    // PreconditionViolated, OrbitAssumptionViolated and the size caps.
    std::cerr << "precondition: " << e.what() << "\n";
    return kExitPrecondition;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage: " << e.what() << "\n";
    return kExitUsage;
  }
}
