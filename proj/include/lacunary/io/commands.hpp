#ifndef LACUNARY_IO_COMMANDS_HPP
#define LACUNARY_IO_COMMANDS_HPP

#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "lacunary/io/config.hpp"
#include "lacunary/io/presets.hpp"
#include "lacunary/io/report.hpp"

#ifndef LACUNARY_VERSION
#define LACUNARY_VERSION "0.0.0"
#endif

namespace lacunary::io {

struct CommandOptions {
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out_dir;
};

struct CommandOutput {
  json report;
  std::vector<std::pair<std::string, std::string>> files;  // name relative to out_dir, contents
  std::string out_dir;
  std::string summary;  // human-readable table
  /// Whether --strict would turn this run into exit code 2.
  bool strict_failure = false;
};

/// Preset first, config merge-patched over it.
inline json compose_config(const std::optional<std::string>& preset, const std::optional<json>& config) {
  json base = json::object();
  if (preset) {
    auto text = find_preset(*preset);
    if (!text) throw Error(Errc::Config, "unknown preset '" + *preset + "'");
    base = parse_json_text(std::string(*text), "preset " + *preset);
  }
  if (config) base.merge_patch(*config);
  return base;
}

namespace detail {

inline std::string pad(std::string s, std::size_t w) {
  s.append(s.size() < w ? w - s.size() : 1, ' ');
  return s;
}

inline std::string read_output_dir(Reader& root, const CommandOptions& opt) {
  Reader r = root.child_or_empty("output");
  std::string dir = r.get<std::string>("dir", "out");
  if (opt.out_dir) r.echo()["dir"] = dir = *opt.out_dir;
  r.finish();
  return dir;
}

inline json check_json(const std::string& name, const std::string& expected, double measured, bool pass,
                       const std::string& detail = "") {
  json j = {{"name", name}, {"expected", expected}, {"measured", num(measured)}, {"result", pass ? "PASS" : "FAIL"}};
  if (!detail.empty()) j["detail"] = detail;
  return j;
}

struct Classified {
  UniformResult strong;
  UniformResult shat;
};

inline Classified classify_both(const Sequence& x, const SpaceParams& p, const VerdictOptions& v) {
  return {uniform_verdict(x, p, StatisticKind::Strong, v), uniform_verdict(x, p, StatisticKind::ShatDensity, v)};
}

inline json classified_json(const Classified& c, const SpaceParams& p, std::size_t horizon) {
  return {{"horizon", horizon},
          {"m_max", p.m_max},
          {"alpha", num(p.alpha)},
          {"epsilon", num(p.epsilon)},
          {"flag_mode", std::string(to_string(p.flag_mode))},
          {"matrix", describe(p.matrix)},
          {"family", p.family.describe()},
          {"schedule", schedule_json(p.schedule)},
          {"strong", {{"verdict", to_json(c.strong.verdict)}, {"sup", num_array(c.strong.trajectory.sup.values)}}},
          {"shat_density", {{"verdict", to_json(c.shat.verdict)}, {"sup", num_array(c.shat.trajectory.sup.values)}}}};
}

inline std::string verdict_table(const Classified& c) {
  std::ostringstream os;
  os << pad("statistic", 14) << pad("decision", 18) << pad("tail_mean", 16) << "tail_slope\n";
  os << pad("strong", 14) << pad(std::string(to_string(c.strong.verdict.decision)), 18)
     << pad(fmt12(c.strong.verdict.tail_mean), 16) << fmt12(c.strong.verdict.tail_slope) << "\n";
  os << pad("shat_density", 14) << pad(std::string(to_string(c.shat.verdict.decision)), 18)
     << pad(fmt12(c.shat.verdict.tail_mean), 16) << fmt12(c.shat.verdict.tail_slope) << "\n";
  return os.str();
}

}  // namespace detail

// ---------------------------------------------------------------------------

inline CommandOutput cmd_norms(const json& config, const CommandOptions& opt) {
  CommandOutput out;
  json echo = json::object();
  Reader root(config, "", echo);
  const MusielakOrliczFamily fam = parse_family(root.child("family"));
  const Sequence x = parse_sequence(root.child("sequence"), 1, opt.seed);
  Reader nr = root.child_or_empty("norms");
  const double tol = nr.get<double>("tol", 1e-10);
  const RhoSequence rho = parse_positive_sequence<RhoSequence>(nr, "rho", 1.0);
  nr.finish();

  json results = {{"horizon", x.horizon()}, {"family", fam.describe()}};
  results["modular"] = num(modular(fam, x, rho));
  results["luxemburg_norm"] = num(luxemburg_norm(fam, x, tol));
  const OrliczNormResult on = orlicz_norm(fam, x, tol);
  results["orlicz_norm"] = {{"value", num(on.value)}, {"multiplier", num(on.multiplier)}, {"at_boundary", on.at_boundary}};

  if (root.has("complementary")) {
    Reader cr = root.child("complementary");
    const auto k = cr.get<std::size_t>("k", 1);
    const auto vs = cr.require<std::vector<double>>("v");
    ConjugateSearch s;
    s.u_max = cr.get<double>("u_max", s.u_max);
    s.tol = cr.get<double>("tol", s.tol);
    s.grid_points = cr.get<std::size_t>("grid_points", s.grid_points);
    s.strict = cr.get<bool>("strict", s.strict);
    cr.finish();
    json samples = json::array();
    for (double v : vs) {
      const ConjugateResult c = complementary(fam, k, v, s);
      samples.push_back({{"v", num(v)}, {"value", num(c.value)}, {"maximizer", num(c.maximizer)}, {"at_boundary", c.at_boundary}});
    }
    results["complementary"] = {{"k", k}, {"samples", samples}};
  } else {
    root.optional<double>("complementary");
  }
  if (root.has("delta2")) {
    Reader dr = root.child("delta2");
    Delta2Options d;
    d.a = dr.get<double>("a", d.a);
    d.k_first = dr.get<std::size_t>("k_first", d.k_first);
    d.k_last = dr.get<std::size_t>("k_last", d.k_last);
    d.u_samples = dr.get<std::vector<double>>("u_samples", log_grid_with_zero(1e-4, 1.0, 41));
    if (const json* off = dr.raw("offsets"); off && off->is_array()) {
      d.offsets = SuppliedOffsets{off->get<std::vector<double>>()};
      dr.echo()["offsets"] = *off;
    } else if (!off || (off->is_string() && *off == "geometric")) {
      dr.echo()["offsets"] = "geometric";
    } else {
      dr.fail_key("offsets", "expected \"geometric\" or an array of c_k");
    }
    dr.finish();
    results["delta2"] = to_json(delta2_check(fam, d));
  } else {
    root.optional<double>("delta2");
  }
  out.out_dir = detail::read_output_dir(root, opt);
  root.finish();

  std::ostringstream os;
  os << "horizon         " << x.horizon() << "\n"
     << "modular         " << fmt12(results["modular"].get<double>()) << "\n"
     << "luxemburg_norm  " << fmt12(results["luxemburg_norm"].get<double>()) << "\n"
     << "orlicz_norm     " << fmt12(on.value) << (on.at_boundary ? " (boundary)" : "") << "\n";
  out.summary = os.str();
  out.report = {{"config", echo}, {"results", results}};
  return out;
}

inline CommandOutput cmd_classify(const json& config, const CommandOptions& opt) {
  CommandOutput out;
  json echo = json::object();
  Reader root(config, "", echo);
  std::optional<Sequence> x;
  SpaceParams p;
  std::vector<std::string> notes;
  if (root.has("construction")) {
    for (const char* key : {"sequence", "family", "schedule", "params", "matrix"}) {
      if (root.has(key)) root.fail_key(key, "not allowed together with construction");
    }
    Construction c = build(parse_construction(root.child("construction")));
    x = std::move(c.x);
    p = std::move(c.params);
    notes = std::move(c.notes);
  } else {
    root.optional<double>("construction");
    p = parse_space(root);
    x = parse_sequence(root.child_or_empty("sequence"), default_horizon(p), opt.seed);
  }
  const VerdictOptions v = parse_verdict(root.child_or_empty("verdict"));
  out.out_dir = detail::read_output_dir(root, opt);
  root.finish();

  const auto c = detail::classify_both(*x, p, v);
  json results = detail::classified_json(c, p, x->horizon());
  results["notes"] = notes;
  out.files.emplace_back("trajectory.csv", trajectory_csv(c.strong.trajectory));
  out.files.emplace_back("trajectory_shat.csv", trajectory_csv(c.shat.trajectory));
  out.summary = detail::verdict_table(c);
  out.report = {{"config", echo}, {"results", results}};
  return out;
}

inline CommandOutput cmd_counterexample(const json& config, const CommandOptions& opt) {
  CommandOutput out;
  json echo = json::object();
  Reader root(config, "", echo);
  const ConstructionConfig cc = parse_construction(root.child("construction"));
  const VerdictOptions v = parse_verdict(root.child_or_empty("verdict"));
  Reader ck = root.child_or_empty("checks");
  const Construction con = build(cc);
  const SpaceParams& p = con.params;
  const auto c = detail::classify_both(con.x, p, v);
  const auto& strong = c.strong.trajectory.sup;
  const auto& dens = c.shat.trajectory.sup;
  const std::size_t R = p.schedule.block_count();
  json checks = json::array();

  if (cc.theorem == "thm37") {
    const double half_tol = ck.get<double>("half_tol", 0.05);
    const auto from = ck.get<std::size_t>("strong_from_block", 4);
    ck.finish();
    double worst = 0.0;  // max_r v_r / 2^{-r+1}
    for (std::size_t r = std::max<std::size_t>(from, 1); r <= R; ++r) {
      worst = std::max(worst, strong[r] / std::exp2(1.0 - static_cast<double>(r)));
    }
    checks.push_back(detail::check_json("strong_rate", "v_r <= 2^(-r+1)", worst, worst <= 1.0,
                                        "max_r v_r / 2^(-r+1) for r >= " + std::to_string(from)));
    checks.push_back(detail::check_json("strong_limit", "0", c.strong.verdict.tail_mean,
                                        c.strong.verdict.decision == Decision::ConvergesToZero));
    const double tail = c.shat.verdict.tail_mean;
    checks.push_back(detail::check_json("density_limit", "1/2", tail, std::abs(tail - 0.5) <= half_tol,
                                        "|tail - 1/2| <= " + fmt12(half_tol)));
  } else {
    const double min_tol = ck.get<double>("min_strong_tol", 1e-9);
    const double dmax = ck.get<double>("density_max", 0.01);
    const auto from = ck.get<std::size_t>("density_from_block", 7);
    ck.finish();
    double min_strong = std::numeric_limits<double>::infinity();
    for (std::size_t r = 1; r <= R; ++r) min_strong = std::min(min_strong, strong[r]);
    checks.push_back(detail::check_json("strong_lower", ">= 1", min_strong, min_strong >= 1.0 - min_tol));
    checks.push_back(detail::check_json("strong_limit", ">= 1 (no convergence)", c.strong.verdict.tail_mean,
                                        c.strong.verdict.decision == Decision::DoesNotConverge));
    bool exact = true, small = true;
    double worst = 0.0;
    for (std::size_t r = 1; r <= R; ++r) {
      const double expect = 1.0 / std::pow(static_cast<double>(p.schedule.length(r)), p.alpha);
      exact = exact && std::abs(dens[r] - expect) <= 1e-12 * expect;
      if (r >= from) {
        small = small && dens[r] <= dmax;
        worst = std::max(worst, dens[r]);
      }
    }
    checks.push_back(detail::check_json("density_shape", "1/h_r^alpha", dens[R], exact,
                                        "density equals 1/h_r^alpha on every block"));
    checks.push_back(detail::check_json("density_limit", "0", worst,
                                        small && c.shat.verdict.decision == Decision::ConvergesToZero,
                                        "max density for r >= " + std::to_string(from) + " <= " + fmt12(dmax)));
  }
  out.out_dir = detail::read_output_dir(root, opt);
  root.finish();

  json results = detail::classified_json(c, p, con.x.horizon());
  results["theorem"] = cc.theorem;
  results["checks"] = checks;
  results["notes"] = con.notes;
  out.files.emplace_back("trajectory.csv", trajectory_csv(c.strong.trajectory));
  out.files.emplace_back("trajectory_shat.csv", trajectory_csv(c.shat.trajectory));

  std::ostringstream os;
  os << detail::verdict_table(c) << "\n" << detail::pad("check", 16) << detail::pad("expected", 24)
     << detail::pad("measured", 18) << "result\n";
  for (const auto& ch : checks) {
    if (ch["result"] == "FAIL") out.strict_failure = true;
    os << detail::pad(ch["name"].get<std::string>(), 16) << detail::pad(ch["expected"].get<std::string>(), 24)
       << detail::pad(ch["measured"].dump(), 18) << ch["result"].get<std::string>() << "\n";
  }
  for (const auto& n : con.notes) os << "note: " << n << "\n";
  out.summary = os.str();
  out.report = {{"config", echo}, {"results", results}};
  return out;
}

inline std::vector<Theorem> parse_theorems(Reader& r) {
  const auto names = r.get<std::vector<std::string>>("theorems", {"T31", "T33", "T35", "T36", "T37", "T38"});
  std::vector<Theorem> out;
  for (const auto& n : names) {
    bool found = false;
    for (Theorem t : {Theorem::T31, Theorem::T33, Theorem::T35, Theorem::T36, Theorem::T37, Theorem::T38}) {
      if (n == to_string(t)) {
        out.push_back(t);
        found = true;
      }
    }
    if (!found) r.fail_key("theorems", "unknown theorem '" + n + "'");
  }
  return out;
}

inline CommandOutput cmd_inclusion(const json& config, const CommandOptions& opt) {
  CommandOutput out;
  json echo = json::object();
  Reader root(config, "", echo);
  const SpaceParams base = parse_space(root);
  Reader cr = root.child_or_empty("corpus");
  CorpusOptions co;
  co.count = cr.get<std::size_t>("count", co.count);
  co.seed = cr.get<std::uint64_t>("seed", co.seed);
  if (opt.seed) cr.echo()["seed"] = co.seed = *opt.seed;
  co.amplitude = cr.get<double>("amplitude", co.amplitude);
  co.sparse_exponent = cr.get<double>("sparse_exponent", co.sparse_exponent);
  co.dense_fraction = cr.get<double>("dense_fraction", co.dense_fraction);
  cr.finish();

  std::vector<ConstructionConfig> extra;
  if (root.has("construction")) extra.push_back(parse_construction(root.child("construction")));
  else root.optional<double>("construction");
  if (const json* arr = root.raw("constructions")) {
    if (!arr->is_array()) root.fail_key("constructions", "expected an array");
    json& e = echo["constructions"] = json::array();
    for (std::size_t i = 0; i < arr->size(); ++i) {
      e.push_back(json::object());
      extra.push_back(parse_construction(Reader((*arr)[i], "constructions[" + std::to_string(i) + "]", e.back())));
    }
  } else {
    echo["constructions"] = json::array();
  }

  InclusionOptions io;
  io.verdict = parse_verdict(root.child_or_empty("verdict"));
  Reader ir = root.child_or_empty("inclusion");
  io.beta = ir.get<double>("beta", io.beta);
  io.theorems = parse_theorems(ir);
  io.delta2_k_last = ir.get<std::size_t>("delta2_k_last", io.delta2_k_last);
  io.gamma_floor = ir.get<double>("gamma_floor", io.gamma_floor);
  ir.finish();
  out.out_dir = detail::read_output_dir(root, opt);
  root.finish();

  std::vector<CorpusEntry> corpus = co.count ? generate_corpus(co, base) : std::vector<CorpusEntry>{};
  for (std::size_t i = 0; i < extra.size(); ++i) {
    corpus.push_back(corpus_entry_from(build(extra[i]), extra[i].theorem + "-" + std::to_string(i), extra[i].theorem));
  }
  const InclusionReport rep = run_inclusion_matrix(corpus, io, "seed-" + std::to_string(co.seed));

  out.files.emplace_back("membership.csv", membership_csv(rep));
  std::ostringstream os;
  os << detail::pad("theorem", 9) << detail::pad("rows", 7) << detail::pad("fails", 7) << detail::pad("witnesses", 11)
     << detail::pad("violations", 12) << "label\n";
  for (const auto& s : rep.summaries) {
    os << detail::pad(std::string(to_string(s.theorem)), 9) << detail::pad(std::to_string(s.rows), 7)
       << detail::pad(std::to_string(s.fails), 7) << detail::pad(std::to_string(s.witnesses), 11)
       << detail::pad(std::to_string(s.violations), 12) << s.label << "\n";
  }
  os << "density inequality: " << rep.inequality_comparisons << " comparisons, "
     << rep.inequality_violations.size() << " violations\n";
  for (const auto& w : rep.warnings) os << "warning: " << w << "\n";
  out.summary = os.str();
  out.strict_failure = rep.violation_count() > 0 || !rep.inequality_violations.empty();
  out.report = {{"config", echo}, {"results", to_json(rep)}};
  return out;
}

/// Dispatches by name and stamps tool, version, timestamp and command.
inline CommandOutput run_command(const std::string& command, const json& config, const CommandOptions& opt) {
  CommandOutput out;
  if (command == "norms") out = cmd_norms(config, opt);
  else if (command == "classify") out = cmd_classify(config, opt);
  else if (command == "counterexample") out = cmd_counterexample(config, opt);
  else if (command == "inclusion") out = cmd_inclusion(config, opt);
  else throw Error(Errc::Config, "unknown command '" + command + "'");
  json full = {{"tool", "lacunary"}, {"version", LACUNARY_VERSION}, {"timestamp", utc_timestamp()}, {"command", command}};
  full["config"] = std::move(out.report["config"]);
  full["results"] = std::move(out.report["results"]);
  out.report = std::move(full);
  return out;
}

}  // namespace lacunary::io

#endif  // LACUNARY_IO_COMMANDS_HPP
