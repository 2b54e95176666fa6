#ifndef LACUNARY_IO_REPORT_HPP
#define LACUNARY_IO_REPORT_HPP

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <string>
#include <vector>

#include "json.hpp"
#include "lacunary/lacunary.hpp"

namespace lacunary::io {

using json = nlohmann::json;

/// 12 significant digits, the fixed precision of every emitted number.
inline std::string fmt12(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

/// Rounded to 12 significant digits; non-finite values become strings.
inline json num(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return std::strtod(fmt12(x).c_str(), nullptr);
}

inline json num_array(const std::vector<double>& v) {
  json a = json::array();
  for (double x : v) a.push_back(num(x));
  return a;
}

inline std::string utc_timestamp() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

/// Header r,m,value; R (m_max + 1) per-m rows, then R rows with m = sup.
inline std::string trajectory_csv(const UniformTrajectory& u) {
  std::string out = "r,m,value\n";
  for (std::size_t m = 0; m < u.per_m.size(); ++m) {
    const auto& t = u.per_m[m];
    for (std::size_t r = 1; r <= t.values.size(); ++r) {
      out += std::to_string(r) + "," + std::to_string(m) + "," + fmt12(t[r]) + "\n";
    }
  }
  for (std::size_t r = 1; r <= u.sup.values.size(); ++r) out += std::to_string(r) + ",sup," + fmt12(u.sup[r]) + "\n";
  return out;
}

inline json to_json(const Verdict& v) {
  return {{"decision", std::string(to_string(v.decision))},
          {"tail_mean", num(v.tail_mean)},
          {"tail_slope", num(v.tail_slope)},
          {"tail_window", v.tail_window},
          {"tolerance", num(v.tolerance)}};
}

inline json to_json(const Delta2Report& d) {
  json viol = json::array();
  for (const auto& v : d.violations) {
    viol.push_back({{"k", v.k}, {"u", num(v.u)}, {"m_u", num(v.m_u)}, {"m_2u", num(v.m_2u)}, {"c_k", num(v.c_k)}});
  }
  return {{"a", num(d.a)},
          {"k_estimate", num(d.k_estimate)},
          {"offset_rule", d.offset_rule},
          {"samples_tested", d.samples_tested},
          {"holds", d.holds()},
          {"violations", viol}};
}

inline json to_json(const GrowthEstimate& g) {
  return {{"nu_grid", num_array(g.nu_grid)},
          {"inf_ratio", num_array(g.inf_ratio)},
          {"liminf_estimate", num(g.liminf_estimate)},
          {"gamma_all", num(g.gamma_all)},
          {"bounded_away", g.bounded_away}};
}

inline json schedule_json(const LacunarySchedule& s) {
  return {{"blocks", s.block_count()},
          {"horizon", s.horizon()},
          {"cut_points", s.cut_points()},
          {"lengths_nondecreasing", s.lengths_nondecreasing()}};
}

inline json to_json(const InclusionReport& rep) {
  json rows = json::array();
  for (const auto& row : rep.rows) {
    json spaces = json::object();
    for (const auto& [name, v] : row.spaces) spaces[name] = to_json(v);
    json jr = {{"id", row.id}, {"kind", row.kind}, {"max_deviation", num(row.max_deviation)}, {"spaces", spaces}};
    jr["delta2"] = row.delta2 ? to_json(*row.delta2) : json(nullptr);
    jr["growth"] = row.growth ? to_json(*row.growth) : json(nullptr);
    rows.push_back(std::move(jr));
  }
  json imps = json::array();
  for (const auto& ir : rep.implications) {
    imps.push_back({{"sequence", ir.sequence_id},
                    {"theorem", std::string(to_string(ir.theorem))},
                    {"antecedent", ir.antecedent},
                    {"consequent", ir.consequent},
                    {"antecedent_decision", std::string(to_string(ir.antecedent_decision))},
                    {"consequent_decision", std::string(to_string(ir.consequent_decision))},
                    {"transport", num(ir.transport)},
                    {"consequent_tol", num(ir.consequent_tol)},
                    {"hypothesis_holds", ir.hypothesis_holds},
                    {"result", ir.failed ? "FAIL" : "PASS"},
                    {"witness", ir.witness()},
                    {"note", ir.note}});
  }
  json sums = json::array();
  for (const auto& s : rep.summaries) {
    sums.push_back({{"theorem", std::string(to_string(s.theorem))},
                    {"rows", s.rows},
                    {"fails", s.fails},
                    {"witnesses", s.witnesses},
                    {"violations", s.violations},
                    {"label", s.label}});
  }
  json ineq_viol = json::array();
  for (const auto& v : rep.inequality_violations) {
    ineq_viol.push_back({{"r", v.r}, {"m", v.m}, {"lhs", num(v.lhs)}, {"rhs", num(v.rhs)}});
  }
  return {{"corpus", rep.corpus_id},
          {"beta", num(rep.beta)},
          {"rows", rows},
          {"implications", imps},
          {"summaries", sums},
          {"density_inequality", {{"comparisons", rep.inequality_comparisons}, {"violations", ineq_viol}}},
          {"warnings", rep.warnings}};
}

/// Rows: sequences; columns: every space any row was classified in.
inline std::string membership_csv(const InclusionReport& rep) {
  std::vector<std::string> cols;
  for (const auto& row : rep.rows) {
    for (const auto& [name, v] : row.spaces) {
      if (std::find(cols.begin(), cols.end(), name) == cols.end()) cols.push_back(name);
    }
  }
  std::sort(cols.begin(), cols.end());
  std::string out = "sequence,kind";
  for (const auto& c : cols) out += ",\"" + c + "\"";
  out += "\n";
  for (const auto& row : rep.rows) {
    out += row.id + "," + row.kind;
    for (const auto& c : cols) {
      auto it = row.spaces.find(c);
      out += ",";
      if (it != row.spaces.end()) out += std::string(to_string(it->second.decision));
    }
    out += "\n";
  }
  return out;
}

}  // namespace lacunary::io

#endif  // LACUNARY_IO_REPORT_HPP
