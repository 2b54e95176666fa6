#ifndef LACUNARY_IO_CONFIG_HPP
#define LACUNARY_IO_CONFIG_HPP

#include <cstddef>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"
#include "lacunary/lacunary.hpp"

namespace lacunary::io {

using json = nlohmann::json;

/// Parses JSON text; syntax errors report line and column.
inline json parse_json_text(const std::string& text, const std::string& source) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i + 1 < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw Error(Errc::Config, source + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " + e.what());
  }
}

/// Walks one JSON object, tracks which keys were read, and writes every value
/// it hands out (defaults included) into a parallel echo object.
class Reader {
 public:
  Reader(const json& node, std::string path, json& echo) : node_(&node), path_(std::move(path)), echo_(&echo) {
    if (!node.is_object()) fail("expected an object");
    if (!echo.is_object()) echo = json::object();
  }

  const std::string& path() const noexcept { return path_; }
  bool has(const std::string& key) const { return node_->contains(key) && !(*node_)[key].is_null(); }
  json& echo() { return *echo_; }

  [[noreturn]] void fail(const std::string& msg) const {
    throw Error(Errc::Config, (path_.empty() ? std::string("<root>") : path_) + ": " + msg);
  }
  [[noreturn]] void fail_key(const std::string& key, const std::string& msg) const {
    throw Error(Errc::Config, join(key) + ": " + msg);
  }

  template <class T>
  T get(const std::string& key, T fallback) {
    seen_.insert(key);
    T v = has(key) ? convert<T>(key) : std::move(fallback);
    (*echo_)[key] = v;
    return v;
  }

  template <class T>
  T require(const std::string& key) {
    seen_.insert(key);
    if (!has(key)) fail_key(key, "required field is missing");
    T v = convert<T>(key);
    (*echo_)[key] = v;
    return v;
  }

  template <class T>
  std::optional<T> optional(const std::string& key) {
    seen_.insert(key);
    if (!has(key)) {
      (*echo_)[key] = nullptr;
      return std::nullopt;
    }
    T v = convert<T>(key);
    (*echo_)[key] = v;
    return v;
  }

  /// Raw access for polymorphic fields; the caller fills the echo.
  const json* raw(const std::string& key) {
    seen_.insert(key);
    return has(key) ? &(*node_)[key] : nullptr;
  }

  Reader child(const std::string& key) {
    seen_.insert(key);
    if (!has(key)) fail_key(key, "required section is missing");
    return Reader((*node_)[key], join(key), (*echo_)[key]);
  }

  /// Missing sections read as `fallback`, which must outlive the returned reader.
  Reader child_or(const std::string& key, const json& fallback) {
    seen_.insert(key);
    return Reader(has(key) ? (*node_)[key] : fallback, join(key), (*echo_)[key]);
  }

  /// Missing sections read as an empty object so defaults still materialize.
  Reader child_or_empty(const std::string& key) {
    static const json empty = json::object();
    return child_or(key, empty);
  }

  void finish() const {
    for (const auto& [k, v] : node_->items()) {
      if (!seen_.count(k)) fail_key(k, "unknown field");
    }
  }

  std::string join(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

 private:
  template <class T>
  T convert(const std::string& key) const {
    const json& v = (*node_)[key];
    try {
      if constexpr (std::is_same_v<T, double>) {
        if (!v.is_number()) fail_key(key, "expected a number");
      } else if constexpr (std::is_integral_v<T> && !std::is_same_v<T, bool>) {
        if (!v.is_number_integer()) fail_key(key, "expected an integer");
        if constexpr (std::is_unsigned_v<T>) {
          if (v.is_number_integer() && !v.is_number_unsigned() && v.get<std::int64_t>() < 0) {
            fail_key(key, "expected a nonnegative integer");
          }
        }
      } else if constexpr (std::is_same_v<T, bool>) {
        if (!v.is_boolean()) fail_key(key, "expected true or false");
      } else if constexpr (std::is_same_v<T, std::string>) {
        if (!v.is_string()) fail_key(key, "expected a string");
      }
      return v.get<T>();
    } catch (const json::exception& e) {
      fail_key(key, std::string("type mismatch: ") + e.what());
    }
  }

  const json* node_;
  std::string path_;
  json* echo_;
  std::set<std::string> seen_;
};

// ---------------------------------------------------------------------------
// Section parsers. Each consumes its Reader completely and calls finish().

inline OrliczFunction parse_function(Reader r) {
  const auto kind = r.require<std::string>("kind");
  OrliczFunction f = OrliczFunction::power(1.0);
  if (kind == "power") {
    f = OrliczFunction::power(r.require<double>("p"));
  } else if (kind == "scaled_power") {
    const double p = r.require<double>("p");
    f = OrliczFunction::scaled_power(p, r.require<double>("c"));
  } else if (kind == "power_over_p") {
    f = OrliczFunction::power_over_p(r.require<double>("p"));
  } else if (kind == "exp_minus_one") {
    f = OrliczFunction::exp_minus_one();
  } else if (kind == "linear") {
    f = OrliczFunction::linear(r.get<double>("c", 1.0));
  } else if (kind == "table") {
    const auto knots = r.require<std::vector<std::vector<double>>>("knots");
    std::vector<orlicz::Knot> ks;
    for (const auto& k : knots) {
      if (k.size() != 2) r.fail_key("knots", "each knot is [u, M(u)]");
      ks.push_back({k[0], k[1]});
    }
    f = OrliczFunction::table(std::move(ks));
  } else {
    r.fail_key("kind", "unknown Orlicz function '" + kind + "'");
  }
  r.finish();
  return f;
}

inline MusielakOrliczFamily parse_family(Reader r) {
  const auto kind = r.get<std::string>("kind", "constant");
  MusielakOrliczFamily fam = MusielakOrliczFamily::index_scaled();
  if (kind == "constant") {
    const json def = {{"kind", "power"}, {"p", 1.0}};
    fam = MusielakOrliczFamily::constant(parse_function(r.child_or("function", def)));
  } else if (kind == "index_scaled") {
    // no parameters
  } else if (kind == "index_power") {
    fam = MusielakOrliczFamily::index_power(r.require<std::vector<double>>("exponents"));
  } else if (kind == "spike") {
    fam = MusielakOrliczFamily::spike(r.require<std::vector<double>>("slopes"));
  } else if (kind == "per_index") {
    const json* arr = r.raw("functions");
    if (!arr || !arr->is_array() || arr->empty()) r.fail_key("functions", "expected a non-empty array");
    std::vector<OrliczFunction> fs;
    json& echo = r.echo()["functions"] = json::array();
    for (std::size_t i = 0; i < arr->size(); ++i) {
      echo.push_back(json::object());
      fs.push_back(parse_function(Reader((*arr)[i], r.join("functions") + "[" + std::to_string(i) + "]", echo.back())));
    }
    fam = MusielakOrliczFamily::per_index(std::move(fs));
  } else {
    r.fail_key("kind", "unknown family '" + kind + "'");
  }
  r.finish();
  return fam;
}

inline LacunarySchedule parse_schedule(Reader r) {
  const auto kind = r.get<std::string>("kind", "geometric");
  std::optional<LacunarySchedule> s;
  if (kind == "geometric") {
    GeometricCuts g;
    g.base = r.get<double>("base", g.base);
    g.ratio = r.get<double>("ratio", g.ratio);
    g.count = r.get<std::size_t>("count", g.count);
    s = build_lacunary(g);
  } else if (kind == "explicit") {
    s = build_lacunary(ExplicitCuts{r.require<std::vector<std::size_t>>("cut_points")});
  } else {
    r.fail_key("kind", "unknown schedule '" + kind + "'");
  }
  r.finish();
  return *s;
}

inline MatrixOperator parse_matrix(Reader r) {
  const auto kind = r.get<std::string>("kind", "identity");
  MatrixOperator a = matrix::Identity{};
  if (kind == "identity") {
  } else if (kind == "cesaro") {
    a = matrix::CesaroC1{};
  } else if (kind == "shift") {
    a = matrix::Shift{r.get<std::ptrdiff_t>("offset", 1)};
  } else if (kind == "rows") {
    const auto rows = r.require<std::vector<std::vector<std::pair<std::size_t, double>>>>("rows");
    matrix::RowTable t;
    for (const auto& row : rows) {
      std::vector<matrix::RowEntry> es;
      for (const auto& [c, v] : row) es.push_back({c, v});
      t.rows.push_back(std::move(es));
    }
    a = std::move(t);
  } else if (kind == "abel") {
    a = abel_means(r.get<double>("x_bound", 1.0));
  } else {
    r.fail_key("kind", "unknown matrix '" + kind + "'");
  }
  r.finish();
  return a;
}

// Scalar or per-index list.
template <class Seq>
Seq parse_positive_sequence(Reader& r, const std::string& key, double fallback) {
  const json* v = r.raw(key);
  try {
    if (!v) {
      r.echo()[key] = fallback;
      return Seq::constant(fallback);
    }
    if (v->is_number()) {
      r.echo()[key] = v->get<double>();
      return Seq::constant(v->get<double>());
    }
    if (v->is_array()) {
      auto list = v->get<std::vector<double>>();
      r.echo()[key] = list;
      return Seq::per_index(std::move(list));
    }
  } catch (const json::exception&) {
  } catch (const Error& e) {
    r.fail_key(key, e.detail());
  }
  r.fail_key(key, "expected a number or an array of numbers");
}

/// params + schedule + family + matrix from the root reader.
inline SpaceParams parse_space(Reader& root) {
  SpaceParams p;
  p.schedule = parse_schedule(root.child_or_empty("schedule"));
  p.family = parse_family(root.child_or_empty("family"));
  p.matrix = parse_matrix(root.child_or_empty("matrix"));
  Reader r = root.child_or_empty("params");
  p.alpha = r.get<double>("alpha", p.alpha);
  p.epsilon = r.get<double>("epsilon", p.epsilon);
  p.limit = r.get<double>("limit", p.limit);
  p.m_max = r.get<std::size_t>("m_max", p.m_max);
  p.rho = parse_positive_sequence<RhoSequence>(r, "rho", 1.0);
  p.exponents = parse_positive_sequence<ExponentSequence>(r, "exponents", 1.0);
  const auto mode = r.get<std::string>("flag_mode", "modular");
  if (mode == "modular") p.flag_mode = FlagMode::Modular;
  else if (mode == "raw") p.flag_mode = FlagMode::RawDeviation;
  else r.fail_key("flag_mode", "expected \"modular\" or \"raw\"");
  p.matrix_tol = r.get<double>("matrix_tol", p.matrix_tol);
  r.finish();
  try {
    p.validate();
  } catch (const Error& e) {
    r.fail(e.detail());
  }
  return p;
}

inline VerdictOptions parse_verdict(Reader r) {
  VerdictOptions v;
  v.tol = r.get<double>("tol", v.tol);
  v.tail_window = r.get<std::size_t>("tail_window", v.tail_window);
  v.slope_slack = r.get<double>("slope_slack", v.slope_slack);
  r.finish();
  if (!(v.tol > 0.0)) throw Error(Errc::Config, r.join("tol") + ": must be > 0");
  return v;
}

/// Lookahead beyond k_R a sequence needs for the given space.
inline std::size_t default_horizon(const SpaceParams& p) {
  std::size_t extra = p.m_max;
  if (const auto* s = std::get_if<matrix::Shift>(&p.matrix); s && s->offset > 0) extra += static_cast<std::size_t>(s->offset);
  return p.schedule.horizon() + extra;
}

/// Explicit values, or a named generator with seed and horizon.
inline Sequence parse_sequence(Reader r, std::size_t fallback_horizon, std::optional<std::uint64_t> seed_override) {
  if (r.has("values")) {
    auto v = r.require<std::vector<double>>("values");
    r.finish();
    try {
      return Sequence(std::move(v));
    } catch (const Error& e) {
      r.fail_key("values", e.detail());
    }
  }
  const auto gen = r.get<std::string>("generator", "zero");
  const auto horizon = r.get<std::size_t>("horizon", fallback_horizon);
  if (horizon == 0) r.fail_key("horizon", "must be >= 1");
  std::vector<double> v(horizon, 0.0);
  if (gen == "zero") {
  } else if (gen == "constant") {
    const double c = r.get<double>("value", 0.0);
    std::fill(v.begin(), v.end(), c);
  } else if (gen == "alternating") {
    const double lo = r.get<double>("low", 0.0), hi = r.get<double>("high", 1.0);
    for (std::size_t k = 1; k <= horizon; ++k) v[k - 1] = k % 2 == 1 ? lo : hi;
  } else if (gen == "uniform") {
    const double lo = r.get<double>("low", -1.0), hi = r.get<double>("high", 1.0);
    std::uint64_t seed = r.get<std::uint64_t>("seed", 1);
    if (seed_override) r.echo()["seed"] = seed = *seed_override;
    std::mt19937_64 rng(seed);
    for (auto& e : v) e = lo + (hi - lo) * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
  } else {
    r.fail_key("generator", "unknown generator '" + gen + "'");
  }
  r.finish();
  return Sequence(std::move(v));
}

// ---------------------------------------------------------------------------
// Constructions.

struct ConstructionConfig {
  std::string theorem;
  Thm37Spec thm37;
  Thm38Spec thm38;
};

inline ConstructionConfig parse_construction(Reader r) {
  ConstructionConfig c;
  c.theorem = r.require<std::string>("theorem");
  if (c.theorem == "thm37") {
    Thm37Spec& s = c.thm37;
    s.nu = r.get<double>("nu", s.nu);
    s.rho = r.get<double>("rho", s.rho);
    s.r_max = r.get<std::size_t>("r_max", s.r_max);
    s.alpha = r.get<double>("alpha", s.alpha);
    s.m_max = r.get<std::size_t>("m_max", s.m_max);
    const json def = {{"kind", "index_scaled"}};
    s.family = parse_family(r.child_or("family", def));
    s.epsilon = r.optional<double>("epsilon");
    s.horizon_cap = r.get<std::size_t>("horizon_cap", s.horizon_cap);
  } else if (c.theorem == "thm38") {
    Thm38Spec& s = c.thm38;
    s.nu_scale = r.get<double>("nu_scale", s.nu_scale);
    s.rho = r.get<double>("rho", s.rho);
    s.r_max = r.get<std::size_t>("r_max", s.r_max);
    s.alpha = r.get<double>("alpha", s.alpha);
    s.m_max = r.get<std::size_t>("m_max", s.m_max);
    s.schedule_base = r.get<double>("schedule_base", s.schedule_base);
    s.schedule_ratio = r.get<double>("schedule_ratio", s.schedule_ratio);
    s.cut_points = r.get<std::vector<std::size_t>>("cut_points", {});
    s.base_slope = r.get<double>("base_slope", s.base_slope);
    s.epsilon = r.get<double>("epsilon", s.epsilon);
  } else {
    r.fail_key("theorem", "expected \"thm37\" or \"thm38\"");
  }
  r.finish();
  return c;
}

inline Construction build(const ConstructionConfig& c) {
  return c.theorem == "thm37" ? build_thm37(c.thm37) : build_thm38(c.thm38);
}

}  // namespace lacunary::io

#endif  // LACUNARY_IO_CONFIG_HPP
