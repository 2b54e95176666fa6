#ifndef LACUNARY_IO_PRESETS_HPP
#define LACUNARY_IO_PRESETS_HPP

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace lacunary::io {

struct Preset {
  std::string_view name;
  std::string_view json;
};

inline constexpr Preset kPresets[] = {
    {"thm37-default", R"({
  "construction": {
    "theorem": "thm37",
    "nu": 1.0,
    "rho": 1.0,
    "r_max": 14,
    "alpha": 1.0,
    "m_max": 32,
    "family": {"kind": "index_scaled"}
  },
  "verdict": {"tol": 0.001, "tail_window": 0, "slope_slack": 0.05}
})"},
    {"thm38-default", R"({
  "construction": {
    "theorem": "thm38",
    "nu_scale": 1.0,
    "rho": 1.0,
    "r_max": 10,
    "alpha": 1.0,
    "m_max": 32,
    "schedule_base": 25.0,
    "schedule_ratio": 2.0,
    "base_slope": 1e-06,
    "epsilon": 0.001
  },
  "verdict": {"tol": 0.001, "tail_window": 0, "slope_slack": 0.05}
})"},
};

inline std::optional<std::string_view> find_preset(std::string_view name) {
  for (const auto& p : kPresets) {
    if (p.name == name) return p.json;
  }
  return std::nullopt;
}

inline std::vector<std::string> preset_names() {
  std::vector<std::string> out;
  for (const auto& p : kPresets) out.emplace_back(p.name);
  return out;
}

}  // namespace lacunary::io

#endif  // LACUNARY_IO_PRESETS_HPP
