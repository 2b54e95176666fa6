#ifndef LACUNARY_ORLICZ_HPP
#define LACUNARY_ORLICZ_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <sstream>
#include <string>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "lacunary/error.hpp"

namespace lacunary {

namespace orlicz {

struct Power {
  double p;
};
struct ScaledPower {
  double p;
  double c;
};
/// u^p / p
struct PowerOverP {
  double p;
};
struct ExpMinusOne {};
struct LinearSlope {
  double c;
};

struct Knot {
  double u;
  double value;
};

/// Piecewise-linear interpolant through knots, extrapolated linearly past the
/// last knot. Convexity is not enforced here; verify_orlicz_axioms reports it.
struct Table {
  std::vector<Knot> knots;
};

}  // namespace orlicz

class OrliczFunction {
 public:
  using Kind = std::variant<orlicz::Power, orlicz::ScaledPower, orlicz::PowerOverP,
                            orlicz::ExpMinusOne, orlicz::LinearSlope, orlicz::Table>;

  OrliczFunction() : kind_(orlicz::Power{1.0}) {}

  static OrliczFunction power(double p) {
    require(p >= 1.0 && std::isfinite(p), "power exponent must be >= 1");
    return OrliczFunction(orlicz::Power{p});
  }
  static OrliczFunction scaled_power(double p, double c) {
    require(p >= 1.0 && std::isfinite(p), "power exponent must be >= 1");
    require(c > 0.0 && std::isfinite(c), "power scale must be > 0");
    return OrliczFunction(orlicz::ScaledPower{p, c});
  }
  static OrliczFunction power_over_p(double p) {
    require(p > 1.0 && std::isfinite(p), "u^p/p needs p > 1");
    return OrliczFunction(orlicz::PowerOverP{p});
  }
  static OrliczFunction exp_minus_one() { return OrliczFunction(orlicz::ExpMinusOne{}); }
  static OrliczFunction linear(double c) {
    require(c > 0.0 && std::isfinite(c), "linear slope must be > 0");
    return OrliczFunction(orlicz::LinearSlope{c});
  }
  static OrliczFunction table(std::vector<orlicz::Knot> knots) {
    require(knots.size() >= 2, "a table needs at least two knots");
    require(knots.front().u == 0.0 && knots.front().value == 0.0, "the first table knot must be (0, 0)");
    for (std::size_t i = 0; i < knots.size(); ++i) {
      require(std::isfinite(knots[i].u) && std::isfinite(knots[i].value), "table knots must be finite");
      if (i > 0) {
        require(knots[i].u > knots[i - 1].u, "table knots must be strictly increasing in u");
        require(knots[i].value >= knots[i - 1].value, "table values must be nondecreasing");
      }
    }
    return OrliczFunction(orlicz::Table{std::move(knots)});
  }

  const Kind& kind() const noexcept { return kind_; }

  double operator()(double u) const {
    if (std::isnan(u)) throw Error(Errc::InvalidArgument, "Orlicz argument is NaN");
    if (u < 0.0) throw Error(Errc::NegativeArgument, "Orlicz argument " + std::to_string(u) + " < 0");
    return eval_unchecked(u);
  }

  double eval_unchecked(double u) const {
    return std::visit(
        [u](const auto& f) -> double {
          using T = std::decay_t<decltype(f)>;
          if constexpr (std::is_same_v<T, orlicz::Power>) {
            return f.p == 1.0 ? u : std::pow(u, f.p);
          } else if constexpr (std::is_same_v<T, orlicz::ScaledPower>) {
            return f.c * std::pow(u, f.p);
          } else if constexpr (std::is_same_v<T, orlicz::PowerOverP>) {
            return std::pow(u, f.p) / f.p;
          } else if constexpr (std::is_same_v<T, orlicz::ExpMinusOne>) {
            return std::expm1(u);
          } else if constexpr (std::is_same_v<T, orlicz::LinearSlope>) {
            return f.c * u;
          } else {
            return eval_table(f, u);
          }
        },
        kind_);
  }

  std::string describe() const {
    std::ostringstream os;
    std::visit(
        [&os](const auto& f) {
          using T = std::decay_t<decltype(f)>;
          if constexpr (std::is_same_v<T, orlicz::Power>) os << "power(p=" << f.p << ")";
          else if constexpr (std::is_same_v<T, orlicz::ScaledPower>) os << "scaled_power(p=" << f.p << ",c=" << f.c << ")";
          else if constexpr (std::is_same_v<T, orlicz::PowerOverP>) os << "power_over_p(p=" << f.p << ")";
          else if constexpr (std::is_same_v<T, orlicz::ExpMinusOne>) os << "exp_minus_one";
          else if constexpr (std::is_same_v<T, orlicz::LinearSlope>) os << "linear(c=" << f.c << ")";
          else os << "table(" << f.knots.size() << " knots)";
        },
        kind_);
    return os.str();
  }

 private:
  explicit OrliczFunction(Kind k) : kind_(std::move(k)) {}

  static void require(bool ok, const char* what) {
    if (!ok) throw Error(Errc::InvalidArgument, what);
  }

  static double eval_table(const orlicz::Table& t, double u) {
    const auto& k = t.knots;
    auto it = std::upper_bound(k.begin(), k.end(), u,
                               [](double v, const orlicz::Knot& knot) { return v < knot.u; });
    std::size_t hi = static_cast<std::size_t>(it - k.begin());
    if (hi >= k.size()) hi = k.size() - 1;  // linear extrapolation on the last segment
    if (hi == 0) hi = 1;
    const auto& a = k[hi - 1];
    const auto& b = k[hi];
    const double slope = (b.value - a.value) / (b.u - a.u);
    return a.value + slope * (u - a.u);
  }

  Kind kind_;
};

inline double eval_orlicz(const OrliczFunction& m, double u) { return m(u); }

struct AxiomReport {
  bool grid_valid = true;
  bool zero_at_origin = true;
  bool positive = true;
  bool monotone = true;
  bool midpoint_convex = true;
  bool growth = true;
  double growth_floor = 1.0;
  std::vector<std::string> failures;

  bool all_pass() const noexcept {
    return grid_valid && zero_at_origin && positive && monotone && midpoint_convex && growth;
  }
};

/// Checks M(0) = 0, positivity, monotonicity, midpoint convexity over all grid
/// pairs, and M(max grid) >= growth_floor. The grid must be sorted and contain 0.
inline AxiomReport verify_orlicz_axioms(const OrliczFunction& m, const std::vector<double>& grid,
                                        double growth_floor = 1.0) {
  AxiomReport rep;
  rep.growth_floor = growth_floor;
  auto fail = [&rep](bool& flag, std::string what) {
    if (flag) rep.failures.push_back(std::move(what));
    flag = false;
  };
  if (grid.empty() || !std::is_sorted(grid.begin(), grid.end()) || grid.front() != 0.0 ||
      std::any_of(grid.begin(), grid.end(), [](double u) { return !std::isfinite(u); })) {
    fail(rep.grid_valid, "grid must be nonempty, finite, sorted and start at 0");
    return rep;
  }
  std::vector<double> values(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) values[i] = m(grid[i]);

  if (values[0] != 0.0) fail(rep.zero_at_origin, "M(0) = " + std::to_string(values[0]));
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (grid[i] > 0.0 && !(values[i] > 0.0)) {
      fail(rep.positive, "M(" + std::to_string(grid[i]) + ") is not positive");
    }
    if (values[i] < values[i - 1]) {
      fail(rep.monotone, "M decreases between " + std::to_string(grid[i - 1]) + " and " +
                             std::to_string(grid[i]));
    }
  }
  for (std::size_t i = 0; i < grid.size(); ++i) {
    for (std::size_t j = i + 1; j < grid.size(); ++j) {
      const double mid = m(0.5 * (grid[i] + grid[j]));
      const double chord = 0.5 * (values[i] + values[j]);
      if (mid > chord + 1e-12 * std::max(1.0, std::abs(chord))) {
        fail(rep.midpoint_convex, "midpoint of [" + std::to_string(grid[i]) + ", " +
                                      std::to_string(grid[j]) + "] lies above the chord");
      }
    }
  }
  if (!(values.back() >= growth_floor)) {
    fail(rep.growth, "M(" + std::to_string(grid.back()) + ") below growth floor " +
                         std::to_string(growth_floor));
  }
  return rep;
}

namespace family {

struct Constant {
  OrliczFunction function;
};
/// M_k(u) = u / k
struct IndexScaled {};
/// M_k(u) = u^{p_k}
struct IndexPower {
  std::vector<double> exponents;
};
/// M_k(u) = c_k u
struct Spike {
  std::vector<double> slopes;
};
struct PerIndexTable {
  std::vector<OrliczFunction> tables;
};

}  // namespace family

/// Index-dependent family (M_k) of Orlicz functions, k = 1, 2, ...
class MusielakOrliczFamily {
 public:
  using Generator = std::variant<family::Constant, family::IndexScaled, family::IndexPower,
                                 family::Spike, family::PerIndexTable>;

  MusielakOrliczFamily() : gen_(family::Constant{OrliczFunction::power(1.0)}) {}

  static MusielakOrliczFamily constant(OrliczFunction m) {
    return MusielakOrliczFamily(family::Constant{std::move(m)});
  }
  static MusielakOrliczFamily index_scaled() { return MusielakOrliczFamily(family::IndexScaled{}); }
  static MusielakOrliczFamily index_power(std::vector<double> exponents) {
    for (double p : exponents) {
      if (!(p >= 1.0) || !std::isfinite(p)) throw Error(Errc::InvalidArgument, "index power exponents must be >= 1");
    }
    return MusielakOrliczFamily(family::IndexPower{std::move(exponents)});
  }
  static MusielakOrliczFamily spike(std::vector<double> slopes) {
    for (double c : slopes) {
      if (!(c > 0.0) || !std::isfinite(c)) throw Error(Errc::InvalidArgument, "spike slopes must be finite and > 0");
    }
    return MusielakOrliczFamily(family::Spike{std::move(slopes)});
  }
  static MusielakOrliczFamily per_index(std::vector<OrliczFunction> functions) {
    return MusielakOrliczFamily(family::PerIndexTable{std::move(functions)});
  }

  const Generator& generator() const noexcept { return gen_; }

  /// Largest index the family is defined for; nullopt when unbounded.
  std::optional<std::size_t> max_index() const {
    return std::visit(
        [](const auto& g) -> std::optional<std::size_t> {
          using T = std::decay_t<decltype(g)>;
          if constexpr (std::is_same_v<T, family::IndexPower>) return g.exponents.size();
          else if constexpr (std::is_same_v<T, family::Spike>) return g.slopes.size();
          else if constexpr (std::is_same_v<T, family::PerIndexTable>) return g.tables.size();
          else return std::nullopt;
        },
        gen_);
  }

  bool is_constant() const noexcept { return std::holds_alternative<family::Constant>(gen_); }

  OrliczFunction member(std::size_t k) const {
    check_index(k);
    return std::visit(
        [k](const auto& g) -> OrliczFunction {
          using T = std::decay_t<decltype(g)>;
          if constexpr (std::is_same_v<T, family::Constant>) return g.function;
          else if constexpr (std::is_same_v<T, family::IndexScaled>) return OrliczFunction::linear(1.0 / static_cast<double>(k));
          else if constexpr (std::is_same_v<T, family::IndexPower>) return OrliczFunction::power(g.exponents[k - 1]);
          else if constexpr (std::is_same_v<T, family::Spike>) return OrliczFunction::linear(g.slopes[k - 1]);
          else return g.tables[k - 1];
        },
        gen_);
  }

  /// M_k(u) without materializing the member.
  double eval(std::size_t k, double u) const {
    check_index(k);
    if (std::isnan(u)) throw Error(Errc::InvalidArgument, "Orlicz argument is NaN");
    if (u < 0.0) throw Error(Errc::NegativeArgument, "Orlicz argument " + std::to_string(u) + " < 0");
    return std::visit(
        [k, u](const auto& g) -> double {
          using T = std::decay_t<decltype(g)>;
          if constexpr (std::is_same_v<T, family::Constant>) return g.function.eval_unchecked(u);
          else if constexpr (std::is_same_v<T, family::IndexScaled>) return u / static_cast<double>(k);
          else if constexpr (std::is_same_v<T, family::IndexPower>) return std::pow(u, g.exponents[k - 1]);
          else if constexpr (std::is_same_v<T, family::Spike>) return g.slopes[k - 1] * u;
          else return g.tables[k - 1].eval_unchecked(u);
        },
        gen_);
  }

  std::string describe() const {
    return std::visit(
        [](const auto& g) -> std::string {
          using T = std::decay_t<decltype(g)>;
          if constexpr (std::is_same_v<T, family::Constant>) return "constant(" + g.function.describe() + ")";
          else if constexpr (std::is_same_v<T, family::IndexScaled>) return "index_scaled";
          else if constexpr (std::is_same_v<T, family::IndexPower>) return "index_power(" + std::to_string(g.exponents.size()) + ")";
          else if constexpr (std::is_same_v<T, family::Spike>) return "spike(" + std::to_string(g.slopes.size()) + ")";
          else return "per_index(" + std::to_string(g.tables.size()) + ")";
        },
        gen_);
  }

 private:
  explicit MusielakOrliczFamily(Generator g) : gen_(std::move(g)) {}

  void check_index(std::size_t k) const {
    if (k == 0) throw Error(Errc::InvalidArgument, "family index is 1-based");
    if (auto top = max_index(); top && k > *top) {
      throw Error(Errc::IndexOutOfHorizon, "family " + describe() + " is defined up to k = " +
                                               std::to_string(*top) + ", asked for " +
                                               std::to_string(k));
    }
  }

  Generator gen_;
};

namespace detail {

/// Strictly positive per-index reals, Constant or PerIndex.
class PositiveIndexed {
 public:
  explicit PositiveIndexed(double c, const char* name) : constant_(c), name_(name) {
    check(c);
  }
  PositiveIndexed(std::vector<double> v, const char* name) : per_index_(std::move(v)), name_(name) {
    if (per_index_.empty()) throw Error(Errc::InvalidArgument, std::string(name_) + " list is empty");
    for (double x : per_index_) check(x);
  }

  bool is_constant() const noexcept { return per_index_.empty(); }
  double constant_value() const noexcept { return constant_; }
  const std::vector<double>& per_index() const noexcept { return per_index_; }

  double at(std::size_t k) const {
    if (k == 0) throw Error(Errc::InvalidArgument, std::string(name_) + " index is 1-based");
    if (per_index_.empty()) return constant_;
    if (k > per_index_.size()) {
      throw Error(Errc::IndexOutOfHorizon, std::string(name_) + " defined up to k = " +
                                               std::to_string(per_index_.size()) + ", asked for " +
                                               std::to_string(k));
    }
    return per_index_[k - 1];
  }

  double inf() const {
    return per_index_.empty() ? constant_ : *std::min_element(per_index_.begin(), per_index_.end());
  }
  double sup() const {
    return per_index_.empty() ? constant_ : *std::max_element(per_index_.begin(), per_index_.end());
  }

 private:
  void check(double x) const {
    if (!(x > 0.0) || !std::isfinite(x)) {
      throw Error(Errc::InvalidArgument, std::string(name_) + " entries must be finite and > 0");
    }
  }

  double constant_ = 1.0;
  std::vector<double> per_index_;
  const char* name_;
};

}  // namespace detail

/// Scale factors rho^(k) > 0.
class RhoSequence : public detail::PositiveIndexed {
 public:
  RhoSequence() : PositiveIndexed(1.0, "rho") {}
  static RhoSequence constant(double rho) { return RhoSequence(rho); }
  static RhoSequence per_index(std::vector<double> v) { return RhoSequence(std::move(v)); }

 private:
  explicit RhoSequence(double c) : PositiveIndexed(c, "rho") {}
  explicit RhoSequence(std::vector<double> v) : PositiveIndexed(std::move(v), "rho") {}
};

/// Exponents s_k > 0 with h = inf s_k, H = sup s_k and D = max(1, 2^{H-1}).
class ExponentSequence : public detail::PositiveIndexed {
 public:
  ExponentSequence() : PositiveIndexed(1.0, "exponent") {}
  static ExponentSequence constant(double s) { return ExponentSequence(s); }
  static ExponentSequence per_index(std::vector<double> v) { return ExponentSequence(std::move(v)); }

  double h_inf() const { return inf(); }
  double h_sup() const { return sup(); }
  double d_constant() const { return std::max(1.0, std::pow(2.0, h_sup() - 1.0)); }

 private:
  explicit ExponentSequence(double c) : PositiveIndexed(c, "exponent") {}
  explicit ExponentSequence(std::vector<double> v) : PositiveIndexed(std::move(v), "exponent") {}
};

/// 0 followed by `count` log-spaced points in [lo, hi].
inline std::vector<double> log_grid_with_zero(double lo, double hi, std::size_t count) {
  std::vector<double> g{0.0};
  const double a = std::log(lo), b = std::log(hi);
  for (std::size_t i = 0; i < count; ++i) {
    const double t = count == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(count - 1);
    g.push_back(std::exp(a + t * (b - a)));
  }
  return g;
}

}  // namespace lacunary

#endif  // LACUNARY_ORLICZ_HPP
