#ifndef LACUNARY_NORMS_HPP
#define LACUNARY_NORMS_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "lacunary/error.hpp"
#include "lacunary/orlicz.hpp"
#include "lacunary/sequence.hpp"

namespace lacunary {

/// Finite-prefix modular sum_{k<=N} M_k(|x_k| / rho^(k)).
inline double modular(const MusielakOrliczFamily& family, const Sequence& x, const RhoSequence& rho) {
  double sum = 0.0;
  for (std::size_t k = 1; k <= x.horizon(); ++k) sum += family.eval(k, std::abs(x[k]) / rho.at(k));
  return sum;
}

namespace detail {

inline bool is_zero(const Sequence& x) {
  return std::all_of(x.values().begin(), x.values().end(), [](double v) { return v == 0.0; });
}

// sum_k M_k(|x_k| / rho) with a scalar rho.
inline double modular_at(const MusielakOrliczFamily& family, const Sequence& x, double rho) {
  double sum = 0.0;
  for (std::size_t k = 1; k <= x.horizon(); ++k) sum += family.eval(k, std::abs(x[k]) / rho);
  return sum;
}

// sum_k M_k(t |x_k|)
inline double modular_scaled(const MusielakOrliczFamily& family, const Sequence& x, double t) {
  double sum = 0.0;
  for (std::size_t k = 1; k <= x.horizon(); ++k) {
    sum += family.eval(k, t * std::abs(x[k]));
    if (std::isinf(sum)) break;
  }
  return sum;
}

constexpr double kInvGolden = 0.6180339887498948482;

/// Golden-section maximization of a unimodal f on [a, b]; returns the argmax.
template <typename F>
double golden_argmax(F&& f, double a, double b, double width_tol, int max_iter = 200) {
  double c = b - kInvGolden * (b - a);
  double d = a + kInvGolden * (b - a);
  double fc = f(c), fd = f(d);
  for (int i = 0; i < max_iter && (b - a) > width_tol; ++i) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvGolden * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvGolden * (b - a);
      fd = f(d);
    }
  }
  return fc >= fd ? c : d;
}

}  // namespace detail

/// Luxemburg norm inf{rho > 0 : I(x / rho) <= 1}. The bracket grows geometrically
/// from rho = 1 until the modular crosses 1, then bisects down to width tol; the
/// returned value is the upper end, so the modular there is <= 1.
inline double luxemburg_norm(const MusielakOrliczFamily& family, const Sequence& x, double tol) {
  if (!(tol > 0.0)) throw Error(Errc::InvalidArgument, "luxemburg tolerance must be positive");
  if (detail::is_zero(x)) return 0.0;

  auto feasible = [&](double rho) { return detail::modular_at(family, x, rho) <= 1.0; };
  double lo = 1.0, hi = 1.0;
  constexpr int kMaxExpand = 2000;
  if (feasible(1.0)) {
    int i = 0;
    while (feasible(lo)) {
      hi = lo;
      lo *= 0.5;
      if (++i > kMaxExpand || lo == 0.0) {
        throw Error(Errc::InvalidArgument, "modular never exceeds 1; family does not grow");
      }
    }
  } else {
    int i = 0;
    while (!feasible(hi)) {
      lo = hi;
      hi *= 2.0;
      if (++i > kMaxExpand || std::isinf(hi)) {
        throw Error(Errc::InvalidArgument, "modular never drops to 1; non-finite family values");
      }
    }
  }
  // invariant: modular(lo) > 1 >= modular(hi)
  while (hi - lo > tol) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) break;
    if (feasible(mid)) hi = mid;
    else lo = mid;
  }
  return hi;
}

struct OrliczNormResult {
  double value = 0.0;
  double multiplier = 0.0;   // minimizing t in (1 + I(t x)) / t
  bool at_boundary = false;  // infimum approached as t -> infinity
};

/// Orlicz (Amemiya) norm inf_{t>0} (1 + I(t x)) / t. A log-spaced grid locates
/// the best cell, golden section refines it. When the objective keeps falling at
/// the top of the grid the range is widened; if it is still falling after the
/// last widening the infimum is the t -> infinity limit and at_boundary is set.
inline OrliczNormResult orlicz_norm(const MusielakOrliczFamily& family, const Sequence& x, double tol) {
  if (!(tol > 0.0)) throw Error(Errc::InvalidArgument, "orlicz norm tolerance must be positive");
  if (detail::is_zero(x)) return {};

  auto objective = [&](double t) {
    const double v = (1.0 + detail::modular_scaled(family, x, t)) / t;
    return std::isnan(v) ? std::numeric_limits<double>::infinity() : v;
  };

  constexpr int kPointsPerOctave = 4;
  constexpr int kMaxExpansions = 3;
  double log2_lo = -20.0, log2_hi = 20.0;
  std::size_t best = 0;
  std::vector<double> ts;
  std::vector<double> fs;
  for (int expansion = 0;; ++expansion) {
    ts.clear();
    fs.clear();
    const int n = static_cast<int>((log2_hi - log2_lo) * kPointsPerOctave) + 1;
    for (int i = 0; i < n; ++i) {
      const double t = std::exp2(log2_lo + static_cast<double>(i) / kPointsPerOctave);
      ts.push_back(t);
      fs.push_back(objective(t));
    }
    // last minimizer, so a rounding plateau that runs to the top counts as the boundary
    best = ts.size() - 1 - static_cast<std::size_t>(std::min_element(fs.rbegin(), fs.rend()) - fs.rbegin());
    const bool at_top = best + 1 == ts.size();
    const bool at_bottom = best == 0;
    if (!at_top && !at_bottom) break;
    if (expansion == kMaxExpansions) {
      if (at_bottom) {
        throw Error(Errc::NoInteriorMinimum, "objective still decreasing as t -> 0 after widening");
      }
      return {fs[best], ts[best], true};
    }
    if (at_top) log2_hi += 20.0;
    else log2_lo -= 20.0;
  }

  // Unimodal in t (the objective is the perspective of a convex function), so
  // golden section on -objective over the neighbouring cells is safe.
  const double a = std::log(ts[best - 1]);
  const double b = std::log(ts[best + 1]);
  const double log_t = detail::golden_argmax([&](double s) { return -objective(std::exp(s)); }, a, b,
                                             std::max(1e-13, tol * 1e-3));
  const double t = std::exp(log_t);
  const double v = objective(t);
  if (v <= fs[best]) return {v, t, false};
  return {fs[best], ts[best], false};
}

struct ConjugateSearch {
  double u_max = 1e3;
  double tol = 1e-10;
  std::size_t grid_points = 1024;
  /// Raise BracketTooSmall instead of flagging a maximizer at u_max.
  bool strict = false;
};

struct ConjugateResult {
  double value = 0.0;
  double maximizer = 0.0;
  /// sup attained at u_max: the true conjugate may be larger or infinite.
  bool at_boundary = false;
};

/// Complementary function N_k(v) = sup_{0 <= u <= u_max} (|v| u - M_k(u)).
inline ConjugateResult complementary(const MusielakOrliczFamily& family, std::size_t k, double v,
                                     const ConjugateSearch& search = {}) {
  if (!(search.u_max > 0.0) || !std::isfinite(search.u_max)) {
    throw Error(Errc::BracketTooSmall, "search bracket [0, u_max] needs a finite u_max > 0");
  }
  if (std::isnan(v)) throw Error(Errc::InvalidArgument, "conjugate argument is NaN");
  const double av = std::abs(v);
  if (av == 0.0) return {0.0, 0.0, false};

  auto g = [&](double u) { return av * u - family.eval(k, u); };
  const std::size_t n = std::max<std::size_t>(search.grid_points, 3);
  const double step = search.u_max / static_cast<double>(n - 1);
  std::size_t best = 0;
  double best_val = g(0.0);
  for (std::size_t i = 1; i < n; ++i) {
    const double val = g(step * static_cast<double>(i));
    if (val > best_val) {
      best_val = val;
      best = i;
    }
  }
  const double a = best == 0 ? 0.0 : step * static_cast<double>(best - 1);
  const double b = best + 1 >= n ? search.u_max : step * static_cast<double>(best + 1);
  double u = detail::golden_argmax(g, a, b, std::max(search.tol, 1e-15 * search.u_max));
  double val = g(u);
  if (g(search.u_max) >= val) {
    u = search.u_max;
    val = g(u);
  }
  if (g(0.0) > val) {
    u = 0.0;
    val = g(0.0);
  }

  ConjugateResult res{std::max(val, 0.0), u, false};
  res.at_boundary = search.u_max - u <= std::max(search.tol, 1e-9 * search.u_max);
  if (res.at_boundary && search.strict) {
    throw Error(Errc::BracketTooSmall, "maximizer sits at u_max = " + std::to_string(search.u_max) +
                                           " for k = " + std::to_string(k) + ", v = " + std::to_string(v));
  }
  return res;
}

}  // namespace lacunary

#endif  // LACUNARY_NORMS_HPP
