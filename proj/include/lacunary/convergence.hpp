#ifndef LACUNARY_CONVERGENCE_HPP
#define LACUNARY_CONVERGENCE_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "lacunary/error.hpp"
#include "lacunary/matrix.hpp"
#include "lacunary/orlicz.hpp"
#include "lacunary/schedule.hpp"
#include "lacunary/sequence.hpp"

namespace lacunary {

/// How an index k is counted as exceptional in the statistical (S-hat) density.
enum class FlagMode {
  /// (M_k(|t_km(A_k(x) - L)| / rho_k))^{s_k} >= epsilon
  Modular,
  /// |t_km(A_k(x) - L)| >= epsilon
  RawDeviation,
};

enum class StatisticKind { Strong, ShatDensity };

constexpr std::string_view to_string(FlagMode m) noexcept {
  return m == FlagMode::Modular ? "modular" : "raw";
}
constexpr std::string_view to_string(StatisticKind k) noexcept {
  return k == StatisticKind::Strong ? "strong" : "shat_density";
}

/// Everything that defines one space N-hat / S-hat at finite horizon.
struct SpaceParams {
  double alpha = 1.0;
  double epsilon = 1e-3;
  double limit = 0.0;
  std::size_t m_max = 32;
  RhoSequence rho;
  ExponentSequence exponents;
  MusielakOrliczFamily family;
  MatrixOperator matrix = matrix::Identity{};
  LacunarySchedule schedule;
  FlagMode flag_mode = FlagMode::Modular;
  double matrix_tol = 1e-12;

  void validate() const {
    if (!(alpha > 0.0 && alpha <= 1.0)) {
      throw Error(Errc::InvalidArgument, "alpha must lie in (0, 1], got " + std::to_string(alpha));
    }
    if (!(epsilon > 0.0)) throw Error(Errc::InvalidArgument, "epsilon must be > 0");
    if (!std::isfinite(limit)) throw Error(Errc::InvalidArgument, "candidate limit must be finite");
    if (schedule.empty()) throw Error(Errc::EmptySchedule, "space parameters carry no schedule");
  }
};

struct BlockTrajectory {
  StatisticKind kind = StatisticKind::Strong;
  std::vector<double> values;  // v_1..v_R

  std::size_t size() const noexcept { return values.size(); }
  /// 1-based block access.
  double operator[](std::size_t r) const { return values.at(r - 1); }
};

inline void check_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha <= 1.0)) {
    throw Error(Errc::InvalidArgument, "alpha must lie in (0, 1], got " + std::to_string(alpha));
  }
}

/// d(n) = |{k <= n : flag_k}| / n^alpha for n = 1..flags.size().
inline std::vector<double> density_order_alpha(const std::vector<bool>& flags, double alpha) {
  check_alpha(alpha);
  std::vector<double> d(flags.size());
  std::size_t count = 0;
  for (std::size_t n = 1; n <= flags.size(); ++n) {
    if (flags[n - 1]) ++count;
    d[n - 1] = static_cast<double>(count) / std::pow(static_cast<double>(n), alpha);
  }
  return d;
}

/// v_r = |{k in I_r : flag_k}| / h_r^alpha; flags[k-1] belongs to index k.
inline BlockTrajectory lacunary_density(const std::vector<bool>& flags, const LacunarySchedule& schedule,
                                        double alpha) {
  check_alpha(alpha);
  if (flags.size() < schedule.horizon()) {
    throw Error(Errc::FlagsShorterThanSchedule, "flags cover " + std::to_string(flags.size()) +
                                                    " indices, schedule needs " +
                                                    std::to_string(schedule.horizon()));
  }
  BlockTrajectory t{StatisticKind::ShatDensity, {}};
  t.values.reserve(schedule.block_count());
  for (std::size_t r = 1; r <= schedule.block_count(); ++r) {
    const Block b = schedule.block(r);
    std::size_t count = 0;
    for (std::size_t k = b.first; k <= b.last; ++k) count += flags[k - 1] ? 1 : 0;
    t.values.push_back(static_cast<double>(count) / std::pow(static_cast<double>(b.size()), alpha));
  }
  return t;
}

struct NThetaResult {
  std::vector<double> block_means;  // h_r^{-alpha} sum_{I_r} |x_k - L|
  double norm = 0.0;                // sup_r h_r^{-1} sum_{I_r} |x_k|
};

inline NThetaResult ntheta_statistic(const Sequence& x, const LacunarySchedule& schedule, double limit,
                                     double alpha = 1.0) {
  check_alpha(alpha);
  if (x.horizon() < schedule.horizon()) {
    throw Error(Errc::HorizonTooShort, "sequence horizon " + std::to_string(x.horizon()) +
                                           " < k_R = " + std::to_string(schedule.horizon()));
  }
  NThetaResult res;
  for (std::size_t r = 1; r <= schedule.block_count(); ++r) {
    const Block b = schedule.block(r);
    double dev = 0.0, mag = 0.0;
    for (std::size_t k = b.first; k <= b.last; ++k) {
      dev += std::abs(x[k] - limit);
      mag += std::abs(x[k]);
    }
    const auto h = static_cast<double>(b.size());
    res.block_means.push_back(dev / std::pow(h, alpha));
    res.norm = std::max(res.norm, mag / h);
  }
  return res;
}

/// Per-index pieces of the strong statistic at one window length m.
struct TermProfile {
  std::vector<double> deviations;  // |t_km(A(x) - L)|, k = 1..k_R
  std::vector<double> terms;       // (M_k(deviation / rho_k))^{s_k}
};

/// Rows of A needed so every window t_km with k <= k_R and m <= m_max exists.
inline std::size_t required_transform_length(const SpaceParams& p, std::size_t m) {
  return p.schedule.horizon() + m;
}

inline Sequence transform_for(const Sequence& x, const SpaceParams& p, std::size_t m) {
  p.validate();
  const std::size_t need = required_transform_length(p, m);
  if (std::holds_alternative<matrix::Identity>(p.matrix) && x.horizon() < need) {
    throw Error(Errc::HorizonTooShort, "horizon " + std::to_string(x.horizon()) + " < k_R + m = " +
                                           std::to_string(need));
  }
  return transform_sequence(p.matrix, x, need, p.matrix_tol);
}

/// Builds t_km(A(x) - L) as: z = A x, y_j = z_j - L, window_mean(y, m, k).
inline TermProfile term_profile_from_transform(const Sequence& z, const SpaceParams& p, std::size_t m) {
  const std::size_t top = p.schedule.horizon();
  if (z.horizon() < top + m) {
    throw Error(Errc::HorizonTooShort, "transformed horizon " + std::to_string(z.horizon()) +
                                           " < k_R + m = " + std::to_string(top + m));
  }
  std::vector<double> shifted(z.values().begin(), z.values().end());
  for (double& v : shifted) v -= p.limit;
  const Sequence y(std::move(shifted));

  TermProfile prof;
  prof.deviations.resize(top);
  prof.terms.resize(top);
  for (std::size_t k = 1; k <= top; ++k) {
    const double dev = std::abs(window_mean(y, m, k));
    const double base = p.family.eval(k, dev / p.rho.at(k));
    const double s = p.exponents.at(k);
    prof.deviations[k - 1] = dev;
    prof.terms[k - 1] = s == 1.0 ? base : std::pow(base, s);
  }
  return prof;
}

inline TermProfile term_profile(const Sequence& x, const SpaceParams& p, std::size_t m) {
  return term_profile_from_transform(transform_for(x, p, m), p, m);
}

inline BlockTrajectory strong_from_profile(const TermProfile& prof, const SpaceParams& p) {
  BlockTrajectory t{StatisticKind::Strong, {}};
  t.values.reserve(p.schedule.block_count());
  for (std::size_t r = 1; r <= p.schedule.block_count(); ++r) {
    const Block b = p.schedule.block(r);
    double sum = 0.0;
    for (std::size_t k = b.first; k <= b.last; ++k) sum += prof.terms[k - 1];
    t.values.push_back(sum / std::pow(static_cast<double>(b.size()), p.alpha));
  }
  return t;
}

inline std::vector<bool> flags_from_profile(const TermProfile& prof, const SpaceParams& p) {
  std::vector<bool> flags(prof.terms.size());
  const auto& src = p.flag_mode == FlagMode::Modular ? prof.terms : prof.deviations;
  for (std::size_t i = 0; i < src.size(); ++i) flags[i] = src[i] >= p.epsilon;
  return flags;
}

/// v_r(m) = h_r^{-alpha} sum_{k in I_r} (M_k(|t_km(A_k(x) - L)| / rho_k))^{s_k}.
inline BlockTrajectory strong_block_statistic(const Sequence& x, const SpaceParams& p, std::size_t m) {
  return strong_from_profile(term_profile(x, p, m), p);
}

/// Exceptional-index flags over k = 1..k_R in the mode carried by p.
inline std::vector<bool> shat_flags(const Sequence& x, const SpaceParams& p, std::size_t m) {
  return flags_from_profile(term_profile(x, p, m), p);
}

inline BlockTrajectory shat_density(const Sequence& x, const SpaceParams& p, std::size_t m) {
  return lacunary_density(shat_flags(x, p, m), p.schedule, p.alpha);
}

/// One trajectory per m in 0..m_max plus their per-block supremum.
struct UniformTrajectory {
  StatisticKind kind = StatisticKind::Strong;
  std::vector<BlockTrajectory> per_m;
  BlockTrajectory sup;
};

inline UniformTrajectory uniform_trajectory(const Sequence& x, const SpaceParams& p, StatisticKind kind) {
  const Sequence z = transform_for(x, p, p.m_max);
  UniformTrajectory u;
  u.kind = kind;
  u.sup.kind = kind;
  u.sup.values.assign(p.schedule.block_count(), 0.0);
  for (std::size_t m = 0; m <= p.m_max; ++m) {
    const TermProfile prof = term_profile_from_transform(z, p, m);
    BlockTrajectory t = kind == StatisticKind::Strong
                            ? strong_from_profile(prof, p)
                            : lacunary_density(flags_from_profile(prof, p), p.schedule, p.alpha);
    for (std::size_t i = 0; i < t.values.size(); ++i) u.sup.values[i] = std::max(u.sup.values[i], t.values[i]);
    u.per_m.push_back(std::move(t));
  }
  return u;
}

enum class Decision { ConvergesToZero, DoesNotConverge, Inconclusive };

constexpr std::string_view to_string(Decision d) noexcept {
  switch (d) {
    case Decision::ConvergesToZero: return "ConvergesToZero";
    case Decision::DoesNotConverge: return "DoesNotConverge";
    case Decision::Inconclusive: return "Inconclusive";
  }
  return "Inconclusive";
}

struct VerdictOptions {
  double tol = 1e-3;
  /// 0 selects the last ceil(R/3) blocks.
  std::size_t tail_window = 0;
  /// Slope allowance, relative to max(tail mean, tol).
  double slope_slack = 0.05;
};

/// Finite-horizon stand-in for "lim_r v_r = 0".
struct Verdict {
  Decision decision = Decision::Inconclusive;
  double tail_mean = 0.0;
  double tail_slope = 0.0;
  std::size_t tail_window = 0;
  double tolerance = 0.0;
};

inline std::size_t resolve_tail_window(std::size_t blocks, std::size_t requested) {
  if (blocks == 0) throw Error(Errc::EmptySchedule, "cannot classify an empty trajectory");
  if (requested > blocks) {
    throw Error(Errc::InvalidArgument, "tail window " + std::to_string(requested) + " exceeds " +
                                           std::to_string(blocks) + " blocks");
  }
  return requested == 0 ? (blocks + 2) / 3 : requested;
}

/// Tail mean and least-squares slope over the last blocks. ConvergesToZero iff
/// mean <= tol and slope <= slack; DoesNotConverge iff mean >= 10 tol and
/// slope >= -slack; otherwise Inconclusive. slack = slope_slack * max(mean, tol).
inline Verdict classify(const BlockTrajectory& t, const VerdictOptions& opt = {}) {
  if (!(opt.tol > 0.0)) throw Error(Errc::InvalidArgument, "verdict tolerance must be > 0");
  const std::size_t w = resolve_tail_window(t.values.size(), opt.tail_window);
  const std::size_t start = t.values.size() - w;
  double mean = 0.0;
  for (std::size_t i = start; i < t.values.size(); ++i) mean += t.values[i];
  mean /= static_cast<double>(w);

  double slope = 0.0;
  if (w >= 2) {
    const double xbar = 0.5 * static_cast<double>(w - 1);
    double sxy = 0.0, sxx = 0.0;
    for (std::size_t i = 0; i < w; ++i) {
      const double dx = static_cast<double>(i) - xbar;
      sxy += dx * (t.values[start + i] - mean);
      sxx += dx * dx;
    }
    slope = sxy / sxx;
  }
  const double slack = opt.slope_slack * std::max(mean, opt.tol);
  Verdict v{Decision::Inconclusive, mean, slope, w, opt.tol};
  if (mean <= opt.tol && slope <= slack) v.decision = Decision::ConvergesToZero;
  else if (mean >= 10.0 * opt.tol && slope >= -slack) v.decision = Decision::DoesNotConverge;
  return v;
}

struct UniformResult {
  UniformTrajectory trajectory;
  Verdict verdict;
};

/// "Uniformly in m" as the per-block sup over m = 0..m_max, then classified.
inline UniformResult uniform_verdict(const Sequence& x, const SpaceParams& p, StatisticKind kind,
                                     const VerdictOptions& opt = {}) {
  UniformResult res{uniform_trajectory(x, p, kind), {}};
  res.verdict = classify(res.trajectory.sup, opt);
  return res;
}

/// The bounded-sequence inclusion needs h_r / h_r^alpha -> 1, which a lacunary
/// schedule (h_r -> infinity) only allows at alpha = 1.
inline bool block_ratio_hypothesis_satisfiable(double alpha) { return alpha == 1.0; }

}  // namespace lacunary

#endif  // LACUNARY_CONVERGENCE_HPP
