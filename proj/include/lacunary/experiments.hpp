#ifndef LACUNARY_EXPERIMENTS_HPP
#define LACUNARY_EXPERIMENTS_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "lacunary/convergence.hpp"
#include "lacunary/delta2.hpp"
#include "lacunary/inequalities.hpp"
#include "lacunary/orlicz.hpp"

namespace lacunary {

/// A constructed sequence together with the space it is meant to be tested in.
struct Construction {
  Sequence x;
  SpaceParams params;
  std::vector<std::string> notes;
};

// ---------------------------------------------------------------------------
// Decaying-family construction: N-hat member that is not an S-hat(A, M, s) member.

struct Thm37Spec {
  double nu = 1.0;
  double rho = 1.0;
  std::size_t r_max = 14;
  double alpha = 1.0;
  std::size_t m_max = 32;
  MusielakOrliczFamily family = MusielakOrliczFamily::index_scaled();
  /// Unset: half the smallest first-half term over the horizon.
  std::optional<double> epsilon;
  std::size_t horizon_cap = std::size_t{1} << 26;
};

namespace detail {

inline double family_value_or_nan(const MusielakOrliczFamily& f, std::size_t k, double u) {
  try {
    return f.eval(k, u);
  } catch (const Error&) {
    return std::numeric_limits<double>::quiet_NaN();
  }
}

// Smallest n >= lower with M_{n+1}(u) < bound, assuming M_k(u) nonincreasing in k.
inline std::size_t first_decayed_cut(const MusielakOrliczFamily& f, double u, double bound,
                                     std::size_t lower, std::size_t cap) {
  auto ok = [&](std::size_t n) {
    const double v = family_value_or_nan(f, n + 1, u);
    return v < bound;  // NaN compares false
  };
  if (ok(lower)) return lower;
  std::size_t bad = lower;
  std::size_t step = std::max<std::size_t>(1, lower);
  std::size_t good = 0;
  while (true) {
    const std::size_t probe = bad + step;
    if (probe > cap) {
      if (ok(cap)) {
        good = cap;
        break;
      }
      throw Error(Errc::HypothesisUnsatisfiable,
                  "M_k(nu/rho) does not drop below " + std::to_string(bound) + " for any k <= " +
                      std::to_string(cap + 1));
    }
    if (ok(probe)) {
      good = probe;
      break;
    }
    bad = probe;
    step *= 2;
  }
  while (good - bad > 1) {
    const std::size_t mid = bad + (good - bad) / 2;
    if (ok(mid)) good = mid;
    else bad = mid;
  }
  return good;
}

}  // namespace detail

/// Cut points n_r = max(2^r, 2 n_{r-1}, smallest n with M_{n+1}(nu/rho) < 2^{-r});
/// x = nu on the first ceil(h_r/2) indices of each block, 0 on the rest; A = I, s = 1.
inline Construction build_thm37(const Thm37Spec& spec) {
  if (!(spec.nu >= 0.0) || !std::isfinite(spec.nu)) throw Error(Errc::InvalidArgument, "nu must be finite and >= 0");
  if (!(spec.rho > 0.0) || !std::isfinite(spec.rho)) throw Error(Errc::InvalidArgument, "rho must be finite and > 0");
  if (spec.r_max == 0) throw Error(Errc::EmptySchedule, "r_max must be >= 1");
  check_alpha(spec.alpha);
  const double u = spec.nu / spec.rho;
  const MusielakOrliczFamily& fam = spec.family;

  // One block past r_max so the lookahead windows see the continued pattern.
  std::vector<std::size_t> cuts{0};
  for (std::size_t r = 1; r <= spec.r_max + 1; ++r) {
    const double bound = std::exp2(-static_cast<double>(r));
    const std::size_t pow2 = std::size_t{1} << std::min<std::size_t>(r, 62);
    const std::size_t lower = std::max({pow2, 2 * cuts.back(), cuts.back() + 1});
    if (lower > spec.horizon_cap) {
      if (r == spec.r_max + 1) {
        cuts.push_back(2 * cuts.back());
        break;
      }
      throw Error(Errc::HypothesisUnsatisfiable, "schedule exceeds horizon cap at r = " + std::to_string(r));
    }
    std::size_t n;
    try {
      n = detail::first_decayed_cut(fam, u, bound, lower, spec.horizon_cap);
    } catch (const Error&) {
      if (r <= spec.r_max) throw;
      n = 2 * cuts.back();
    }
    cuts.push_back(n);
  }
  const std::vector<std::size_t> pattern_cuts = cuts;
  cuts.pop_back();
  const LacunarySchedule schedule = LacunarySchedule::from_cut_points(cuts);
  const std::size_t horizon = schedule.horizon() + spec.m_max;

  for (std::size_t r = 1; r <= spec.r_max; ++r) {
    const double v = detail::family_value_or_nan(fam, schedule.cut(r) + 1, u);
    if (!(v < std::exp2(-static_cast<double>(r)))) {
      throw Error(Errc::HypothesisUnsatisfiable, "M_k(nu/rho) >= 2^-" + std::to_string(r) + " at k = " +
                                                     std::to_string(schedule.cut(r) + 1));
    }
  }
  double prev = detail::family_value_or_nan(fam, 1, u);
  for (std::size_t k = 2; k <= horizon; ++k) {
    const double v = detail::family_value_or_nan(fam, k, u);
    if (!(v <= prev)) {
      throw Error(Errc::HypothesisUnsatisfiable, "M_k(nu/rho) is not nonincreasing at k = " + std::to_string(k));
    }
    prev = v;
  }

  std::vector<double> values(horizon, 0.0);
  double min_first_half_term = std::numeric_limits<double>::infinity();
  for (std::size_t r = 1; r < pattern_cuts.size(); ++r) {
    const std::size_t lo = pattern_cuts[r - 1];
    const std::size_t h = pattern_cuts[r] - lo;
    const std::size_t half_end = lo + (h + 1) / 2;
    for (std::size_t k = lo + 1; k <= half_end && k <= horizon; ++k) {
      values[k - 1] = spec.nu;
      if (k <= schedule.horizon()) min_first_half_term = std::min(min_first_half_term, fam.eval(k, u));
    }
  }

  Construction c{Sequence(std::move(values)), {}, {}};
  SpaceParams& p = c.params;
  p.alpha = spec.alpha;
  p.limit = 0.0;
  p.m_max = spec.m_max;
  p.rho = RhoSequence::constant(spec.rho);
  p.exponents = ExponentSequence::constant(1.0);
  p.family = fam;
  p.matrix = matrix::Identity{};
  p.schedule = schedule;
  p.flag_mode = FlagMode::Modular;
  if (spec.epsilon) {
    p.epsilon = *spec.epsilon;
  } else if (min_first_half_term > 0.0 && std::isfinite(min_first_half_term)) {
    p.epsilon = 0.5 * min_first_half_term;
    c.notes.push_back("epsilon derived as half the smallest first-half term");
  } else {
    p.epsilon = 1e-3;
  }
  p.validate();
  return c;
}

// ---------------------------------------------------------------------------
// Spike construction: S-hat(A, M, s) member that is not an N-hat member.

struct Thm38Spec {
  /// nu_r = nu_scale * r
  double nu_scale = 1.0;
  double rho = 1.0;
  std::size_t r_max = 10;
  double alpha = 1.0;
  std::size_t m_max = 32;
  /// Cut points n_r = ceil(base * ratio^r) unless explicit cut points are given.
  double schedule_base = 25.0;
  double schedule_ratio = 2.0;
  std::vector<std::size_t> cut_points;
  /// Slope c_k at every non-spike index.
  double base_slope = 1e-6;
  double epsilon = 1e-3;
};

/// Spikes x_{n_r} = nu_r, zero elsewhere, A = I, s = 1; spike slopes
/// c_{n_r} = h_r^alpha rho / nu_r, nudged up until M_{n_r}(nu_r/rho) >= h_r^alpha
/// holds in floating point.
inline Construction build_thm38(const Thm38Spec& spec) {
  if (!(spec.nu_scale > 0.0) || !std::isfinite(spec.nu_scale)) {
    throw Error(Errc::HypothesisUnsatisfiable, "nu_r = nu_scale * r must be strictly increasing and positive");
  }
  if (!(spec.rho > 0.0) || !std::isfinite(spec.rho)) throw Error(Errc::InvalidArgument, "rho must be finite and > 0");
  if (!(spec.base_slope > 0.0)) throw Error(Errc::InvalidArgument, "base slope must be > 0");
  check_alpha(spec.alpha);
  const LacunarySchedule schedule =
      spec.cut_points.empty()
          ? build_lacunary(GeometricCuts{spec.schedule_base, spec.schedule_ratio, spec.r_max})
          : LacunarySchedule::from_cut_points(spec.cut_points);
  if (schedule.block_count() == 0) throw Error(Errc::EmptySchedule, "thm38 schedule has no blocks");
  const std::size_t horizon = schedule.horizon() + spec.m_max;

  std::vector<double> slopes(horizon, spec.base_slope);
  std::vector<double> values(horizon, 0.0);
  for (std::size_t r = 1; r <= schedule.block_count(); ++r) {
    const std::size_t n = schedule.cut(r);
    const double nu = spec.nu_scale * static_cast<double>(r);
    const double target = std::pow(static_cast<double>(schedule.length(r)), spec.alpha);
    const double u = nu / spec.rho;
    double c = target * spec.rho / nu;
    for (int i = 0; i < 64 && !(c * u >= target); ++i) c = std::nextafter(c, std::numeric_limits<double>::infinity());
    if (!(c * u >= target) || !std::isfinite(c)) {
      throw Error(Errc::HypothesisUnsatisfiable, "spike inequality fails at r = " + std::to_string(r));
    }
    slopes[n - 1] = c;
    values[n - 1] = nu;
  }

  Construction out{Sequence(std::move(values)), {}, {}};
  SpaceParams& p = out.params;
  p.alpha = spec.alpha;
  p.epsilon = spec.epsilon;
  p.limit = 0.0;
  p.m_max = spec.m_max;
  p.rho = RhoSequence::constant(spec.rho);
  p.exponents = ExponentSequence::constant(1.0);
  p.family = MusielakOrliczFamily::spike(std::move(slopes));
  p.matrix = matrix::Identity{};
  p.schedule = schedule;
  p.flag_mode = FlagMode::Modular;
  p.validate();

  for (std::size_t r = 1; r <= schedule.block_count(); ++r) {
    const double nu = spec.nu_scale * static_cast<double>(r);
    const double target = std::pow(static_cast<double>(schedule.length(r)), spec.alpha);
    if (!(p.family.eval(schedule.cut(r), nu / spec.rho) >= target)) {
      throw Error(Errc::HypothesisUnsatisfiable, "spike inequality fails at r = " + std::to_string(r));
    }
  }
  out.notes.push_back("the strong statistic stays >= 1 on every block, so the sequence is not an N-hat member");
  return out;
}

// ---------------------------------------------------------------------------
// Random bounded corpus.

enum class CorpusKind { PlantedSparse, Noise, Decaying, PlantedDense };

constexpr std::string_view to_string(CorpusKind k) noexcept {
  switch (k) {
    case CorpusKind::PlantedSparse: return "planted-sparse";
    case CorpusKind::Noise: return "noise";
    case CorpusKind::Decaying: return "decaying";
    case CorpusKind::PlantedDense: return "planted-dense";
  }
  return "noise";
}

struct CorpusOptions {
  std::size_t count = 50;
  std::uint64_t seed = 1;
  /// Values stay in [L - amplitude, L + amplitude].
  double amplitude = 1.0;
  /// Planted-sparse blocks carry max(1, floor(h_r^gamma)) exceptions.
  double sparse_exponent = 0.25;
  double dense_fraction = 0.25;
};

struct CorpusEntry {
  std::string id;
  std::string kind;
  Sequence x;
  SpaceParams params;
};

namespace detail {

inline double unit_draw(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline std::size_t lookahead(const SpaceParams& p) {
  std::size_t extra = p.m_max;
  if (const auto* s = std::get_if<matrix::Shift>(&p.matrix); s && s->offset > 0) {
    extra += static_cast<std::size_t>(s->offset);
  }
  return extra;
}

}  // namespace detail

/// Seeded bounded sequences. Entry i uses kind i mod 4 and its own generator
/// seeded with seed + i, so entries are independent of the corpus size.
inline std::vector<CorpusEntry> generate_corpus(const CorpusOptions& opt, const SpaceParams& base) {
  base.validate();
  if (!std::holds_alternative<matrix::Identity>(base.matrix) &&
      !std::holds_alternative<matrix::CesaroC1>(base.matrix) &&
      !std::holds_alternative<matrix::Shift>(base.matrix)) {
    throw Error(Errc::InvalidArgument, "corpus generation supports identity, cesaro and shift matrices");
  }
  if (!(opt.amplitude >= 0.0)) throw Error(Errc::InvalidArgument, "corpus amplitude must be >= 0");
  const LacunarySchedule& sched = base.schedule;
  const std::size_t horizon = sched.horizon() + detail::lookahead(base);
  const double L = base.limit, T = opt.amplitude;

  std::vector<CorpusEntry> out;
  out.reserve(opt.count);
  for (std::size_t i = 0; i < opt.count; ++i) {
    std::mt19937_64 rng(opt.seed + i);
    const auto kind = static_cast<CorpusKind>(i % 4);
    std::vector<double> v(horizon, L);
    auto noise = [&] { return T * (2.0 * detail::unit_draw(rng) - 1.0); };
    switch (kind) {
      case CorpusKind::Noise:
        for (auto& e : v) e = L + noise();
        break;
      case CorpusKind::Decaying:
        for (std::size_t k = 1; k <= horizon; ++k) v[k - 1] = L + noise() / static_cast<double>(k);
        break;
      case CorpusKind::PlantedSparse:
      case CorpusKind::PlantedDense: {
        // Blocks past k_R continue with the last block length.
        std::size_t lo = 0, r = 1;
        while (lo < horizon) {
          const std::size_t h = r <= sched.block_count() ? sched.length(r) : sched.length(sched.block_count());
          const std::size_t hi = std::min(horizon, lo + h);
          if (kind == CorpusKind::PlantedSparse) {
            const auto count = std::max<std::size_t>(
                1, static_cast<std::size_t>(std::floor(std::pow(static_cast<double>(h), opt.sparse_exponent))));
            for (std::size_t c = 0; c < count; ++c) {
              const auto pos = lo + static_cast<std::size_t>(detail::unit_draw(rng) * static_cast<double>(hi - lo));
              v[std::min(pos, hi - 1)] = L + noise();
            }
          } else {
            for (std::size_t k = lo; k < hi; ++k) {
              if (detail::unit_draw(rng) < opt.dense_fraction) v[k] = L + noise();
            }
          }
          lo = hi;
          ++r;
        }
        break;
      }
    }
    out.push_back({"seq-" + std::to_string(i), std::string(to_string(kind)), Sequence(std::move(v)), base});
  }
  return out;
}

inline CorpusEntry corpus_entry_from(const Construction& c, std::string id, std::string kind) {
  return {std::move(id), std::move(kind), c.x, c.params};
}

// ---------------------------------------------------------------------------
// Inclusion matrix.

enum class Theorem { T31, T33, T35, T36, T37, T38 };

constexpr std::string_view to_string(Theorem t) noexcept {
  switch (t) {
    case Theorem::T31: return "T31";
    case Theorem::T33: return "T33";
    case Theorem::T35: return "T35";
    case Theorem::T36: return "T36";
    case Theorem::T37: return "T37";
    case Theorem::T38: return "T38";
  }
  return "T31";
}

/// Space labels used in reports and the membership matrix.
namespace space {
inline constexpr std::string_view kStrong = "N_alpha(A,M,s)";
inline constexpr std::string_view kRawBeta = "S_beta";
inline constexpr std::string_view kRawAlpha = "S_alpha";
inline constexpr std::string_view kModular = "S_alpha(A,M,s)";
inline constexpr std::string_view kPlainA = "N_alpha(A)";
inline constexpr std::string_view kPlainAM = "N_alpha(A,M)";
}  // namespace space

struct GrowthEstimate {
  std::vector<double> nu_grid;
  std::vector<double> inf_ratio;  // inf_k M_k(nu/rho_k) / (nu/rho_k) per grid point
  double liminf_estimate = 0.0;   // min over the upper half of the grid
  double gamma_all = 0.0;         // min over the whole grid
  bool bounded_away = false;
};

/// Samples inf_k M_k(nu/rho_k) / (nu/rho_k) over k = 1..k_max on a nu grid.
inline GrowthEstimate estimate_growth(const MusielakOrliczFamily& f, const RhoSequence& rho,
                                      const std::vector<double>& nu_grid, std::size_t k_max,
                                      double gamma_floor = 1e-3) {
  GrowthEstimate g;
  if (auto top = f.max_index()) k_max = std::min(k_max, *top);
  for (double nu : nu_grid) {
    if (!(nu > 0.0)) continue;
    double inf = std::numeric_limits<double>::infinity();
    for (std::size_t k = 1; k <= k_max; ++k) {
      const double u = nu / rho.at(k);
      inf = std::min(inf, f.eval(k, u) / u);
    }
    g.nu_grid.push_back(nu);
    g.inf_ratio.push_back(inf);
  }
  if (g.inf_ratio.empty()) throw Error(Errc::InvalidArgument, "growth grid has no positive nu");
  g.gamma_all = *std::min_element(g.inf_ratio.begin(), g.inf_ratio.end());
  const std::size_t half = g.inf_ratio.size() / 2;
  g.liminf_estimate = *std::min_element(g.inf_ratio.begin() + static_cast<std::ptrdiff_t>(half), g.inf_ratio.end());
  g.bounded_away = g.liminf_estimate > gamma_floor;
  return g;
}

struct InclusionOptions {
  double beta = 1.0;
  VerdictOptions verdict;
  std::vector<Theorem> theorems{Theorem::T31, Theorem::T33, Theorem::T35,
                                Theorem::T36, Theorem::T37, Theorem::T38};
  std::vector<double> delta2_samples = log_grid_with_zero(1e-4, 1e2, 61);
  std::size_t delta2_k_last = 64;
  std::vector<double> nu_grid = log_grid_with_zero(1e-3, 1e3, 25);
  double gamma_floor = 1e-3;
};

struct CorpusRow {
  std::string id;
  std::string kind;
  std::map<std::string, Verdict> spaces;  // verdicts at the common tolerance
  std::map<std::string, BlockTrajectory> sup_trajectories;
  std::optional<Delta2Report> delta2;
  std::optional<GrowthEstimate> growth;
  double max_deviation = 0.0;
};

struct ImplicationRow {
  std::string sequence_id;
  Theorem theorem = Theorem::T31;
  std::string antecedent;
  std::string consequent;
  Decision antecedent_decision = Decision::Inconclusive;
  Decision consequent_decision = Decision::Inconclusive;
  /// Consequent statistic <= transport * antecedent statistic, blockwise.
  double transport = 1.0;
  double consequent_tol = 0.0;
  bool hypothesis_holds = true;
  bool failed = false;
  std::string note;

  bool witness() const noexcept { return failed && !hypothesis_holds; }
  bool theorem_violation() const noexcept { return failed && hypothesis_holds; }
};

struct TheoremSummary {
  Theorem theorem = Theorem::T31;
  std::size_t rows = 0;
  std::size_t fails = 0;
  std::size_t witnesses = 0;
  std::size_t violations = 0;
  std::string label;
};

struct InclusionReport {
  std::string corpus_id;
  double beta = 1.0;
  std::vector<CorpusRow> rows;
  std::vector<ImplicationRow> implications;
  std::vector<TheoremSummary> summaries;
  std::size_t inequality_comparisons = 0;
  std::vector<InequalityViolation> inequality_violations;
  std::vector<std::string> warnings;

  std::size_t fail_count(Theorem t) const {
    return static_cast<std::size_t>(std::count_if(implications.begin(), implications.end(), [t](const auto& r) {
      return r.theorem == t && r.failed;
    }));
  }
  std::size_t violation_count() const {
    return static_cast<std::size_t>(std::count_if(implications.begin(), implications.end(),
                                                  [](const auto& r) { return r.theorem_violation(); }));
  }
};

namespace detail {

struct SpaceSpec {
  StatisticKind kind;
  SpaceParams params;
};

inline SpaceSpec space_spec(std::string_view name, const SpaceParams& base, double beta) {
  SpaceParams p = base;
  if (name == space::kStrong) return {StatisticKind::Strong, p};
  if (name == space::kRawBeta) {
    p.alpha = beta;
    p.flag_mode = FlagMode::RawDeviation;
    return {StatisticKind::ShatDensity, p};
  }
  if (name == space::kRawAlpha) {
    p.flag_mode = FlagMode::RawDeviation;
    return {StatisticKind::ShatDensity, p};
  }
  if (name == space::kModular) {
    p.flag_mode = FlagMode::Modular;
    return {StatisticKind::ShatDensity, p};
  }
  if (name == space::kPlainA) {
    p.family = MusielakOrliczFamily::constant(OrliczFunction::power(1.0));
    p.rho = RhoSequence::constant(1.0);
    p.exponents = ExponentSequence::constant(1.0);
    return {StatisticKind::Strong, p};
  }
  // kPlainAM
  p.exponents = ExponentSequence::constant(1.0);
  return {StatisticKind::Strong, p};
}

inline double max_deviation(const Sequence& x, const SpaceParams& p) {
  const Sequence z = transform_for(x, p, p.m_max);
  double dev = 0.0;
  for (std::size_t m = 0; m <= p.m_max; ++m) {
    const TermProfile prof = term_profile_from_transform(z, p, m);
    for (double d : prof.deviations) dev = std::max(dev, d);
  }
  return dev;
}

// Whether lim_k M_k(nu/rho_k) > 0 for some grid nu, judged on k in [k_R/4, k_R].
inline bool nondecaying_family(const MusielakOrliczFamily& f, const RhoSequence& rho,
                               const std::vector<double>& nu_grid, std::size_t k_top) {
  if (auto top = f.max_index()) k_top = std::min(k_top, *top);
  const std::size_t q1 = std::max<std::size_t>(1, k_top / 4), q2 = std::max<std::size_t>(1, k_top / 2);
  for (double nu : nu_grid) {
    if (!(nu > 0.0)) continue;
    double late = std::numeric_limits<double>::infinity(), early = 0.0;
    for (std::size_t k = q2; k <= k_top; ++k) late = std::min(late, f.eval(k, nu / rho.at(k)));
    for (std::size_t k = q1; k <= q2; ++k) early = std::max(early, f.eval(k, nu / rho.at(k)));
    if (late > 0.0 && late >= 0.5 * early) return true;
  }
  return false;
}

// Whether sup_nu sup_k M_k(nu/rho_k) looks finite: no growth between the top two grid scales.
inline bool bounded_family(const MusielakOrliczFamily& f, const RhoSequence& rho,
                           const std::vector<double>& nu_grid, std::size_t k_top) {
  if (auto top = f.max_index()) k_top = std::min(k_top, *top);
  const double nu = nu_grid.empty() ? 1.0 : nu_grid.back();
  double at_top = 0.0, at_half = 0.0;
  for (std::size_t k = 1; k <= k_top; ++k) {
    at_top = std::max(at_top, f.eval(k, nu / rho.at(k)));
    at_half = std::max(at_half, f.eval(k, 0.5 * nu / rho.at(k)));
  }
  return at_top <= at_half * (1.0 + 1e-9);
}

inline double pow_extreme(double base, double lo, double hi, bool want_max) {
  return want_max ? std::max(std::pow(base, lo), std::pow(base, hi))
                  : std::min(std::pow(base, lo), std::pow(base, hi));
}

}  // namespace detail

/// Runs every requested implication on every corpus entry. Each implication's
/// consequent is classified at tol * transport, where transport is the blockwise
/// constant from the corresponding inequality, so a FAIL row means the
/// finite-horizon data contradicts that inequality or the hypothesis is absent.
inline InclusionReport run_inclusion_matrix(const std::vector<CorpusEntry>& corpus, const InclusionOptions& opt,
                                            std::string corpus_id = "corpus") {
  check_alpha(opt.beta);
  InclusionReport rep;
  rep.corpus_id = std::move(corpus_id);
  rep.beta = opt.beta;
  auto wants = [&](Theorem t) { return std::find(opt.theorems.begin(), opt.theorems.end(), t) != opt.theorems.end(); };

  for (const auto& entry : corpus) {
    const SpaceParams& base = entry.params;
    base.validate();
    if (wants(Theorem::T31) && opt.beta < base.alpha) {
      throw Error(Errc::InvalidArgument, "beta must be >= alpha for " + entry.id);
    }
    CorpusRow row{entry.id, entry.kind, {}, {}, std::nullopt, std::nullopt, 0.0};
    row.max_deviation = detail::max_deviation(entry.x, base);
    const std::size_t k_top = base.schedule.horizon();
    const double h_lo = base.exponents.h_inf(), h_hi = base.exponents.h_sup();

    auto trajectory = [&](std::string_view name) -> const BlockTrajectory& {
      auto it = row.sup_trajectories.find(std::string(name));
      if (it == row.sup_trajectories.end()) {
        const auto spec = detail::space_spec(name, base, opt.beta);
        UniformResult res = uniform_verdict(entry.x, spec.params, spec.kind, opt.verdict);
        row.spaces[std::string(name)] = res.verdict;
        it = row.sup_trajectories.emplace(std::string(name), std::move(res.trajectory.sup)).first;
      }
      return it->second;
    };
    auto implication = [&](Theorem t, std::string_view ant, std::string_view cons, double transport,
                           bool hypothesis, std::string note) {
      ImplicationRow ir;
      ir.sequence_id = entry.id;
      ir.theorem = t;
      ir.antecedent = ant;
      ir.consequent = cons;
      ir.antecedent_decision = classify(trajectory(ant), opt.verdict).decision;
      ir.transport = transport;
      ir.hypothesis_holds = hypothesis;
      ir.note = std::move(note);
      const auto& ct = trajectory(cons);
      if (std::isfinite(transport) && transport > 0.0) {
        VerdictOptions vo = opt.verdict;
        vo.tol = opt.verdict.tol * transport;
        ir.consequent_tol = vo.tol;
        ir.consequent_decision = classify(ct, vo).decision;
        ir.failed = ir.antecedent_decision == Decision::ConvergesToZero &&
                    ir.consequent_decision == Decision::DoesNotConverge;
      } else {
        ir.consequent_tol = std::numeric_limits<double>::infinity();
        ir.consequent_decision = classify(ct, opt.verdict).decision;
        ir.note += ir.note.empty() ? "no finite transport constant; implication not testable"
                                   : "; no finite transport constant; implication not testable";
      }
      rep.implications.push_back(std::move(ir));
    };

    if (wants(Theorem::T31)) {
      double floor_c = std::numeric_limits<double>::infinity();
      for (std::size_t k = 1; k <= k_top; ++k) {
        floor_c = std::min(floor_c, detail::pow_extreme(base.family.eval(k, base.epsilon / base.rho.at(k)), h_lo, h_hi, false));
      }
      implication(Theorem::T31, space::kStrong, space::kRawBeta, 1.0 / floor_c, true, "");
      const InequalityCheck chk = check_density_lower_bound(entry.x, base, opt.beta);
      rep.inequality_comparisons += chk.comparisons;
      rep.inequality_violations.insert(rep.inequality_violations.end(), chk.violations.begin(), chk.violations.end());
    }
    if (wants(Theorem::T33)) {
      const bool hyp = block_ratio_hypothesis_satisfiable(base.alpha);
      double kmax = 0.0, emax = 0.0, ratio = 0.0;
      for (std::size_t k = 1; k <= k_top; ++k) {
        const double rho = base.rho.at(k);
        kmax = std::max(kmax, detail::pow_extreme(base.family.eval(k, row.max_deviation / rho), h_lo, h_hi, true));
        emax = std::max(emax, detail::pow_extreme(base.family.eval(k, base.epsilon / rho), h_lo, h_hi, true));
      }
      for (std::size_t r = 1; r <= base.schedule.block_count(); ++r) {
        const auto h = static_cast<double>(base.schedule.length(r));
        ratio = std::max(ratio, h / std::pow(h, base.alpha));
      }
      // strong <= kmax * density + ratio * emax, so tol' = kmax * tol + ratio * emax.
      const double transport = (kmax * opt.verdict.tol + ratio * emax) / opt.verdict.tol;
      implication(Theorem::T33, space::kRawAlpha, space::kStrong, std::max(transport, 1e-300), hyp,
                  hyp ? "" : "h_r / h_r^alpha -> 1 cannot hold for alpha < 1");
    }
    if (wants(Theorem::T35) || wants(Theorem::T36)) {
      Delta2Options d2;
      d2.u_samples = opt.delta2_samples;
      d2.k_last = std::min(opt.delta2_k_last, base.family.max_index().value_or(opt.delta2_k_last));
      try {
        row.delta2 = delta2_check(base.family, d2);
      } catch (const Error& e) {
        rep.warnings.push_back(entry.id + ": delta2 check skipped: " + e.what());
      }
    }
    const bool delta2_ok = row.delta2 && row.delta2->holds();
    if (wants(Theorem::T35)) {
      // Convexity with M(0) = 0: M_k(d/rho_k) <= M_k(T/rho_k) d / T for d <= T.
      double transport = 1.0;
      if (row.max_deviation > 0.0) {
        transport = 0.0;
        for (std::size_t k = 1; k <= k_top; ++k) {
          transport = std::max(transport, base.family.eval(k, row.max_deviation / base.rho.at(k)) / row.max_deviation);
        }
      }
      implication(Theorem::T35, space::kPlainA, space::kPlainAM, std::max(transport, 1e-300), delta2_ok, "");
    }
    if (wants(Theorem::T36)) {
      row.growth = estimate_growth(base.family, base.rho, opt.nu_grid, k_top, opt.gamma_floor);
      const bool hyp = delta2_ok && row.growth->bounded_away;
      double rho_max = 0.0;
      for (std::size_t k = 1; k <= k_top; ++k) rho_max = std::max(rho_max, base.rho.at(k));
      const double transport = row.growth->gamma_all > 0.0 ? rho_max / row.growth->gamma_all
                                                            : std::numeric_limits<double>::infinity();
      implication(Theorem::T36, space::kPlainAM, space::kPlainA, transport, hyp,
                  "conditional on sampled hypothesis");
    }
    if (wants(Theorem::T37)) {
      const bool hyp = detail::nondecaying_family(base.family, base.rho, opt.nu_grid, k_top);
      implication(Theorem::T37, space::kStrong, space::kModular, 1.0, hyp,
                  hyp ? "" : "lim_k M_k(nu/rho) = 0 on the sampled range");
    }
    if (wants(Theorem::T38)) {
      const bool hyp = detail::bounded_family(base.family, base.rho, opt.nu_grid, k_top);
      implication(Theorem::T38, space::kModular, space::kStrong, 1.0, hyp,
                  hyp ? "" : "sup_nu sup_k M_k(nu/rho) is unbounded on the sampled range");
    }
    rep.rows.push_back(std::move(row));
  }

  for (Theorem t : opt.theorems) {
    TheoremSummary s;
    s.theorem = t;
    for (const auto& ir : rep.implications) {
      if (ir.theorem != t) continue;
      ++s.rows;
      s.fails += ir.failed ? 1 : 0;
      s.witnesses += ir.witness() ? 1 : 0;
      s.violations += ir.theorem_violation() ? 1 : 0;
    }
    s.label = (t == Theorem::T36 || t == Theorem::T35) ? "conditional on sampled hypothesis" : "";
    rep.summaries.push_back(s);
  }
  if (wants(Theorem::T33)) {
    for (const auto& entry : corpus) {
      if (!block_ratio_hypothesis_satisfiable(entry.params.alpha)) {
        rep.warnings.push_back("T33 hypothesis h_r/h_r^alpha -> 1 is unsatisfiable for alpha < 1; rows marked");
        break;
      }
    }
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Limit uniqueness.

struct UniquenessReport {
  std::vector<double> grid;
  std::vector<double> tail_means;
  std::vector<double> argmin_set;
  double best_limit = 0.0;
  double min_tail = 0.0;
  double diameter = 0.0;
  double grid_step = 0.0;
  bool limit_found = false;
  bool pass = false;
};

/// Tail mean of the sup-over-m strong trajectory for every candidate L. The
/// near-minimal set is every L within verdict tol of the minimum.
inline UniquenessReport uniqueness_experiment(const Sequence& x, const SpaceParams& p, std::vector<double> grid,
                                              const VerdictOptions& opt = {}) {
  if (grid.empty()) throw Error(Errc::InvalidArgument, "limit grid is empty");
  std::sort(grid.begin(), grid.end());
  UniquenessReport rep;
  rep.grid = grid;
  for (double L : grid) {
    SpaceParams q = p;
    q.limit = L;
    rep.tail_means.push_back(uniform_verdict(x, q, StatisticKind::Strong, opt).verdict.tail_mean);
  }
  const auto best = std::min_element(rep.tail_means.begin(), rep.tail_means.end()) - rep.tail_means.begin();
  rep.best_limit = grid[static_cast<std::size_t>(best)];
  rep.min_tail = rep.tail_means[static_cast<std::size_t>(best)];
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (rep.tail_means[i] <= rep.min_tail + opt.tol) rep.argmin_set.push_back(grid[i]);
  }
  rep.diameter = rep.argmin_set.back() - rep.argmin_set.front();
  rep.grid_step = std::numeric_limits<double>::infinity();
  for (std::size_t i = 1; i < grid.size(); ++i) rep.grid_step = std::min(rep.grid_step, grid[i] - grid[i - 1]);
  if (grid.size() == 1) rep.grid_step = 0.0;
  rep.limit_found = rep.min_tail <= opt.tol;
  rep.pass = rep.diameter <= 2.0 * rep.grid_step;
  return rep;
}

}  // namespace lacunary

#endif  // LACUNARY_EXPERIMENTS_HPP
