#ifndef LACUNARY_SCHEDULE_HPP
#define LACUNARY_SCHEDULE_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "lacunary/error.hpp"

namespace lacunary {

/// Index range (first, last] written as the closed integer range [first, last].
struct Block {
  std::size_t first;
  std::size_t last;

  std::size_t size() const noexcept { return last - first + 1; }
  bool contains(std::size_t k) const noexcept { return k >= first && k <= last; }
};

/// Cut points 0 = k_0 < k_1 < ... < k_R. Block r (1-based) is I_r = (k_{r-1}, k_r]
/// with length h_r = k_r - k_{r-1}; phi_r = k_r / k_{r-1} is defined for r >= 2.
class LacunarySchedule {
 public:
  LacunarySchedule() = default;

  static LacunarySchedule from_cut_points(std::vector<std::size_t> cuts) {
    if (cuts.size() < 2) {
      throw Error(Errc::EmptySchedule, "a schedule needs k_0 = 0 and at least one more cut point");
    }
    if (cuts.front() != 0) {
      throw Error(Errc::InvalidArgument, "first cut point must be 0, got " +
                                             std::to_string(cuts.front()));
    }
    for (std::size_t i = 1; i < cuts.size(); ++i) {
      if (cuts[i] <= cuts[i - 1]) {
        throw Error(Errc::NotStrictlyIncreasing,
                    "cut point k_" + std::to_string(i) + " = " + std::to_string(cuts[i]) +
                        " does not exceed k_" + std::to_string(i - 1) + " = " +
                        std::to_string(cuts[i - 1]));
      }
    }
    LacunarySchedule s;
    s.cuts_ = std::move(cuts);
    return s;
  }

  bool empty() const noexcept { return cuts_.size() < 2; }
  std::size_t block_count() const noexcept { return cuts_.empty() ? 0 : cuts_.size() - 1; }

  /// k_R, the last index covered by the schedule.
  std::size_t horizon() const noexcept { return cuts_.empty() ? 0 : cuts_.back(); }

  std::size_t cut(std::size_t r) const { return cuts_.at(r); }

  std::size_t length(std::size_t r) const {
    check_block(r);
    return cuts_[r] - cuts_[r - 1];
  }

  double ratio(std::size_t r) const {
    check_block(r);
    if (r < 2) throw Error(Errc::InvalidArgument, "phi_r is defined for r >= 2");
    return static_cast<double>(cuts_[r]) / static_cast<double>(cuts_[r - 1]);
  }

  Block block(std::size_t r) const {
    check_block(r);
    return {cuts_[r - 1] + 1, cuts_[r]};
  }

  /// Block number r with k in I_r.
  std::size_t block_of(std::size_t k) const {
    if (k == 0 || k > horizon()) {
      throw Error(Errc::IndexOutOfHorizon, "index " + std::to_string(k) + " not covered by schedule");
    }
    auto it = std::lower_bound(cuts_.begin(), cuts_.end(), k);
    return static_cast<std::size_t>(it - cuts_.begin());
  }

  std::span<const std::size_t> cut_points() const noexcept { return cuts_; }

  std::vector<std::size_t> lengths() const {
    std::vector<std::size_t> h;
    h.reserve(block_count());
    for (std::size_t r = 1; r <= block_count(); ++r) h.push_back(cuts_[r] - cuts_[r - 1]);
    return h;
  }

  // h_r -> infinity cannot be checked on a prefix; these are reported, not enforced.
  bool lengths_nondecreasing() const {
    for (std::size_t r = 2; r <= block_count(); ++r) {
      if (length(r) < length(r - 1)) return false;
    }
    return true;
  }

  bool meets_length_floor(std::size_t floor) const {
    return !empty() && length(block_count()) >= floor;
  }

  friend bool operator==(const LacunarySchedule&, const LacunarySchedule&) = default;

 private:
  void check_block(std::size_t r) const {
    if (r == 0 || r > block_count()) {
      throw Error(Errc::InvalidArgument, "block " + std::to_string(r) + " outside 1.." +
                                             std::to_string(block_count()));
    }
  }

  std::vector<std::size_t> cuts_;
};

struct ExplicitCuts {
  std::vector<std::size_t> cut_points;
};

/// k_r = ceil(base * ratio^r) for r = 1..count, duplicates dropped.
struct GeometricCuts {
  double base = 1.0;
  double ratio = 2.0;
  std::size_t count = 10;
};

using ScheduleRule = std::variant<ExplicitCuts, GeometricCuts>;

inline LacunarySchedule build_lacunary(const ScheduleRule& rule) {
  if (const auto* e = std::get_if<ExplicitCuts>(&rule)) {
    return LacunarySchedule::from_cut_points(e->cut_points);
  }
  const auto& g = std::get<GeometricCuts>(rule);
  if (!(g.base >= 1.0) || !std::isfinite(g.base)) {
    throw Error(Errc::InvalidArgument, "geometric schedule base must be >= 1");
  }
  if (!(g.ratio > 1.0) || !std::isfinite(g.ratio)) {
    throw Error(Errc::InvalidArgument, "geometric schedule ratio must be > 1");
  }
  if (g.count == 0) throw Error(Errc::EmptySchedule, "geometric schedule with zero blocks");

  std::vector<std::size_t> cuts{0};
  for (std::size_t r = 1; r <= g.count; ++r) {
    const double target = g.base * std::pow(g.ratio, static_cast<double>(r));
    if (!(target < 9.0e15)) {
      throw Error(Errc::InvalidArgument, "geometric schedule overflows at r = " + std::to_string(r));
    }
    // Round-to-nearest first so exact products such as 3 * 2^r are not bumped by ulp noise.
    const double nearest = std::round(target);
    const double k = std::abs(target - nearest) <= 1e-9 * target ? nearest : std::ceil(target);
    const auto cut = static_cast<std::size_t>(k);
    if (cut > cuts.back()) cuts.push_back(cut);
  }
  return LacunarySchedule::from_cut_points(std::move(cuts));
}

}  // namespace lacunary

#endif  // LACUNARY_SCHEDULE_HPP
