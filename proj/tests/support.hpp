#ifndef LACUNARY_TESTS_SUPPORT_HPP
#define LACUNARY_TESTS_SUPPORT_HPP

#include <cstdint>
#include <random>
#include <vector>

#include "lacunary/lacunary.hpp"

namespace testing {

/// Seeded generator for property tests; every draw is reproducible from the seed.
class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}

  double unit() { return static_cast<double>(rng_() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }
  std::size_t index(std::size_t lo, std::size_t hi) {  // inclusive
    return lo + static_cast<std::size_t>(rng_() % (hi - lo + 1));
  }
  bool coin(double p = 0.5) { return unit() < p; }

  std::vector<double> values(std::size_t n, double lo, double hi) {
    std::vector<double> v(n);
    for (auto& x : v) x = uniform(lo, hi);
    return v;
  }
  lacunary::Sequence sequence(std::size_t n, double lo = -1.0, double hi = 1.0) {
    return lacunary::Sequence(values(n, lo, hi));
  }

  /// Strictly increasing cut points starting at 0 with nondecreasing-ish gaps.
  lacunary::LacunarySchedule schedule(std::size_t blocks, std::size_t max_gap) {
    std::vector<std::size_t> cuts{0};
    for (std::size_t r = 0; r < blocks; ++r) cuts.push_back(cuts.back() + index(1, max_gap));
    return lacunary::LacunarySchedule::from_cut_points(cuts);
  }

  lacunary::OrliczFunction orlicz() {
    switch (index(0, 4)) {
      case 0: return lacunary::OrliczFunction::power(uniform(1.0, 3.0));
      case 1: return lacunary::OrliczFunction::scaled_power(uniform(1.0, 3.0), uniform(0.2, 3.0));
      case 2: return lacunary::OrliczFunction::power_over_p(uniform(1.2, 3.0));
      case 3: return lacunary::OrliczFunction::exp_minus_one();
      default: return lacunary::OrliczFunction::linear(uniform(0.2, 3.0));
    }
  }

  std::mt19937_64& engine() { return rng_; }

 private:
  std::mt19937_64 rng_;
};

}  // namespace testing

#endif  // LACUNARY_TESTS_SUPPORT_HPP
