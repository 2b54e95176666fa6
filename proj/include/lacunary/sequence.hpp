#ifndef LACUNARY_SEQUENCE_HPP
#define LACUNARY_SEQUENCE_HPP

#include <cmath>
#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "lacunary/error.hpp"

namespace lacunary {

/// Finite prefix x_1..x_N of an infinite real sequence. Indexing is 1-based
/// throughout the library.
class Sequence {
 public:
  Sequence() = default;

  explicit Sequence(std::vector<double> values) : values_(std::move(values)) {
    if (values_.empty()) {
      throw Error(Errc::InvalidArgument, "sequence horizon must be positive");
    }
    for (std::size_t i = 0; i < values_.size(); ++i) {
      if (!std::isfinite(values_[i])) {
        throw Error(Errc::InvalidArgument,
                    "sequence value at index " + std::to_string(i + 1) + " is not finite");
      }
    }
  }

  std::size_t horizon() const noexcept { return values_.size(); }
  bool empty() const noexcept { return values_.empty(); }

  /// Unchecked 1-based access.
  double operator[](std::size_t k) const noexcept { return values_[k - 1]; }

  double at(std::size_t k) const {
    if (k == 0 || k > values_.size()) {
      throw Error(Errc::IndexOutOfHorizon, "index " + std::to_string(k) +
                                               " outside horizon " +
                                               std::to_string(values_.size()));
    }
    return values_[k - 1];
  }

  std::span<const double> values() const noexcept { return values_; }

  friend bool operator==(const Sequence&, const Sequence&) = default;

 private:
  std::vector<double> values_;
};

/// Almost-convergence window mean t_{mn}(x) = (x_n + ... + x_{n+m}) / (m+1).
/// Summation runs in ascending index order.
inline double window_mean(const Sequence& x, std::size_t m, std::size_t n) {
  if (n == 0) {
    throw Error(Errc::InvalidArgument, "window start must be a positive index");
  }
  if (n + m > x.horizon()) {
    throw Error(Errc::IndexOutOfHorizon,
                "window [" + std::to_string(n) + ", " + std::to_string(n + m) +
                    "] exceeds horizon " + std::to_string(x.horizon()));
  }
  double sum = 0.0;
  for (std::size_t j = n; j <= n + m; ++j) sum += x[j];
  return sum / static_cast<double>(m + 1);
}

}  // namespace lacunary

#endif  // LACUNARY_SEQUENCE_HPP
