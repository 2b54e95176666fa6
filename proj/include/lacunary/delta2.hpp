#ifndef LACUNARY_DELTA2_HPP
#define LACUNARY_DELTA2_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "lacunary/error.hpp"
#include "lacunary/orlicz.hpp"

namespace lacunary {

/// c_k = 2^{-k}
struct GeometricOffsets {};
struct SuppliedOffsets {
  std::vector<double> values;  // c_1, c_2, ...
};
using OffsetRule = std::variant<GeometricOffsets, SuppliedOffsets>;

inline double offset_at(const OffsetRule& rule, std::size_t k) {
  if (std::holds_alternative<GeometricOffsets>(rule)) return std::exp2(-static_cast<double>(k));
  const auto& v = std::get<SuppliedOffsets>(rule).values;
  if (k == 0 || k > v.size()) {
    throw Error(Errc::IndexOutOfHorizon, "offset c_" + std::to_string(k) + " not supplied");
  }
  return v[k - 1];
}

inline std::string describe(const OffsetRule& rule) {
  if (std::holds_alternative<GeometricOffsets>(rule)) return "c_k = 2^-k";
  return "supplied(" + std::to_string(std::get<SuppliedOffsets>(rule).values.size()) + ")";
}

struct Delta2Options {
  double a = 1.0;
  OffsetRule offsets = GeometricOffsets{};
  std::vector<double> u_samples;
  std::size_t k_first = 1;
  std::size_t k_last = 64;
};

struct Delta2Violation {
  std::size_t k;
  double u;
  double m_u;
  double m_2u;
  double c_k;
};

struct Delta2Report {
  double a = 1.0;
  double k_estimate = 0.0;
  std::string offset_rule;
  std::size_t samples_tested = 0;
  std::vector<Delta2Violation> violations;

  bool holds() const noexcept { return violations.empty(); }
};

/// Smallest K with M_k(2u) <= K M_k(u) + c_k over admissible samples
/// (M_k(u) <= a). Samples with M_k(u) = 0 and M_k(2u) > c_k admit no finite K.
inline Delta2Report delta2_check(const MusielakOrliczFamily& family, const Delta2Options& opt) {
  if (!(opt.a > 0.0)) throw Error(Errc::InvalidArgument, "delta2 threshold a must be > 0");
  if (opt.k_first == 0 || opt.k_last < opt.k_first) {
    throw Error(Errc::InvalidArgument, "delta2 index range must satisfy 1 <= k_first <= k_last");
  }
  for (double u : opt.u_samples) {
    if (!(u >= 0.0) || !std::isfinite(u)) throw Error(Errc::InvalidArgument, "delta2 samples must be finite and >= 0");
  }
  Delta2Report rep;
  rep.a = opt.a;
  rep.offset_rule = describe(opt.offsets);
  double k_est = 0.0;
  for (std::size_t k = opt.k_first; k <= opt.k_last; ++k) {
    const double c = offset_at(opt.offsets, k);
    for (double u : opt.u_samples) {
      const double mu = family.eval(k, u);
      if (!(mu <= opt.a)) continue;
      ++rep.samples_tested;
      const double m2u = family.eval(k, 2.0 * u);
      if (mu > 0.0) {
        k_est = std::max(k_est, (m2u - c) / mu);
      } else if (m2u > c) {
        rep.violations.push_back({k, u, mu, m2u, c});
      }
    }
  }
  if (rep.samples_tested == 0) {
    throw Error(Errc::EmptyAdmissibleSet, "no sample satisfies M_k(u) <= " + std::to_string(opt.a));
  }
  rep.k_estimate = k_est;
  return rep;
}

}  // namespace lacunary

#endif  // LACUNARY_DELTA2_HPP
