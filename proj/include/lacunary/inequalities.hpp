#ifndef LACUNARY_INEQUALITIES_HPP
#define LACUNARY_INEQUALITIES_HPP

// Per-block inequalities that underpin the inclusion results, evaluated
// exactly as computed. Each check walks every block r and every m in 0..m_max.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <vector>

#include "lacunary/convergence.hpp"

namespace lacunary {

struct InequalityViolation {
  std::size_t r;
  std::size_t m;
  double lhs;
  double rhs;
};

struct InequalityCheck {
  std::size_t comparisons = 0;
  std::vector<InequalityViolation> violations;

  bool holds() const noexcept { return violations.empty(); }
};

namespace detail {

inline double pow_min(double base, double lo, double hi) {
  return std::min(std::pow(base, lo), std::pow(base, hi));
}
inline double pow_max(double base, double lo, double hi) {
  return std::max(std::pow(base, lo), std::pow(base, hi));
}

}  // namespace detail

/// Lower bound relating the strong statistic of order alpha to the raw
/// exceptional count of order beta >= alpha:
///   strong_alpha(r, m) >= h_r^{-beta} |{k in I_r : |t_km(A x) - L| >= eps}| * c_r
/// with c_r = min_{k in I_r} min(M_k(eps/rho_k)^h, M_k(eps/rho_k)^H).
inline InequalityCheck check_density_lower_bound(const Sequence& x, const SpaceParams& p, double beta,
                                                 double rel_slack = 1e-12) {
  check_alpha(beta);
  if (beta < p.alpha) throw Error(Errc::InvalidArgument, "beta must be >= alpha");
  const double h_lo = p.exponents.h_inf(), h_hi = p.exponents.h_sup();
  const Sequence z = transform_for(x, p, p.m_max);
  InequalityCheck out;

  std::vector<double> floor_r(p.schedule.block_count());
  for (std::size_t r = 1; r <= p.schedule.block_count(); ++r) {
    const Block b = p.schedule.block(r);
    double c = std::numeric_limits<double>::infinity();
    for (std::size_t k = b.first; k <= b.last; ++k) {
      c = std::min(c, detail::pow_min(p.family.eval(k, p.epsilon / p.rho.at(k)), h_lo, h_hi));
    }
    floor_r[r - 1] = c;
  }
  for (std::size_t m = 0; m <= p.m_max; ++m) {
    const TermProfile prof = term_profile_from_transform(z, p, m);
    const BlockTrajectory strong = strong_from_profile(prof, p);
    for (std::size_t r = 1; r <= p.schedule.block_count(); ++r) {
      const Block b = p.schedule.block(r);
      std::size_t count = 0;
      for (std::size_t k = b.first; k <= b.last; ++k) count += prof.deviations[k - 1] >= p.epsilon ? 1 : 0;
      const double rhs = static_cast<double>(count) / std::pow(static_cast<double>(b.size()), beta) *
                         floor_r[r - 1];
      const double lhs = strong[r];
      ++out.comparisons;
      if (lhs < rhs * (1.0 - rel_slack)) out.violations.push_back({r, m, lhs, rhs});
    }
  }
  return out;
}

/// Upper bound for sequences whose deviations obey |t_km(A x) - L| <= bound:
///   strong(r, m) <= Kmax_r * count_r / h_r^alpha + (h_r / h_r^alpha) * Emax_r
/// with Kmax_r = max_k max(M_k(bound/rho_k)^h, ^H), Emax_r = max_k max(M_k(eps/rho_k)^h, ^H)
/// and count_r the raw exceptional count. Deviations above `bound` are reported
/// as precondition failures (rhs = +inf is never violated, so they land in
/// `violations` with rhs = NaN).
inline InequalityCheck check_bounded_upper_bound(const Sequence& x, const SpaceParams& p, double bound,
                                                 double rel_slack = 1e-12) {
  if (!(bound >= 0.0)) throw Error(Errc::InvalidArgument, "deviation bound must be >= 0");
  const double h_lo = p.exponents.h_inf(), h_hi = p.exponents.h_sup();
  const Sequence z = transform_for(x, p, p.m_max);
  InequalityCheck out;

  const std::size_t blocks = p.schedule.block_count();
  std::vector<double> kmax(blocks, 0.0), emax(blocks, 0.0);
  for (std::size_t r = 1; r <= blocks; ++r) {
    const Block b = p.schedule.block(r);
    for (std::size_t k = b.first; k <= b.last; ++k) {
      const double rho = p.rho.at(k);
      kmax[r - 1] = std::max(kmax[r - 1], detail::pow_max(p.family.eval(k, bound / rho), h_lo, h_hi));
      emax[r - 1] = std::max(emax[r - 1], detail::pow_max(p.family.eval(k, p.epsilon / rho), h_lo, h_hi));
    }
  }
  for (std::size_t m = 0; m <= p.m_max; ++m) {
    const TermProfile prof = term_profile_from_transform(z, p, m);
    const BlockTrajectory strong = strong_from_profile(prof, p);
    for (std::size_t r = 1; r <= blocks; ++r) {
      const Block b = p.schedule.block(r);
      const double h = static_cast<double>(b.size());
      const double ha = std::pow(h, p.alpha);
      std::size_t count = 0;
      bool within = true;
      for (std::size_t k = b.first; k <= b.last; ++k) {
        count += prof.deviations[k - 1] >= p.epsilon ? 1 : 0;
        within = within && prof.deviations[k - 1] <= bound;
      }
      ++out.comparisons;
      if (!within) {
        out.violations.push_back({r, m, strong[r], std::numeric_limits<double>::quiet_NaN()});
        continue;
      }
      const double rhs = kmax[r - 1] * static_cast<double>(count) / ha + (h / ha) * emax[r - 1];
      if (strong[r] > rhs * (1.0 + rel_slack)) out.violations.push_back({r, m, strong[r], rhs});
    }
  }
  return out;
}

/// Two candidate limits L (with rho1) and L1 (with rho2); with
/// rho = max(2 rho1, 2 rho2) and D = max(1, 2^{H-1}), per block:
///   h^{-a} sum (M_k(|L - L1| / rho))^{s_k}
///     <= D h^{-a} sum (M_k(|t - L| / rho1))^{s_k} + D h^{-a} sum (M_k(|t - L1| / rho2))^{s_k}.
/// p.limit plays L, p.rho is ignored. Requires convex members.
inline InequalityCheck check_limit_triangle_bound(const Sequence& x, const SpaceParams& p, double other_limit,
                                                  double rho1, double rho2, double rel_slack = 1e-12) {
  if (!(rho1 > 0.0) || !(rho2 > 0.0)) throw Error(Errc::InvalidArgument, "rho1 and rho2 must be > 0");
  const double rho = std::max(2.0 * rho1, 2.0 * rho2);
  const double d = p.exponents.d_constant();
  SpaceParams p1 = p, p2 = p;
  p1.rho = RhoSequence::constant(rho1);
  p2.rho = RhoSequence::constant(rho2);
  p2.limit = other_limit;
  const Sequence z = transform_for(x, p, p.m_max);
  const double gap = std::abs(p.limit - other_limit);

  InequalityCheck out;
  for (std::size_t m = 0; m <= p.m_max; ++m) {
    const BlockTrajectory s1 = strong_from_profile(term_profile_from_transform(z, p1, m), p1);
    const BlockTrajectory s2 = strong_from_profile(term_profile_from_transform(z, p2, m), p2);
    for (std::size_t r = 1; r <= p.schedule.block_count(); ++r) {
      const Block b = p.schedule.block(r);
      double lhs = 0.0;
      for (std::size_t k = b.first; k <= b.last; ++k) {
        lhs += std::pow(p.family.eval(k, gap / rho), p.exponents.at(k));
      }
      lhs /= std::pow(static_cast<double>(b.size()), p.alpha);
      const double rhs = d * s1[r] + d * s2[r];
      ++out.comparisons;
      if (lhs > rhs * (1.0 + rel_slack)) out.violations.push_back({r, m, lhs, rhs});
    }
  }
  return out;
}

}  // namespace lacunary

#endif  // LACUNARY_INEQUALITIES_HPP
