#include <catch2/catch_amalgamated.hpp>

#include "lacunary/inequalities.hpp"
#include "support.hpp"

using namespace lacunary;

namespace {

SpaceParams random_space(testing::Gen& g, bool musielak) {
  SpaceParams p;
  p.schedule = g.schedule(g.index(1, 5), 24);
  p.m_max = g.index(0, 6);
  p.alpha = g.uniform(0.1, 1.0);
  p.epsilon = g.uniform(0.05, 0.6);
  p.limit = g.uniform(-0.5, 0.5);
  p.matrix = g.coin() ? MatrixOperator{matrix::Identity{}} : MatrixOperator{matrix::CesaroC1{}};
  if (musielak) {
    const std::size_t n = p.schedule.horizon() + p.m_max;
    std::vector<double> pk(n), rho(n), s(n);
    for (std::size_t k = 0; k < n; ++k) {
      pk[k] = g.uniform(1.0, 3.0);
      rho[k] = g.uniform(0.5, 2.0);
      s[k] = g.uniform(0.5, 2.0);
    }
    p.family = MusielakOrliczFamily::index_power(pk);
    p.rho = RhoSequence::per_index(rho);
    p.exponents = ExponentSequence::per_index(s);
  } else {
    p.family = MusielakOrliczFamily::constant(g.orlicz());
    p.rho = RhoSequence::constant(g.uniform(0.5, 2.0));
    p.exponents = ExponentSequence::constant(g.uniform(0.5, 2.0));
  }
  return p;
}

}  // namespace

TEST_CASE("density lower bound holds on random bounded sequences", "[property]") {
  testing::Gen g(101);
  std::size_t comparisons = 0;
  for (int trial = 0; trial < 150; ++trial) {
    const SpaceParams p = random_space(g, trial % 2 == 1);
    const double beta = g.uniform(p.alpha, 1.0);
    const Sequence x = g.sequence(p.schedule.horizon() + p.m_max, -1.5, 1.5);
    const auto chk = check_density_lower_bound(x, p, beta);
    comparisons += chk.comparisons;
    CHECK(chk.holds());
  }
  CHECK(comparisons > 0);
  SpaceParams p;
  p.alpha = 0.8;
  CHECK_THROWS_AS(check_density_lower_bound(Sequence(std::vector<double>(20, 0.0)), p, 0.5), Error);
}

TEST_CASE("bounded upper bound holds on random bounded sequences", "[property]") {
  testing::Gen g(103);
  for (int trial = 0; trial < 150; ++trial) {
    const SpaceParams p = random_space(g, trial % 2 == 1);
    const Sequence x = g.sequence(p.schedule.horizon() + p.m_max, -1.0, 1.0);
    // row-stochastic A keeps |t - L| <= 1 + |L|
    const auto chk = check_bounded_upper_bound(x, p, 1.0 + std::abs(p.limit));
    CHECK(chk.holds());
  }
}

TEST_CASE("bounded upper bound reports deviations above the declared bound") {
  SpaceParams p;
  p.schedule = build_lacunary(ExplicitCuts{{0, 4}});
  p.m_max = 0;
  const auto chk = check_bounded_upper_bound(Sequence({0.0, 5.0, 0.0, 0.0}), p, 1.0);
  REQUIRE(chk.violations.size() == 1);
  CHECK(std::isnan(chk.violations[0].rhs));
}

TEST_CASE("limit triangle bound holds on random instances", "[property]") {
  testing::Gen g(107);
  for (int trial = 0; trial < 150; ++trial) {
    const SpaceParams p = random_space(g, trial % 2 == 1);
    const Sequence x = g.sequence(p.schedule.horizon() + p.m_max, -2.0, 2.0);
    const auto chk = check_limit_triangle_bound(x, p, g.uniform(-2, 2), g.uniform(0.2, 3), g.uniform(0.2, 3));
    CHECK(chk.holds());
  }
}
