#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "lacunary/delta2.hpp"
#include "lacunary/norms.hpp"
#include "lacunary/orlicz.hpp"
#include "support.hpp"

using namespace lacunary;
using Catch::Approx;

namespace {

double lp_norm(const std::vector<double>& v, double p) {
  double s = 0.0;
  for (double x : v) s += std::pow(std::abs(x), p);
  return std::pow(s, 1.0 / p);
}

// Amemiya norm of u^p: minimize (1 + t^p S) / t, stationary at t = ((p - 1) S)^(-1/p).
double amemiya_power(const std::vector<double>& v, double p) {
  double s = 0.0;
  for (double x : v) s += std::pow(std::abs(x), p);
  const double t = std::pow((p - 1.0) * s, -1.0 / p);
  return (1.0 + std::pow(t, p) * s) / t;
}

}  // namespace

TEST_CASE("orlicz evaluation") {
  CHECK(OrliczFunction::power(2)(3.0) == 9.0);
  CHECK(OrliczFunction::exp_minus_one()(0.0) == 0.0);
  CHECK(OrliczFunction::scaled_power(2, 3)(2.0) == 12.0);
  CHECK(OrliczFunction::power_over_p(2)(3.0) == 4.5);
  CHECK(OrliczFunction::linear(0.5)(4.0) == 2.0);
  CHECK(MusielakOrliczFamily::index_scaled().eval(5, 2.0) == Approx(0.4));
  CHECK_THROWS_AS(OrliczFunction::power(2)(-1.0), Error);
  try {
    (void)eval_orlicz(OrliczFunction::power(2), -0.5);
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NegativeArgument);
  }
  CHECK_THROWS_AS(OrliczFunction::power(0.5), Error);
  const auto t = OrliczFunction::table({{0, 0}, {1, 1}, {2, 3}});
  CHECK(t(0.5) == 0.5);
  CHECK(t(1.5) == 2.0);
  CHECK(t(3.0) == 5.0);  // linear extrapolation with the last slope
  CHECK_THROWS_AS(OrliczFunction::table({{0, 1}, {1, 2}}), Error);
  CHECK_THROWS_AS(OrliczFunction::table({{0, 0}, {1, 2}, {2, 1}}), Error);
  CHECK_THROWS_AS(OrliczFunction::table({{0, 0}, {1, 1}, {1, 2}}), Error);
}

TEST_CASE("orlicz axioms on small grids") {
  const std::vector<double> grid{0, 0.5, 1, 2, 4};
  CHECK(verify_orlicz_axioms(OrliczFunction::power(1.5), grid).all_pass());
  CHECK(verify_orlicz_axioms(OrliczFunction::linear(1.0), grid).all_pass());
  const auto bad = verify_orlicz_axioms(OrliczFunction::table({{0, 0}, {1, 2}, {2, 3}}), {0, 1, 2});
  CHECK_FALSE(bad.midpoint_convex);
  CHECK_FALSE(bad.all_pass());
  CHECK_FALSE(bad.failures.empty());
  CHECK_FALSE(verify_orlicz_axioms(OrliczFunction::linear(1e-6), grid, 1.0).growth);
}

TEST_CASE("every shipped family passes the axioms on a log grid", "[property]") {
  const auto grid = log_grid_with_zero(1e-3, 1e2, 99);
  REQUIRE(grid.size() == 100);
  for (const auto& m : {OrliczFunction::power(1), OrliczFunction::power(2.5), OrliczFunction::scaled_power(1.5, 0.3),
                        OrliczFunction::power_over_p(3), OrliczFunction::exp_minus_one(), OrliczFunction::linear(2),
                        OrliczFunction::table({{0, 0}, {1, 1}, {2, 3}, {3, 6}})}) {
    INFO(m.describe());
    CHECK(verify_orlicz_axioms(m, grid).all_pass());
  }
  const auto fam = MusielakOrliczFamily::index_scaled();
  for (std::size_t k : {1u, 7u, 100u}) CHECK(verify_orlicz_axioms(fam.member(k), grid, 0.5).all_pass());
}

TEST_CASE("family indexing") {
  const auto spike = MusielakOrliczFamily::spike({1.0, 2.0});
  CHECK(spike.eval(2, 3.0) == 6.0);
  CHECK(spike.max_index() == 2u);
  try {
    (void)spike.eval(3, 1.0);
    FAIL("expected IndexOutOfHorizon");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::IndexOutOfHorizon);
  }
  const auto ip = MusielakOrliczFamily::index_power({1.0, 2.0, 3.0});
  CHECK(ip.eval(3, 2.0) == 8.0);
  CHECK(MusielakOrliczFamily::constant(OrliczFunction::power(2)).is_constant());
  CHECK_FALSE(MusielakOrliczFamily::index_scaled().max_index().has_value());
  const auto ex = ExponentSequence::per_index({0.5, 3.0});
  CHECK(ex.h_inf() == 0.5);
  CHECK(ex.h_sup() == 3.0);
  CHECK(ex.d_constant() == 4.0);
  CHECK(ExponentSequence::constant(0.7).d_constant() == 1.0);
  CHECK_THROWS_AS(RhoSequence::constant(0.0), Error);
}

TEST_CASE("modular examples") {
  const auto sq = MusielakOrliczFamily::constant(OrliczFunction::power(2));
  const auto lin = MusielakOrliczFamily::constant(OrliczFunction::power(1));
  CHECK(modular(sq, Sequence({0.0, 0.0}), RhoSequence()) == 0.0);
  CHECK(modular(sq, Sequence({1.0, 2.0, 3.0}), RhoSequence()) == 14.0);
  CHECK(modular(lin, Sequence({1.0, 1.0, 1.0, 1.0}), RhoSequence::constant(2.0)) == 2.0);
  CHECK(modular(sq, Sequence({-3.0}), RhoSequence()) == 9.0);
}

TEST_CASE("modular is nonincreasing in rho", "[property]") {
  testing::Gen g(21);
  for (int trial = 0; trial < 100; ++trial) {
    const auto fam = MusielakOrliczFamily::constant(g.orlicz());
    const Sequence x = g.sequence(g.index(1, 20), -3, 3);
    const double r1 = g.uniform(0.1, 5), r2 = r1 * g.uniform(1.0, 4.0);
    CHECK(modular(fam, x, RhoSequence::constant(r1)) >= modular(fam, x, RhoSequence::constant(r2)));
  }
}

TEST_CASE("luxemburg norm examples") {
  const auto lin = MusielakOrliczFamily::constant(OrliczFunction::power(1));
  const auto sq = MusielakOrliczFamily::constant(OrliczFunction::power(2));
  CHECK(luxemburg_norm(lin, Sequence({1.0, 2.0, 3.0}), 1e-12) == Approx(6.0).epsilon(1e-12));
  CHECK(luxemburg_norm(sq, Sequence({3.0, 4.0}), 1e-12) == Approx(5.0).epsilon(1e-12));
  CHECK(luxemburg_norm(MusielakOrliczFamily::index_scaled(), Sequence({0.0, 0.0}), 1e-12) == 0.0);
}

TEST_CASE("luxemburg norm matches l_p and is homogeneous", "[property]") {
  testing::Gen g(8);
  for (double p : {1.0, 1.5, 2.0, 3.0}) {
    const auto fam = MusielakOrliczFamily::constant(OrliczFunction::power(p));
    for (int trial = 0; trial < 30; ++trial) {
      const auto v = g.values(g.index(1, 64), -10, 10);
      const double lux = luxemburg_norm(fam, Sequence(v), 1e-12);
      CHECK(std::abs(lux - lp_norm(v, p)) <= 1e-9);
      // unit ball consistency: modular at the returned scale does not exceed 1
      std::vector<double> scaled(v);
      for (auto& x : scaled) x /= lux;
      CHECK(modular(fam, Sequence(scaled), RhoSequence()) <= 1.0 + 1e-12);

      const double c = g.uniform(-20, 20);
      std::vector<double> cv(v);
      for (auto& x : cv) x *= c;
      CHECK(std::abs(luxemburg_norm(fam, Sequence(cv), 1e-10) - std::abs(c) * lux) <= 2e-10 + 1e-12 * std::abs(c) * lux);
    }
  }
}

TEST_CASE("orlicz norm examples") {
  const auto lin = MusielakOrliczFamily::constant(OrliczFunction::power(1));
  const auto sq = MusielakOrliczFamily::constant(OrliczFunction::power(2));
  const auto a = orlicz_norm(lin, Sequence({1.0, 1.0}), 1e-10);
  CHECK(a.at_boundary);
  CHECK(a.value == Approx(2.0).margin(1e-9));
  const auto b = orlicz_norm(sq, Sequence({1.0, 0.0, 0.0}), 1e-10);
  CHECK_FALSE(b.at_boundary);
  CHECK(b.value == Approx(2.0).margin(1e-9));
  CHECK(b.multiplier == Approx(1.0).margin(1e-4));
  CHECK(orlicz_norm(sq, Sequence({0.0}), 1e-10).value == 0.0);
}

TEST_CASE("orlicz norm sandwich and closed form", "[property]") {
  testing::Gen g(13);
  for (int trial = 0; trial < 100; ++trial) {
    const double p = g.uniform(1.2, 3.5);
    const auto fam = MusielakOrliczFamily::constant(OrliczFunction::power(p));
    const auto v = g.values(g.index(1, 40), -4, 4);
    const double lux = luxemburg_norm(fam, Sequence(v), 1e-12);
    const double on = orlicz_norm(fam, Sequence(v), 1e-10).value;
    CHECK(on >= lux - 1e-6);
    CHECK(on <= 2.0 * lux + 1e-6);
    CHECK(on == Approx(amemiya_power(v, p)).epsilon(1e-9));
  }
  for (int trial = 0; trial < 30; ++trial) {
    const auto fam = MusielakOrliczFamily::constant(g.orlicz());
    const auto v = g.values(g.index(1, 16), -2, 2);
    const double lux = luxemburg_norm(fam, Sequence(v), 1e-12);
    const double on = orlicz_norm(fam, Sequence(v), 1e-10).value;
    CHECK(on >= lux - 1e-6);
    CHECK(on <= 2.0 * lux + 1e-6);
  }
}

TEST_CASE("complementary function") {
  const auto half_sq = MusielakOrliczFamily::constant(OrliczFunction::power_over_p(2));
  CHECK(complementary(half_sq, 1, 3.0).value == Approx(4.5).margin(1e-9));
  CHECK(complementary(half_sq, 1, -3.0).value == Approx(4.5).margin(1e-9));
  CHECK(complementary(MusielakOrliczFamily::constant(OrliczFunction::exp_minus_one()), 1, 0.0).value == 0.0);

  const auto lin = MusielakOrliczFamily::constant(OrliczFunction::linear(1));
  const auto r = complementary(lin, 1, 2.0);
  CHECK(r.at_boundary);
  ConjugateSearch strict;
  strict.strict = true;
  try {
    (void)complementary(lin, 1, 2.0, strict);
    FAIL("expected BracketTooSmall");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::BracketTooSmall);
  }
  // below the slope the conjugate is 0
  CHECK(complementary(lin, 1, 0.5).value == 0.0);
}

TEST_CASE("delta2 estimates") {
  Delta2Options opt;
  opt.u_samples = log_grid_with_zero(1e-4, 1.0, 41);
  for (double p : {1.0, 2.0, 3.0}) {
    const auto rep = delta2_check(MusielakOrliczFamily::constant(OrliczFunction::power(p)), opt);
    CHECK(rep.holds());
    CHECK(rep.k_estimate <= std::pow(2.0, p) + 1e-6);
    CHECK(rep.k_estimate >= std::pow(2.0, p) - 1e-6);
  }
  const auto idx = delta2_check(MusielakOrliczFamily::index_scaled(), opt);
  CHECK(idx.k_estimate <= 2.0 + 1e-12);

  Delta2Options dense;
  dense.u_samples.clear();
  for (int i = 0; i <= 2000; ++i) dense.u_samples.push_back(std::log(2.0) * i / 2000.0);  // M(u) <= 1 boundary
  const auto ex = delta2_check(MusielakOrliczFamily::constant(OrliczFunction::exp_minus_one()), dense);
  CHECK(ex.holds());
  // brute-force ratio sweep over the same admissible set
  double brute = 0.0;
  for (std::size_t k = 1; k <= 64; ++k) {
    for (double u : dense.u_samples) {
      const double mu = std::expm1(u);
      if (mu > 0.0 && mu <= 1.0) brute = std::max(brute, (std::expm1(2 * u) - std::exp2(-double(k))) / mu);
    }
  }
  CHECK(ex.k_estimate == Approx(brute).epsilon(1e-12));

  Delta2Options none;
  none.a = 1e-3;
  none.u_samples = {10.0, 20.0};
  try {
    (void)delta2_check(MusielakOrliczFamily::constant(OrliczFunction::power(2)), none);
    FAIL("expected EmptyAdmissibleSet");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::EmptyAdmissibleSet);
  }
  Delta2Options supplied = opt;
  supplied.offsets = SuppliedOffsets{std::vector<double>(64, 0.0)};
  CHECK(delta2_check(MusielakOrliczFamily::constant(OrliczFunction::power(2)), supplied).k_estimate == Approx(4.0));
}

TEST_CASE("delta2 records samples with no finite K") {
  const auto flat = MusielakOrliczFamily::constant(OrliczFunction::table({{0, 0}, {1, 0}, {2, 1}}));
  Delta2Options opt;
  opt.u_samples = {0.25, 0.75, 1.5};
  opt.k_last = 3;
  const auto rep = delta2_check(flat, opt);
  CHECK_FALSE(rep.holds());
  REQUIRE_FALSE(rep.violations.empty());
  CHECK(rep.violations.front().u == 0.75);
  CHECK(rep.violations.front().m_u == 0.0);
}
