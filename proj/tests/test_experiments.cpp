#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "lacunary/experiments.hpp"
#include "support.hpp"

using namespace lacunary;

namespace {

SpaceParams small_space(double alpha) {
  SpaceParams p;
  p.schedule = build_lacunary(GeometricCuts{4, 2, 6});
  p.m_max = 4;
  p.alpha = alpha;
  p.epsilon = 0.05;
  p.family = MusielakOrliczFamily::constant(OrliczFunction::power(2));
  return p;
}

std::size_t first_half_end(const Block& b) { return b.first - 1 + (b.size() + 1) / 2; }

}  // namespace

TEST_CASE("decaying-family construction shape") {
  for (std::size_t r_max : {1u, 5u, 9u}) {
    Thm37Spec spec;
    spec.r_max = r_max;
    spec.m_max = 3;
    const Construction c = build_thm37(spec);
    const auto& s = c.params.schedule;
    REQUIRE(s.block_count() == r_max);
    CHECK(c.x.horizon() == s.horizon() + 3);
    for (std::size_t r = 1; r <= r_max; ++r) {
      CHECK(s.cut(r) == (std::size_t{1} << r));
      const Block b = s.block(r);
      for (std::size_t k = b.first; k <= b.last; ++k) CHECK(c.x[k] == (k <= first_half_end(b) ? 1.0 : 0.0));
      CHECK(c.params.family.eval(s.cut(r) + 1, 1.0) < std::exp2(-static_cast<double>(r)));
    }
    CHECK(std::holds_alternative<matrix::Identity>(c.params.matrix));
    CHECK(c.params.exponents.h_sup() == 1.0);
  }
}

TEST_CASE("decaying-family schedule scales with nu") {
  Thm37Spec spec;
  spec.nu = 3.0;
  spec.r_max = 6;
  const Construction c = build_thm37(spec);
  for (std::size_t r = 1; r <= 6; ++r) CHECK(c.params.schedule.cut(r) == 3 * (std::size_t{1} << r));
}

TEST_CASE("decaying-family degenerate and unsatisfiable cases") {
  Thm37Spec zero;
  zero.nu = 0.0;
  zero.r_max = 6;
  const Construction c = build_thm37(zero);
  for (double v : c.x.values()) CHECK(v == 0.0);
  CHECK(uniform_verdict(c.x, c.params, StatisticKind::Strong).verdict.decision == Decision::ConvergesToZero);
  CHECK(uniform_verdict(c.x, c.params, StatisticKind::ShatDensity).verdict.decision == Decision::ConvergesToZero);

  Thm37Spec flat;
  flat.family = MusielakOrliczFamily::constant(OrliczFunction::power(1));
  flat.r_max = 3;
  flat.horizon_cap = 1u << 12;
  try {
    (void)build_thm37(flat);
    FAIL("expected HypothesisUnsatisfiable");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::HypothesisUnsatisfiable);
  }
  // decays, but not monotonically
  std::vector<double> slopes(4096, 1e-9);
  slopes[20] = 0.5;
  Thm37Spec bumpy;
  bumpy.family = MusielakOrliczFamily::spike(slopes);
  bumpy.r_max = 3;
  try {
    (void)build_thm37(bumpy);
    FAIL("expected HypothesisUnsatisfiable");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::HypothesisUnsatisfiable);
  }
}

TEST_CASE("spike construction shape") {
  for (std::size_t r_max : {1u, 4u, 10u}) {
    Thm38Spec spec;
    spec.r_max = r_max;
    const Construction c = build_thm38(spec);
    const auto& s = c.params.schedule;
    REQUIRE(s.block_count() == r_max);
    for (std::size_t r = 1; r <= r_max; ++r) {
      const double nu = static_cast<double>(r);
      CHECK(c.x[s.cut(r)] == nu);
      CHECK(c.params.family.eval(s.cut(r), nu) >= static_cast<double>(s.length(r)));
    }
    const auto d = uniform_trajectory(c.x, c.params, StatisticKind::ShatDensity);
    const auto v = uniform_trajectory(c.x, c.params, StatisticKind::Strong);
    for (std::size_t r = 1; r <= r_max; ++r) {
      CHECK(d.sup[r] == 1.0 / static_cast<double>(s.length(r)));
      CHECK(v.sup[r] >= 1.0);
    }
  }
  Thm38Spec half;
  half.alpha = 0.5;
  half.r_max = 5;
  const Construction c = build_thm38(half);
  const auto d = uniform_trajectory(c.x, c.params, StatisticKind::ShatDensity);
  for (std::size_t r = 1; r <= 5; ++r) {
    CHECK(d.sup[r] == 1.0 / std::sqrt(static_cast<double>(c.params.schedule.length(r))));
  }
  Thm38Spec bad;
  bad.nu_scale = 0.0;
  CHECK_THROWS_AS(build_thm38(bad), Error);
}

TEST_CASE("corpus generation is seeded and bounded") {
  const SpaceParams p = small_space(1.0);
  CorpusOptions opt;
  opt.count = 12;
  opt.seed = 77;
  const auto a = generate_corpus(opt, p);
  const auto b = generate_corpus(opt, p);
  REQUIRE(a.size() == 12);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].x == b[i].x);
    CHECK(a[i].x.horizon() == p.schedule.horizon() + p.m_max);
    for (double v : a[i].x.values()) CHECK(std::abs(v - p.limit) <= opt.amplitude);
  }
  CHECK(a[0].kind == "planted-sparse");
  CHECK(a[3].kind == "planted-dense");
  // entries do not depend on the corpus size
  opt.count = 3;
  CHECK(generate_corpus(opt, p)[2].x == a[2].x);
  opt.seed = 78;
  CHECK_FALSE(generate_corpus(opt, p)[0].x == a[0].x);
}

TEST_CASE("inclusion matrix on a constant corpus passes everywhere") {
  SpaceParams p = small_space(1.0);
  p.limit = 1.5;
  CorpusEntry e{"const", "constant", Sequence(std::vector<double>(p.schedule.horizon() + p.m_max, 1.5)), p};
  const auto rep = run_inclusion_matrix({e}, {});
  CHECK(rep.implications.size() == 6);
  for (const auto& ir : rep.implications) {
    CHECK_FALSE(ir.failed);
    CHECK(ir.antecedent_decision == Decision::ConvergesToZero);
  }
  for (const auto& [name, v] : rep.rows[0].spaces) CHECK(v.decision == Decision::ConvergesToZero);
}

TEST_CASE("inclusion matrix T31 has no FAIL rows", "[property]") {
  for (double alpha : {0.5, 1.0}) {
    const SpaceParams p = small_space(alpha);
    CorpusOptions opt;
    opt.count = 40;
    opt.seed = 5;
    InclusionOptions io;
    io.theorems = {Theorem::T31};
    const auto rep = run_inclusion_matrix(generate_corpus(opt, p), io);
    CHECK(rep.fail_count(Theorem::T31) == 0);
    CHECK(rep.inequality_comparisons > 0);
    CHECK(rep.inequality_violations.empty());
  }
}

TEST_CASE("inclusion matrix marks the decaying-family witness") {
  Thm37Spec spec;
  spec.r_max = 14;
  const Construction c = build_thm37(spec);
  InclusionOptions io;
  io.theorems = {Theorem::T37};
  const auto rep = run_inclusion_matrix({corpus_entry_from(c, "thm37", "thm37")}, io);
  REQUIRE(rep.implications.size() == 1);
  const auto& ir = rep.implications[0];
  CHECK(ir.antecedent_decision == Decision::ConvergesToZero);
  CHECK(ir.consequent_decision == Decision::DoesNotConverge);
  CHECK(ir.failed);
  CHECK(ir.witness());
  CHECK_FALSE(ir.hypothesis_holds);
  CHECK(rep.violation_count() == 0);
}

TEST_CASE("inclusion matrix flags the block-ratio hypothesis below alpha = 1") {
  const SpaceParams p = small_space(0.5);
  CorpusOptions opt;
  opt.count = 4;
  InclusionOptions io;
  io.theorems = {Theorem::T33, Theorem::T35, Theorem::T36};
  const auto rep = run_inclusion_matrix(generate_corpus(opt, p), io);
  CHECK_FALSE(rep.warnings.empty());
  for (const auto& ir : rep.implications) {
    if (ir.theorem == Theorem::T33) CHECK_FALSE(ir.hypothesis_holds);
    if (ir.theorem == Theorem::T36) CHECK(ir.note.find("conditional on sampled hypothesis") != std::string::npos);
  }
  for (const auto& row : rep.rows) {
    REQUIRE(row.delta2.has_value());
    CHECK(row.delta2->k_estimate <= 4.0 + 1e-9);
    REQUIRE(row.growth.has_value());
  }
  CHECK(run_inclusion_matrix({}, io).rows.empty());
}

TEST_CASE("growth estimate") {
  const auto g = estimate_growth(MusielakOrliczFamily::constant(OrliczFunction::power(2)), RhoSequence(),
                                 {0.5, 1.0, 2.0, 4.0}, 10);
  CHECK(g.gamma_all == 0.5);
  CHECK(g.liminf_estimate == 2.0);
  CHECK(g.bounded_away);
  const auto s = estimate_growth(MusielakOrliczFamily::index_scaled(), RhoSequence(), {1.0, 2.0}, 5000);
  CHECK(s.gamma_all == 1.0 / 5000.0);
  CHECK_FALSE(s.bounded_away);
}

TEST_CASE("limit uniqueness") {
  SpaceParams p = small_space(1.0);
  p.family = MusielakOrliczFamily::constant(OrliczFunction::power(1));
  const std::size_t n = p.schedule.horizon() + p.m_max;
  const auto u = uniqueness_experiment(Sequence(std::vector<double>(n, 5.0)), p, {4.9, 5.0, 5.1});
  CHECK(u.best_limit == 5.0);
  CHECK(u.argmin_set == std::vector<double>{5.0});
  CHECK(u.limit_found);
  CHECK(u.pass);

  SpaceParams q = p;
  q.schedule = build_lacunary(GeometricCuts{4, 2, 10});
  q.matrix = matrix::CesaroC1{};
  std::vector<double> alt(q.schedule.horizon() + q.m_max);
  for (std::size_t k = 1; k <= alt.size(); ++k) alt[k - 1] = k % 2 == 1 ? 0.0 : 1.0;
  const auto v = uniqueness_experiment(Sequence(alt), q, {0.3, 0.4, 0.5, 0.6, 0.7});
  CHECK(v.best_limit == 0.5);
  CHECK(v.pass);

  const Construction c = build_thm38({});
  const auto w = uniqueness_experiment(c.x, c.params, {-1.0, -0.5, 0.0, 0.5, 1.0});
  CHECK_FALSE(w.limit_found);
  CHECK(w.min_tail >= 0.5);
}
