#include <cmath>

#include "doctest.h"
#include "sc/catalog.hpp"
#include "sc/mc.hpp"
#include "sc/report_io.hpp"

using namespace sc;

namespace {

Identity degenerate_identity(double t, double T) {
  // same spec on both sides; shared noise makes the difference exactly zero
  Identity ident;
  ident.id = "degenerate";
  ident.citation = "ior:reorder";
  ident.statement = "lhs = lhs";
  const auto spec = spec_from_multiindex(MultiIndex({1, 1}), t, T);
  ident.lhs = {{1.0, spec}};
  ident.rhs = {{1.0, spec}};
  ident.t = t;
  ident.T = T;
  return ident;
}

bool reports_equal(const EstimateReport& a, const EstimateReport& b) {
  return a.identity_id == b.identity_id && a.N == b.N && a.M == b.M && a.seed == b.seed &&
         a.ms_error == b.ms_error && a.ci_lo == b.ci_lo && a.ci_hi == b.ci_hi &&
         a.median_sq == b.median_sq && a.lhs_mean == b.lhs_mean && a.rhs_mean == b.rhs_mean &&
         a.lhs_second_moment == b.lhs_second_moment &&
         a.rhs_second_moment == b.rhs_second_moment;
}

}  // namespace

TEST_CASE("verification is reproducible for any worker count") {
  const auto ident = catalog_lookup("J110", 0.0, 1.0);
  REQUIRE(ident.has_value());
  const auto r1 = verify_identity(*ident, 256, 500, 42, 1);
  const auto r4 = verify_identity(*ident, 256, 500, 42, 4);
  const auto r3 = verify_identity(*ident, 256, 500, 42, 3);
  CHECK(reports_equal(r1, r4));
  CHECK(reports_equal(r1, r3));

  RunConfig config;
  config.command = "verify";
  config.identity_filter = "J110";
  config.N = 256;
  config.M = 500;
  config.seed = 42;
  config.format = "json";
  CHECK(verify_report_json(config, {r1}) == verify_report_json(config, {r4}));
}

TEST_CASE("degenerate identity has exactly zero mean-square difference") {
  const auto rep = verify_identity(degenerate_identity(0.0, 1.0), 128, 200, 5);
  CHECK(rep.ms_error == 0.0);
  CHECK(rep.median_sq == 0.0);
  CHECK(rep.ci_lo <= 0.0);
  CHECK(rep.ci_hi >= 0.0);
}

TEST_CASE("estimate reports are internally consistent") {
  const auto ident = catalog_lookup("rrr111", 0.0, 1.0);
  REQUIRE(ident.has_value());
  const auto rep = verify_identity(*ident, 512, 2000, 9);
  CHECK(rep.ms_error >= 0.0);
  CHECK(rep.ci_lo <= rep.ms_error);
  CHECK(rep.ci_hi >= rep.ms_error);
  CHECK(rep.median_sq >= 0.0);
  CHECK(rep.N == 512);
  CHECK(rep.M == 2000);
}

TEST_CASE("mean-square differences shrink when the grid refines") {
  const auto ident = catalog_lookup("rrr111", 0.0, 1.0);
  REQUIRE(ident.has_value());
  const auto coarse = verify_identity(*ident, 512, 2000, derive_seed(1, 512));
  const auto fine = verify_identity(*ident, 1024, 2000, derive_seed(1, 1024));
  CHECK(fine.ms_error < coarse.ms_error);
}

TEST_CASE("preconditions are enforced") {
  const auto ident = catalog_lookup("J10", 0.0, 1.0);
  REQUIRE(ident.has_value());
  CHECK_THROWS_AS(verify_identity(*ident, 1, 200, 1), std::invalid_argument);
  CHECK_THROWS_AS(verify_identity(*ident, 64, 99, 1), std::invalid_argument);
  CHECK_THROWS_AS(convergence_sweep(*ident, {256, 512}, 200, 1), std::invalid_argument);
  CHECK_THROWS_AS(convergence_sweep(*ident, {256, 512, 512}, 200, 1), std::invalid_argument);
  CHECK_THROWS_AS(convergence_sweep(*ident, {512, 256, 1024}, 200, 1), std::invalid_argument);
}

TEST_CASE("deterministic identity sweeps at second order") {
  const auto ident = catalog_lookup("J00", 0.0, 1.0);
  REQUIRE(ident.has_value());
  const auto rep = convergence_sweep(*ident, {128, 256, 512, 1024}, 100, 3);
  REQUIRE(rep.rows.size() == 4);
  CHECK(rep.fitted_slope == doctest::Approx(-2.0).epsilon(0.05));
  // rows reproduce under a second run
  const auto rep2 = convergence_sweep(*ident, {128, 256, 512, 1024}, 100, 3);
  for (std::size_t i = 0; i < rep.rows.size(); ++i)
    CHECK(rep.rows[i].ms_error == rep2.rows[i].ms_error);
}

TEST_CASE("envelope rule passes catalog entries and exact pairs") {
  const auto j110 = catalog_lookup("J110", 0.0, 1.0);
  REQUIRE(j110.has_value());
  const auto rep = verify_with_envelope(*j110, 1024, 2000, 77);
  CHECK(rep.pass);
  CHECK(rep.pilot_ms > 0.0);
  CHECK(rep.envelope > 0.0);
  CHECK(rep.ms_error < rep.envelope);

  // bit-equal regrouping: the numerical-zero floor must carry the verdict
  const auto exact = catalog_lookup("thm1-case1", 0.0, 1.0);
  REQUIRE(exact.has_value());
  const auto erep = verify_with_envelope(*exact, 1024, 500, 77);
  CHECK(erep.pass);
  CHECK(erep.ms_error <= numerical_zero_floor(erep));
}

TEST_CASE("most stochastic catalog entries contract between grid doublings") {
  // regression guard over the catalog: ms(2N) < ms(N) for the decaying entries
  const auto entries = catalog_all(0.0, 1.0);
  std::size_t decaying = 0, contracted = 0;
  for (const auto& e : entries) {
    if (!e.stochastic || e.exact_discrete) continue;
    const auto coarse = verify_identity(e, 128, 2000, derive_seed(11, 128));
    const auto fine = verify_identity(e, 256, 2000, derive_seed(11, 256));
    ++decaying;
    if (fine.ms_error < coarse.ms_error) ++contracted;
  }
  REQUIRE(decaying > 20);
  CHECK(static_cast<double>(contracted) >= 0.9 * static_cast<double>(decaying));
}

TEST_CASE("covariance experiment matches the triangle quadrature") {
  const auto one = KernelExpr::constant(2, 1.0);
  const auto same = covariance_experiment(one, one, 1, 1, 0.0, 1.0, 256, 20000, 321);
  CHECK(same.quadrature == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(std::abs(same.mc_estimate - 0.5) <=
        4.0 * (same.ci_hi - same.ci_lo) / (2.0 * 1.96) + 1e-12);
  CHECK(same.pass);

  const auto cross = covariance_experiment(one, one, 1, 2, 0.0, 1.0, 256, 20000, 321);
  CHECK(cross.quadrature == 0.0);
  CHECK(cross.pass);

  // phi1(s2, s1) = s1 - t: target 1/6 on [0, 1]
  const auto tau1 = kernel_by_name("tau1");
  const auto weighted = covariance_experiment(tau1, one, 1, 1, 0.0, 1.0, 256, 20000, 654);
  CHECK(weighted.quadrature == doctest::Approx(1.0 / 6.0).epsilon(1e-5));
  CHECK(weighted.pass);
}

TEST_CASE("covariance preconditions") {
  const auto one = KernelExpr::constant(2, 1.0);
  CHECK_THROWS_AS(covariance_experiment(one, one, 0, 1, 0.0, 1.0, 64, 200, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(covariance_experiment(one, one, 1, 1, 0.0, 1.0, 64, 10, 1),
                  std::invalid_argument);
  const auto uni = KernelExpr::constant(1, 1.0);
  CHECK_THROWS_AS(covariance_experiment(uni, one, 1, 1, 0.0, 1.0, 64, 200, 1),
                  std::invalid_argument);
}

TEST_CASE("martingale identities verify under both models") {
  for (const char* id : {"thm5-poisson-10", "thm5-scaledwiener-10"}) {
    const auto ident = catalog_lookup(id, 0.0, 1.0);
    REQUIRE(ident.has_value());
    const auto rep = verify_with_envelope(*ident, 512, 2000, 2025);
    CHECK_MESSAGE(rep.pass, id);
  }
}
