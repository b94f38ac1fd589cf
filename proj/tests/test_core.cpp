#include <cmath>
#include <set>

#include "doctest.h"
#include "sc/catalog.hpp"
#include "sc/partition.hpp"
#include "sc/spec.hpp"

using namespace sc;

TEST_CASE("uniform partition basics") {
  const auto p = make_uniform_partition(0.0, 1.0, 4);
  REQUIRE(p.steps() == 4);
  CHECK(p.times() == std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0});
  CHECK(p.mesh() == 0.25);

  const auto q = make_uniform_partition(0.0, 1.0, 1);
  CHECK(q.times() == std::vector<double>{0.0, 1.0});

  const auto r = make_uniform_partition(1.0, 3.0, 2);
  CHECK(r.times() == std::vector<double>{1.0, 2.0, 3.0});
  CHECK(r.mesh() == 1.0);
}

TEST_CASE("uniform partition mesh shrinks as 1/N") {
  for (std::size_t N : {2u, 8u, 64u, 1024u}) {
    const auto p = make_uniform_partition(0.0, 1.0, N);
    CHECK(p.mesh() * static_cast<double>(N) == 1.0);
  }
  const auto p = make_uniform_partition(0.5, 2.5, 3);  // mesh not binary-exact
  CHECK(p.mesh() * 3.0 == doctest::Approx(2.0).epsilon(1e-14));
}

TEST_CASE("partition rejects bad input") {
  CHECK_THROWS_AS(make_uniform_partition(1.0, 1.0, 4), std::invalid_argument);
  CHECK_THROWS_AS(make_uniform_partition(2.0, 1.0, 4), std::invalid_argument);
  CHECK_THROWS_AS(make_uniform_partition(0.0, 1.0, 0), std::invalid_argument);
  CHECK_THROWS_AS(Partition(0.0, 1.0, {0.0, 0.5, 0.5, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(Partition(0.0, 1.0, {0.0, 0.7, 0.5, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(Partition(0.0, 1.0, {0.1, 0.5, 1.0}), std::invalid_argument);
  CHECK_THROWS_AS(Partition(0.0, 1.0, {0.0}), std::invalid_argument);
}

TEST_CASE("weight expressions evaluate deterministically") {
  const auto w = WeightExpr::product(
      {WeightExpr::pow_shift(2, Anchor::End), WeightExpr::exp_shift(-1.0, Anchor::Start)});
  const double a = w.eval(0.3, 0.0, 1.0);
  const double b = w.eval(0.3, 0.0, 1.0);
  CHECK(a == b);
  CHECK(a == doctest::Approx(0.49 * std::exp(-0.3)).epsilon(1e-15));
}

TEST_CASE("weight expression values") {
  const double t = 0.0, T = 2.0;
  CHECK(WeightExpr::constant(3.5).eval(1.0, t, T) == 3.5);
  CHECK(WeightExpr::pow_shift(1, Anchor::Start).eval(1.25, t, T) == 1.25);
  CHECK(WeightExpr::pow_shift(3, Anchor::End).eval(1.0, t, T) == -1.0);
  CHECK(WeightExpr::sin_shift(Anchor::End).eval(2.0, t, T) == 0.0);
  CHECK(WeightExpr::cos_shift(Anchor::End).eval(2.0, t, T) == 1.0);
  const auto s =
      WeightExpr::sum({{2.0, WeightExpr::one()}, {-0.5, WeightExpr::pow_shift(1, Anchor::Start)}});
  CHECK(s.eval(1.0, t, T) == doctest::Approx(1.5));
  CHECK(WeightExpr::pow_shift(0.5, Anchor::Start).eval(0.25, 0.0, 1.0) == doctest::Approx(0.5));
}

TEST_CASE("weight expression constructor guards") {
  CHECK_THROWS_AS(WeightExpr::pow_shift(-1.0, Anchor::Start), std::invalid_argument);
  CHECK_THROWS_AS(WeightExpr::pow_shift(-2.0, Anchor::End), std::invalid_argument);
  CHECK_THROWS_AS(WeightExpr::pow_shift(0.5, Anchor::End), std::invalid_argument);
  CHECK_NOTHROW(WeightExpr::pow_shift(0.5, Anchor::Start));
  CHECK_NOTHROW(WeightExpr::pow_shift(4.0, Anchor::End));
}

TEST_CASE("weight expressions print") {
  CHECK(WeightExpr::pow_shift(2, Anchor::End).to_string() == "(s-T)^2");
  CHECK(WeightExpr::exp_shift(1.0, Anchor::End).to_string() == "exp((s-T))");
  CHECK(!WeightExpr::sum({{-1.0, WeightExpr::sin_shift(Anchor::End)}}).to_string().empty());
}

TEST_CASE("kernel expressions") {
  const auto sep =
      KernelExpr::separable({WeightExpr::pow_shift(1, Anchor::Start), WeightExpr::one()});
  REQUIRE(sep.arity() == 2);
  const double args[2] = {0.75, 0.25};
  CHECK(sep.eval({args, 2}, 0.0, 1.0) == doctest::Approx(0.75));

  const auto dp = KernelExpr::diff_pow(2, 2, 1, 2.0);
  CHECK(dp.eval({args, 2}, 0.0, 1.0) == doctest::Approx(0.25));  // (s2-s1)^2

  const auto swapped = sep.swap_args();
  CHECK(swapped.eval({args, 2}, 0.0, 1.0) == doctest::Approx(0.25));

  CHECK_THROWS_AS(KernelExpr::diff_pow(2, 1, 2, 1.0), std::invalid_argument);  // i <= j
  CHECK_THROWS_AS(KernelExpr::diff_pow(2, 3, 1, 1.0), std::invalid_argument);  // out of range
  CHECK_THROWS_AS(KernelExpr::diff_pow(2, 2, 1, 0.5), std::invalid_argument);  // fractional
  CHECK_THROWS_AS(dp.swap_args(), std::invalid_argument);
  const double one_arg[1] = {0.5};
  CHECK_THROWS_AS(sep.eval({one_arg, 1}, 0.0, 1.0), std::invalid_argument);
}

TEST_CASE("multi-index to spec convention") {
  // (1,0): inner layer integrates the Wiener path, outer layer integrates time
  const auto spec = spec_from_multiindex(MultiIndex({1, 0}), 0.0, 1.0);
  REQUIRE(spec.drivers.size() == 2);
  CHECK(std::holds_alternative<TimeDriver>(spec.drivers[0]));
  CHECK(std::holds_alternative<WienerDriver>(spec.drivers[1]));
  CHECK(spec.weights.size() == 1);
  CHECK(spec.weights[0].is_const_one());
  CHECK(spec.orientation == Orientation::Forward);

  const auto plain = spec_from_multiindex(MultiIndex({1}), 0.0, 1.0);
  CHECK(plain.weights.empty());
  CHECK(std::holds_alternative<WienerDriver>(plain.drivers[0]));

  const auto tt = spec_from_multiindex(MultiIndex({0, 0}), 0.0, 1.0);
  CHECK(std::holds_alternative<TimeDriver>(tt.drivers[0]));
  CHECK(std::holds_alternative<TimeDriver>(tt.drivers[1]));
}

TEST_CASE("multi-index validation and counting") {
  CHECK_THROWS_AS(MultiIndex({}), std::invalid_argument);
  CHECK_THROWS_AS(MultiIndex({0, 2}), std::invalid_argument);
  CHECK(MultiIndex({1, 0, 1, 1}).ones_count() == 3);
  CHECK(MultiIndex({1, 0}).to_string() == "(10)");
}

TEST_CASE("spec_from_multiindex is injective for a fixed interval") {
  std::set<std::string> seen;
  std::size_t total = 0;
  for (std::size_t k = 1; k <= 4; ++k) {
    for (unsigned mask = 0; mask < (1u << k); ++mask) {
      std::vector<int> bits(k);
      for (std::size_t i = 0; i < k; ++i) bits[i] = (mask >> i) & 1u;
      seen.insert(spec_from_multiindex(MultiIndex(bits), 0.0, 1.0).describe());
      ++total;
    }
  }
  CHECK(seen.size() == total);
}

TEST_CASE("integral spec validation") {
  CHECK_THROWS_AS(make_spec(OneIntegrand{}, {WeightExpr::one()}, {wiener_driver(1)}, 0.0, 1.0),
                  std::invalid_argument);
  CHECK_THROWS_AS(make_spec(OneIntegrand{}, {}, {wiener_driver(1)}, 1.0, 0.0),
                  std::invalid_argument);
  CHECK_NOTHROW(make_spec(OneIntegrand{}, {}, {wiener_driver(1)}, 0.0, 1.0));
}

TEST_CASE("glob matching") {
  CHECK(glob_match("sum*", "sum3"));
  CHECK(glob_match("sum*", "sum-4-2"));
  CHECK(!glob_match("sum*", "J110"));
  CHECK(glob_match("*", "anything"));
  CHECK(glob_match("J?10", "J110"));
  CHECK(!glob_match("J?10", "J10"));
  CHECK(glob_match("thm5-poisson-k1", "thm5-poisson-k1"));
}
