#include <cmath>
#include <memory>
#include <sstream>

#include "doctest.h"
#include "sc/path_set.hpp"

using namespace sc;

namespace {

std::shared_ptr<const Partition> uniform(double t, double T, std::size_t N) {
  return std::make_shared<const Partition>(make_uniform_partition(t, T, N));
}

}  // namespace

TEST_CASE("philox known-answer vectors") {
  auto r0 = Philox4x32::block({0, 0, 0, 0}, {0, 0});
  CHECK(r0 == std::array<std::uint32_t, 4>{0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u});
  auto r1 = Philox4x32::block({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu},
                              {0xffffffffu, 0xffffffffu});
  CHECK(r1 == std::array<std::uint32_t, 4>{0x408f276du, 0x41c83b0eu, 0xa20bc7c6u, 0x6d5451fdu});
  auto r2 = Philox4x32::block({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u},
                              {0xa4093822u, 0x299f31d0u});
  CHECK(r2 == std::array<std::uint32_t, 4>{0xd16cfe09u, 0x94fdccebu, 0x5001e420u, 0x24126ea1u});
}

TEST_CASE("same (seed, path_index) gives bit-identical paths") {
  const auto part = uniform(0.0, 1.0, 64);
  const PathSampler a(part, 2, {CompensatedPoisson{2.0}}, 1234);
  const PathSampler b(part, 2, {CompensatedPoisson{2.0}}, 1234);
  const PathSet pa = a.sample(17);
  const PathSet pb = b.sample(17);
  CHECK(pa.wiener_increments(1) == pb.wiener_increments(1));
  CHECK(pa.wiener_increments(2) == pb.wiener_increments(2));
  CHECK(pa.martingale_increments(0) == pb.martingale_increments(0));

  const PathSet pc = a.sample(18);
  CHECK(pa.wiener_increments(1) != pc.wiener_increments(1));
}

TEST_CASE("paths are independent of sampling order") {
  const auto part = uniform(0.0, 1.0, 8);
  const PathSampler s(part, 1, {}, 99);
  const PathSet first = s.sample(5);
  (void)s.sample(0);
  (void)s.sample(11);
  const PathSet again = s.sample(5);
  CHECK(first.wiener_increments(1) == again.wiener_increments(1));
}

TEST_CASE("wiener increment variance matches the step size") {
  // N(0,1) law of the single increment on [0,1]; 1e5 paths
  const auto part = uniform(0.0, 1.0, 1);
  const PathSampler s(part, 1, {}, 2024);
  const std::size_t M = 100000;
  double sum = 0.0, sumsq = 0.0;
  for (std::size_t i = 0; i < M; ++i) {
    const double d = s.sample(i).wiener_increments(1)[0];
    sum += d;
    sumsq += d * d;
  }
  const double mean = sum / M;
  const double var = sumsq / M - mean * mean;
  CHECK(std::abs(mean) < 5.0 / std::sqrt(double(M)));
  CHECK(var > 0.98);
  CHECK(var < 1.02);
}

TEST_CASE("components are independent across and within paths") {
  const auto part = uniform(0.0, 1.0, 4);
  const PathSampler s(part, 2, {}, 7);
  const std::size_t M = 20000;
  const double dt = 0.25;
  double cross = 0.0, lag = 0.0;
  for (std::size_t i = 0; i < M; ++i) {
    const PathSet p = s.sample(i);
    const auto& a = p.wiener_increments(1);
    const auto& b = p.wiener_increments(2);
    cross += a[0] * b[0];
    lag += a[0] * a[1];
  }
  // 5 standard errors of a mean of products of independent N(0, dt) draws
  const double se = dt / std::sqrt(double(M));
  CHECK(std::abs(cross / M) < 5.0 * se);
  CHECK(std::abs(lag / M) < 5.0 * se);
}

TEST_CASE("compensated poisson martingale moments") {
  const auto part = uniform(0.0, 1.0, 16);
  const double lambda = 2.0;
  const PathSampler s(part, 0, {CompensatedPoisson{lambda}}, 31);
  const std::size_t M = 100000;
  double sum = 0.0, sumsq = 0.0;
  for (std::size_t i = 0; i < M; ++i) {
    const PathSet p = s.sample(i);
    const double MT = p.martingale_cumulative(0).back();
    sum += MT;
    sumsq += MT * MT;
  }
  const double mean = sum / M;
  const double var = sumsq / M - mean * mean;
  CHECK(std::abs(mean) <= 3.0 * std::sqrt(lambda / double(M)));
  // Var M_T = lambda (T - t); generous 5-sigma window on the variance estimate
  const double se_var = std::sqrt((lambda + 3.0 * lambda * lambda) / double(M));
  CHECK(std::abs(var - lambda) <= 5.0 * se_var);
}

TEST_CASE("scaled wiener martingale variance") {
  const auto part = uniform(0.0, 1.0, 1);
  const PathSampler s(part, 0, {ScaledWiener{2.0}}, 5);
  const std::size_t M = 50000;
  double sumsq = 0.0;
  for (std::size_t i = 0; i < M; ++i) {
    const double d = s.sample(i).martingale_increments(0)[0];
    sumsq += d * d;
  }
  const double var = sumsq / M;  // mean is 0 by construction of the estimator target
  CHECK(var == doctest::Approx(4.0).epsilon(0.05));
}

TEST_CASE("per-subinterval increment variances match the step sizes") {
  const auto part = uniform(0.0, 1.0, 4);
  const double lambda = 2.0;
  const PathSampler s(part, 1, {CompensatedPoisson{lambda}}, 63);
  const std::size_t M = 20000;
  std::vector<double> wsq(4, 0.0), msq(4, 0.0);
  for (std::size_t i = 0; i < M; ++i) {
    const PathSet p = s.sample(i);
    for (std::size_t j = 0; j < 4; ++j) {
      wsq[j] += p.wiener_increments(1)[j] * p.wiener_increments(1)[j];
      msq[j] += p.martingale_increments(0)[j] * p.martingale_increments(0)[j];
    }
  }
  for (std::size_t j = 0; j < 4; ++j) {
    const double dt = part->dt(j);
    const double wvar = wsq[j] / M;
    CHECK(std::abs(wvar - dt) <= 5.0 * dt * std::sqrt(2.0 / double(M)));
    const double mvar = msq[j] / M;
    const double mean = lambda * dt;
    // Var[dM^2] for the compensated count = mean (1 + 3 mean) + O(mean^3)
    const double se = std::sqrt(mean * (1.0 + 3.0 * mean) / double(M));
    CHECK(std::abs(mvar - mean) <= 5.0 * se);
  }
}

TEST_CASE("refined increments reproduce the coarse variance") {
  const auto part = uniform(0.0, 1.0, 64);
  const PathSampler s(part, 1, {}, 11);
  const std::size_t M = 40000;
  double sumsq = 0.0;
  for (std::size_t i = 0; i < M; ++i) {
    const PathSet p = s.sample(i);
    const auto& inc = p.wiener_increments(1);
    const double coarse = inc[0] + inc[1];  // child increments of a width-2/64 cell
    sumsq += coarse * coarse;
  }
  const double var = sumsq / M;
  const double target = 2.0 / 64.0;
  const double se = target * std::sqrt(2.0 / double(M));
  CHECK(std::abs(var - target) <= 5.0 * se);
}

TEST_CASE("cumulative values") {
  const auto part = uniform(0.0, 1.0, 8);
  const PathSampler s(part, 1, {ScaledWiener{1.5}}, 3);
  const PathSet p = s.sample(0);

  CHECK(cumulative_value(p, wiener_driver(1), 0) == 0.0);
  CHECK(cumulative_value(p, martingale_driver(0), 0) == 0.0);
  CHECK(cumulative_value(p, time_driver(), 3) == part->time(3));

  double running = 0.0;
  for (std::size_t j = 0; j < 8; ++j) running += p.wiener_increments(1)[j];
  CHECK(cumulative_value(p, wiener_driver(1), 8) == running);
}

TEST_CASE("path accessors reject bad indices") {
  const auto part = uniform(0.0, 1.0, 4);
  const PathSampler s(part, 1, {}, 8);
  const PathSet p = s.sample(0);
  CHECK_THROWS_AS(p.cumulative(wiener_driver(1), 5), std::out_of_range);
  CHECK_THROWS_AS(p.increment(wiener_driver(1), 4), std::out_of_range);
  CHECK_THROWS_AS(p.cumulative(wiener_driver(2), 1), std::out_of_range);
  CHECK_THROWS_AS(p.cumulative(martingale_driver(0), 1), std::out_of_range);
  CHECK_THROWS_AS(PathSampler(part, 0, {}, 1), std::invalid_argument);
  CHECK_THROWS_AS(sample_paths(part, 1, {}, 1, 0), std::invalid_argument);
}

TEST_CASE("sample_paths returns the requested count") {
  const auto part = uniform(0.0, 2.0, 4);
  const auto paths = sample_paths(part, 1, {}, 77, 5);
  REQUIRE(paths.size() == 5);
  CHECK(paths[2].path_index() == 2);
  CHECK(paths[2].seed() == 77);
}

TEST_CASE("binary dump round-trips") {
  const auto part = uniform(0.25, 1.75, 6);
  const PathSampler s(part, 2, {CompensatedPoisson{1.0}}, 555);
  const PathSet p = s.sample(9);

  std::stringstream buf;
  dump_path_set(p, buf);
  const PathSet q = load_path_set(buf);

  CHECK(q.partition().times() == p.partition().times());
  CHECK(q.dims() == 2);
  CHECK(q.seed() == 555);
  CHECK(q.path_index() == 9);
  CHECK(q.wiener_increments(1) == p.wiener_increments(1));
  CHECK(q.wiener_increments(2) == p.wiener_increments(2));
  CHECK(q.martingale_increments(0) == p.martingale_increments(0));

  std::stringstream bad("junk");
  CHECK_THROWS(load_path_set(bad));
}
