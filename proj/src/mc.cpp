#include "sc/mc.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <memory>
#include <stdexcept>
#include <thread>

#include "sc/evaluate.hpp"
#include "sc/kahan.hpp"
#include "sc/rng.hpp"

namespace sc {

namespace {

double kahan_mean(const std::vector<double>& v) {
  KahanSum s;
  for (double x : v) s.add(x);
  return s.value() / static_cast<double>(v.size());
}

double kahan_mean_sq(const std::vector<double>& v) {
  KahanSum s;
  for (double x : v) s.add(x * x);
  return s.value() / static_cast<double>(v.size());
}

double sample_sd_about(const std::vector<double>& v, double mean) {
  KahanSum s;
  for (double x : v) s.add((x - mean) * (x - mean));
  return std::sqrt(s.value() / static_cast<double>(v.size() - 1));
}

double median_of(std::vector<double> v) {
  const std::size_t mid = v.size() / 2;
  std::nth_element(v.begin(), v.begin() + mid, v.end());
  double m = v[mid];
  if (v.size() % 2 == 0) {
    std::nth_element(v.begin(), v.begin() + mid - 1, v.begin() + mid);
    m = 0.5 * (m + v[mid - 1]);
  }
  return m;
}

struct Timer {
  std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
  double elapsed() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  }
};

}  // namespace

void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& fn) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, std::max<std::size_t>(n, 1)));
  if (threads <= 1 || n < 2) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::vector<std::thread> workers;
  workers.reserve(threads);
  const std::size_t chunk = (n + threads - 1) / threads;
  for (unsigned w = 0; w < threads; ++w) {
    const std::size_t lo = static_cast<std::size_t>(w) * chunk;
    const std::size_t hi = std::min(n, lo + chunk);
    if (lo >= hi) break;
    workers.emplace_back([lo, hi, &fn] {
      for (std::size_t i = lo; i < hi; ++i) fn(i);
    });
  }
  for (auto& w : workers) w.join();
}

EstimateReport verify_identity(const Identity& identity, std::size_t N, std::size_t M,
                               std::uint64_t seed, unsigned threads) {
  if (N < 2) throw std::invalid_argument("verify_identity: N must be >= 2");
  if (M < 100) throw std::invalid_argument("verify_identity: M must be >= 100");
  Timer timer;

  auto partition = std::make_shared<const Partition>(
      make_uniform_partition(identity.t, identity.T, N));
  const PathSampler sampler(partition, identity.wiener_dims, identity.models, seed);

  std::vector<double> sq(M), lhs(M), rhs(M);
  parallel_for(M, threads, [&](std::size_t i) {
    const PathSet path = sampler.sample(i);
    const double l = identity.eval_lhs(path);
    const double r = identity.eval_rhs(path);
    lhs[i] = l;
    rhs[i] = r;
    const double d = l - r;
    sq[i] = d * d;
  });

  EstimateReport rep;
  rep.identity_id = identity.id;
  rep.citation = identity.citation;
  rep.t = identity.t;
  rep.T = identity.T;
  rep.N = N;
  rep.M = M;
  rep.seed = seed;
  rep.ms_error = kahan_mean(sq);
  const double se = sample_sd_about(sq, rep.ms_error) / std::sqrt(static_cast<double>(M));
  rep.ci_lo = rep.ms_error - 1.96 * se;
  rep.ci_hi = rep.ms_error + 1.96 * se;
  rep.median_sq = median_of(sq);
  rep.lhs_mean = kahan_mean(lhs);
  rep.rhs_mean = kahan_mean(rhs);
  rep.lhs_second_moment = kahan_mean_sq(lhs);
  rep.rhs_second_moment = kahan_mean_sq(rhs);
  rep.wall_time_s = timer.elapsed();
  return rep;
}

double numerical_zero_floor(const EstimateReport& report) {
  const double scale =
      std::max({1.0, report.lhs_second_moment, report.rhs_second_moment});
  return 1e-24 * scale;
}

EstimateReport verify_with_envelope(const Identity& identity, std::size_t N, std::size_t M,
                                    std::uint64_t seed, const EnvelopeRule& rule,
                                    unsigned threads) {
  const std::uint64_t pilot_seed = derive_seed(seed, 0x70696C6F74ull /* "pilot" */);
  const EstimateReport pilot =
      verify_identity(identity, rule.pilot_N, M, pilot_seed, threads);
  EstimateReport rep = verify_identity(identity, N, M, seed, threads);
  rep.pilot_ms = pilot.ms_error;
  const double C = pilot.ms_error * static_cast<double>(rule.pilot_N);
  rep.envelope = std::max(rule.envelope_factor * C / static_cast<double>(N),
                          numerical_zero_floor(rep));
  rep.pass = rep.ms_error <= rep.envelope;
  rep.wall_time_s += pilot.wall_time_s;
  return rep;
}

ConvergenceReport convergence_sweep(const Identity& identity, const std::vector<std::size_t>& Ns,
                                    std::size_t M, std::uint64_t seed, unsigned threads) {
  if (Ns.size() < 3)
    throw std::invalid_argument("convergence_sweep: need at least 3 partition sizes");
  for (std::size_t i = 0; i + 1 < Ns.size(); ++i)
    if (!(Ns[i] < Ns[i + 1]))
      throw std::invalid_argument("convergence_sweep: N values must be strictly increasing");

  ConvergenceReport rep;
  rep.identity_id = identity.id;
  rep.citation = identity.citation;
  rep.M = M;
  rep.seed = seed;
  for (const std::size_t N : Ns) {
    const std::uint64_t row_seed = derive_seed(seed, static_cast<std::uint64_t>(N));
    const EstimateReport r = verify_identity(identity, N, M, row_seed, threads);
    rep.rows.push_back({N, r.ms_error, r.ci_lo, r.ci_hi});
  }
  // least-squares slope of log(ms) against log(N)
  const std::size_t n = rep.rows.size();
  double mx = 0.0, my = 0.0;
  std::vector<double> xs(n), ys(n);
  for (std::size_t i = 0; i < n; ++i) {
    xs[i] = std::log(static_cast<double>(rep.rows[i].N));
    ys[i] = std::log(std::max(rep.rows[i].ms_error, 1e-300));
    mx += xs[i];
    my += ys[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  rep.fitted_slope = sxy / sxx;
  return rep;
}

CovarianceReport covariance_experiment(const KernelExpr& phi1, const KernelExpr& phi2, int i1,
                                       int i2, double t, double T, std::size_t N, std::size_t M,
                                       std::uint64_t seed, unsigned threads,
                                       std::size_t quad_nodes) {
  if (phi1.arity() != 2 || phi2.arity() != 2)
    throw std::invalid_argument("covariance_experiment: bivariate kernels required");
  if (i1 < 1 || i2 < 1) throw std::invalid_argument("covariance_experiment: components are 1-based");
  if (M < 100) throw std::invalid_argument("covariance_experiment: M must be >= 100");
  Timer timer;

  const int dims = std::max(i1, i2);
  auto partition = std::make_shared<const Partition>(make_uniform_partition(t, T, N));
  const PathSampler sampler(partition, dims, {}, seed);

  // I: reversed-order object, tail component i1, outer component i2.
  const KernelIntegralSpec spec_I{phi1, std::nullopt,
                                  {wiener_driver(i1), wiener_driver(i2)},
                                  Orientation::Reversed, t, T};
  // J: forward object; the kernel sees (outer, inner) arguments, the statement
  // writes phi2(inner, outer), hence the argument swap.
  const KernelIntegralSpec spec_J{phi2.swap_args(), std::nullopt,
                                  {wiener_driver(i2), wiener_driver(i1)},
                                  Orientation::Forward, t, T};

  std::vector<double> prod(M);
  parallel_for(M, threads, [&](std::size_t p) {
    const PathSet path = sampler.sample(p);
    const double I = eval_kernel_spec(spec_I, path);
    const double J = eval_kernel_spec(spec_J, path);
    prod[p] = I * J;
  });

  CovarianceReport rep;
  rep.phi1 = phi1.to_string();
  rep.phi2 = phi2.to_string();
  rep.i1 = i1;
  rep.i2 = i2;
  rep.t = t;
  rep.T = T;
  rep.N = N;
  rep.M = M;
  rep.seed = seed;
  rep.mc_estimate = kahan_mean(prod);
  const double se = sample_sd_about(prod, rep.mc_estimate) / std::sqrt(static_cast<double>(M));
  rep.ci_lo = rep.mc_estimate - 1.96 * se;
  rep.ci_hi = rep.mc_estimate + 1.96 * se;
  rep.quadrature = i1 == i2 ? simplex_quadrature(phi1, phi2, t, T, quad_nodes) : 0.0;
  rep.pass = std::abs(rep.mc_estimate - rep.quadrature) <= 4.0 * se;
  rep.wall_time_s = timer.elapsed();
  return rep;
}

}  // namespace sc
