#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "sc/catalog.hpp"
#include "sc/identity.hpp"
#include "sc/quadrature.hpp"

namespace sc {

// Static contiguous split of [0, n) over `threads` workers; results must go to
// per-index slots so the outcome is identical for any thread count.
void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& fn);

struct EstimateReport {
  std::string identity_id;
  std::string citation;
  double t = 0.0, T = 1.0;
  std::size_t N = 0;  // partition steps
  std::size_t M = 0;  // path count
  std::uint64_t seed = 0;
  double ms_error = 0.0;          // mean of (lhs - rhs)^2 over paths
  double ci_lo = 0.0, ci_hi = 0.0;  // 95% normal-approximation interval
  double median_sq = 0.0;         // median of the squared differences
  double lhs_mean = 0.0, rhs_mean = 0.0;
  double lhs_second_moment = 0.0, rhs_second_moment = 0.0;
  // Envelope bookkeeping, filled by verify_with_envelope:
  double pilot_ms = -1.0;   // pilot estimate at the reference N (< 0: not run)
  double envelope = -1.0;   // pass threshold (< 0: not evaluated)
  bool pass = true;
  double wall_time_s = 0.0;  // execution detail; never serialized
};

// Shared-noise estimate of E[(lhs - rhs)^2] for one identity. Deterministic in
// (identity, N, M, seed) for any thread count.
EstimateReport verify_identity(const Identity& identity, std::size_t N, std::size_t M,
                               std::uint64_t seed, unsigned threads = 0);

// Envelope rule: a pilot run at N = pilot_N (independent derived seed) fits
// C = pilot_ms * pilot_N, and the identity passes at N when
//   ms_error <= max(envelope_factor * C / N, numerical_zero_floor).
// The floor separates exact discrete regroupings, whose difference is
// floating-point noise, from genuinely decaying differences.
struct EnvelopeRule {
  std::size_t pilot_N = 256;
  double envelope_factor = 10.0;
};

double numerical_zero_floor(const EstimateReport& report);
EstimateReport verify_with_envelope(const Identity& identity, std::size_t N, std::size_t M,
                                    std::uint64_t seed, const EnvelopeRule& rule = {},
                                    unsigned threads = 0);

struct ConvergenceRow {
  std::size_t N = 0;
  double ms_error = 0.0;
  double ci_lo = 0.0, ci_hi = 0.0;
};

struct ConvergenceReport {
  std::string identity_id;
  std::string citation;
  std::size_t M = 0;
  std::uint64_t seed = 0;
  std::vector<ConvergenceRow> rows;
  double fitted_slope = 0.0;  // least squares on (log N, log ms)
};

// Runs verify_identity for each N with row seeds derived from the master seed
// and fits the log-log slope. Requires at least 3 strictly increasing N.
ConvergenceReport convergence_sweep(const Identity& identity, const std::vector<std::size_t>& Ns,
                                    std::size_t M, std::uint64_t seed, unsigned threads = 0);

struct CovarianceReport {
  std::string phi1, phi2;
  int i1 = 1, i2 = 1;
  double t = 0.0, T = 1.0;
  std::size_t N = 0, M = 0;
  std::uint64_t seed = 0;
  double mc_estimate = 0.0;
  double ci_lo = 0.0, ci_hi = 0.0;
  double quadrature = 0.0;  // deterministic target; 0 when i1 != i2
  bool pass = true;         // |mc - target| within 4 standard errors
  double wall_time_s = 0.0;
};

// Product-moment experiment: I is the reversed-order kernel integral with
// outer component i2 and tail component i1, J the forward one; the mean of
// I*J is compared against the triangle quadrature (or 0 for i1 != i2).
CovarianceReport covariance_experiment(const KernelExpr& phi1, const KernelExpr& phi2, int i1,
                                       int i2, double t, double T, std::size_t N, std::size_t M,
                                       std::uint64_t seed, unsigned threads = 0,
                                       std::size_t quad_nodes = 2049);

}  // namespace sc
