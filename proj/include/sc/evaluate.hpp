#pragma once

#include <variant>
#include <vector>

#include "sc/path_set.hpp"
#include "sc/spec.hpp"

namespace sc {

// Suffix values of the reversed-order tail integrals on the grid:
// values[l] approximates the tail built from the first `level` weight/driver
// pairs over [tau_l, T]. Level 0 is identically 1 (empty tail); for level >= 1
// the value at l = N is 0 (empty interval).
struct TailAccumulator {
  std::size_t level = 0;
  std::vector<double> values;
};

// Tail over all of (weights, drivers); weights and drivers are outermost-first
// as in IntegralSpec, so the suffix recursion starts at weights[0].
TailAccumulator build_tail_accumulator(const std::vector<WeightExpr>& weights,
                                       const std::vector<DriverKind>& drivers,
                                       const PathSet& path, double t, double T);

// Nested left-point prelimit sum of the forward iterated integral, computed
// by prefix accumulation in O(k N).
double eval_forward(const IntegralSpec& spec, const PathSet& path);

// Reversed-order evaluation via the right-endpoint tail recursion, O(k N).
double eval_reversed(const IntegralSpec& spec, const PathSet& path);

// Dispatch on spec.orientation.
double eval_spec(const IntegralSpec& spec, const PathSet& path);

// Combined integral: sum_j phi(tau_j) * dw_j * theta(tau_{j+1}); the
// post-factor theta is read at the right endpoint, either from a tail
// accumulator or from a scalar function.
using PostFactor = std::variant<const TailAccumulator*, WeightExpr>;
double eval_combined(const IntegrandKind& phi, const PostFactor& theta, const DriverKind& driver,
                     const PathSet& path, double t, double T);

// Combined layer with the h function on either side of the differential.
double eval_combined_spec(const CombinedSpec& spec, const PathSet& path);

// Kernel-weighted iterated integrals. Separable kernels run in O(k N);
// two-argument difference kernels in O(N^2); anything else falls back to
// direct summation for up to 3 layers and is rejected beyond that.
double eval_kernel_forward(const KernelIntegralSpec& spec, const PathSet& path);
double eval_kernel_reversed(const KernelIntegralSpec& spec, const PathSet& path);
double eval_kernel_spec(const KernelIntegralSpec& spec, const PathSet& path);

}  // namespace sc
