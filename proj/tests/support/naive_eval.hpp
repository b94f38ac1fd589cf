#pragma once

// Brute-force reference evaluators. Deliberately O(N^k): every nested value is
// recomputed by direct summation with no prefix/suffix reuse, so these stay
// independent of the accumulation scheme they are used to check.

#include <cstddef>
#include <vector>

#include "sc/path_set.hpp"
#include "sc/spec.hpp"

namespace sc_test {

inline double naive_integrand_at(const sc::IntegrandKind& phi, const sc::PathSet& path,
                                 std::size_t j, double t, double T) {
  struct Visitor {
    const sc::PathSet& p;
    std::size_t j;
    double t, T;
    double operator()(const sc::OneIntegrand&) const { return 1.0; }
    double operator()(const sc::WienerValueIntegrand& w) const {
      return p.wiener_cumulative(w.component)[j];
    }
    double operator()(const sc::WienerIncrementIntegrand& w) const {
      return p.wiener_cumulative(w.component)[j];
    }
    double operator()(const sc::WeightedPathIntegrand& w) const {
      return w.weight.eval(p.partition().time(j), t, T) * p.wiener_cumulative(w.component)[j];
    }
    double operator()(const sc::DeterministicIntegrand& w) const {
      return w.weight.eval(p.partition().time(j), t, T);
    }
  };
  return std::visit(Visitor{path, j, t, T}, phi);
}

// Value at grid index `upto` of the integral whose outermost layer is `level`
// (level == weights.size() selects the innermost phi layer).
inline double naive_forward_level(const sc::IntegralSpec& spec, const sc::PathSet& path,
                                  std::size_t level, std::size_t upto) {
  double sum = 0.0;
  if (level == spec.weights.size()) {
    for (std::size_t j = 0; j < upto; ++j)
      sum += naive_integrand_at(spec.integrand, path, j, spec.t, spec.T) *
             path.increment(spec.drivers[level], j);
    return sum;
  }
  for (std::size_t j = 0; j < upto; ++j)
    sum += spec.weights[level].eval(path.partition().time(j), spec.t, spec.T) *
           naive_forward_level(spec, path, level + 1, j) * path.increment(spec.drivers[level], j);
  return sum;
}

inline double naive_forward(const sc::IntegralSpec& spec, const sc::PathSet& path) {
  return naive_forward_level(spec, path, 0, path.partition().steps());
}

// Tail value over [tau_from, T] of the reversed chain truncated at `level`
// (level counts how many of the leading weights are still in play).
inline double naive_tail(const sc::IntegralSpec& spec, const sc::PathSet& path, std::size_t level,
                         std::size_t from) {
  if (level == 0) return 1.0;
  const std::size_t N = path.partition().steps();
  double sum = 0.0;
  for (std::size_t l = from; l < N; ++l)
    sum += spec.weights[level - 1].eval(path.partition().time(l), spec.t, spec.T) *
           path.increment(spec.drivers[level - 1], l) * naive_tail(spec, path, level - 1, l + 1);
  return sum;
}

inline double naive_reversed(const sc::IntegralSpec& spec, const sc::PathSet& path) {
  const std::size_t N = path.partition().steps();
  const std::size_t k = spec.weights.size();
  double sum = 0.0;
  for (std::size_t l = 0; l < N; ++l)
    sum += naive_integrand_at(spec.integrand, path, l, spec.t, spec.T) *
           path.increment(spec.drivers[k], l) * naive_tail(spec, path, k, l + 1);
  return sum;
}

}  // namespace sc_test
