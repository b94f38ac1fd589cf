#pragma once

#include "sc/kernel_expr.hpp"

namespace sc {

// Deterministic oracle for the product-moment formula: iterated trapezoid
// approximation of
//
//   int_t^T int_t^{s2} phi1(s2, s1) phi2(s1, s2) ds1 ds2
//
// over the triangle t <= s1 <= s2 <= T. Both kernels are bivariate; phi1 is
// read with swapped arguments exactly as the covariance formula requires.
// Refining `nodes` twice changes the result by O(nodes^-2).
double simplex_quadrature(const KernelExpr& phi1, const KernelExpr& phi2, double t, double T,
                          std::size_t nodes);

}  // namespace sc
