#include "sc/quadrature.hpp"

#include <stdexcept>
#include <vector>

#include "sc/kahan.hpp"

namespace sc {

double simplex_quadrature(const KernelExpr& phi1, const KernelExpr& phi2, double t, double T,
                          std::size_t nodes) {
  if (!(t < T)) throw std::invalid_argument("simplex_quadrature: requires t < T");
  if (nodes < 2) throw std::invalid_argument("simplex_quadrature: requires nodes >= 2");
  if (phi1.arity() != 2 || phi2.arity() != 2)
    throw std::invalid_argument("simplex_quadrature: bivariate kernels required");

  const std::size_t n = nodes - 1;  // intervals
  const double h = (T - t) / static_cast<double>(n);
  std::vector<double> grid(nodes);
  for (std::size_t i = 0; i < nodes; ++i) grid[i] = t + static_cast<double>(i) * h;
  grid[n] = T;

  const auto integrand = [&](double s1, double s2) {
    const double a1[2] = {s2, s1};
    const double a2[2] = {s1, s2};
    return phi1.eval({a1, 2}, t, T) * phi2.eval({a2, 2}, t, T);
  };

  // inner(i) = trapezoid of integrand(s1, grid[i]) for s1 in [t, grid[i]]
  KahanSum outer;
  std::vector<double> inner(nodes, 0.0);
  for (std::size_t i = 1; i < nodes; ++i) {
    const double s2 = grid[i];
    KahanSum acc;
    for (std::size_t j = 0; j < i; ++j) {
      acc.add(0.5 * h * (integrand(grid[j], s2) + integrand(grid[j + 1], s2)));
    }
    inner[i] = acc.value();
  }
  for (std::size_t i = 0; i < n; ++i) outer.add(0.5 * h * (inner[i] + inner[i + 1]));
  return outer.value();
}

}  // namespace sc
