#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "sc/kernel_expr.hpp"
#include "sc/weight_expr.hpp"

namespace sc {

// ----------------------------------------------------------------------------
// Drivers
// ----------------------------------------------------------------------------

struct TimeDriver {};
struct WienerDriver {
  int component;  // 1-based component index within the path set's dimension
};
struct MartingaleDriver {
  int id;  // 0-based index into the registered martingale models
};

using DriverKind = std::variant<TimeDriver, WienerDriver, MartingaleDriver>;

inline DriverKind time_driver() { return TimeDriver{}; }
inline DriverKind wiener_driver(int component = 1) { return WienerDriver{component}; }
inline DriverKind martingale_driver(int id = 0) { return MartingaleDriver{id}; }

std::string driver_label(const DriverKind& d);

// ----------------------------------------------------------------------------
// Integrands (the innermost process phi; every variant is mean-square
// continuous on [t, T] by construction)
// ----------------------------------------------------------------------------

struct OneIntegrand {};
// phi_s = f_s^{(i)}; paths are pinned to 0 at t, so this equals the increment.
struct WienerValueIntegrand {
  int component;
};
// phi_s = f_s^{(i)} - f_t^{(i)}
struct WienerIncrementIntegrand {
  int component;
};
// phi_s = w(s) * f_s^{(i)}
struct WeightedPathIntegrand {
  WeightExpr weight;
  int component;
};
// phi_s = w(s)
struct DeterministicIntegrand {
  WeightExpr weight;
};

using IntegrandKind = std::variant<OneIntegrand, WienerValueIntegrand, WienerIncrementIntegrand,
                                   WeightedPathIntegrand, DeterministicIntegrand>;

std::string integrand_label(const IntegrandKind& phi);

// ----------------------------------------------------------------------------
// Iterated integral specification
// ----------------------------------------------------------------------------

enum class Orientation { Forward, Reversed };

// Declarative description of one iterated integral
//
//   J = I_1[ w_1, psi_1( I_2[ w_2, psi_2( ... I_{k+1}[ w_{k+1}, phi ] ) ] ) ]
//
// Storage order is outermost-first: weights[0] = psi_1 and drivers[0] = w^(1)
// belong to the outermost layer; drivers[k] = w^(k+1) is the innermost driver
// integrating phi. k = 0 means a plain integral of phi.
struct IntegralSpec {
  IntegrandKind integrand;
  std::vector<WeightExpr> weights;   // psi_1 ... psi_k, outermost first
  std::vector<DriverKind> drivers;   // w^(1) ... w^(k+1), outermost first
  Orientation orientation = Orientation::Forward;
  double t = 0.0;
  double T = 1.0;

  std::size_t depth() const { return weights.size(); }  // k
  void validate() const;
  std::string describe() const;
};

IntegralSpec make_spec(IntegrandKind integrand, std::vector<WeightExpr> weights,
                       std::vector<DriverKind> drivers, double t, double T,
                       Orientation orientation = Orientation::Forward);

// ----------------------------------------------------------------------------
// Kernel-weighted integral specification (simplex kernel Phi across layers)
// ----------------------------------------------------------------------------

// With xi set and drivers (w^(i_1) ... w^(i_k)), outermost first:
//     J = int_t^T ... int Phi(s_1,...,s_{k-1}) xi_{s_k} dw^(i_k) ... dw^(i_1),
// kernel arity k-1 (xi sits below all kernel arguments). Without xi the kernel
// spans every layer and has arity k.
struct KernelIntegralSpec {
  KernelExpr kernel;
  std::optional<IntegrandKind> xi;
  std::vector<DriverKind> drivers;
  Orientation orientation = Orientation::Forward;
  double t = 0.0;
  double T = 1.0;

  void validate() const;
  std::string describe() const;
};

// ----------------------------------------------------------------------------
// Combined integral specification (right-endpoint post-factor form)
// ----------------------------------------------------------------------------

// One layer of the combined integral with an attached scalar function h and a
// reversed-order tail built from (tail_weights, tail_drivers):
//
//   HPlacement::Integrand:  sum_j phi_j h(tau_j)   dw_j * tail(tau_{j+1})
//   HPlacement::PostFactor: sum_j phi_j dw_j * h(tau_{j+1}) * tail(tau_{j+1})
//
// The two placements agree in the mean-square limit; verifying that is the
// point of carrying both.
enum class HPlacement { Integrand, PostFactor };

struct CombinedSpec {
  IntegrandKind phi;
  WeightExpr h;
  HPlacement h_at = HPlacement::Integrand;
  DriverKind driver;
  std::vector<WeightExpr> tail_weights;
  std::vector<DriverKind> tail_drivers;
  double t = 0.0;
  double T = 1.0;

  void validate() const;
  std::string describe() const;
};

// ----------------------------------------------------------------------------
// Multi-indices (l_1 ... l_k), l_i in {0, 1}
// ----------------------------------------------------------------------------

// Bit order follows the closed-form catalog: l_1 tags the innermost layer,
// l_k the outermost. l_i = 1 means that layer integrates the Wiener component,
// l_i = 0 means it integrates time.
class MultiIndex {
 public:
  explicit MultiIndex(std::vector<int> bits);
  const std::vector<int>& bits() const { return bits_; }
  std::size_t length() const { return bits_.size(); }
  std::size_t ones_count() const;
  std::string to_string() const;  // e.g. "(110)"

 private:
  std::vector<int> bits_;
};

// Forward spec of the plain multi-index integral on [t, T]: integrand One,
// unit weights, drivers mapped 1 -> Wiener(1), 0 -> Time. Because storage is
// outermost-first while bits are innermost-first, the bit list is reversed
// exactly here and nowhere else.
IntegralSpec spec_from_multiindex(const MultiIndex& mi, double t, double T);

}  // namespace sc
