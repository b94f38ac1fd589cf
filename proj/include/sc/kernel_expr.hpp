#pragma once

#include <span>
#include <string>
#include <variant>
#include <vector>

#include "sc/weight_expr.hpp"

namespace sc {

// Continuous nonrandom function Phi(s_1,...,s_r) on the closed simplex
// T >= s_1 >= s_2 >= ... >= s_r >= t. Arguments are listed in integration
// order, outermost variable first, matching driver storage everywhere else.
class KernelExpr {
 public:
  struct Const {
    double value;
  };
  // Phi = w_1(s_1) * ... * w_r(s_r), one factor per argument.
  struct Separable {
    std::vector<WeightExpr> factors;
  };
  // Phi = (s_i - s_j)^alpha with i > j, so the base is <= 0 on the simplex;
  // alpha must be a nonnegative integer.
  struct DiffPow {
    int i;
    int j;
    double alpha;
  };

  using Node = std::variant<Const, Separable, DiffPow>;

  static KernelExpr constant(int arity, double value);
  static KernelExpr separable(std::vector<WeightExpr> factors);
  static KernelExpr diff_pow(int arity, int i, int j, double alpha);

  int arity() const { return arity_; }
  double eval(std::span<const double> args, double t, double T) const;
  std::string to_string() const;
  const Node& node() const { return node_; }

  // Bivariate kernels only: Phi'(a, b) = Phi(b, a).
  KernelExpr swap_args() const;

 private:
  KernelExpr(int arity, Node node) : arity_(arity), node_(std::move(node)) {}
  int arity_;
  Node node_;
};

}  // namespace sc
