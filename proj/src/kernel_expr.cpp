#include "sc/kernel_expr.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace sc {

KernelExpr KernelExpr::constant(int arity, double value) {
  if (arity < 1) throw std::invalid_argument("KernelExpr: arity must be >= 1");
  return KernelExpr(arity, Const{value});
}

KernelExpr KernelExpr::separable(std::vector<WeightExpr> factors) {
  if (factors.empty()) throw std::invalid_argument("KernelExpr: arity must be >= 1");
  const int arity = static_cast<int>(factors.size());
  return KernelExpr(arity, Separable{std::move(factors)});
}

KernelExpr KernelExpr::diff_pow(int arity, int i, int j, double alpha) {
  if (arity < 2) throw std::invalid_argument("KernelExpr::diff_pow: needs arity >= 2");
  if (i <= j) throw std::invalid_argument("KernelExpr::diff_pow: requires i > j");
  if (j < 1 || i > arity) throw std::invalid_argument("KernelExpr::diff_pow: argument index out of range");
  if (alpha < 0.0 || alpha != std::floor(alpha))
    throw std::invalid_argument("KernelExpr::diff_pow: exponent must be a nonnegative integer");
  return KernelExpr(arity, DiffPow{i, j, alpha});
}

double KernelExpr::eval(std::span<const double> args, double t, double T) const {
  if (static_cast<int>(args.size()) != arity_)
    throw std::invalid_argument("KernelExpr::eval: argument count does not match arity");
  struct Visitor {
    std::span<const double> args;
    double t, T;
    double operator()(const Const& n) const { return n.value; }
    double operator()(const Separable& n) const {
      double r = 1.0;
      for (std::size_t i = 0; i < n.factors.size(); ++i) r *= n.factors[i].eval(args[i], t, T);
      return r;
    }
    double operator()(const DiffPow& n) const {
      const double base = args[n.i - 1] - args[n.j - 1];
      double r = 1.0;
      for (int p = 0; p < static_cast<int>(n.alpha); ++p) r *= base;
      return r;
    }
  };
  return std::visit(Visitor{args, t, T}, node_);
}

KernelExpr KernelExpr::swap_args() const {
  if (arity_ != 2) throw std::invalid_argument("KernelExpr::swap_args: bivariate kernels only");
  struct Visitor {
    Node operator()(const Const& n) const { return n; }
    Node operator()(const Separable& n) const {
      return Separable{{n.factors[1], n.factors[0]}};
    }
    Node operator()(const DiffPow&) const {
      // (s_2 - s_1)^alpha swaps to (s_1 - s_2)^alpha, which violates i > j;
      // callers fold the (-1)^alpha sign into a coefficient instead.
      throw std::invalid_argument("KernelExpr::swap_args: cannot swap a DiffPow kernel");
    }
  };
  return KernelExpr(2, std::visit(Visitor{}, node_));
}

std::string KernelExpr::to_string() const {
  struct Visitor {
    std::string operator()(const Const& n) const {
      std::ostringstream os;
      os << n.value;
      return os.str();
    }
    std::string operator()(const Separable& n) const {
      std::string r;
      for (std::size_t i = 0; i < n.factors.size(); ++i) {
        if (i) r += "*";
        std::ostringstream os;
        os << n.factors[i].to_string() << "[s" << (i + 1) << "]";
        r += os.str();
      }
      return r;
    }
    std::string operator()(const DiffPow& n) const {
      std::ostringstream os;
      os << "(s" << n.i << "-s" << n.j << ")";
      if (n.alpha != 1.0) os << "^" << n.alpha;
      return os.str();
    }
  };
  return std::visit(Visitor{}, node_);
}

}  // namespace sc
