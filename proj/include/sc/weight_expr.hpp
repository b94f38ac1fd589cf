#pragma once

#include <memory>
#include <string>
#include <utility>
#include <variant>
#include <vector>

namespace sc {

// Which interval endpoint a shifted expression is anchored to.
enum class Anchor { Start, End };

// Closed-form continuous nonrandom function on [t, T]. Values are built from
// a fixed constructor set so that continuity is guaranteed and reports can
// print exactly what was integrated. Evaluation is pure: same (tau, t, T)
// gives the same double, bit for bit.
class WeightExpr {
 public:
  struct Const {
    double value;
  };
  // (tau - anchor)^alpha. alpha >= 0; non-integer alpha only with Anchor::Start
  // (the base is negative on [t,T) when anchored at T).
  struct PowShift {
    double alpha;
    Anchor anchor;
  };
  // exp(alpha * (tau - anchor))
  struct ExpShift {
    double alpha;
    Anchor anchor;
  };
  struct SinShift {
    Anchor anchor;
  };
  struct CosShift {
    Anchor anchor;
  };
  struct Product {
    std::vector<WeightExpr> factors;
  };
  struct Sum {
    std::vector<std::pair<double, WeightExpr>> terms;  // coefficient * expr
  };

  using Node = std::variant<Const, PowShift, ExpShift, SinShift, CosShift, Product, Sum>;

  static WeightExpr one() { return constant(1.0); }
  static WeightExpr constant(double c) { return WeightExpr(Const{c}); }
  static WeightExpr pow_shift(double alpha, Anchor anchor);
  static WeightExpr exp_shift(double alpha, Anchor anchor) {
    return WeightExpr(ExpShift{alpha, anchor});
  }
  static WeightExpr sin_shift(Anchor anchor) { return WeightExpr(SinShift{anchor}); }
  static WeightExpr cos_shift(Anchor anchor) { return WeightExpr(CosShift{anchor}); }
  static WeightExpr product(std::vector<WeightExpr> factors) {
    return WeightExpr(Product{std::move(factors)});
  }
  static WeightExpr sum(std::vector<std::pair<double, WeightExpr>> terms) {
    return WeightExpr(Sum{std::move(terms)});
  }
  // c * expr
  static WeightExpr scaled(double c, WeightExpr expr) {
    return sum({{c, std::move(expr)}});
  }

  double eval(double tau, double t, double T) const;
  std::string to_string() const;

  const Node& node() const { return *node_; }
  bool is_const_one() const;

 private:
  explicit WeightExpr(Node n) : node_(std::make_shared<Node>(std::move(n))) {}
  std::shared_ptr<const Node> node_;
};

}  // namespace sc
