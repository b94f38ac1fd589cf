#include "sc/weight_expr.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace sc {

namespace {

bool is_integer(double x) { return x == std::floor(x); }

double anchor_value(Anchor a, double t, double T) { return a == Anchor::Start ? t : T; }

const char* anchor_symbol(Anchor a) { return a == Anchor::Start ? "t" : "T"; }

}  // namespace

WeightExpr WeightExpr::pow_shift(double alpha, Anchor anchor) {
  if (alpha < 0.0)
    throw std::invalid_argument("WeightExpr::pow_shift: negative exponent is singular at its anchor");
  if (anchor == Anchor::End && !is_integer(alpha))
    throw std::invalid_argument("WeightExpr::pow_shift: non-integer exponent needs a nonnegative base; anchor at T gives (tau-T) <= 0");
  return WeightExpr(PowShift{alpha, anchor});
}

double WeightExpr::eval(double tau, double t, double T) const {
  struct Visitor {
    double tau, t, T;
    double operator()(const Const& n) const { return n.value; }
    double operator()(const PowShift& n) const {
      const double base = tau - anchor_value(n.anchor, t, T);
      if (n.alpha == 0.0) return 1.0;
      if (n.alpha == 1.0) return base;
      if (is_integer(n.alpha) && n.alpha <= 8.0) {
        double r = 1.0;
        for (int i = 0; i < static_cast<int>(n.alpha); ++i) r *= base;
        return r;
      }
      return std::pow(base, n.alpha);
    }
    double operator()(const ExpShift& n) const {
      return std::exp(n.alpha * (tau - anchor_value(n.anchor, t, T)));
    }
    double operator()(const SinShift& n) const {
      return std::sin(tau - anchor_value(n.anchor, t, T));
    }
    double operator()(const CosShift& n) const {
      return std::cos(tau - anchor_value(n.anchor, t, T));
    }
    double operator()(const Product& n) const {
      double r = 1.0;
      for (const auto& f : n.factors) r *= f.eval(tau, t, T);
      return r;
    }
    double operator()(const Sum& n) const {
      double r = 0.0;
      for (const auto& [c, e] : n.terms) r += c * e.eval(tau, t, T);
      return r;
    }
  };
  return std::visit(Visitor{tau, t, T}, *node_);
}

bool WeightExpr::is_const_one() const {
  if (const auto* c = std::get_if<Const>(node_.get())) return c->value == 1.0;
  return false;
}

std::string WeightExpr::to_string() const {
  struct Visitor {
    std::string operator()(const Const& n) const {
      std::ostringstream os;
      os << n.value;
      return os.str();
    }
    std::string operator()(const PowShift& n) const {
      std::ostringstream os;
      os << "(s-" << anchor_symbol(n.anchor) << ")";
      if (n.alpha != 1.0) os << "^" << n.alpha;
      return os.str();
    }
    std::string operator()(const ExpShift& n) const {
      std::ostringstream os;
      os << "exp(";
      if (n.alpha != 1.0) os << n.alpha << "*";
      os << "(s-" << anchor_symbol(n.anchor) << "))";
      return os.str();
    }
    std::string operator()(const SinShift& n) const {
      return std::string("sin(s-") + anchor_symbol(n.anchor) + ")";
    }
    std::string operator()(const CosShift& n) const {
      return std::string("cos(s-") + anchor_symbol(n.anchor) + ")";
    }
    std::string operator()(const Product& n) const {
      std::string r;
      for (std::size_t i = 0; i < n.factors.size(); ++i) {
        if (i) r += "*";
        r += n.factors[i].to_string();
      }
      return r.empty() ? "1" : r;
    }
    std::string operator()(const Sum& n) const {
      std::ostringstream os;
      os << "(";
      for (std::size_t i = 0; i < n.terms.size(); ++i) {
        const auto& [c, e] = n.terms[i];
        if (i) os << (c >= 0 ? " + " : " - ");
        else if (c < 0) os << "-";
        const double ac = std::abs(c);
        if (ac != 1.0) os << ac << "*";
        os << e.to_string();
      }
      os << ")";
      return os.str();
    }
  };
  return std::visit(Visitor{}, *node_);
}

}  // namespace sc
