#include "sc/spec.hpp"

#include <sstream>
#include <stdexcept>

namespace sc {

std::string driver_label(const DriverKind& d) {
  struct Visitor {
    std::string operator()(const TimeDriver&) const { return "ds"; }
    std::string operator()(const WienerDriver& w) const {
      return "df" + std::to_string(w.component);
    }
    std::string operator()(const MartingaleDriver& m) const {
      return "dM" + std::to_string(m.id);
    }
  };
  return std::visit(Visitor{}, d);
}

std::string integrand_label(const IntegrandKind& phi) {
  struct Visitor {
    std::string operator()(const OneIntegrand&) const { return "1"; }
    std::string operator()(const WienerValueIntegrand& v) const {
      return "f" + std::to_string(v.component) + "(s)";
    }
    std::string operator()(const WienerIncrementIntegrand& v) const {
      return "(f" + std::to_string(v.component) + "(s)-f" + std::to_string(v.component) + "(t))";
    }
    std::string operator()(const WeightedPathIntegrand& v) const {
      return v.weight.to_string() + "*f" + std::to_string(v.component) + "(s)";
    }
    std::string operator()(const DeterministicIntegrand& v) const { return v.weight.to_string(); }
  };
  return std::visit(Visitor{}, phi);
}

void IntegralSpec::validate() const {
  if (drivers.size() != weights.size() + 1)
    throw std::invalid_argument("IntegralSpec: drivers must be one longer than weights");
  if (!(t < T)) throw std::invalid_argument("IntegralSpec: requires t < T");
}

std::string IntegralSpec::describe() const {
  std::ostringstream os;
  os << (orientation == Orientation::Forward ? "J[" : "Jhat[");
  os << integrand_label(integrand);
  for (std::size_t r = 0; r < weights.size(); ++r) {
    os << "; " << weights[r].to_string() << " " << driver_label(drivers[r]);
  }
  os << "; inner " << driver_label(drivers.back()) << "]";
  return os.str();
}

IntegralSpec make_spec(IntegrandKind integrand, std::vector<WeightExpr> weights,
                       std::vector<DriverKind> drivers, double t, double T,
                       Orientation orientation) {
  IntegralSpec s{std::move(integrand), std::move(weights), std::move(drivers), orientation, t, T};
  s.validate();
  return s;
}

void KernelIntegralSpec::validate() const {
  if (!(t < T)) throw std::invalid_argument("KernelIntegralSpec: requires t < T");
  const std::size_t k = drivers.size();
  if (xi.has_value()) {
    if (k < 2) throw std::invalid_argument("KernelIntegralSpec: xi form needs at least 2 layers");
    if (kernel.arity() != static_cast<int>(k) - 1)
      throw std::invalid_argument("KernelIntegralSpec: kernel arity must be drivers-1 when xi is present");
  } else {
    if (k < 1) throw std::invalid_argument("KernelIntegralSpec: needs at least 1 layer");
    if (kernel.arity() != static_cast<int>(k))
      throw std::invalid_argument("KernelIntegralSpec: kernel arity must equal driver count");
  }
}

std::string KernelIntegralSpec::describe() const {
  std::ostringstream os;
  os << (orientation == Orientation::Forward ? "Jk[" : "Jkhat[");
  os << kernel.to_string();
  if (xi) os << "; xi=" << integrand_label(*xi);
  os << ";";
  for (const auto& d : drivers) os << " " << driver_label(d);
  os << "]";
  return os.str();
}

void CombinedSpec::validate() const {
  if (!(t < T)) throw std::invalid_argument("CombinedSpec: requires t < T");
  if (tail_weights.size() != tail_drivers.size())
    throw std::invalid_argument("CombinedSpec: tail weights and drivers must pair up");
}

std::string CombinedSpec::describe() const {
  std::ostringstream os;
  os << "C[" << integrand_label(phi);
  if (h_at == HPlacement::Integrand) os << "*" << h.to_string() << " " << driver_label(driver);
  else os << " " << driver_label(driver) << " " << h.to_string() << "(right)";
  for (std::size_t r = 0; r < tail_weights.size(); ++r)
    os << "; tail " << tail_weights[r].to_string() << " " << driver_label(tail_drivers[r]);
  os << "]";
  return os.str();
}

MultiIndex::MultiIndex(std::vector<int> bits) : bits_(std::move(bits)) {
  if (bits_.empty()) throw std::invalid_argument("MultiIndex: must be nonempty");
  for (int b : bits_)
    if (b != 0 && b != 1) throw std::invalid_argument("MultiIndex: entries must be 0 or 1");
}

std::size_t MultiIndex::ones_count() const {
  std::size_t n = 0;
  for (int b : bits_) n += static_cast<std::size_t>(b);
  return n;
}

std::string MultiIndex::to_string() const {
  std::string s = "(";
  for (int b : bits_) s += static_cast<char>('0' + b);
  s += ")";
  return s;
}

IntegralSpec spec_from_multiindex(const MultiIndex& mi, double t, double T) {
  const auto& bits = mi.bits();
  const std::size_t k = bits.size();
  std::vector<DriverKind> drivers(k);
  for (std::size_t i = 0; i < k; ++i) {
    // bits are innermost-first, storage is outermost-first
    const int bit = bits[k - 1 - i];
    drivers[i] = bit == 1 ? wiener_driver(1) : time_driver();
  }
  std::vector<WeightExpr> weights(k - 1, WeightExpr::one());
  return make_spec(OneIntegrand{}, std::move(weights), std::move(drivers), t, T);
}

}  // namespace sc
