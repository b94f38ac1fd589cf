#include "sc/evaluate.hpp"

#include <span>
#include <stdexcept>
#include <string>

#include "sc/kahan.hpp"

namespace sc {

namespace {

void check_interval(double t, double T, const PathSet& path, const char* who) {
  if (t != path.partition().t() || T != path.partition().T())
    throw std::invalid_argument(std::string(who) + ": spec interval does not match path partition");
}

// Flat view of one driver's increments; keeps variant dispatch out of the loops.
class DriverView {
 public:
  DriverView(const DriverKind& driver, const PathSet& path) : part_(&path.partition()) {
    struct Visitor {
      const PathSet& p;
      const std::vector<double>* operator()(const TimeDriver&) const { return nullptr; }
      const std::vector<double>* operator()(const WienerDriver& w) const {
        return &p.wiener_increments(w.component);
      }
      const std::vector<double>* operator()(const MartingaleDriver& m) const {
        return &p.martingale_increments(m.id);
      }
    };
    row_ = std::visit(Visitor{path}, driver);
  }

  double inc(std::size_t j) const { return row_ ? (*row_)[j] : part_->dt(j); }

 private:
  const Partition* part_;
  const std::vector<double>* row_ = nullptr;
};

// phi(tau_j) for j = 0..N-1 (integrands are only ever read at left endpoints).
std::vector<double> integrand_values(const IntegrandKind& phi, const PathSet& path, double t,
                                     double T) {
  const std::size_t N = path.partition().steps();
  std::vector<double> out(N);
  struct Visitor {
    const PathSet& p;
    double t, T;
    std::vector<double>& out;
    void operator()(const OneIntegrand&) const {
      for (auto& v : out) v = 1.0;
    }
    void operator()(const WienerValueIntegrand& w) const {
      const auto& cum = p.wiener_cumulative(w.component);
      for (std::size_t j = 0; j < out.size(); ++j) out[j] = cum[j];
    }
    void operator()(const WienerIncrementIntegrand& w) const {
      const auto& cum = p.wiener_cumulative(w.component);  // pinned at 0, so f_s - f_t = cum
      for (std::size_t j = 0; j < out.size(); ++j) out[j] = cum[j];
    }
    void operator()(const WeightedPathIntegrand& w) const {
      const auto& cum = p.wiener_cumulative(w.component);
      for (std::size_t j = 0; j < out.size(); ++j)
        out[j] = w.weight.eval(p.partition().time(j), t, T) * cum[j];
    }
    void operator()(const DeterministicIntegrand& w) const {
      for (std::size_t j = 0; j < out.size(); ++j)
        out[j] = w.weight.eval(p.partition().time(j), t, T);
    }
  };
  std::visit(Visitor{path, t, T, out}, phi);
  return out;
}

std::vector<double> weight_values(const WeightExpr& w, const PathSet& path, double t, double T) {
  const std::size_t N = path.partition().steps();
  std::vector<double> out(N);
  for (std::size_t j = 0; j < N; ++j) out[j] = w.eval(path.partition().time(j), t, T);
  return out;
}

}  // namespace

TailAccumulator build_tail_accumulator(const std::vector<WeightExpr>& weights,
                                       const std::vector<DriverKind>& drivers,
                                       const PathSet& path, double t, double T) {
  if (weights.size() != drivers.size())
    throw std::invalid_argument("build_tail_accumulator: weights/drivers must pair up");
  const std::size_t N = path.partition().steps();
  TailAccumulator acc;
  acc.level = 0;
  acc.values.assign(N + 1, 1.0);
  std::vector<double> next(N + 1);
  for (std::size_t r = 0; r < weights.size(); ++r) {
    const DriverView dw(drivers[r], path);
    const auto wv = weight_values(weights[r], path, t, T);
    next[N] = 0.0;
    KahanSum suffix;
    for (std::size_t l = N; l-- > 0;) {
      suffix.add(wv[l] * dw.inc(l) * acc.values[l + 1]);
      next[l] = suffix.value();
    }
    acc.values.swap(next);
    acc.level = r + 1;
  }
  return acc;
}

double eval_forward(const IntegralSpec& spec, const PathSet& path) {
  spec.validate();
  check_interval(spec.t, spec.T, path, "eval_forward");
  if (spec.orientation != Orientation::Forward)
    throw std::invalid_argument("eval_forward: spec is not Forward");
  const std::size_t N = path.partition().steps();
  const std::size_t k = spec.depth();

  // innermost layer: prefix sums of phi dw^(k+1)
  std::vector<double> cur(N + 1);
  {
    const auto phi = integrand_values(spec.integrand, path, spec.t, spec.T);
    const DriverView dw(spec.drivers[k], path);
    KahanSum prefix;
    cur[0] = 0.0;
    for (std::size_t j = 0; j < N; ++j) {
      prefix.add(phi[j] * dw.inc(j));
      cur[j + 1] = prefix.value();
    }
  }
  // outer layers, innermost weight first
  std::vector<double> next(N + 1);
  for (std::size_t r = k; r-- > 0;) {
    const DriverView dw(spec.drivers[r], path);
    const auto wv = weight_values(spec.weights[r], path, spec.t, spec.T);
    KahanSum prefix;
    next[0] = 0.0;
    for (std::size_t j = 0; j < N; ++j) {
      prefix.add(wv[j] * cur[j] * dw.inc(j));
      next[j + 1] = prefix.value();
    }
    cur.swap(next);
  }
  return cur[N];
}

double eval_reversed(const IntegralSpec& spec, const PathSet& path) {
  spec.validate();
  check_interval(spec.t, spec.T, path, "eval_reversed");
  if (spec.orientation != Orientation::Reversed)
    throw std::invalid_argument("eval_reversed: spec is not Reversed");
  const std::size_t N = path.partition().steps();
  const std::size_t k = spec.depth();

  const auto tails = build_tail_accumulator(
      spec.weights, {spec.drivers.begin(), spec.drivers.end() - 1}, path, spec.t, spec.T);
  const auto phi = integrand_values(spec.integrand, path, spec.t, spec.T);
  const DriverView dw(spec.drivers[k], path);
  KahanSum acc;
  for (std::size_t l = 0; l < N; ++l) acc.add(phi[l] * dw.inc(l) * tails.values[l + 1]);
  return acc.value();
}

double eval_spec(const IntegralSpec& spec, const PathSet& path) {
  return spec.orientation == Orientation::Forward ? eval_forward(spec, path)
                                                  : eval_reversed(spec, path);
}

double eval_combined(const IntegrandKind& phi, const PostFactor& theta, const DriverKind& driver,
                     const PathSet& path, double t, double T) {
  check_interval(t, T, path, "eval_combined");
  const std::size_t N = path.partition().steps();
  const auto pv = integrand_values(phi, path, t, T);
  const DriverView dw(driver, path);
  KahanSum acc;
  if (const auto* tail = std::get_if<const TailAccumulator*>(&theta)) {
    if ((*tail)->values.size() != N + 1)
      throw std::invalid_argument("eval_combined: tail accumulator grid mismatch");
    for (std::size_t j = 0; j < N; ++j) acc.add(pv[j] * dw.inc(j) * (*tail)->values[j + 1]);
  } else {
    const auto& w = std::get<WeightExpr>(theta);
    for (std::size_t j = 0; j < N; ++j)
      acc.add(pv[j] * dw.inc(j) * w.eval(path.partition().time(j + 1), t, T));
  }
  return acc.value();
}

double eval_combined_spec(const CombinedSpec& spec, const PathSet& path) {
  spec.validate();
  check_interval(spec.t, spec.T, path, "eval_combined_spec");
  const std::size_t N = path.partition().steps();
  const auto tails =
      build_tail_accumulator(spec.tail_weights, spec.tail_drivers, path, spec.t, spec.T);
  const auto pv = integrand_values(spec.phi, path, spec.t, spec.T);
  const DriverView dw(spec.driver, path);
  KahanSum acc;
  if (spec.h_at == HPlacement::Integrand) {
    for (std::size_t j = 0; j < N; ++j) {
      const double h = spec.h.eval(path.partition().time(j), spec.t, spec.T);
      acc.add(pv[j] * h * dw.inc(j) * tails.values[j + 1]);
    }
  } else {
    for (std::size_t j = 0; j < N; ++j) {
      const double h = spec.h.eval(path.partition().time(j + 1), spec.t, spec.T);
      acc.add(pv[j] * dw.inc(j) * h * tails.values[j + 1]);
    }
  }
  return acc.value();
}

// ----------------------------------------------------------------------------
// Kernel-weighted integrals
// ----------------------------------------------------------------------------

namespace {

// Separable (and constant) kernels reduce to the weight-chain machinery.
IntegralSpec separable_to_spec(const KernelIntegralSpec& spec, Orientation orientation) {
  std::vector<WeightExpr> factors;
  if (const auto* c = std::get_if<KernelExpr::Const>(&spec.kernel.node())) {
    factors.assign(static_cast<std::size_t>(spec.kernel.arity()), WeightExpr::one());
    factors[0] = WeightExpr::constant(c->value);
  } else {
    factors = std::get<KernelExpr::Separable>(spec.kernel.node()).factors;
  }
  IntegrandKind integrand;
  std::vector<WeightExpr> weights;
  if (spec.xi.has_value()) {
    integrand = *spec.xi;
    weights = std::move(factors);
  } else {
    integrand = DeterministicIntegrand{factors.back()};
    weights.assign(factors.begin(), factors.end() - 1);
  }
  return IntegralSpec{std::move(integrand), std::move(weights), spec.drivers, orientation,
                      spec.t, spec.T};
}

// Kernel values on grid points, callable with index tuples (outermost first).
struct KernelAtGrid {
  const KernelExpr& kernel;
  const Partition& part;
  double t, T;
  double operator()(std::span<const std::size_t> idx) const {
    double args[3];
    for (std::size_t r = 0; r < idx.size(); ++r) args[r] = part.time(idx[r]);
    return kernel.eval({args, idx.size()}, t, T);
  }
};

// Direct summation over strictly decreasing index tuples; supports up to three
// layers and is the reference path for non-separable kernels.
double kernel_direct(const KernelIntegralSpec& spec, const PathSet& path) {
  const std::size_t layers = spec.drivers.size();
  if (layers > 3)
    throw std::invalid_argument("eval_kernel: non-separable kernels support at most 3 layers");
  const std::size_t N = path.partition().steps();
  const std::size_t arity = static_cast<std::size_t>(spec.kernel.arity());
  const KernelAtGrid phi{spec.kernel, path.partition(), spec.t, spec.T};

  std::vector<double> xi;
  if (spec.xi.has_value()) xi = integrand_values(*spec.xi, path, spec.t, spec.T);
  std::vector<DriverView> dw;
  dw.reserve(layers);
  for (const auto& d : spec.drivers) dw.emplace_back(d, path);

  const auto summand = [&](std::span<const std::size_t> idx) {
    double v = phi(idx.subspan(0, arity));
    if (!xi.empty()) v *= xi[idx[layers - 1]];
    for (std::size_t r = 0; r < layers; ++r) v *= dw[r].inc(idx[r]);
    return v;
  };

  KahanSum acc;
  std::size_t idx[3];
  if (layers == 1) {
    for (std::size_t j1 = 0; j1 < N; ++j1) {
      idx[0] = j1;
      acc.add(summand({idx, 1}));
    }
  } else if (layers == 2) {
    for (std::size_t j1 = 1; j1 < N; ++j1)
      for (std::size_t j2 = 0; j2 < j1; ++j2) {
        idx[0] = j1;
        idx[1] = j2;
        acc.add(summand({idx, 2}));
      }
  } else {
    for (std::size_t j1 = 2; j1 < N; ++j1)
      for (std::size_t j2 = 1; j2 < j1; ++j2)
        for (std::size_t j3 = 0; j3 < j2; ++j3) {
          idx[0] = j1;
          idx[1] = j2;
          idx[2] = j3;
          acc.add(summand({idx, 3}));
        }
  }
  return acc.value();
}

bool is_bivariate_diffpow(const KernelIntegralSpec& spec) {
  return spec.kernel.arity() == 2 &&
         std::holds_alternative<KernelExpr::DiffPow>(spec.kernel.node());
}

// O(N^2) paths for two-argument difference kernels. The inner loops use plain
// accumulation (N <= a few thousand terms); compensation stays on the outer sums.
double diffpow2_forward(const KernelIntegralSpec& spec, const PathSet& path) {
  const std::size_t N = path.partition().steps();
  const KernelAtGrid phi{spec.kernel, path.partition(), spec.t, spec.T};
  const DriverView dw1(spec.drivers[0], path);
  const DriverView dw2(spec.drivers[1], path);

  std::vector<double> prefix;  // xi-form only: prefix of xi dw3 at tau_j
  if (spec.xi.has_value()) {
    const auto xi = integrand_values(*spec.xi, path, spec.t, spec.T);
    const DriverView dw3(spec.drivers[2], path);
    prefix.assign(N + 1, 0.0);
    KahanSum p;
    for (std::size_t j = 0; j < N; ++j) {
      p.add(xi[j] * dw3.inc(j));
      prefix[j + 1] = p.value();
    }
  }

  KahanSum acc;
  std::size_t idx[2];
  for (std::size_t j1 = 1; j1 < N; ++j1) {
    double inner = 0.0;
    for (std::size_t j2 = 0; j2 < j1; ++j2) {
      idx[0] = j1;
      idx[1] = j2;
      double v = phi({idx, 2}) * dw2.inc(j2);
      if (!prefix.empty()) v *= prefix[j2];
      inner += v;
    }
    acc.add(dw1.inc(j1) * inner);
  }
  return acc.value();
}

double diffpow2_reversed(const KernelIntegralSpec& spec, const PathSet& path) {
  const std::size_t N = path.partition().steps();
  const KernelAtGrid phi{spec.kernel, path.partition(), spec.t, spec.T};
  const DriverView dw1(spec.drivers[0], path);
  const DriverView dw2(spec.drivers[1], path);

  // inner(m) = sum_{l > m} Phi(tau_l, tau_m) dw1_l
  std::vector<double> inner(N, 0.0);
  std::size_t idx[2];
  for (std::size_t m = 0; m < N; ++m) {
    double s = 0.0;
    for (std::size_t l = m + 1; l < N; ++l) {
      idx[0] = l;
      idx[1] = m;
      s += phi({idx, 2}) * dw1.inc(l);
    }
    inner[m] = s;
  }
  // tail[s] = sum_{m >= s} dw2_m inner(m)
  std::vector<double> tail(N + 1, 0.0);
  {
    KahanSum s;
    for (std::size_t m = N; m-- > 0;) {
      s.add(dw2.inc(m) * inner[m]);
      tail[m] = s.value();
    }
  }
  if (!spec.xi.has_value()) return tail[0];
  const auto xi = integrand_values(*spec.xi, path, spec.t, spec.T);
  const DriverView dw3(spec.drivers[2], path);
  KahanSum acc;
  for (std::size_t l = 0; l < N; ++l) acc.add(xi[l] * dw3.inc(l) * tail[l + 1]);
  return acc.value();
}

}  // namespace

double eval_kernel_forward(const KernelIntegralSpec& spec, const PathSet& path) {
  spec.validate();
  check_interval(spec.t, spec.T, path, "eval_kernel_forward");
  if (!std::holds_alternative<KernelExpr::DiffPow>(spec.kernel.node()))
    return eval_forward(separable_to_spec(spec, Orientation::Forward), path);
  if (is_bivariate_diffpow(spec)) return diffpow2_forward(spec, path);
  return kernel_direct(spec, path);
}

double eval_kernel_reversed(const KernelIntegralSpec& spec, const PathSet& path) {
  spec.validate();
  check_interval(spec.t, spec.T, path, "eval_kernel_reversed");
  if (!std::holds_alternative<KernelExpr::DiffPow>(spec.kernel.node()))
    return eval_reversed(separable_to_spec(spec, Orientation::Reversed), path);
  if (is_bivariate_diffpow(spec)) return diffpow2_reversed(spec, path);
  // Direct summation covers the same tuples; ordering differences are
  // floating-point only.
  return kernel_direct(spec, path);
}

double eval_kernel_spec(const KernelIntegralSpec& spec, const PathSet& path) {
  return spec.orientation == Orientation::Forward ? eval_kernel_forward(spec, path)
                                                  : eval_kernel_reversed(spec, path);
}

}  // namespace sc
