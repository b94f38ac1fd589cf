#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace sc {

// Time grid t = tau_0 < tau_1 < ... < tau_N = T on which every path and
// every prelimit sum in this library lives.
class Partition {
 public:
  Partition(double t, double T, std::vector<double> times)
      : t_(t), T_(T), times_(std::move(times)) {
    if (!(t < T)) throw std::invalid_argument("Partition: requires t < T");
    if (times_.size() < 2) throw std::invalid_argument("Partition: needs at least 2 points");
    if (times_.front() != t || times_.back() != T)
      throw std::invalid_argument("Partition: endpoints must equal t and T exactly");
    for (std::size_t j = 0; j + 1 < times_.size(); ++j)
      if (!(times_[j] < times_[j + 1]))
        throw std::invalid_argument("Partition: times must be strictly increasing");
  }

  double t() const { return t_; }
  double T() const { return T_; }
  std::size_t steps() const { return times_.size() - 1; }  // N
  const std::vector<double>& times() const { return times_; }
  double time(std::size_t j) const { return times_[j]; }
  double dt(std::size_t j) const { return times_[j + 1] - times_[j]; }

  double mesh() const {
    double m = 0.0;
    for (std::size_t j = 0; j + 1 < times_.size(); ++j)
      m = std::max(m, times_[j + 1] - times_[j]);
    return m;
  }

  bool same_grid(const Partition& other) const { return times_ == other.times_; }

 private:
  double t_, T_;
  std::vector<double> times_;
};

// N+1 equally spaced points; mesh = (T-t)/N.
inline Partition make_uniform_partition(double t, double T, std::size_t N) {
  if (!(t < T)) throw std::invalid_argument("make_uniform_partition: requires t < T");
  if (N == 0) throw std::invalid_argument("make_uniform_partition: requires N >= 1");
  std::vector<double> times(N + 1);
  const double h = (T - t) / static_cast<double>(N);
  for (std::size_t j = 0; j <= N; ++j) times[j] = t + static_cast<double>(j) * h;
  times[0] = t;
  times[N] = T;
  return Partition(t, T, std::move(times));
}

}  // namespace sc
