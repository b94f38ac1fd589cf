#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <variant>
#include <vector>

#include "sc/partition.hpp"
#include "sc/rng.hpp"
#include "sc/spec.hpp"

namespace sc {

// ----------------------------------------------------------------------------
// Martingale models. Both variants have constant quadratic-variation density
// rho, hence bounded rho as the martingale theorems require.
// ----------------------------------------------------------------------------

// M_s = sigma * f_s for an auxiliary Wiener process; rho = sigma^2.
struct ScaledWiener {
  double sigma = 1.0;
};
// M_s = N_s - lambda * s for a Poisson process N of rate lambda; rho = lambda.
struct CompensatedPoisson {
  double lambda = 1.0;
};

using MartingaleModel = std::variant<ScaledWiener, CompensatedPoisson>;

std::string martingale_label(const MartingaleModel& m);

// ----------------------------------------------------------------------------
// One realized draw of all drivers on a partition. Immutable after
// construction; paths are pinned to 0 at the interval start.
// ----------------------------------------------------------------------------
class PathSet {
 public:
  PathSet(std::shared_ptr<const Partition> partition, int dims,
          std::vector<std::vector<double>> wiener_increments,
          std::vector<std::vector<double>> martingale_increments, std::uint64_t seed,
          std::uint64_t path_index);

  const Partition& partition() const { return *partition_; }
  std::shared_ptr<const Partition> partition_ptr() const { return partition_; }
  int dims() const { return dims_; }
  std::size_t martingale_count() const { return mart_increments_.size(); }
  std::uint64_t seed() const { return seed_; }
  std::uint64_t path_index() const { return path_index_; }

  // Increment of the driver over [tau_j, tau_{j+1}].
  double increment(const DriverKind& driver, std::size_t j) const;
  // Driver value at tau_j: tau_j itself for time, the pinned cumulative sum
  // for Wiener and martingale drivers.
  double cumulative(const DriverKind& driver, std::size_t j) const;

  const std::vector<double>& wiener_increments(int component) const;       // 1-based
  const std::vector<double>& wiener_cumulative(int component) const;       // values at tau_0..tau_N
  const std::vector<double>& martingale_increments(int id) const;          // 0-based
  const std::vector<double>& martingale_cumulative(int id) const;

 private:
  std::shared_ptr<const Partition> partition_;
  int dims_;
  std::vector<std::vector<double>> wiener_increments_;
  std::vector<std::vector<double>> wiener_cum_;
  std::vector<std::vector<double>> mart_increments_;
  std::vector<std::vector<double>> mart_cum_;
  std::uint64_t seed_;
  std::uint64_t path_index_;
};

// Spec-level convenience mirroring PathSet::cumulative.
double cumulative_value(const PathSet& path, const DriverKind& driver, std::size_t j);

// ----------------------------------------------------------------------------
// Sampler: (seed, path_index) fully determines every increment, regardless of
// thread count or generation order.
// ----------------------------------------------------------------------------
class PathSampler {
 public:
  PathSampler(std::shared_ptr<const Partition> partition, int dims,
              std::vector<MartingaleModel> models, std::uint64_t seed);

  PathSet sample(std::uint64_t path_index) const;

  const Partition& partition() const { return *partition_; }
  int dims() const { return dims_; }
  const std::vector<MartingaleModel>& models() const { return models_; }
  std::uint64_t seed() const { return seed_; }

 private:
  std::shared_ptr<const Partition> partition_;
  int dims_;
  std::vector<MartingaleModel> models_;
  std::uint64_t seed_;
  CounterRng rng_;
};

// Materializes `count` consecutive paths starting at path_index 0.
std::vector<PathSet> sample_paths(std::shared_ptr<const Partition> partition, int dims,
                                  std::vector<MartingaleModel> models, std::uint64_t seed,
                                  std::size_t count);

// Debug dump of one path set (versioned header, little-endian doubles).
// Not a stability-guaranteed format.
void dump_path_set(const PathSet& path, std::ostream& os);
PathSet load_path_set(std::istream& is);

}  // namespace sc
