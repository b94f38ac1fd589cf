#include "sc/path_set.hpp"

#include <cmath>
#include <cstring>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace sc {

namespace {

std::vector<double> pinned_cumulative(const std::vector<double>& increments) {
  std::vector<double> cum(increments.size() + 1);
  cum[0] = 0.0;
  for (std::size_t j = 0; j < increments.size(); ++j) cum[j + 1] = cum[j] + increments[j];
  return cum;
}

}  // namespace

std::string martingale_label(const MartingaleModel& m) {
  struct Visitor {
    std::string operator()(const ScaledWiener& s) const {
      return "scaled-wiener(sigma=" + std::to_string(s.sigma) + ")";
    }
    std::string operator()(const CompensatedPoisson& p) const {
      return "compensated-poisson(lambda=" + std::to_string(p.lambda) + ")";
    }
  };
  return std::visit(Visitor{}, m);
}

PathSet::PathSet(std::shared_ptr<const Partition> partition, int dims,
                 std::vector<std::vector<double>> wiener_increments,
                 std::vector<std::vector<double>> martingale_increments, std::uint64_t seed,
                 std::uint64_t path_index)
    : partition_(std::move(partition)),
      dims_(dims),
      wiener_increments_(std::move(wiener_increments)),
      mart_increments_(std::move(martingale_increments)),
      seed_(seed),
      path_index_(path_index) {
  const std::size_t N = partition_->steps();
  if (wiener_increments_.size() != static_cast<std::size_t>(dims_))
    throw std::invalid_argument("PathSet: wiener increment rows must match dims");
  for (const auto& row : wiener_increments_)
    if (row.size() != N) throw std::invalid_argument("PathSet: increment row length must be N");
  for (const auto& row : mart_increments_)
    if (row.size() != N) throw std::invalid_argument("PathSet: increment row length must be N");
  wiener_cum_.reserve(wiener_increments_.size());
  for (const auto& row : wiener_increments_) wiener_cum_.push_back(pinned_cumulative(row));
  mart_cum_.reserve(mart_increments_.size());
  for (const auto& row : mart_increments_) mart_cum_.push_back(pinned_cumulative(row));
}

const std::vector<double>& PathSet::wiener_increments(int component) const {
  if (component < 1 || component > dims_)
    throw std::out_of_range("PathSet: Wiener component out of range");
  return wiener_increments_[static_cast<std::size_t>(component - 1)];
}

const std::vector<double>& PathSet::wiener_cumulative(int component) const {
  if (component < 1 || component > dims_)
    throw std::out_of_range("PathSet: Wiener component out of range");
  return wiener_cum_[static_cast<std::size_t>(component - 1)];
}

const std::vector<double>& PathSet::martingale_increments(int id) const {
  if (id < 0 || static_cast<std::size_t>(id) >= mart_increments_.size())
    throw std::out_of_range("PathSet: unknown martingale id");
  return mart_increments_[static_cast<std::size_t>(id)];
}

const std::vector<double>& PathSet::martingale_cumulative(int id) const {
  if (id < 0 || static_cast<std::size_t>(id) >= mart_cum_.size())
    throw std::out_of_range("PathSet: unknown martingale id");
  return mart_cum_[static_cast<std::size_t>(id)];
}

double PathSet::increment(const DriverKind& driver, std::size_t j) const {
  if (j >= partition_->steps()) throw std::out_of_range("PathSet::increment: step out of range");
  struct Visitor {
    const PathSet& p;
    std::size_t j;
    double operator()(const TimeDriver&) const { return p.partition_->dt(j); }
    double operator()(const WienerDriver& w) const { return p.wiener_increments(w.component)[j]; }
    double operator()(const MartingaleDriver& m) const { return p.martingale_increments(m.id)[j]; }
  };
  return std::visit(Visitor{*this, j}, driver);
}

double PathSet::cumulative(const DriverKind& driver, std::size_t j) const {
  if (j > partition_->steps()) throw std::out_of_range("PathSet::cumulative: index out of range");
  struct Visitor {
    const PathSet& p;
    std::size_t j;
    double operator()(const TimeDriver&) const { return p.partition_->time(j); }
    double operator()(const WienerDriver& w) const { return p.wiener_cumulative(w.component)[j]; }
    double operator()(const MartingaleDriver& m) const { return p.martingale_cumulative(m.id)[j]; }
  };
  return std::visit(Visitor{*this, j}, driver);
}

double cumulative_value(const PathSet& path, const DriverKind& driver, std::size_t j) {
  return path.cumulative(driver, j);
}

PathSampler::PathSampler(std::shared_ptr<const Partition> partition, int dims,
                         std::vector<MartingaleModel> models, std::uint64_t seed)
    : partition_(std::move(partition)), dims_(dims), models_(std::move(models)), seed_(seed),
      rng_{seed} {
  if (!partition_) throw std::invalid_argument("PathSampler: null partition");
  if (dims_ < 0) throw std::invalid_argument("PathSampler: negative dims");
  if (dims_ == 0 && models_.empty())
    throw std::invalid_argument("PathSampler: needs dims >= 1 or at least one martingale model");
}

PathSet PathSampler::sample(std::uint64_t path_index) const {
  const std::size_t N = partition_->steps();
  std::vector<std::vector<double>> wiener(static_cast<std::size_t>(dims_));
  for (int c = 0; c < dims_; ++c) {
    auto& row = wiener[static_cast<std::size_t>(c)];
    row.resize(N);
    const auto stream = static_cast<std::uint32_t>(c);
    for (std::size_t j = 0; j < N; ++j) {
      row[j] = std::sqrt(partition_->dt(j)) *
               rng_.normal(path_index, stream, static_cast<std::uint32_t>(j));
    }
  }
  std::vector<std::vector<double>> mart(models_.size());
  for (std::size_t m = 0; m < models_.size(); ++m) {
    auto& row = mart[m];
    row.resize(N);
    const auto stream = static_cast<std::uint32_t>(dims_ + static_cast<int>(m));
    struct Visitor {
      const CounterRng& rng;
      const Partition& part;
      std::uint64_t path;
      std::uint32_t stream;
      std::vector<double>& row;
      void operator()(const ScaledWiener& s) const {
        for (std::size_t j = 0; j < part.steps(); ++j)
          row[j] = s.sigma * std::sqrt(part.dt(j)) *
                   rng.normal(path, stream, static_cast<std::uint32_t>(j));
      }
      void operator()(const CompensatedPoisson& p) const {
        for (std::size_t j = 0; j < part.steps(); ++j) {
          const double mean = p.lambda * part.dt(j);
          const auto count = rng.poisson(mean, path, stream, static_cast<std::uint32_t>(j));
          row[j] = static_cast<double>(count) - mean;
        }
      }
    };
    std::visit(Visitor{rng_, *partition_, path_index, stream, row}, models_[m]);
  }
  return PathSet(partition_, dims_, std::move(wiener), std::move(mart), seed_, path_index);
}

std::vector<PathSet> sample_paths(std::shared_ptr<const Partition> partition, int dims,
                                  std::vector<MartingaleModel> models, std::uint64_t seed,
                                  std::size_t count) {
  if (count == 0) throw std::invalid_argument("sample_paths: count must be >= 1");
  PathSampler sampler(std::move(partition), dims, std::move(models), seed);
  std::vector<PathSet> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(sampler.sample(i));
  return out;
}

// ----------------------------------------------------------------------------
// Binary dump (debugging aid)
// ----------------------------------------------------------------------------

namespace {

constexpr std::uint32_t kDumpMagic = 0x53504353u;  // "SCPS"
constexpr std::uint32_t kDumpVersion = 1;

template <typename T>
void put(std::ostream& os, T v) {
  // Little-endian hosts only; asserted by the magic word on load.
  os.write(reinterpret_cast<const char*>(&v), sizeof(v));
}

template <typename T>
T get(std::istream& is) {
  T v{};
  is.read(reinterpret_cast<char*>(&v), sizeof(v));
  if (!is) throw std::runtime_error("load_path_set: truncated stream");
  return v;
}

void put_row(std::ostream& os, const std::vector<double>& row) {
  for (double v : row) put(os, v);
}

std::vector<double> get_row(std::istream& is, std::size_t n) {
  std::vector<double> row(n);
  for (auto& v : row) v = get<double>(is);
  return row;
}

}  // namespace

void dump_path_set(const PathSet& path, std::ostream& os) {
  const auto& part = path.partition();
  put(os, kDumpMagic);
  put(os, kDumpVersion);
  put(os, static_cast<std::uint64_t>(part.steps()));
  put(os, static_cast<std::uint32_t>(path.dims()));
  put(os, static_cast<std::uint32_t>(path.martingale_count()));
  put(os, path.seed());
  put(os, path.path_index());
  for (double tau : part.times()) put(os, tau);
  for (int c = 1; c <= path.dims(); ++c) put_row(os, path.wiener_increments(c));
  for (std::size_t m = 0; m < path.martingale_count(); ++m)
    put_row(os, path.martingale_increments(static_cast<int>(m)));
}

PathSet load_path_set(std::istream& is) {
  if (get<std::uint32_t>(is) != kDumpMagic)
    throw std::runtime_error("load_path_set: bad magic");
  if (get<std::uint32_t>(is) != kDumpVersion)
    throw std::runtime_error("load_path_set: unsupported version");
  const auto N = static_cast<std::size_t>(get<std::uint64_t>(is));
  const auto dims = static_cast<int>(get<std::uint32_t>(is));
  const auto marts = static_cast<std::size_t>(get<std::uint32_t>(is));
  const auto seed = get<std::uint64_t>(is);
  const auto path_index = get<std::uint64_t>(is);
  std::vector<double> times = get_row(is, N + 1);
  auto partition = std::make_shared<const Partition>(times.front(), times.back(), times);
  std::vector<std::vector<double>> wiener;
  wiener.reserve(static_cast<std::size_t>(dims));
  for (int c = 0; c < dims; ++c) wiener.push_back(get_row(is, N));
  std::vector<std::vector<double>> mart;
  mart.reserve(marts);
  for (std::size_t m = 0; m < marts; ++m) mart.push_back(get_row(is, N));
  return PathSet(std::move(partition), dims, std::move(wiener), std::move(mart), seed, path_index);
}

}  // namespace sc
