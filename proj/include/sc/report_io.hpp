#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "sc/mc.hpp"

namespace sc {

inline constexpr int kReportSchemaVersion = 1;
inline constexpr const char* kToolName = "scmc";
inline constexpr const char* kToolVersion = "1.0.0";

// Parsed command configuration shared by the CLI and the report writers.
// The thread count steers execution only; it never changes results and is
// deliberately absent from serialized reports so that runs with different
// worker counts emit byte-identical files.
struct RunConfig {
  std::string command;          // verify | sweep | covariance | catalog
  std::string identity_filter = "*";
  double t = 0.0;
  double T = 1.0;
  std::size_t N = 1024;
  std::size_t M = 10000;
  std::uint64_t seed = 42;
  std::vector<std::size_t> Ns;  // sweep grid
  std::string format = "table";  // json | csv | table
  std::string output_path;       // empty: stdout
  unsigned threads = 0;          // 0: hardware default
  std::string phi1 = "one", phi2 = "one";
  int i1 = 1, i2 = 1;

  void validate() const;  // throws std::invalid_argument on bad combinations
};

// Named bivariate kernels accepted by the covariance command.
KernelExpr kernel_by_name(const std::string& name);
std::vector<std::string> kernel_names();

std::string verify_report_json(const RunConfig& config,
                               const std::vector<EstimateReport>& results);
std::string verify_report_csv(const std::vector<EstimateReport>& results);
void verify_report_table(std::ostream& os, const std::vector<EstimateReport>& results);

std::string sweep_report_json(const RunConfig& config,
                              const std::vector<ConvergenceReport>& results);
std::string sweep_report_csv(const std::vector<ConvergenceReport>& results);
void sweep_report_table(std::ostream& os, const std::vector<ConvergenceReport>& results);

std::string covariance_report_json(const RunConfig& config, const CovarianceReport& result);
std::string covariance_report_csv(const CovarianceReport& result);
void covariance_report_table(std::ostream& os, const CovarianceReport& result);

std::string catalog_json(const RunConfig& config, const std::vector<Identity>& entries);
std::string catalog_csv(const std::vector<Identity>& entries);
void catalog_table(std::ostream& os, const std::vector<Identity>& entries);

}  // namespace sc
