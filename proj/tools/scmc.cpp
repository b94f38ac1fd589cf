// Command-line front end: verify catalog identities by Monte Carlo on shared
// noise, run convergence sweeps, run the product-moment experiment, and list
// the identity catalog. Exit codes: 0 pass, 1 statistical failure, 2 usage or
// configuration error.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "sc/catalog.hpp"
#include "sc/mc.hpp"
#include "sc/report_io.hpp"

namespace {

using namespace sc;

void write_output(const RunConfig& config, const std::string& payload) {
  if (config.output_path.empty()) {
    std::cout << payload;
    return;
  }
  std::ofstream os(config.output_path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open output file: " + config.output_path);
  os << payload;
}

int cmd_verify(const RunConfig& config) {
  const auto entries = catalog_filter(config.identity_filter, config.t, config.T);
  if (entries.empty()) {
    std::cerr << "error: unknown identity (no catalog entry matches '" << config.identity_filter
              << "')\n";
    return 2;
  }
  std::vector<EstimateReport> results;
  results.reserve(entries.size());
  for (const auto& ident : entries)
    results.push_back(
        verify_with_envelope(ident, config.N, config.M, config.seed, {}, config.threads));

  if (config.format == "json") {
    write_output(config, verify_report_json(config, results));
  } else if (config.format == "csv") {
    write_output(config, verify_report_csv(results));
  } else {
    std::ostringstream os;
    verify_report_table(os, results);
    write_output(config, os.str());
  }

  int failures = 0;
  for (const auto& r : results) {
    if (!r.pass) {
      ++failures;
      std::cerr << "FAIL " << r.identity_id << ": ms_error " << r.ms_error << " above envelope "
                << r.envelope << "\n";
    }
  }
  return failures == 0 ? 0 : 1;
}

int cmd_sweep(const RunConfig& config) {
  const auto entries = catalog_filter(config.identity_filter, config.t, config.T);
  if (entries.empty()) {
    std::cerr << "error: unknown identity (no catalog entry matches '" << config.identity_filter
              << "')\n";
    return 2;
  }
  std::vector<ConvergenceReport> results;
  for (const auto& ident : entries)
    results.push_back(convergence_sweep(ident, config.Ns, config.M, config.seed, config.threads));

  if (config.format == "json") {
    write_output(config, sweep_report_json(config, results));
  } else if (config.format == "csv") {
    write_output(config, sweep_report_csv(results));
  } else {
    std::ostringstream os;
    sweep_report_table(os, results);
    write_output(config, os.str());
  }
  return 0;
}

int cmd_covariance(const RunConfig& config) {
  const KernelExpr phi1 = kernel_by_name(config.phi1);
  const KernelExpr phi2 = kernel_by_name(config.phi2);
  const CovarianceReport r =
      covariance_experiment(phi1, phi2, config.i1, config.i2, config.t, config.T, config.N,
                            config.M, config.seed, config.threads);
  if (config.format == "json") {
    write_output(config, covariance_report_json(config, r));
  } else if (config.format == "csv") {
    write_output(config, covariance_report_csv(r));
  } else {
    std::ostringstream os;
    covariance_report_table(os, r);
    write_output(config, os.str());
  }
  if (!r.pass) {
    std::cerr << "FAIL covariance: estimate " << r.mc_estimate << " vs target " << r.quadrature
              << "\n";
    return 1;
  }
  return 0;
}

int cmd_catalog(const RunConfig& config) {
  const auto entries = catalog_filter(config.identity_filter, config.t, config.T);
  if (config.format == "json") {
    write_output(config, catalog_json(config, entries));
  } else if (config.format == "csv") {
    write_output(config, catalog_csv(entries));
  } else {
    std::ostringstream os;
    catalog_table(os, entries);
    write_output(config, os.str());
  }
  return 0;
}

std::vector<std::size_t> parse_steps_list(const std::string& csv) {
  std::vector<std::size_t> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    out.push_back(static_cast<std::size_t>(std::stoull(item)));
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Monte Carlo verification of integration-order-replacement identities for "
               "iterated stochastic integrals"};
  app.require_subcommand(1);

  RunConfig config;
  std::string steps_csv;

  const auto add_common = [&](CLI::App* cmd, bool needs_paths) {
    cmd->add_option("--identity,--filter", config.identity_filter,
                    "identity id or glob over ids");
    cmd->add_option("--t", config.t, "interval start");
    cmd->add_option("--T", config.T, "interval end");
    cmd->add_option("--seed", config.seed, "master seed");
    cmd->add_option("--format", config.format, "json | csv | table");
    cmd->add_option("--output,-o", config.output_path, "output file (default stdout)");
    cmd->add_option("--threads", config.threads, "worker threads (0 = hardware)");
    if (needs_paths) cmd->add_option("--paths", config.M, "Monte Carlo path count");
  };

  auto* verify = app.add_subcommand("verify", "estimate E[(lhs-rhs)^2] with the envelope rule");
  add_common(verify, true);
  verify->add_option("--steps", config.N, "partition steps N");

  auto* sweep = app.add_subcommand("sweep", "convergence sweep over partition sizes");
  add_common(sweep, true);
  sweep->add_option("--steps", steps_csv, "comma-separated list of N values (>= 3)");

  auto* covariance = app.add_subcommand("covariance", "product-moment experiment");
  add_common(covariance, true);
  covariance->add_option("--steps", config.N, "partition steps N");
  covariance->add_option("--phi1", config.phi1, "kernel name for the reversed factor");
  covariance->add_option("--phi2", config.phi2, "kernel name for the forward factor");
  covariance->add_option("--i1", config.i1, "Wiener component of the inner layers");
  covariance->add_option("--i2", config.i2, "Wiener component of the outer layers");

  auto* catalog = app.add_subcommand("catalog", "list registered identities");
  add_common(catalog, false);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 2;
  }

  try {
    if (app.got_subcommand(verify)) {
      config.command = "verify";
      config.validate();
      return cmd_verify(config);
    }
    if (app.got_subcommand(sweep)) {
      config.command = "sweep";
      config.Ns = parse_steps_list(steps_csv);
      config.validate();
      return cmd_sweep(config);
    }
    if (app.got_subcommand(covariance)) {
      config.command = "covariance";
      config.validate();
      return cmd_covariance(config);
    }
    config.command = "catalog";
    config.validate();
    return cmd_catalog(config);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
}
