#include "sc/report_io.hpp"

#include <iomanip>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace sc {

using json = nlohmann::ordered_json;

void RunConfig::validate() const {
  if (!(t < T)) throw std::invalid_argument("config: requires t < T");
  if (format != "json" && format != "csv" && format != "table")
    throw std::invalid_argument("config: format must be json, csv or table");
  if (command == "verify") {
    if (N < 2) throw std::invalid_argument("config: steps must be >= 2");
    if (M < 100) throw std::invalid_argument("config: paths must be >= 100 for verify");
  } else if (command == "sweep") {
    if (Ns.size() < 3) throw std::invalid_argument("config: sweep needs at least 3 step counts");
    for (std::size_t i = 0; i + 1 < Ns.size(); ++i)
      if (!(Ns[i] < Ns[i + 1]))
        throw std::invalid_argument("config: sweep step counts must be strictly increasing");
    if (M < 100) throw std::invalid_argument("config: paths must be >= 100 for sweep");
  } else if (command == "covariance") {
    if (N < 2) throw std::invalid_argument("config: steps must be >= 2");
    if (M < 100) throw std::invalid_argument("config: paths must be >= 100 for covariance");
    if (i1 < 1 || i2 < 1) throw std::invalid_argument("config: components are 1-based");
  }
}

KernelExpr kernel_by_name(const std::string& name) {
  if (name == "one") return KernelExpr::constant(2, 1.0);
  // value = second argument - interval start (the "s1 selector" of the
  // product-moment example; equals s1 itself when t = 0)
  if (name == "tau1")
    return KernelExpr::separable({WeightExpr::one(), WeightExpr::pow_shift(1.0, Anchor::Start)});
  // value = first argument - interval start
  if (name == "tau2")
    return KernelExpr::separable({WeightExpr::pow_shift(1.0, Anchor::Start), WeightExpr::one()});
  if (name == "expdiff")
    return KernelExpr::separable({WeightExpr::exp_shift(1.0, Anchor::End),
                                  WeightExpr::exp_shift(-1.0, Anchor::End)});
  throw std::invalid_argument("unknown kernel name: " + name);
}

std::vector<std::string> kernel_names() { return {"one", "tau1", "tau2", "expdiff"}; }

namespace {

json config_json(const RunConfig& c) {
  json j;
  j["command"] = c.command;
  j["identity_filter"] = c.identity_filter;
  j["t"] = c.t;
  j["T"] = c.T;
  if (c.command == "sweep") {
    j["steps"] = c.Ns;
  } else {
    j["steps"] = c.N;
  }
  j["paths"] = c.M;
  j["seed"] = c.seed;
  j["format"] = c.format;
  if (c.command == "covariance") {
    j["phi1"] = c.phi1;
    j["phi2"] = c.phi2;
    j["i1"] = c.i1;
    j["i2"] = c.i2;
  }
  return j;
}

json header_json(const RunConfig& c) {
  json j;
  j["schema_version"] = kReportSchemaVersion;
  j["tool"] = {{"name", kToolName}, {"version", kToolVersion}};
  j["config"] = config_json(c);
  return j;
}

json estimate_json(const EstimateReport& r) {
  json j;
  j["identity_id"] = r.identity_id;
  j["citation"] = r.citation;
  j["t"] = r.t;
  j["T"] = r.T;
  j["N"] = r.N;
  j["M"] = r.M;
  j["seed"] = r.seed;
  j["ms_error"] = r.ms_error;
  j["ci95"] = {r.ci_lo, r.ci_hi};
  j["median_sq"] = r.median_sq;
  j["lhs_mean"] = r.lhs_mean;
  j["rhs_mean"] = r.rhs_mean;
  j["lhs_second_moment"] = r.lhs_second_moment;
  j["rhs_second_moment"] = r.rhs_second_moment;
  if (r.envelope >= 0.0) {
    j["pilot_ms"] = r.pilot_ms;
    j["envelope"] = r.envelope;
  }
  j["pass"] = r.pass;
  return j;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    out += c;
  }
  out += "\"";
  return out;
}

std::string num(double v) {
  std::ostringstream os;
  os << std::setprecision(17) << v;
  return os.str();
}

}  // namespace

std::string verify_report_json(const RunConfig& config,
                               const std::vector<EstimateReport>& results) {
  json j = header_json(config);
  j["results"] = json::array();
  for (const auto& r : results) j["results"].push_back(estimate_json(r));
  return j.dump(2) + "\n";
}

std::string verify_report_csv(const std::vector<EstimateReport>& results) {
  std::ostringstream os;
  os << "id,citation,t,T,N,M,seed,ms_error,ci_lo,ci_hi,median_sq,lhs_mean,rhs_mean,"
        "lhs_second_moment,rhs_second_moment,pilot_ms,envelope,pass\n";
  for (const auto& r : results) {
    os << csv_escape(r.identity_id) << "," << csv_escape(r.citation) << "," << num(r.t) << ","
       << num(r.T) << "," << r.N << "," << r.M << "," << r.seed << "," << num(r.ms_error) << ","
       << num(r.ci_lo) << "," << num(r.ci_hi) << "," << num(r.median_sq) << ","
       << num(r.lhs_mean) << "," << num(r.rhs_mean) << "," << num(r.lhs_second_moment) << ","
       << num(r.rhs_second_moment) << "," << num(r.pilot_ms) << "," << num(r.envelope) << ","
       << (r.pass ? "true" : "false") << "\n";
  }
  return os.str();
}

void verify_report_table(std::ostream& os, const std::vector<EstimateReport>& results) {
  os << std::left << std::setw(22) << "identity" << std::right << std::setw(8) << "N"
     << std::setw(9) << "M" << std::setw(14) << "ms_error" << std::setw(14) << "envelope"
     << std::setw(7) << "pass" << std::setw(10) << "time[s]" << "\n";
  for (const auto& r : results) {
    os << std::left << std::setw(22) << r.identity_id << std::right << std::setw(8) << r.N
       << std::setw(9) << r.M << std::setw(14) << std::scientific << std::setprecision(3)
       << r.ms_error << std::setw(14) << r.envelope << std::defaultfloat << std::setw(7)
       << (r.pass ? "yes" : "NO") << std::setw(10) << std::fixed << std::setprecision(2)
       << r.wall_time_s << std::defaultfloat << "\n";
  }
}

std::string sweep_report_json(const RunConfig& config,
                              const std::vector<ConvergenceReport>& results) {
  json j = header_json(config);
  j["results"] = json::array();
  for (const auto& r : results) {
    json e;
    e["identity_id"] = r.identity_id;
    e["citation"] = r.citation;
    e["M"] = r.M;
    e["seed"] = r.seed;
    e["rows"] = json::array();
    for (const auto& row : r.rows) {
      json rj;
      rj["N"] = row.N;
      rj["ms_error"] = row.ms_error;
      rj["ci95"] = {row.ci_lo, row.ci_hi};
      e["rows"].push_back(rj);
    }
    e["fitted_slope"] = r.fitted_slope;
    j["results"].push_back(e);
  }
  return j.dump(2) + "\n";
}

std::string sweep_report_csv(const std::vector<ConvergenceReport>& results) {
  std::ostringstream os;
  os << "id,N,ms_error,ci_lo,ci_hi,fitted_slope\n";
  for (const auto& r : results)
    for (const auto& row : r.rows)
      os << csv_escape(r.identity_id) << "," << row.N << "," << num(row.ms_error) << ","
         << num(row.ci_lo) << "," << num(row.ci_hi) << "," << num(r.fitted_slope) << "\n";
  return os.str();
}

void sweep_report_table(std::ostream& os, const std::vector<ConvergenceReport>& results) {
  for (const auto& r : results) {
    os << r.identity_id << "  (fitted slope " << std::fixed << std::setprecision(3)
       << r.fitted_slope << std::defaultfloat << ")\n";
    for (const auto& row : r.rows)
      os << "  N=" << std::setw(6) << row.N << "  ms=" << std::scientific << std::setprecision(4)
         << row.ms_error << "  ci95=[" << row.ci_lo << ", " << row.ci_hi << "]"
         << std::defaultfloat << "\n";
  }
}

std::string covariance_report_json(const RunConfig& config, const CovarianceReport& r) {
  json j = header_json(config);
  json e;
  e["phi1"] = r.phi1;
  e["phi2"] = r.phi2;
  e["i1"] = r.i1;
  e["i2"] = r.i2;
  e["N"] = r.N;
  e["M"] = r.M;
  e["seed"] = r.seed;
  e["mc_estimate"] = r.mc_estimate;
  e["ci95"] = {r.ci_lo, r.ci_hi};
  e["quadrature"] = r.quadrature;
  e["pass"] = r.pass;
  j["result"] = e;
  return j.dump(2) + "\n";
}

std::string covariance_report_csv(const CovarianceReport& r) {
  std::ostringstream os;
  os << "phi1,phi2,i1,i2,N,M,seed,mc_estimate,ci_lo,ci_hi,quadrature,pass\n";
  os << csv_escape(r.phi1) << "," << csv_escape(r.phi2) << "," << r.i1 << "," << r.i2 << ","
     << r.N << "," << r.M << "," << r.seed << "," << num(r.mc_estimate) << "," << num(r.ci_lo)
     << "," << num(r.ci_hi) << "," << num(r.quadrature) << "," << (r.pass ? "true" : "false")
     << "\n";
  return os.str();
}

void covariance_report_table(std::ostream& os, const CovarianceReport& r) {
  os << "covariance  phi1=" << r.phi1 << "  phi2=" << r.phi2 << "  i1=" << r.i1
     << "  i2=" << r.i2 << "\n"
     << "  mc_estimate = " << std::setprecision(8) << r.mc_estimate << "   ci95=[" << r.ci_lo
     << ", " << r.ci_hi << "]\n"
     << "  quadrature  = " << r.quadrature << "\n"
     << "  pass        = " << (r.pass ? "yes" : "NO") << "\n";
}

std::string catalog_json(const RunConfig& config, const std::vector<Identity>& entries) {
  json j = header_json(config);
  j["bibliography"] = json::array();
  for (const auto& [anchor, text] : catalog_bibliography())
    j["bibliography"].push_back({{"anchor", anchor}, {"text", text}});
  j["entries"] = json::array();
  for (const auto& e : entries) {
    json ej;
    ej["id"] = e.id;
    ej["citation"] = e.citation;
    ej["statement"] = e.statement;
    ej["k"] = e.max_depth();
    ej["stochastic"] = e.stochastic;
    ej["exact_discrete"] = e.exact_discrete;
    ej["wiener_dims"] = e.wiener_dims;
    ej["martingales"] = json::array();
    for (const auto& m : e.models) ej["martingales"].push_back(martingale_label(m));
    ej["lhs"] = json::array();
    for (const auto& t : e.lhs) ej["lhs"].push_back(t.describe());
    ej["rhs"] = json::array();
    for (const auto& t : e.rhs) ej["rhs"].push_back(t.describe());
    j["entries"].push_back(ej);
  }
  return j.dump(2) + "\n";
}

namespace {

std::string drivers_label(const Identity& e) {
  // drivers of the first lhs term, a compact structural hint for listings
  struct Visitor {
    std::string operator()(const IntegralSpec& s) const {
      std::string r;
      for (const auto& d : s.drivers) {
        if (!r.empty()) r += " ";
        r += driver_label(d);
      }
      return r;
    }
    std::string operator()(const KernelIntegralSpec& s) const {
      std::string r;
      for (const auto& d : s.drivers) {
        if (!r.empty()) r += " ";
        r += driver_label(d);
      }
      return r;
    }
    std::string operator()(const CombinedSpec& s) const { return driver_label(s.driver); }
  };
  if (e.lhs.empty()) return "";
  return std::visit(Visitor{}, e.lhs.front().spec);
}

}  // namespace

std::string catalog_csv(const std::vector<Identity>& entries) {
  std::ostringstream os;
  os << "id,citation,k,drivers\n";
  for (const auto& e : entries)
    os << csv_escape(e.id) << "," << csv_escape(e.citation) << "," << e.max_depth() << ","
       << csv_escape(drivers_label(e)) << "\n";
  return os.str();
}

void catalog_table(std::ostream& os, const std::vector<Identity>& entries) {
  for (const auto& e : entries) {
    os << std::left << std::setw(22) << e.id << std::setw(26) << e.citation << " " << e.statement
       << "\n";
  }
  os << entries.size() << " entries\n";
}

}  // namespace sc
