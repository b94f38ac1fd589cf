// Integration tests against the built command-line binary. The test runner
// passes the binary path as the first argument after the doctest-owned ones.

#define DOCTEST_CONFIG_IMPLEMENT
#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"

namespace {

std::string g_binary;
int g_counter = 0;

struct RunResult {
  int exit_code = -1;
  std::string out;
};

std::string temp_path(const std::string& stem) {
  return "/tmp/scmc_test_" + std::to_string(++g_counter) + "_" + stem;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

RunResult run(const std::string& args) {
  const std::string out_path = temp_path("stdout.txt");
  const std::string cmd = g_binary + " " + args + " > " + out_path + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  RunResult r;
  r.exit_code = WEXITSTATUS(status);
  r.out = read_file(out_path);
  std::remove(out_path.c_str());
  return r;
}

}  // namespace

TEST_CASE("verify writes a json report and exits zero on pass") {
  const std::string out = temp_path("verify.json");
  const auto r = run("verify --identity J10 --steps 256 --paths 300 --seed 5 --format json -o " + out);
  CHECK(r.exit_code == 0);
  const auto j = nlohmann::json::parse(read_file(out));
  CHECK(j["schema_version"] == 1);
  CHECK(j["tool"]["name"] == "scmc");
  CHECK(j["config"]["command"] == "verify");
  CHECK(j["config"]["seed"] == 5);
  REQUIRE(j["results"].size() == 1);
  const auto& e = j["results"][0];
  // frozen field names
  for (const char* key : {"identity_id", "citation", "t", "T", "N", "M", "seed", "ms_error",
                          "ci95", "median_sq", "lhs_mean", "rhs_mean", "lhs_second_moment",
                          "rhs_second_moment", "pilot_ms", "envelope", "pass"})
    CHECK_MESSAGE(e.contains(key), key);
  CHECK(!e.contains("wall_time_s"));
  CHECK(!j["config"].contains("threads"));
  CHECK(e["identity_id"] == "J10");
  CHECK(e["ci95"].size() == 2);
  CHECK(e["pass"] == true);
  std::remove(out.c_str());
}

TEST_CASE("unknown identity exits with the usage code") {
  CHECK(run("verify --identity nosuch --steps 256 --paths 300").exit_code == 2);
}

TEST_CASE("invalid configuration exits with the usage code") {
  CHECK(run("verify --identity J10 --steps 256 --paths 300 --format yaml").exit_code == 2);
  CHECK(run("verify --identity J10 --steps 1 --paths 300").exit_code == 2);
  CHECK(run("verify --identity J10 --steps 256 --paths 10").exit_code == 2);
  CHECK(run("sweep --identity J00 --steps 256 --paths 300").exit_code == 2);
  CHECK(run("covariance --phi1 nosuchkernel --paths 300 --steps 64").exit_code == 2);
}

TEST_CASE("glob filters fan out to all matching identities") {
  const std::string out = temp_path("sums.json");
  const auto r = run("verify --identity 'sum-2*' --steps 128 --paths 200 --seed 3 --format json -o " + out);
  CHECK(r.exit_code == 0);
  const auto j = nlohmann::json::parse(read_file(out));
  CHECK(j["results"].size() == 1);  // sum-2-2
  std::remove(out.c_str());

  const auto r2 = run("verify --identity 'sum?' --steps 128 --paths 200 --seed 3 --format csv");
  CHECK(r2.exit_code == 0);
  // header + sum2..sum5
  CHECK(std::count(r2.out.begin(), r2.out.end(), '\n') == 5);
}

TEST_CASE("sweep reports a slope") {
  const std::string out = temp_path("sweep.json");
  const auto r = run("sweep --identity J00 --steps 128,256,512 --paths 200 --seed 7 --format json -o " + out);
  CHECK(r.exit_code == 0);
  const auto j = nlohmann::json::parse(read_file(out));
  REQUIRE(j["results"].size() == 1);
  CHECK(j["results"][0].contains("fitted_slope"));
  CHECK(j["results"][0]["rows"].size() == 3);
  const double slope = j["results"][0]["fitted_slope"].get<double>();
  CHECK(slope == doctest::Approx(-2.0).epsilon(0.05));
  std::remove(out.c_str());
}

TEST_CASE("catalog csv has the frozen header") {
  const auto r = run("catalog --format csv");
  CHECK(r.exit_code == 0);
  CHECK(r.out.rfind("id,citation,k,drivers\n", 0) == 0);
  CHECK(std::count(r.out.begin(), r.out.end(), '\n') >= 41);  // header + >= 40 entries
}

TEST_CASE("catalog filter narrows the listing") {
  const auto r = run("catalog --filter 'thm5*' --format csv");
  CHECK(r.exit_code == 0);
  std::istringstream is(r.out);
  std::string line;
  std::getline(is, line);  // header
  int rows = 0;
  while (std::getline(is, line)) {
    CHECK(line.rfind("thm5", 0) == 0);
    ++rows;
  }
  CHECK(rows == 12);
}

TEST_CASE("covariance with distinct components targets zero") {
  const std::string out = temp_path("cov.json");
  const auto r = run("covariance --phi1 one --phi2 one --i1 1 --i2 2 --steps 128 --paths 2000 "
                     "--seed 11 --format json -o " + out);
  CHECK(r.exit_code == 0);
  const auto j = nlohmann::json::parse(read_file(out));
  CHECK(j["result"]["quadrature"] == 0.0);
  CHECK(j["result"]["pass"] == true);
  std::remove(out.c_str());
}

TEST_CASE("json reports are byte-identical across thread counts") {
  const std::string out1 = temp_path("t1.json");
  const std::string out4 = temp_path("t4.json");
  const std::string args = "verify --identity 'J1*' --steps 256 --paths 400 --seed 99 --format json ";
  CHECK(run(args + "--threads 1 -o " + out1).exit_code == 0);
  CHECK(run(args + "--threads 4 -o " + out4).exit_code == 0);
  const std::string a = read_file(out1), b = read_file(out4);
  REQUIRE(!a.empty());
  CHECK(a == b);
  std::remove(out1.c_str());
  std::remove(out4.c_str());
}

int main(int argc, char** argv) {
  doctest::Context context;
  int keep = 1;
  std::vector<char*> pass{argv[0]};
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (!arg.empty() && arg[0] != '-' && g_binary.empty()) {
      g_binary = arg;
    } else {
      pass.push_back(argv[i]);
      ++keep;
    }
  }
  if (g_binary.empty()) {
    std::fprintf(stderr, "usage: test_cli <path-to-scmc> [doctest options]\n");
    return 2;
  }
  context.applyCommandLine(keep, pass.data());
  return context.run();
}
