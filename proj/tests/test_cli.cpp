#include <sys/wait.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "normsol/run_config.hpp"
#include "normsol/runs.hpp"

using namespace normsol;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream s;
  s << in.rdbuf();
  return s.str();
}

std::string without_wall_time(const std::string& text) {
  std::istringstream in(text);
  std::string line, out;
  while (std::getline(in, line)) {
    if (line.find("\"wall_time\"") == std::string::npos) out += line + "\n";
  }
  return out;
}

int cli_status(const std::string& args) {
  const std::string cmd = std::string(NORMSOL_CLI_PATH) + " " + args + " >/dev/null 2>&1";
  const int raw = std::system(cmd.c_str());
  return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
}

fs::path scratch_dir(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("normsol_test_" + name);
  fs::remove_all(p);
  return p;
}

}  // namespace

TEST_CASE("config text and overrides") {
  RunConfig cfg;
  apply_config_text(cfg, "# comment\n dimension = 2\n a = 0.5   # trailing\n\nmu=30\ngrading = uniform\n");
  CHECK(cfg.dimension == 2);
  CHECK(cfg.solve.a == 0.5);
  CHECK(cfg.mu == 30.0);
  CHECK(cfg.grading == "uniform");
  CHECK(cfg.is_explicit("mu"));
  CHECK_FALSE(cfg.is_explicit("M"));
  apply_overrides(cfg, {"--M=1234", "--continuation=false"});
  CHECK(cfg.M == 1234);
  CHECK_FALSE(cfg.continuation);
  CHECK_NOTHROW(cfg.validate());
  CHECK(config_echo(cfg).at("mu") == "30");
}

TEST_CASE("config errors name the key") {
  RunConfig cfg;
  try {
    apply_config_text(cfg, "mu = 1\nmuu = 2\n");
    FAIL("no error");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("'muu'") != std::string::npos);
  }
  CHECK_THROWS_AS(apply_config_text(cfg, "just words\n"), ConfigError);
  CHECK_THROWS_AS(apply_setting(cfg, "M", "12x"), ConfigError);
  CHECK_THROWS_AS(apply_overrides(cfg, {"mu=3"}), ConfigError);

  RunConfig planar;
  planar.dimension = 2;
  planar.solve.a = 1.0;
  try {
    planar.validate();
    FAIL("accepted a = 1");
  } catch (const ConfigError& e) {
    CHECK(std::string(e.what()).find("(0, 1)") != std::string::npos);
  }
  RunConfig sweep_cfg;
  sweep_cfg.mode = "sweep";
  sweep_cfg.mu_count = 4;
  CHECK_THROWS_AS(sweep_cfg.validate(), ConfigError);
}

TEST_CASE("theoretical exponents") {
  RunConfig cfg;
  CHECK(cfg.theoretical_exponent() == doctest::Approx(2.0));
  cfg.dimension = 2;
  CHECK(cfg.theoretical_exponent() == doctest::Approx(1.0));
  cfg.p = 8.0;
  CHECK(cfg.theoretical_exponent() == doctest::Approx(0.5));
}

TEST_CASE("log-log slope") {
  CHECK(loglog_slope({1.0, 10.0, 100.0}, {5.0, 0.05, 0.0005}) == doctest::Approx(-2.0).epsilon(1e-12));
  CHECK_THROWS_AS(loglog_slope({1.0}, {1.0}), std::invalid_argument);
}

TEST_CASE("solve writes deterministic files") {
  RunConfig cfg;
  std::ostringstream out, err;
  const fs::path d = scratch_dir("solve");
  cfg.out_dir = d.string();
  REQUIRE(run_solve(cfg, out, err) == 0);
  const std::string r1 = slurp(d / "report.json");
  const std::string csv = slurp(d / "profile.csv");
  REQUIRE(run_solve(cfg, out, err) == 0);
  CHECK(r1.find("\"converged\": true") != std::string::npos);
  CHECK(r1.find("\"wall_time\"") != std::string::npos);
  CHECK(without_wall_time(r1) == without_wall_time(slurp(d / "report.json")));
  CHECK(csv.rfind("r,u\n", 0) == 0);
  CHECK(csv == slurp(d / "profile.csv"));

  const auto rows = read_profile_csv((d / "profile.csv").string());
  CHECK(rows.size() == cfg.M);
}

TEST_CASE("solve from a seed file") {
  RunConfig cfg;
  std::ostringstream out, err;
  const fs::path d1 = scratch_dir("seeded0"), d2 = scratch_dir("seeded1");
  cfg.out_dir = d1.string();
  REQUIRE(run_solve(cfg, out, err) == 0);
  cfg.seed_kind = "file";
  cfg.seed_path = (d1 / "profile.csv").string();
  cfg.out_dir = d2.string();
  CHECK(run_solve(cfg, out, err) == 0);
}

TEST_CASE("sweep files") {
  RunConfig cfg;
  cfg.mode = "sweep";
  cfg.mu_min = 100.0;
  cfg.mu_max = 1e4;
  cfg.mu_count = 5;
  const fs::path d = scratch_dir("sweep");
  cfg.out_dir = d.string();
  std::ostringstream out, err;
  CHECK(run_sweep(cfg, out, err) == 0);
  const std::string csv = slurp(d / "sweep.csv");
  CHECK(csv.rfind("mu,gamma,lambda,gradsq,converged\n", 0) == 0);
  const std::string summary = slurp(d / "summary.json");
  CHECK(summary.find("\"fittedSlope\"") != std::string::npos);
  CHECK(summary.find("\"muStar\": 100") != std::string::npos);

  // without continuation the records are independent of the worker count
  cfg.continuation = false;
  cfg.concurrency = 1;
  const SweepResult serial = sweep(cfg);
  cfg.concurrency = 3;
  const SweepResult parallel = sweep(cfg);
  REQUIRE(serial.records.size() == parallel.records.size());
  for (std::size_t i = 0; i < serial.records.size(); ++i) {
    CHECK(serial.records[i].gamma == parallel.records[i].gamma);
    CHECK_FALSE(serial.records[i].seeded_from.has_value());
  }
}

TEST_CASE("command line exit statuses") {
  const fs::path d = scratch_dir("cli");
  CHECK(cli_status("solve --out " + d.string()) == 0);
  CHECK(fs::exists(d / "report.json"));
  CHECK(cli_status("solve --not_a_key=1") == 2);
  CHECK(cli_status("solve --dimension=2 --a=1.5") == 2);
  CHECK(cli_status("sweep --mu_count=3") == 2);
  CHECK(cli_status("solve --config /nonexistent/file.cfg") == 2);
  CHECK(cli_status("check --M=50 --out " + d.string()) == 1);
  // an iteration cap of zero leaves the seed unsolved
  CHECK(cli_status("solve --max_outer_iters=0 --newton_max_iters=0 --out " + d.string()) == 1);
  CHECK(cli_status("--help") == 0);
}

TEST_CASE("output directory variable") {
  RunConfig cfg;
  cfg.out_dir = "from_config";
  ::setenv(kOutDirVariable, "/tmp/from_env", 1);
  CHECK(output_directory(cfg) == "/tmp/from_env");
  ::unsetenv(kOutDirVariable);
  CHECK(output_directory(cfg) == "from_config");
}
