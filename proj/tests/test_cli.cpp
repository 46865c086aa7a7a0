#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"

#include "dchain/core.hpp"
#include "dchain/run_io.hpp"

using namespace dchain;
namespace fs = std::filesystem;

namespace {

std::string binary() {
  const char* env = std::getenv("DCHAIN_BIN");
  REQUIRE_MESSAGE(env != nullptr, "DCHAIN_BIN must point at the dchain binary");
  return env;
}

int run(const std::string& command_tail) {
  const std::string cmd = binary() + " " + command_tail + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WEXITSTATUS(status);
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE_MESSAGE(in.good(), "missing file " << path.string());
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

fs::path fresh_dir(const std::string& tag) {
  const fs::path dir = fs::temp_directory_path() / ("dchain_test_" + tag);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

}  // namespace

TEST_CASE("config canonicalization and hashing") {
  RunConfig a, b;
  a.set("L", "8");
  a.set("v0", "1.0");
  b.set("v0", "1.000");  // different spelling, same number
  b.set("L", "8");
  CHECK(config_hash(a) == config_hash(b));
  b.set("v0", "2.0");
  CHECK(config_hash(a) != config_hash(b));

  RunConfig c;
  apply_override(c, "tau = 10.5");
  CHECK(c.get_double("tau") == 10.5);
  CHECK_THROWS_AS(apply_override(c, "no_equals_sign"), ConfigError);
  CHECK_THROWS_AS(c.get_double("missing"), ConfigError);
  CHECK(c.get_int("workers", 3) == 3);
}

TEST_CASE("config files parse with comments and overrides") {
  const fs::path dir = fresh_dir("config");
  const fs::path file = dir / "run.conf";
  std::ofstream(file) << "# a comment\nL = 4\n amplitude = 5.0  # trailing\n\n tau=2\n";
  const RunConfig config = parse_config_file(file);
  CHECK(config.get_int("L") == 4);
  CHECK(config.get_double("amplitude") == 5.0);
  CHECK(config.get_double("tau") == 2.0);
  CHECK_THROWS_AS(parse_config_file(dir / "nope.conf"), ConfigError);
}

TEST_CASE("cli exit codes") {
  const fs::path dir = fresh_dir("codes");
  CHECK(run("spectrum --set L=2 -o " + dir.string()) == 2);        // config error
  CHECK(run("spectrum --set L=3 --set h_points=3 -o " + dir.string()) == 0);
  CHECK(run("nonsense-subcommand") == 2);
  CHECK(run("fpt-check --set L=3 --set points=1 -o " + dir.string()) == 0);
}

TEST_CASE("identical configs give byte-identical sweep output") {
  const fs::path dir1 = fresh_dir("det1");
  const fs::path dir2 = fresh_dir("det2");
  const std::string conf =
      "ramp-sweep --set L=4 --set amplitude=5 --set tau_min=0.1 --set tau_max=10 "
      "--set tau_points=5 -o ";
  REQUIRE(run(conf + dir1.string()) == 0);
  REQUIRE(run(conf + dir2.string()) == 0);
  const std::string name = "sweep_degenerate_linear_L4_amp5_end0p5.csv";
  CHECK(slurp(dir1 / name) == slurp(dir2 / name));
}

TEST_CASE("an interrupted sweep resumes to the same final bytes") {
  const fs::path full_dir = fresh_dir("resume_full");
  const fs::path part_dir = fresh_dir("resume_part");
  const std::string conf =
      "ramp-sweep --set L=4 --set amplitude=5 --set tau_min=0.1 --set tau_max=10 "
      "--set tau_points=6 -o ";
  REQUIRE(run(conf + full_dir.string()) == 0);

  // simulate an interruption: keep only the header and two checkpoint lines
  const std::string base = "sweep_degenerate_linear_L4_amp5_end0p5";
  std::istringstream ckpt(slurp(full_dir / (base + ".ckpt")));
  std::ostringstream partial;
  std::string line;
  for (int kept = 0; std::getline(ckpt, line) && kept < 3; ++kept) partial << line << "\n";
  fs::create_directories(part_dir);
  std::ofstream(part_dir / (base + ".ckpt"), std::ios::binary) << partial.str();

  REQUIRE(run(conf + part_dir.string()) == 0);
  CHECK(slurp(full_dir / (base + ".csv")) == slurp(part_dir / (base + ".csv")));
}

TEST_CASE("single-point sweep yields a single data row") {
  const fs::path dir = fresh_dir("single");
  REQUIRE(run("ramp-sweep --set L=3 --set amplitude=2 --set tau_min=1 --set tau_points=1 -o " +
              dir.string()) == 0);
  const std::string text = slurp(dir / "sweep_degenerate_linear_L3_amp2_end0p5.csv");
  int lines = 0;
  for (char c : text)
    if (c == '\n') ++lines;
  CHECK(lines == 3);  // version header + column header + one data row
}

TEST_CASE("spectrum csv has the documented shape and hash header") {
  const fs::path dir = fresh_dir("spectrum");
  REQUIRE(run("spectrum --set L=3 --set h_points=7 -o " + dir.string()) == 0);
  const std::string text = slurp(dir / "spectrum_L3_v01.csv");
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);
  CHECK(line.rfind("# dchain", 0) == 0);
  CHECK(line.find("config=") != std::string::npos);
  std::getline(in, line);
  CHECK(line == "h,n,energy");
  int rows = 0;
  while (std::getline(in, line)) ++rows;
  CHECK(rows == 7 * 8);  // h_points * 2^L
}
