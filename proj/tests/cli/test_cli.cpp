// End-to-end tests of the command-line tool, run as a subprocess. The path
// to the binary arrives in RESOKIT_CLI_PATH (set by the test harness).
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <complex>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <sys/wait.h>
#include <vector>

#include "json.hpp"
#include "resokit/version.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

struct ScopedTempDir {
  fs::path path;
  ScopedTempDir() {
    std::mt19937_64 rng{std::random_device{}()};
    std::ostringstream name;
    name << "resokit-cli-test-" << std::hex << rng();
    path = fs::temp_directory_path() / name.str();
    fs::create_directories(path);
  }
  ~ScopedTempDir() {
    std::error_code ec;
    fs::remove_all(path, ec);
  }
};

std::string cli_path() {
  const char* path = std::getenv("RESOKIT_CLI_PATH");
  REQUIRE_MESSAGE(path != nullptr,
                  "RESOKIT_CLI_PATH must point at the resokit binary");
  return path;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

RunResult run_cli(const std::string& args) {
  static int counter = 0;
  static ScopedTempDir io_dir;
  const fs::path out_file = io_dir.path / ("out" + std::to_string(counter));
  const fs::path err_file = io_dir.path / ("err" + std::to_string(counter));
  ++counter;
  const std::string cmd = "'" + cli_path() + "' " + args + " > '" +
                          out_file.string() + "' 2> '" + err_file.string() + "'";
  const int status = std::system(cmd.c_str());
  RunResult result;
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  result.out = slurp(out_file);
  result.err = slurp(err_file);
  return result;
}

// Split a CSV line on commas (no quoting in our outputs).
std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream stream(line);
  std::string field;
  while (std::getline(stream, field, ',')) fields.push_back(field);
  return fields;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::stringstream stream(text);
  std::string line;
  while (std::getline(stream, line)) lines.push_back(line);
  return lines;
}

}  // namespace

TEST_CASE("--version prints the library version") {
  const auto result = run_cli("--version");
  CHECK(result.exit_code == 0);
  CHECK(result.out.find(resokit::kVersion) != std::string::npos);
}

TEST_CASE("invalid flags exit with status 2") {
  CHECK(run_cli("resonances --bogus-flag").exit_code == 2);
  CHECK(run_cli("resonances --bc robin").exit_code == 2);
  CHECK(run_cli("resonances --rho -1").exit_code == 2);
  CHECK(run_cli("").exit_code == 2);  // a subcommand is required
  CHECK(run_cli("pipeline --invariants 1,2").exit_code == 2);
}

TEST_CASE("resonances: closed-form content and cache determinism") {
  ScopedTempDir tmp;
  const std::string cache = " --cache-dir '" + (tmp.path / "cache").string() + "'";

  const auto first = run_cli("resonances --d 3 --rho 1 --lmax 1" + cache);
  REQUIRE(first.exit_code == 0);
  const json doc = json::parse(first.out);
  CHECK(doc.at("schema") == "resokit-resonances-v1");
  CHECK(doc.at("d") == 3);
  CHECK(doc.at("l_max") == 1);
  const auto& entries = doc.at("entries");
  REQUIRE(entries.size() == 3);
  long total = 0;
  for (const auto& e : entries) total += e.at("multiplicity").get<long>();
  CHECK(total == 7);
  CHECK(std::abs(entries[0].at("re").get<double>() - 0.0) <= 1e-12);
  CHECK(std::abs(entries[0].at("im").get<double>() + 1.0) <= 1e-12);

  // Second run is served from the cache, byte for byte.
  const auto second = run_cli("resonances --d 3 --rho 1 --lmax 1" + cache);
  CHECK(second.exit_code == 0);
  CHECK(second.out == first.out);

  const auto bigger = run_cli("resonances --d 3 --rho 1 --lmax 2" + cache);
  REQUIRE(bigger.exit_code == 0);
  const json doc2 = json::parse(bigger.out);
  CHECK(doc2.at("entries").size() == 6);
  long total2 = 0;
  for (const auto& e : doc2.at("entries")) total2 += e.at("multiplicity").get<long>();
  CHECK(total2 == 22);
}

TEST_CASE("resonances: --out writes the same bytes as stdout") {
  ScopedTempDir tmp;
  const fs::path out = tmp.path / "set.json";
  const auto to_stdout = run_cli("resonances --lmax 1 --no-cache");
  const auto to_file =
      run_cli("resonances --lmax 1 --no-cache --out '" + out.string() + "'");
  CHECK(to_file.exit_code == 0);
  CHECK(to_file.out.empty());
  CHECK(slurp(out) == to_stdout.out);
}

TEST_CASE("resonances: corrupted cache entries are recomputed") {
  ScopedTempDir tmp;
  const std::string cache = " --cache-dir '" + tmp.path.string() + "'";
  const auto first = run_cli("resonances --lmax 1" + cache);
  REQUIRE(first.exit_code == 0);

  // There is exactly one cache file; vandalize it.
  fs::path file;
  for (const auto& entry : fs::directory_iterator(tmp.path)) file = entry.path();
  REQUIRE(!file.empty());
  {
    std::ofstream out(file, std::ios::binary | std::ios::trunc);
    out << "{\"schema\": \"resokit-resonances-v1\", \"garbage\": true}";
  }
  const auto second = run_cli("resonances --lmax 1" + cache);
  CHECK(second.exit_code == 0);
  CHECK(second.out == first.out);
  CHECK(slurp(file) == first.out);  // healed on disk
}

TEST_CASE("scatdet: direct mode emits a unitary |s| column") {
  const auto result = run_cli(
      "scatdet --d 3 --rho 1 --lmax 30 --mode direct --lambda-min 0.2 "
      "--lambda-max 1.4 --n 7 --no-cache");
  REQUIRE(result.exit_code == 0);
  const auto lines = lines_of(result.out);
  REQUIRE(lines.size() == 8);
  CHECK(lines[0] == "lambda,direct_abs,direct_arg");
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto fields = split_csv(lines[i]);
    REQUIRE(fields.size() == 3);
    CHECK(std::abs(std::stod(fields[1]) - 1.0) <= 1e-9);
  }
}

TEST_CASE("scatdet: both mode appends the fitted constant") {
  ScopedTempDir tmp;
  const auto result = run_cli(
      "scatdet --d 3 --rho 1 --lmax 25 --mode both --lambda-min 0.2 "
      "--lambda-max 1.5 --n 4 --cache-dir '" + tmp.path.string() + "'");
  REQUIRE(result.exit_code == 0);
  const auto lines = lines_of(result.out);
  REQUIRE(lines.size() == 6);
  CHECK(lines[0] == "lambda,direct_abs,direct_arg,product_abs,product_arg");
  REQUIRE(lines.back().rfind("# c = ", 0) == 0);
  const double c = std::stod(lines.back().substr(6));
  CHECK(std::abs(c - 1.0 / 3.0) <= 1e-3);
  for (std::size_t i = 1; i + 1 < lines.size(); ++i) {
    const auto fields = split_csv(lines[i]);
    REQUIRE(fields.size() == 5);
    // Direct and product phases agree after the fit.
    CHECK(std::abs(std::stod(fields[2]) - std::stod(fields[4])) <= 1e-6);
  }
}

TEST_CASE("scatdet: an unreachable truncation exits with status 3") {
  const auto result = run_cli(
      "scatdet --lmax 2 --mode direct --lambda-min 4 --lambda-max 5 --n 3 "
      "--no-cache");
  CHECK(result.exit_code == 3);
  CHECK(result.err.find("error:") != std::string::npos);
}

TEST_CASE("pipeline: missing calibration exits with status 4") {
  ScopedTempDir tmp;
  const auto result = run_cli("pipeline --lmax 4 --out-dir '" +
                              (tmp.path / "run").string() + "' --no-cache");
  CHECK(result.exit_code == 4);
  CHECK(result.err.find("--calibrate") != std::string::npos);
}

TEST_CASE("pipeline: identification straight from invariants") {
  // 8pi, 16pi, 448pi: two unit balls.
  const auto good = run_cli(
      "pipeline --invariants "
      "25.132741228718345,50.265482457436690,1407.4335088087817");
  REQUIRE(good.exit_code == 0);
  CHECK(good.out.find("union_of_equal_balls: true, m=2, rho=1.00") !=
        std::string::npos);

  // The prolate (1,1,2) ellipsoid is not a ball union.
  const auto bad = run_cli(
      "pipeline --invariants 21.4784353279,34.6875308134,876.8309162022");
  REQUIRE(bad.exit_code == 0);
  CHECK(bad.out.find("union_of_equal_balls: false") != std::string::npos);
}

TEST_CASE("pipeline: identify summary is also written as JSON") {
  ScopedTempDir tmp;
  const auto result = run_cli(
      "pipeline --invariants "
      "25.132741228718345,50.265482457436690,1407.4335088087817 --out-dir '" +
      tmp.path.string() + "'");
  REQUIRE(result.exit_code == 0);
  const json doc = json::parse(slurp(tmp.path / "identify.json"));
  CHECK(doc.at("is_ball_union") == true);
  CHECK(doc.at("m") == 2);
  CHECK(std::abs(doc.at("rho").get<double>() - 1.0) <= 1e-9);
}

TEST_CASE("wave: CSV scan with explicit widths") {
  const auto result = run_cli(
      "wave --lmax 8 --tmin 0.5 --tmax 2 --nt 4 --eps 0.05,0.03,0.02 "
      "--no-cache");
  REQUIRE(result.exit_code == 0);
  const auto lines = lines_of(result.out);
  REQUIRE(lines.size() == 5);
  const auto header = split_csv(lines[0]);
  REQUIRE(header.size() == 5);
  CHECK(header[0] == "t");
  CHECK(header[1] == "exponent");
  for (std::size_t i = 1; i < lines.size(); ++i) {
    const auto fields = split_csv(lines[i]);
    REQUIRE(fields.size() == 5);
    CHECK(std::isfinite(std::stod(fields[1])));
    for (int j = 2; j < 5; ++j) CHECK(std::stod(fields[j]) >= 0.0);
  }
}
