// Drives the eubsim executable end to end. EUBSIM_CLI is set by CMake.

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

#include "eubsim/scenario.hpp"

namespace fs = std::filesystem;

namespace {

int run(const std::string& args) {
  const std::string cmd = std::string(EUBSIM_CLI) + " " + args + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

struct TempDir {
  fs::path path;
  TempDir() {
    path = fs::temp_directory_path() / ("eubsim_cli_" + std::to_string(::getpid()));
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  void write(const std::string& name, const std::string& text) const { std::ofstream(path / name) << text; }
};

}  // namespace

TEST_CASE("verify exit codes") {
  TempDir dir;
  CHECK(run("verify --seed 7 --cases 1 --out " + (dir.path / "r.json").string()) == 0);
  const auto report = nlohmann::json::parse(slurp(dir.path / "r.json"));
  CHECK(report["pass"] == true);
  CHECK(report["seed"] == 7);
  CHECK(run("verify --seed 7 --cases 1 --tolerance 0 --out " + (dir.path / "bad.json").string()) == 1);
  CHECK(nlohmann::json::parse(slurp(dir.path / "bad.json"))["pass"] == false);
  CHECK(run("verify --cases 0") == 2);
}

TEST_CASE("trace writes reproducible csv") {
  TempDir dir;
  dir.write("cfg.json", R"({"chain": {"N": 201}, "state": {"r1": 1, "r2": -0.2, "r3": 0.2}, "t_steps": 40})");
  const auto cfg = (dir.path / "cfg.json").string();
  REQUIRE(run("trace --config " + cfg + " --out " + (dir.path / "a.csv").string()) == 0);
  REQUIRE(run("trace --config " + cfg + " --out " + (dir.path / "b.csv").string()) == 0);
  const std::string a = slurp(dir.path / "a.csv");
  CHECK(a == slurp(dir.path / "b.csv"));

  std::istringstream in(a);
  const auto rows = eubsim::read_csv(in);
  CHECK(rows == eubsim::run_trace(eubsim::load_config(cfg)));
}

TEST_CASE("sweep writes one file per value") {
  TempDir dir;
  dir.write("sweep.json",
            R"({"chain": {"N": 101}, "t_steps": 20, "sweep": {"parameter": "D", "values": [0.4, 0, 0.2]}})");
  const auto out = dir.path / "out";
  REQUIRE(run("sweep --config " + (dir.path / "sweep.json").string() + " --out-dir " + out.string()) == 0);
  for (const char* name : {"D_0.csv", "D_0.2.csv", "D_0.4.csv"}) CHECK(fs::exists(out / name));
}

TEST_CASE("config errors exit with status 2") {
  TempDir dir;
  dir.write("bad.json", R"({"chain": {"N": 1}})");
  dir.write("broken.json", "{not json");
  dir.write("sweep.json", R"({"sweep": {"parameter": "g", "values": [0.1]}})");
  CHECK(run("trace --config " + (dir.path / "bad.json").string()) == 2);
  CHECK(run("trace --config " + (dir.path / "broken.json").string()) == 2);
  CHECK(run("trace --config " + (dir.path / "missing.json").string()) == 2);
  CHECK(run("trace --config " + (dir.path / "sweep.json").string()) == 2);
  CHECK(run("sweep --config " + (dir.path / "bad.json").string()) == 2);
  CHECK(run("nonsense") == 2);
}
