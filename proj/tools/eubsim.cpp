// eubsim: entropic uncertainty bound of two qubits coupled to an XY spin
// chain with Dzyaloshinskii-Moriya interaction.
//
//   eubsim trace  --config cfg.json --out trace.csv
//   eubsim sweep  --config cfg.json --out-dir results/
//   eubsim verify --seed 42 --cases 1000 [--out report.json]
//
// Exit codes: 0 success, 1 verification failure, 2 config error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "eubsim/errors.hpp"
#include "eubsim/scenario.hpp"
#include "eubsim/verification.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitConfig = 2;

void write_rows(const std::string& path, const std::vector<eubsim::TraceRow>& rows) {
  if (path == "-") {
    eubsim::write_csv(std::cout, rows);
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw eubsim::ConfigError("cannot open output file '" + path + "'");
  eubsim::write_csv(out, rows);
}

int run_trace_command(const std::string& config_path, const std::string& out_path) {
  const auto cfg = eubsim::load_config(config_path);
  if (cfg.sweep) throw eubsim::ConfigError("sweep: present in config; use the sweep subcommand");
  write_rows(out_path, eubsim::run_trace(cfg));
  return kExitOk;
}

int run_sweep_command(const std::string& config_path, const std::string& out_dir, int threads) {
  const auto cfg = eubsim::load_config(config_path);
  if (!cfg.sweep) throw eubsim::ConfigError("sweep: missing; use the trace subcommand for a single run");
  const auto result = eubsim::run_sweep(cfg, threads);
  std::filesystem::create_directories(out_dir);
  for (const auto& [value, rows] : result) {
    const auto path = std::filesystem::path(out_dir) / eubsim::sweep_file_name(cfg.sweep->parameter, value);
    write_rows(path.string(), rows);
    std::cerr << "wrote " << path.string() << '\n';
  }
  return kExitOk;
}

int run_verify_command(std::uint64_t seed, int cases, std::optional<double> tolerance, const std::string& out_path) {
  if (cases < 1) throw eubsim::ConfigError("--cases: must be >= 1");
  eubsim::Tolerances tol;
  if (tolerance) tol.analytic = tol.numeric = *tolerance;
  const auto result = eubsim::run_verification(seed, cases, tol);
  const std::string text = eubsim::to_json(result).dump(2) + "\n";
  if (out_path == "-") {
    std::cout << text;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw eubsim::ConfigError("cannot open output file '" + out_path + "'");
    out << text;
  }
  std::cerr << result.reports.size() - result.failures() << "/" << result.reports.size() << " checks passed\n";
  return result.all_pass() ? kExitOk : kExitVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Entropic uncertainty bound dynamics for two qubits coupled to an XY spin chain"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_path = "-";
  std::string out_dir = ".";
  int threads = 0;
  std::uint64_t seed = 42;
  int cases = 1000;
  std::optional<double> tolerance;

  auto* trace = app.add_subcommand("trace", "Single trajectory to CSV");
  trace->add_option("--config", config_path, "JSON scenario config")->required();
  trace->add_option("--out", out_path, "Output CSV path, '-' for stdout");

  auto* sweep = app.add_subcommand("sweep", "One trajectory per sweep value, one CSV each");
  sweep->add_option("--config", config_path, "JSON scenario config with a sweep block")->required();
  sweep->add_option("--out-dir", out_dir, "Directory for the CSV files");
  sweep->add_option("--threads", threads, "Worker threads (0 = hardware concurrency)");

  auto* verify = app.add_subcommand("verify", "Closed-form vs oracle verification suite");
  verify->add_option("--seed", seed, "RNG seed for random cases");
  verify->add_option("--cases", cases, "Number of random cases");
  verify->add_option("--tolerance", tolerance, "Override every tolerance (harness self-test)");
  verify->add_option("--out", out_path, "JSON report path, '-' for stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*trace) return run_trace_command(config_path, out_path);
    if (*sweep) return run_sweep_command(config_path, out_dir, threads);
    return run_verify_command(seed, cases, tolerance, out_path);
  } catch (const eubsim::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kExitConfig;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitConfig;
  }
}
