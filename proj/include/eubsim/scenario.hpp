#pragma once

// Trace and sweep engine behind the command-line tool.

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"

#include "eubsim/chain.hpp"
#include "eubsim/dynamics.hpp"

namespace eubsim {

enum class SweepParameter { Lambda, D, N, Gamma, DeltaCoupling, G };

std::string_view to_string(SweepParameter p);
SweepParameter parse_sweep_parameter(std::string_view name);

struct Sweep {
  SweepParameter parameter = SweepParameter::Lambda;
  std::vector<double> values;
};

/// Defaults: Bell state
/// (|00>+|11>)/sqrt(2), lambda=1, gamma=1, delta_coupling=0, g=0.05,
/// N=600, D=0, t in [0, 30] with 600 points.
struct ScenarioConfig {
  ChainParams chain;
  BellDiagonalState state = BellDiagonalState::phi_plus();
  double t_start = 0.0;
  double t_end = 30.0;
  int t_steps = 600;
  std::optional<Sweep> sweep;

  /// Throws ConfigError naming the offending field.
  void validate() const;

  std::vector<double> time_grid() const;

  /// Copy with the sweep parameter set to `value` and the sweep removed.
  ScenarioConfig with_sweep_value(double value) const;
};

ScenarioConfig parse_config(const nlohmann::json& doc);
ScenarioConfig load_config(const std::string& path);
nlohmann::json to_json(const ScenarioConfig& cfg);

struct TraceRow {
  double t = 0.0;
  double f14 = 1.0;
  double f23 = 1.0;
  double gamma_c = 0.0;
  double omega_c = 0.0;
  double s_cond = 0.0;
  double holevo_gap = 0.0;
  double eub_adabi = 0.0;
  double eub_berta = 0.0;
  double lhs = 0.0;

  bool operator==(const TraceRow&) const = default;
};

std::vector<TraceRow> run_trace(const ScenarioConfig& cfg);

using SweepResult = std::vector<std::pair<double, std::vector<TraceRow>>>;

/// One trace per sweep value, sorted by value. `threads` <= 1 runs
/// sequentially; results do not depend on the thread count.
SweepResult run_sweep(const ScenarioConfig& cfg, int threads = 0);

inline constexpr std::string_view kCsvHeader = "t,f14,f23,gamma,omega,s_cond,holevo_gap,eub_adabi,eub_berta,lhs";

/// Shortest decimal that round-trips to the same double.
std::string format_double(double v);

void write_csv(std::ostream& out, const std::vector<TraceRow>& rows);
std::vector<TraceRow> read_csv(std::istream& in);

/// e.g. "lambda_0.5.csv", "N_600.csv"
std::string sweep_file_name(SweepParameter p, double value);

}  // namespace eubsim
