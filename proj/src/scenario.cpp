#include "eubsim/scenario.hpp"

#include <algorithm>
#include <atomic>
#include <charconv>
#include <cmath>
#include <exception>
#include <fstream>
#include <istream>
#include <ostream>
#include <set>
#include <sstream>
#include <thread>

#include "eubsim/errors.hpp"
#include "eubsim/information.hpp"

namespace eubsim {

namespace {

using nlohmann::json;

constexpr std::pair<SweepParameter, std::string_view> kSweepNames[] = {
    {SweepParameter::Lambda, "lambda"}, {SweepParameter::D, "D"},
    {SweepParameter::N, "N"},           {SweepParameter::Gamma, "gamma"},
    {SweepParameter::DeltaCoupling, "delta_coupling"}, {SweepParameter::G, "g"},
};

void reject_unknown_keys(const json& obj, const std::string& where, std::initializer_list<std::string_view> known) {
  if (!obj.is_object()) throw ConfigError(where + ": expected a JSON object");
  for (const auto& item : obj.items()) {
    if (std::find(known.begin(), known.end(), item.key()) == known.end()) {
      throw ConfigError(where + ": unknown field '" + item.key() + "'");
    }
  }
}

double read_real(const json& obj, const char* key, const std::string& where, double fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number()) throw ConfigError(where + "." + key + ": expected a number");
  const double value = v.get<double>();
  if (!std::isfinite(value)) throw ConfigError(where + "." + key + ": must be finite");
  return value;
}

int read_int(const json& obj, const char* key, const std::string& where, int fallback) {
  if (!obj.contains(key)) return fallback;
  const json& v = obj.at(key);
  if (!v.is_number_integer()) throw ConfigError(where + "." + key + ": expected an integer");
  return v.get<int>();
}

AngleConvention parse_convention(const json& v) {
  if (!v.is_string()) throw ConfigError("chain.angle_convention: expected a string");
  const auto s = v.get<std::string>();
  if (s == "PaperLiteral") return AngleConvention::PaperLiteral;
  if (s == "QuadrantAware") return AngleConvention::QuadrantAware;
  throw ConfigError("chain.angle_convention: expected PaperLiteral or QuadrantAware, got '" + s + "'");
}

std::string_view convention_name(AngleConvention c) {
  return c == AngleConvention::PaperLiteral ? "PaperLiteral" : "QuadrantAware";
}

TraceRow make_row(const DecoherencePair& f, const XState& x, const UncertaintyReport& r) {
  return TraceRow{f.t,          f.f14,       f.f23,       x.gamma_c,   x.omega_c,
                  r.s_cond,     r.holevo_gap, r.eub_adabi, r.eub_berta, r.lhs};
}

double parse_field(std::string_view text, std::size_t line) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    throw ConfigError("csv line " + std::to_string(line) + ": cannot parse '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace

std::string_view to_string(SweepParameter p) {
  for (const auto& [param, name] : kSweepNames) {
    if (param == p) return name;
  }
  return "?";
}

SweepParameter parse_sweep_parameter(std::string_view name) {
  for (const auto& [param, n] : kSweepNames) {
    if (n == name) return param;
  }
  throw ConfigError("sweep.parameter: unknown parameter '" + std::string(name) +
                    "' (expected lambda, D, N, gamma, delta_coupling or g)");
}

void ScenarioConfig::validate() const {
  try {
    chain.validate();
  } catch (const InvalidParams& e) {
    throw ConfigError(std::string("chain: ") + e.what());
  }
  try {
    state.validate();
  } catch (const InvalidState& e) {
    throw ConfigError(std::string("state: ") + e.what());
  }
  if (!std::isfinite(t_start) || !std::isfinite(t_end)) throw ConfigError("t_start/t_end: must be finite");
  if (t_start < 0.0) throw ConfigError("t_start: must be >= 0");
  if (!(t_start < t_end)) throw ConfigError("t_end: must be greater than t_start");
  if (t_steps < 2) throw ConfigError("t_steps: must be >= 2");
  if (sweep) {
    if (sweep->values.empty()) throw ConfigError("sweep.values: must not be empty");
    std::set<double> seen;
    for (double v : sweep->values) {
      if (!std::isfinite(v)) throw ConfigError("sweep.values: must be finite");
      if (!seen.insert(v).second) throw ConfigError("sweep.values: duplicate value " + format_double(v));
      if (sweep->parameter == SweepParameter::N && (v != std::floor(v) || v < 3.0 || v > 1e9)) {
        throw ConfigError("sweep.values: N must be an integer >= 3, got " + format_double(v));
      }
    }
  }
}

std::vector<double> ScenarioConfig::time_grid() const {
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(t_steps));
  const double span = t_end - t_start;
  for (int i = 0; i < t_steps; ++i) {
    grid.push_back(i == t_steps - 1 ? t_end : t_start + span * i / (t_steps - 1));
  }
  return grid;
}

ScenarioConfig ScenarioConfig::with_sweep_value(double value) const {
  ScenarioConfig out = *this;
  out.sweep.reset();
  if (!sweep) return out;
  switch (sweep->parameter) {
    case SweepParameter::Lambda: out.chain.lambda = value; break;
    case SweepParameter::D: out.chain.D = value; break;
    case SweepParameter::N: out.chain.N = static_cast<int>(value); break;
    case SweepParameter::Gamma: out.chain.gamma = value; break;
    case SweepParameter::DeltaCoupling: out.chain.delta_coupling = value; break;
    case SweepParameter::G: out.chain.g = value; break;
  }
  return out;
}

ScenarioConfig parse_config(const json& doc) {
  reject_unknown_keys(doc, "config", {"chain", "state", "t_start", "t_end", "t_steps", "sweep"});
  ScenarioConfig cfg;
  if (doc.contains("chain")) {
    const json& c = doc.at("chain");
    reject_unknown_keys(c, "chain", {"N", "gamma", "lambda", "D", "g", "delta_coupling", "angle_convention"});
    cfg.chain.N = read_int(c, "N", "chain", cfg.chain.N);
    cfg.chain.gamma = read_real(c, "gamma", "chain", cfg.chain.gamma);
    cfg.chain.lambda = read_real(c, "lambda", "chain", cfg.chain.lambda);
    cfg.chain.D = read_real(c, "D", "chain", cfg.chain.D);
    cfg.chain.g = read_real(c, "g", "chain", cfg.chain.g);
    cfg.chain.delta_coupling = read_real(c, "delta_coupling", "chain", cfg.chain.delta_coupling);
    if (c.contains("angle_convention")) cfg.chain.angle_convention = parse_convention(c.at("angle_convention"));
  }
  if (doc.contains("state")) {
    const json& s = doc.at("state");
    reject_unknown_keys(s, "state", {"r1", "r2", "r3"});
    cfg.state.r1 = read_real(s, "r1", "state", cfg.state.r1);
    cfg.state.r2 = read_real(s, "r2", "state", cfg.state.r2);
    cfg.state.r3 = read_real(s, "r3", "state", cfg.state.r3);
  }
  cfg.t_start = read_real(doc, "t_start", "config", cfg.t_start);
  cfg.t_end = read_real(doc, "t_end", "config", cfg.t_end);
  cfg.t_steps = read_int(doc, "t_steps", "config", cfg.t_steps);
  if (doc.contains("sweep") && !doc.at("sweep").is_null()) {
    const json& s = doc.at("sweep");
    reject_unknown_keys(s, "sweep", {"parameter", "values"});
    if (!s.contains("parameter") || !s.at("parameter").is_string()) {
      throw ConfigError("sweep.parameter: expected a string");
    }
    if (!s.contains("values") || !s.at("values").is_array()) throw ConfigError("sweep.values: expected an array");
    Sweep sweep;
    sweep.parameter = parse_sweep_parameter(s.at("parameter").get<std::string>());
    for (const json& v : s.at("values")) {
      if (!v.is_number()) throw ConfigError("sweep.values: expected numbers");
      sweep.values.push_back(v.get<double>());
    }
    cfg.sweep = std::move(sweep);
  }
  cfg.validate();
  return cfg;
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  json doc;
  try {
    doc = json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError("config '" + path + "' is not valid JSON: " + e.what());
  }
  return parse_config(doc);
}

json to_json(const ScenarioConfig& cfg) {
  json doc{
      {"chain",
       {{"N", cfg.chain.N},
        {"gamma", cfg.chain.gamma},
        {"lambda", cfg.chain.lambda},
        {"D", cfg.chain.D},
        {"g", cfg.chain.g},
        {"delta_coupling", cfg.chain.delta_coupling},
        {"angle_convention", convention_name(cfg.chain.angle_convention)}}},
      {"state", {{"r1", cfg.state.r1}, {"r2", cfg.state.r2}, {"r3", cfg.state.r3}}},
      {"t_start", cfg.t_start},
      {"t_end", cfg.t_end},
      {"t_steps", cfg.t_steps},
  };
  if (cfg.sweep) doc["sweep"] = {{"parameter", to_string(cfg.sweep->parameter)}, {"values", cfg.sweep->values}};
  return doc;
}

std::vector<TraceRow> run_trace(const ScenarioConfig& cfg) {
  cfg.validate();
  const ModeSpectrum spectrum(cfg.chain);
  const MeasurementSetting setting;
  std::vector<TraceRow> rows;
  rows.reserve(static_cast<std::size_t>(cfg.t_steps));
  for (double t : cfg.time_grid()) {
    const DecoherencePair f = spectrum.pair(t);
    const XState x = evolve_state(cfg.state, f);
    rows.push_back(make_row(f, x, report(t, x, setting)));
  }
  return rows;
}

SweepResult run_sweep(const ScenarioConfig& cfg, int threads) {
  cfg.validate();
  if (!cfg.sweep) throw ConfigError("sweep: missing for a sweep run");
  std::vector<double> values = cfg.sweep->values;
  std::sort(values.begin(), values.end());

  std::vector<ScenarioConfig> jobs;
  for (double v : values) {
    jobs.push_back(cfg.with_sweep_value(v));
    jobs.back().validate();
  }

  SweepResult result(values.size());
  std::vector<std::exception_ptr> errors(values.size());
  auto work = [&](std::size_t i) {
    try {
      result[i] = {values[i], run_trace(jobs[i])};
    } catch (...) {
      errors[i] = std::current_exception();
    }
  };

  std::size_t workers = threads > 0 ? static_cast<std::size_t>(threads)
                                    : std::max(1u, std::thread::hardware_concurrency());
  workers = std::min(workers, values.size());
  if (workers <= 1) {
    for (std::size_t i = 0; i < values.size(); ++i) work(i);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t i = next++; i < values.size(); i = next++) work(i);
      });
    }
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return result;
}

std::string format_double(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ec == std::errc() ? ptr : buf);
}

void write_csv(std::ostream& out, const std::vector<TraceRow>& rows) {
  out << kCsvHeader << '\n';
  for (const TraceRow& r : rows) {
    const double fields[] = {r.t,      r.f14,        r.f23,       r.gamma_c,   r.omega_c,
                             r.s_cond, r.holevo_gap, r.eub_adabi, r.eub_berta, r.lhs};
    bool first = true;
    for (double f : fields) {
      if (!first) out << ',';
      out << format_double(f);
      first = false;
    }
    out << '\n';
  }
}

std::vector<TraceRow> read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) throw ConfigError("csv: missing or unexpected header");
  std::vector<TraceRow> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    double fields[10];
    std::size_t count = 0;
    std::string_view rest(line);
    while (true) {
      const auto comma = rest.find(',');
      if (count == 10) throw ConfigError("csv line " + std::to_string(line_no) + ": too many fields");
      fields[count++] = parse_field(rest.substr(0, comma), line_no);
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    if (count != 10) throw ConfigError("csv line " + std::to_string(line_no) + ": expected 10 fields");
    rows.push_back(TraceRow{fields[0], fields[1], fields[2], fields[3], fields[4], fields[5], fields[6], fields[7],
                            fields[8], fields[9]});
  }
  return rows;
}

std::string sweep_file_name(SweepParameter p, double value) {
  return std::string(to_string(p)) + "_" + format_double(value) + ".csv";
}

}  // namespace eubsim
