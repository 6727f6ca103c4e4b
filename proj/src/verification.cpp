#include "eubsim/verification.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "eubsim/information.hpp"

namespace eubsim {

namespace {

std::string padded(const char* prefix, int index) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%s%04d", prefix, index);
  return buf;
}

std::vector<double> uniform_grid(double t0, double t1, int steps) {
  std::vector<double> grid;
  grid.reserve(static_cast<std::size_t>(steps));
  for (int i = 0; i < steps; ++i) grid.push_back(t0 + (t1 - t0) * i / (steps - 1));
  return grid;
}

void append(std::vector<OracleReport>& into, std::vector<OracleReport> more) {
  into.insert(into.end(), std::make_move_iterator(more.begin()), std::make_move_iterator(more.end()));
}

// Worst case over a grid, reported as a single entry.
struct WorstCase {
  std::string quantity;
  double closed_form = 0.0;
  double oracle = 0.0;
  double diff = -1.0;

  void update(double value, double expected) {
    const double d = std::isfinite(value) ? std::abs(value - expected) : std::numeric_limits<double>::infinity();
    if (d > diff) {
      diff = d;
      closed_form = value;
      oracle = expected;
    }
  }
};

}  // namespace

OracleReport make_report(std::string case_id, std::string quantity, double closed_form, double oracle,
                         double tolerance) {
  OracleReport r;
  r.case_id = std::move(case_id);
  r.quantity = std::move(quantity);
  r.closed_form = closed_form;
  r.oracle = oracle;
  r.abs_diff = std::abs(closed_form - oracle);
  r.pass = r.abs_diff <= tolerance;
  return r;
}

std::vector<OracleReport> oracle_entropy_quantities(const std::string& case_id, const BellDiagonalState& s0,
                                                    const DecoherencePair& f, double tolerance) {
  const XState x = evolve_state(s0, f);
  const Eigen::Matrix4cd rho = as_matrix(x);
  const MeasurementSetting m;

  const double s_generic = conditional_entropy(rho);
  const double gap_generic = holevo_gap(rho, m);
  const double berta_generic = -std::log2(m.complementarity()) + s_generic;
  const double adabi_generic = berta_generic + std::max(0.0, gap_generic);
  const double lhs_generic = lhs_uncertainty(rho, m);

  return {
      make_report(case_id, "s_cond", conditional_entropy_closed(x), s_generic, tolerance),
      make_report(case_id, "holevo_gap", holevo_gap_closed(x), gap_generic, tolerance),
      make_report(case_id, "eub_adabi", eub_adabi(x), adabi_generic, tolerance),
      make_report(case_id, "eub_berta", eub_berta(x), berta_generic, tolerance),
      make_report(case_id, "lhs", lhs_uncertainty_closed(x), lhs_generic, tolerance),
  };
}

std::vector<OracleReport> oracle_factor_limits(const std::string& case_id, const ChainParams& p,
                                               std::span<const double> t_grid, double tolerance) {
  const ModeSpectrum spectrum(p);
  ChainParams uncoupled = p;
  uncoupled.g = 0.0;
  ChainParams isotropic = p;
  isotropic.gamma = 0.0;
  ChainParams symmetric = p;
  symmetric.delta_coupling = 0.0;
  const ModeSpectrum uncoupled_spectrum(uncoupled);
  const ModeSpectrum isotropic_spectrum(isotropic);
  const ModeSpectrum symmetric_spectrum(symmetric);

  WorstCase at_zero{"factor_t0"}, diagonal{"factor_mu_eq_nu"}, symmetry{"factor_symmetry"},
      zero_g{"factor_g0"}, zero_gamma{"factor_gamma0"}, zero_delta{"factor_f23_delta0"};
  for (int mu = 1; mu <= 4; ++mu) {
    for (int nu = 1; nu <= 4; ++nu) at_zero.update(spectrum.factor(mu, nu, 0.0), 1.0);
  }
  for (double t : t_grid) {
    for (int mu = 1; mu <= 4; ++mu) {
      diagonal.update(spectrum.factor(mu, mu, t), 1.0);
      for (int nu = mu + 1; nu <= 4; ++nu) {
        symmetry.update(spectrum.factor(mu, nu, t), spectrum.factor(nu, mu, t));
        zero_g.update(uncoupled_spectrum.factor(mu, nu, t), 1.0);
        zero_gamma.update(isotropic_spectrum.factor(mu, nu, t), 1.0);
      }
    }
    zero_delta.update(symmetric_spectrum.factor(2, 3, t), 1.0);
  }

  std::vector<OracleReport> out;
  for (const WorstCase* w : {&at_zero, &diagonal, &symmetry, &zero_g, &zero_gamma, &zero_delta}) {
    out.push_back(make_report(case_id, w->quantity, w->closed_form, w->oracle, tolerance));
  }
  return out;
}

std::vector<OracleReport> oracle_positivity(const std::string& case_id, const BellDiagonalState& s0,
                                            const ChainParams& p, std::span<const double> t_grid,
                                            double tolerance) {
  const ModeSpectrum spectrum(p);
  double min_eigenvalue = std::numeric_limits<double>::infinity();
  WorstCase trace{"trace"};
  for (double t : t_grid) {
    const XState x = evolve_state(s0, spectrum.pair(t));
    // Unclamped block eigenvalues; the clamp in eigenvalues_xstate would
    // hide exactly what this check looks for.
    const double outer = (x.d1 + x.d4) / 2.0;
    const double inner = (x.d2 + x.d3) / 2.0;
    min_eigenvalue = std::min({min_eigenvalue, outer - std::hypot((x.d1 - x.d4) / 2.0, x.gamma_c / 4.0),
                               inner - std::hypot((x.d2 - x.d3) / 2.0, x.omega_c / 4.0)});
    trace.update(x.d1 + x.d2 + x.d3 + x.d4, 1.0);
  }
  OracleReport positivity;
  positivity.case_id = case_id;
  positivity.quantity = "min_eigenvalue";
  positivity.closed_form = min_eigenvalue;
  positivity.oracle = 0.0;
  positivity.abs_diff = std::max(0.0, -min_eigenvalue);
  positivity.pass = min_eigenvalue >= -tolerance;
  return {positivity, make_report(case_id, trace.quantity, trace.closed_form, trace.oracle, tolerance)};
}

BellDiagonalState random_bell_state(std::mt19937_64& rng) {
  std::uniform_real_distribution<double> coord(-1.0, 1.0);
  for (;;) {
    const BellDiagonalState s{coord(rng), coord(rng), coord(rng)};
    const auto w = s.bell_weights();
    if (std::all_of(w.begin(), w.end(), [](double v) { return v >= 0.0; })) return s;
  }
}

bool VerificationResult::all_pass() const { return failures() == 0; }

std::size_t VerificationResult::failures() const {
  return static_cast<std::size_t>(std::count_if(reports.begin(), reports.end(), [](const auto& r) { return !r.pass; }));
}

VerificationResult run_verification(std::uint64_t seed, int cases, Tolerances tol) {
  VerificationResult result;
  result.seed = seed;
  result.cases = cases;
  result.tolerances = tol;
  auto& out = result.reports;

  const DecoherencePair coherent{0.0, 1.0, 1.0};
  append(out, oracle_entropy_quantities("named/phi_plus", BellDiagonalState::phi_plus(), coherent, tol.analytic));
  append(out, oracle_entropy_quantities("named/psi_plus", BellDiagonalState::psi_plus(), coherent, tol.analytic));
  append(out, oracle_entropy_quantities("named/maximally_mixed", BellDiagonalState::maximally_mixed(), coherent,
                                        tol.analytic));
  append(out, oracle_entropy_quantities("named/mixed", {1.0, -0.2, 0.2}, coherent, tol.numeric));

  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < cases; ++i) {
    const BellDiagonalState s = random_bell_state(rng);
    const double f14 = unit(rng);
    const double f23 = unit(rng);
    append(out, oracle_entropy_quantities(padded("random/", i), s, {0.0, f14, f23}, tol.numeric));
  }

  const ChainParams base;  // lambda=1, gamma=1, D=0, g=0.05, N=600, delta=0
  const auto grid100 = uniform_grid(0.0, 30.0, 100);
  const auto grid200 = uniform_grid(0.0, 30.0, 200);
  append(out, oracle_factor_limits("limits/default", base, grid100, tol.analytic));

  ChainParams generic = base;
  generic.N = 201;
  generic.lambda = 0.8;
  generic.gamma = 0.7;
  generic.D = 0.3;
  generic.g = 0.2;
  generic.delta_coupling = 0.4;
  append(out, oracle_factor_limits("limits/generic_literal", generic, grid100, tol.analytic));
  generic.angle_convention = AngleConvention::QuadrantAware;
  append(out, oracle_factor_limits("limits/generic_quadrant", generic, grid100, tol.analytic));

  append(out, oracle_positivity("positivity/phi_plus", BellDiagonalState::phi_plus(), base, grid200, tol.analytic));
  append(out, oracle_positivity("positivity/mixed", {1.0, -0.2, 0.2}, base, grid200, tol.analytic));
  append(out, oracle_positivity("positivity/maximally_mixed", BellDiagonalState::maximally_mixed(), base,
                                grid200, tol.analytic));
  return result;
}

nlohmann::json to_json(const OracleReport& r) {
  return nlohmann::json{{"case_id", r.case_id},     {"quantity", r.quantity}, {"closed_form", r.closed_form},
                        {"oracle", r.oracle},       {"abs_diff", r.abs_diff}, {"pass", r.pass}};
}

nlohmann::json to_json(const VerificationResult& r) {
  nlohmann::json reports = nlohmann::json::array();
  for (const auto& rep : r.reports) reports.push_back(to_json(rep));
  return nlohmann::json{{"seed", r.seed},
                        {"cases", r.cases},
                        {"tolerance_analytic", r.tolerances.analytic},
                        {"tolerance_numeric", r.tolerances.numeric},
                        {"total", r.reports.size()},
                        {"failures", r.failures()},
                        {"pass", r.all_pass()},
                        {"reports", std::move(reports)}};
}

}  // namespace eubsim
