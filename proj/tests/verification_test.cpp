#include <algorithm>

#include "doctest.h"

#include "eubsim/verification.hpp"

using namespace eubsim;

namespace {

double max_diff(const std::vector<OracleReport>& reports) {
  double worst = 0.0;
  for (const auto& r : reports) worst = std::max(worst, r.abs_diff);
  return worst;
}

bool all_pass(const std::vector<OracleReport>& reports) {
  return std::all_of(reports.begin(), reports.end(), [](const auto& r) { return r.pass; });
}

std::vector<double> grid(int n) {
  std::vector<double> g;
  for (int i = 0; i < n; ++i) g.push_back(30.0 * i / (n - 1));
  return g;
}

}  // namespace

TEST_CASE("make_report pass flag follows the tolerance") {
  CHECK(make_report("c", "q", 1.0, 1.0 + 1e-10, 1e-9).pass);
  CHECK_FALSE(make_report("c", "q", 1.0, 1.0 + 1e-8, 1e-9).pass);
  CHECK(make_report("c", "q", 2.0, 2.0, 0.0).pass);
}

TEST_CASE("entropy oracles on named states") {
  const DecoherencePair coherent{0.0, 1.0, 1.0};
  auto phi = oracle_entropy_quantities("phi", BellDiagonalState::phi_plus(), coherent, 1e-12);
  CHECK(phi.size() == 5);
  CHECK(all_pass(phi));
  CHECK(max_diff(phi) < 1e-12);

  auto psi = oracle_entropy_quantities("psi", BellDiagonalState::psi_plus(), coherent, 1e-12);
  CHECK(all_pass(psi));
}

TEST_CASE("entropy oracles on random cases") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int i = 0; i < 200; ++i) {
    const auto s = random_bell_state(rng);
    const auto w = s.bell_weights();
    CHECK(*std::min_element(w.begin(), w.end()) >= 0.0);
    const auto reports = oracle_entropy_quantities("r", s, {0.0, unit(rng), unit(rng)});
    CHECK(max_diff(reports) < 1e-9);
  }
}

TEST_CASE("factor limit oracles") {
  ChainParams base;
  auto reports = oracle_factor_limits("default", base, grid(100));
  CHECK(reports.size() == 6);
  CHECK(all_pass(reports));

  ChainParams p;
  p.N = 77;
  p.lambda = 0.6;
  p.gamma = 1.4;
  p.D = -0.3;
  p.g = 0.25;
  p.delta_coupling = -0.7;
  CHECK(all_pass(oracle_factor_limits("generic", p, grid(50))));
  p.g = 0.0;
  const auto uncoupled = oracle_factor_limits("g0", p, grid(50));
  CHECK(all_pass(uncoupled));
}

TEST_CASE("positivity oracles") {
  ChainParams base;
  CHECK(all_pass(oracle_positivity("phi", BellDiagonalState::phi_plus(), base, grid(200))));
  CHECK(all_pass(oracle_positivity("mixed", {1.0, -0.2, 0.2}, base, grid(200))));
  ChainParams other = base;
  other.lambda = 0.3;
  other.D = 0.9;
  CHECK(all_pass(oracle_positivity("mm", BellDiagonalState::maximally_mixed(), other, grid(20))));
}

TEST_CASE("verification suite") {
  const auto small = run_verification(7, 1);
  CHECK(small.all_pass());
  CHECK(small.failures() == 0);

  const auto a = run_verification(11, 25);
  const auto b = run_verification(11, 25);
  CHECK(to_json(a).dump() == to_json(b).dump());
  CHECK(a.all_pass());

  // A zero tolerance must trip on eigensolver-mediated comparisons.
  const auto strict = run_verification(11, 25, Tolerances{0.0, 0.0});
  CHECK_FALSE(strict.all_pass());
  CHECK(to_json(strict)["pass"] == false);

  const auto json = to_json(a);
  CHECK(json["seed"] == 11);
  CHECK(json["reports"].size() == a.reports.size());
  CHECK(json["reports"][0].contains("abs_diff"));
}
