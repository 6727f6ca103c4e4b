#pragma once

// Oracle harness: compares the closed forms against the generic
// definition-level pipeline and checks the analytic limits of the
// decoherence factor. Failures are recorded, never thrown.

#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "eubsim/chain.hpp"
#include "eubsim/dynamics.hpp"

namespace eubsim {

struct OracleReport {
  std::string case_id;
  std::string quantity;
  double closed_form = 0.0;
  double oracle = 0.0;
  double abs_diff = 0.0;
  bool pass = false;
};

struct Tolerances {
  /// Exact algebraic identities (limits, symmetries, trace).
  double analytic = 1e-12;
  /// Comparisons that go through the eigensolver.
  double numeric = 1e-9;
};

OracleReport make_report(std::string case_id, std::string quantity, double closed_form, double oracle,
                         double tolerance);

/// S(A|B), holevo gap, Adabi bound, Berta bound and LHS, closed form vs
/// generic pipeline on the dense matrix.
std::vector<OracleReport> oracle_entropy_quantities(const std::string& case_id, const BellDiagonalState& s0,
                                                    const DecoherencePair& f, double tolerance = 1e-9);

/// t = 0, mu = nu, g = 0, gamma = 0, delta_coupling = 0 unit-factor
/// identities and mu <-> nu symmetry on every grid point.
std::vector<OracleReport> oracle_factor_limits(const std::string& case_id, const ChainParams& p,
                                               std::span<const double> t_grid, double tolerance = 1e-12);

/// Minimum eigenvalue >= -tol and unit trace of the evolved state at
/// every grid point.
std::vector<OracleReport> oracle_positivity(const std::string& case_id, const BellDiagonalState& s0,
                                            const ChainParams& p, std::span<const double> t_grid,
                                            double tolerance = 1e-12);

/// Uniform sample from the Bell-diagonal tetrahedron (rejection on the
/// four positivity constraints).
BellDiagonalState random_bell_state(std::mt19937_64& rng);

struct VerificationResult {
  std::uint64_t seed = 0;
  int cases = 0;
  Tolerances tolerances;
  std::vector<OracleReport> reports;

  bool all_pass() const;
  std::size_t failures() const;
};

/// The default suite: named states, `cases` random states with random
/// coherence factors, factor limits and positivity on the default
/// parameters. Deterministic for a given seed.
VerificationResult run_verification(std::uint64_t seed, int cases, Tolerances tol = {});

nlohmann::json to_json(const OracleReport& r);
nlohmann::json to_json(const VerificationResult& r);

}  // namespace eubsim
