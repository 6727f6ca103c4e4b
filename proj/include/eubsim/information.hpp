#pragma once

// Entropic quantities for the two-qubit memory game.
//
// Two independent routes are provided:
//   * closed forms valid for X states with maximally mixed marginals and
//     the sigma_x / sigma_z measurement pair;
//   * a generic pipeline working on dense density matrices (partial traces,
//     projective measurement on A, Hermitian eigensolver).
// All logarithms are base 2 and 0*log(0) = 0.

#include <array>
#include <span>

#include <Eigen/Dense>

#include "eubsim/dynamics.hpp"

namespace eubsim {

enum class Observable { PauliX, PauliY, PauliZ };

/// Orthonormal eigenvectors of the observable, +1 eigenvector first.
std::array<Eigen::Vector2cd, 2> eigenbasis(Observable obs);

struct MeasurementSetting {
  Observable Q = Observable::PauliX;
  Observable R = Observable::PauliZ;

  /// max_{i,j} |<q_i|r_j>|^2 from the explicit eigenvectors.
  double complementarity() const;

  /// True for the sigma_x / sigma_z pair (in either order), the only
  /// setting the closed forms cover.
  bool is_standard() const;
};

struct UncertaintyReport {
  double t = 0.0;
  double s_cond = 0.0;
  double holevo_gap = 0.0;
  double eub_adabi = 0.0;
  double eub_berta = 0.0;
  double lhs = 0.0;
};

double binary_entropy(double p);

/// -sum p log2 p over a probability vector; entries must be >= -1e-9.
double shannon_entropy(std::span<const double> probabilities);

double von_neumann_entropy(const Eigen::MatrixXcd& rho);

/// rho_B = Tr_A rho
Eigen::Matrix2cd partial_trace_a(const Eigen::Matrix4cd& rho);
/// rho_A = Tr_B rho
Eigen::Matrix2cd partial_trace_b(const Eigen::Matrix4cd& rho);

struct PostMeasurement {
  std::array<double, 2> probabilities{};
  /// Bob's normalized state per outcome; I/2 when the outcome has
  /// probability zero (never weighted).
  std::array<Eigen::Matrix2cd, 2> conditional{};
  /// sum_x (Pi_x (x) I) rho (Pi_x (x) I)
  Eigen::Matrix4cd joint = Eigen::Matrix4cd::Zero();
};

PostMeasurement post_measurement_state(const Eigen::Matrix4cd& rho, Observable obs);

/// S(AB) - S(B)
double conditional_entropy(const Eigen::Matrix4cd& rho);
/// S(XB) - S(B) after measuring obs on A.
double measured_conditional_entropy(const Eigen::Matrix4cd& rho, Observable obs);
double holevo_quantity(const Eigen::Matrix4cd& rho, Observable obs);
double mutual_information(const Eigen::Matrix4cd& rho);
/// I(A;B) - I(Q;B) - I(R;B)
double holevo_gap(const Eigen::Matrix4cd& rho, const MeasurementSetting& m);
double lhs_uncertainty(const Eigen::Matrix4cd& rho, const MeasurementSetting& m);

// Closed forms. Coherences enter with their sign; the expressions are even
// under a joint flip of both coherences but the gap is not even in each.
double conditional_entropy_closed(const XState& x);
double holevo_gap_closed(const XState& x);
/// H2((1+r3)/2) + H2((2+G+W)/4): S(R|B) + S(Q|B) for sigma_z, sigma_x.
double lhs_uncertainty_closed(const XState& x);
double eub_adabi(const XState& x);
double eub_berta(const XState& x);

/// Bundles every quantity at one time point. Bounds come from the closed
/// forms for the standard setting and from the generic pipeline otherwise;
/// lhs always comes from the generic pipeline. Throws OrderingViolation if
/// lhs < eub_adabi - 1e-9.
UncertaintyReport report(double t, const XState& x, const MeasurementSetting& m = {});

}  // namespace eubsim
