#pragma once

#include <array>

#include <Eigen/Dense>

#include "eubsim/chain.hpp"

namespace eubsim {

/// Two-qubit state with maximally mixed marginals,
/// rho = (I + sum_i r_i sigma_i (x) sigma_i) / 4.
struct BellDiagonalState {
  double r1 = 1.0;
  double r2 = -1.0;
  double r3 = 1.0;

  /// The four Bell-basis weights times 4. All must be >= -1e-12.
  std::array<double, 4> bell_weights() const;

  /// Throws InvalidState when any Bell weight is below -1e-12 or a
  /// coefficient is not finite.
  void validate() const;

  /// (|00> + |11>)/sqrt(2)
  static BellDiagonalState phi_plus() { return {1.0, -1.0, 1.0}; }
  /// (|01> + |10>)/sqrt(2)
  static BellDiagonalState psi_plus() { return {1.0, 1.0, -1.0}; }
  static BellDiagonalState maximally_mixed() { return {0.0, 0.0, 0.0}; }
};

/// Density matrix in X form, basis order |00>,|01>,|10>,|11>:
///
///   [ d1   0    0    G/4 ]
///   [ 0    d2   W/4  0   ]
///   [ 0    W/4  d3   0   ]
///   [ G/4  0    0    d4  ]
///
/// G (gamma_c) and W (omega_c) are the coherences without the 1/4.
struct XState {
  double d1 = 0.25;
  double d2 = 0.25;
  double d3 = 0.25;
  double d4 = 0.25;
  double gamma_c = 0.0;
  double omega_c = 0.0;

  /// Bloch z-correlation r3 recovered from the diagonal.
  double r3() const { return 2.0 * (d1 + d4) - 1.0; }
};

XState evolve_state(const BellDiagonalState& s0, const DecoherencePair& f);

Eigen::Matrix4cd as_matrix(const XState& x);

/// rho(0) built from Pauli tensor products. Independent of the X-state
/// layout used by as_matrix.
Eigen::Matrix4cd bloch_matrix(const BellDiagonalState& s);

/// {(1+r3 + |G|)/4, (1+r3 - |G|)/4, (1-r3 + |W|)/4, (1-r3 - |W|)/4},
/// computed from the 2x2 outer and inner blocks. Values in [-1e-12, 0)
/// are clamped to 0.
std::array<double, 4> eigenvalues_xstate(const XState& x);

}  // namespace eubsim
