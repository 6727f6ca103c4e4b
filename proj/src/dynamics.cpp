#include "eubsim/dynamics.hpp"

#include <cmath>
#include <complex>
#include <sstream>

#include "eubsim/errors.hpp"

namespace eubsim {

namespace {

constexpr double kPositivityTolerance = 1e-12;

Eigen::Matrix4cd kron(const Eigen::Matrix2cd& a, const Eigen::Matrix2cd& b) {
  Eigen::Matrix4cd out;
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) out.block<2, 2>(2 * i, 2 * j) = a(i, j) * b;
  }
  return out;
}

double clamp_small_negative(double v) { return (v < 0.0 && v >= -kPositivityTolerance) ? 0.0 : v; }

}  // namespace

std::array<double, 4> BellDiagonalState::bell_weights() const {
  return {1.0 - r1 - r2 - r3, 1.0 - r1 + r2 + r3, 1.0 + r1 - r2 + r3, 1.0 + r1 + r2 - r3};
}

void BellDiagonalState::validate() const {
  if (!std::isfinite(r1) || !std::isfinite(r2) || !std::isfinite(r3)) {
    throw InvalidState("Bloch coefficients must be finite");
  }
  for (double w : bell_weights()) {
    if (w < -kPositivityTolerance) {
      std::ostringstream msg;
      msg << "state (r1=" << r1 << ", r2=" << r2 << ", r3=" << r3 << ") is not positive";
      throw InvalidState(msg.str());
    }
  }
}

XState evolve_state(const BellDiagonalState& s0, const DecoherencePair& f) {
  s0.validate();
  XState x;
  x.d1 = x.d4 = (1.0 + s0.r3) / 4.0;
  x.d2 = x.d3 = (1.0 - s0.r3) / 4.0;
  x.gamma_c = (s0.r1 - s0.r2) * f.f14;
  x.omega_c = (s0.r1 + s0.r2) * f.f23;
  return x;
}

Eigen::Matrix4cd as_matrix(const XState& x) {
  Eigen::Matrix4cd m = Eigen::Matrix4cd::Zero();
  m(0, 0) = x.d1;
  m(1, 1) = x.d2;
  m(2, 2) = x.d3;
  m(3, 3) = x.d4;
  m(0, 3) = m(3, 0) = x.gamma_c / 4.0;
  m(1, 2) = m(2, 1) = x.omega_c / 4.0;
  return m;
}

Eigen::Matrix4cd bloch_matrix(const BellDiagonalState& s) {
  using C = std::complex<double>;
  Eigen::Matrix2cd sx, sy, sz;
  sx << 0.0, 1.0, 1.0, 0.0;
  sy << 0.0, C(0.0, -1.0), C(0.0, 1.0), 0.0;
  sz << 1.0, 0.0, 0.0, -1.0;
  Eigen::Matrix4cd m = Eigen::Matrix4cd::Identity();
  m += s.r1 * kron(sx, sx);
  m += s.r2 * kron(sy, sy);
  m += s.r3 * kron(sz, sz);
  return m / 4.0;
}

std::array<double, 4> eigenvalues_xstate(const XState& x) {
  // Block [[a, c], [c, b]]: (a+b)/2 +- sqrt(((a-b)/2)^2 + c^2).
  const double outer = (x.d1 + x.d4) / 2.0;
  const double inner = (x.d2 + x.d3) / 2.0;
  const double g = std::hypot((x.d1 - x.d4) / 2.0, x.gamma_c / 4.0);
  const double w = std::hypot((x.d2 - x.d3) / 2.0, x.omega_c / 4.0);
  return {clamp_small_negative(outer + g), clamp_small_negative(outer - g), clamp_small_negative(inner + w),
          clamp_small_negative(inner - w)};
}

}  // namespace eubsim
