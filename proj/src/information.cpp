#include "eubsim/information.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>

#include "eubsim/errors.hpp"

namespace eubsim {

namespace {

using Complex = std::complex<double>;

constexpr double kStructureTolerance = 1e-10;
constexpr double kEigenClamp = 1e-9;
constexpr double kClosedFormClamp = 1e-12;
constexpr double kOrderingTolerance = 1e-9;

// x log2 x with 0 log 0 = 0. Tiny negatives from cancellation count as 0.
double xlog2x(double x) {
  if (x < -kClosedFormClamp) {
    std::ostringstream msg;
    msg << "negative weight " << x << " in entropy term";
    throw DomainError(msg.str());
  }
  return x <= 0.0 ? 0.0 : x * std::log2(x);
}

// w log2(arg) with the convention that a zero weight kills the term.
double weighted_log2(double w, double arg) {
  if (w <= 0.0 && w >= -kClosedFormClamp) return 0.0;
  return w * std::log2(arg);
}

Eigen::Matrix4cd lift_on_a(const Eigen::Matrix2cd& op) {
  Eigen::Matrix4cd out = Eigen::Matrix4cd::Zero();
  for (int i = 0; i < 2; ++i) {
    for (int j = 0; j < 2; ++j) {
      out(2 * i, 2 * j) = op(i, j);
      out(2 * i + 1, 2 * j + 1) = op(i, j);
    }
  }
  return out;
}

Eigen::VectorXd checked_spectrum(const Eigen::MatrixXcd& rho) {
  if (rho.rows() == 0 || rho.rows() != rho.cols()) throw NotDensityMatrix("matrix must be square and non-empty");
  if (!rho.allFinite()) throw NotDensityMatrix("matrix has non-finite entries");
  const double asym = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
  if (asym > kStructureTolerance) {
    std::ostringstream msg;
    msg << "matrix is not Hermitian (max deviation " << asym << ")";
    throw NotDensityMatrix(msg.str());
  }
  const Complex tr = rho.trace();
  if (std::abs(tr - Complex(1.0, 0.0)) > kStructureTolerance) {
    std::ostringstream msg;
    msg << "trace is " << tr.real() << " + " << tr.imag() << "i, expected 1";
    throw NotDensityMatrix(msg.str());
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(rho, Eigen::EigenvaluesOnly);
  if (solver.info() != Eigen::Success) throw NotDensityMatrix("eigensolver did not converge");
  Eigen::VectorXd values = solver.eigenvalues();
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    if (values[i] < -kEigenClamp) {
      std::ostringstream msg;
      msg << "eigenvalue " << values[i] << " is negative";
      throw NotDensityMatrix(msg.str());
    }
    values[i] = std::max(values[i], 0.0);
  }
  return values;
}

}  // namespace

std::array<Eigen::Vector2cd, 2> eigenbasis(Observable obs) {
  const double h = 1.0 / std::numbers::sqrt2;
  std::array<Eigen::Vector2cd, 2> basis;
  switch (obs) {
    case Observable::PauliX:
      basis[0] << h, h;
      basis[1] << h, -h;
      break;
    case Observable::PauliY:
      basis[0] << h, Complex(0.0, h);
      basis[1] << h, Complex(0.0, -h);
      break;
    case Observable::PauliZ:
      basis[0] << 1.0, 0.0;
      basis[1] << 0.0, 1.0;
      break;
  }
  return basis;
}

double MeasurementSetting::complementarity() const {
  const auto q = eigenbasis(Q);
  const auto r = eigenbasis(R);
  double c = 0.0;
  for (const auto& qi : q) {
    for (const auto& rj : r) c = std::max(c, std::norm(qi.dot(rj)));
  }
  return c;
}

bool MeasurementSetting::is_standard() const {
  return (Q == Observable::PauliX && R == Observable::PauliZ) ||
         (Q == Observable::PauliZ && R == Observable::PauliX);
}

double binary_entropy(double p) {
  if (!(p >= -kClosedFormClamp && p <= 1.0 + kClosedFormClamp)) {
    std::ostringstream msg;
    msg << "binary entropy argument " << p << " outside [0, 1]";
    throw DomainError(msg.str());
  }
  p = std::clamp(p, 0.0, 1.0);
  return -xlog2x(p) - xlog2x(1.0 - p);
}

double shannon_entropy(std::span<const double> probabilities) {
  double h = 0.0;
  for (double p : probabilities) {
    if (p < -kEigenClamp) throw DomainError("negative probability");
    h -= xlog2x(std::max(p, 0.0));
  }
  return h;
}

double von_neumann_entropy(const Eigen::MatrixXcd& rho) {
  const Eigen::VectorXd values = checked_spectrum(rho);
  return shannon_entropy(std::span<const double>(values.data(), static_cast<std::size_t>(values.size())));
}

Eigen::Matrix2cd partial_trace_a(const Eigen::Matrix4cd& rho) {
  Eigen::Matrix2cd out = Eigen::Matrix2cd::Zero();
  for (int a = 0; a < 2; ++a) out += rho.block<2, 2>(2 * a, 2 * a);
  return out;
}

Eigen::Matrix2cd partial_trace_b(const Eigen::Matrix4cd& rho) {
  Eigen::Matrix2cd out;
  for (int a = 0; a < 2; ++a) {
    for (int ap = 0; ap < 2; ++ap) out(a, ap) = rho.block<2, 2>(2 * a, 2 * ap).trace();
  }
  return out;
}

PostMeasurement post_measurement_state(const Eigen::Matrix4cd& rho, Observable obs) {
  checked_spectrum(rho);
  PostMeasurement out;
  const auto basis = eigenbasis(obs);
  for (std::size_t x = 0; x < 2; ++x) {
    const Eigen::Matrix4cd projector = lift_on_a(basis[x] * basis[x].adjoint());
    const Eigen::Matrix4cd projected = projector * rho * projector;
    const double p = std::max(projected.trace().real(), 0.0);
    out.probabilities[x] = p;
    out.joint += projected;
    out.conditional[x] = p > 0.0 ? Eigen::Matrix2cd(partial_trace_a(projected) / p)
                                 : Eigen::Matrix2cd(Eigen::Matrix2cd::Identity() / 2.0);
  }
  return out;
}

double conditional_entropy(const Eigen::Matrix4cd& rho) {
  return von_neumann_entropy(rho) - von_neumann_entropy(partial_trace_a(rho));
}

double measured_conditional_entropy(const Eigen::Matrix4cd& rho, Observable obs) {
  const PostMeasurement pm = post_measurement_state(rho, obs);
  return von_neumann_entropy(pm.joint) - von_neumann_entropy(partial_trace_a(rho));
}

double holevo_quantity(const Eigen::Matrix4cd& rho, Observable obs) {
  const PostMeasurement pm = post_measurement_state(rho, obs);
  double chi = von_neumann_entropy(partial_trace_a(rho));
  for (std::size_t x = 0; x < 2; ++x) {
    if (pm.probabilities[x] > 0.0) chi -= pm.probabilities[x] * von_neumann_entropy(pm.conditional[x]);
  }
  return chi;
}

double mutual_information(const Eigen::Matrix4cd& rho) {
  return von_neumann_entropy(partial_trace_b(rho)) + von_neumann_entropy(partial_trace_a(rho)) -
         von_neumann_entropy(rho);
}

double holevo_gap(const Eigen::Matrix4cd& rho, const MeasurementSetting& m) {
  return mutual_information(rho) - holevo_quantity(rho, m.Q) - holevo_quantity(rho, m.R);
}

double lhs_uncertainty(const Eigen::Matrix4cd& rho, const MeasurementSetting& m) {
  return measured_conditional_entropy(rho, m.Q) + measured_conditional_entropy(rho, m.R);
}

double conditional_entropy_closed(const XState& x) {
  const double r3 = x.r3();
  const double g = x.gamma_c;
  const double w = x.omega_c;
  return -1.0 - xlog2x((1.0 - w - r3) / 4.0) - xlog2x((1.0 + w - r3) / 4.0) - xlog2x((1.0 - g + r3) / 4.0) -
         xlog2x((1.0 + g + r3) / 4.0);
}

double holevo_gap_closed(const XState& x) {
  const double r3 = x.r3();
  const double g = x.gamma_c;
  const double w = x.omega_c;
  double gap = -2.0 + xlog2x((1.0 - w - r3) / 4.0) + xlog2x((1.0 + w - r3) / 4.0) + xlog2x((1.0 - g + r3) / 4.0) +
               xlog2x((1.0 + g + r3) / 4.0);
  gap -= weighted_log2((1.0 - r3) / 2.0, (1.0 - r3) / 4.0);
  gap -= weighted_log2((1.0 + r3) / 2.0, (1.0 + r3) / 4.0);
  gap -= weighted_log2((2.0 - g - w) / 4.0, (2.0 - g - w) / 8.0);
  gap -= weighted_log2((2.0 + g + w) / 4.0, (2.0 + g + w) / 8.0);
  return gap;
}

double lhs_uncertainty_closed(const XState& x) {
  return binary_entropy((1.0 + x.r3()) / 2.0) + binary_entropy((2.0 + x.gamma_c + x.omega_c) / 4.0);
}

double eub_berta(const XState& x) { return 1.0 + conditional_entropy_closed(x); }

double eub_adabi(const XState& x) { return eub_berta(x) + std::max(0.0, holevo_gap_closed(x)); }

UncertaintyReport report(double t, const XState& x, const MeasurementSetting& m) {
  UncertaintyReport out;
  out.t = t;
  const Eigen::Matrix4cd rho = as_matrix(x);
  if (m.is_standard()) {
    out.s_cond = conditional_entropy_closed(x);
    out.holevo_gap = holevo_gap_closed(x);
    out.eub_berta = eub_berta(x);
    out.eub_adabi = eub_adabi(x);
  } else {
    out.s_cond = conditional_entropy(rho);
    out.holevo_gap = holevo_gap(rho, m);
    out.eub_berta = -std::log2(m.complementarity()) + out.s_cond;
    out.eub_adabi = out.eub_berta + std::max(0.0, out.holevo_gap);
  }
  out.lhs = lhs_uncertainty(rho, m);
  if (out.lhs < out.eub_adabi - kOrderingTolerance) {
    std::ostringstream msg;
    msg.precision(17);
    msg << "at t=" << t << ": lhs " << out.lhs << " < Adabi bound " << out.eub_adabi;
    throw OrderingViolation(msg.str());
  }
  return out;
}

}  // namespace eubsim
