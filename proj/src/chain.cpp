#include "eubsim/chain.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "eubsim/errors.hpp"

namespace eubsim {

namespace {

constexpr double kUnderflowFloor = 1e-300;

void check_pointer_index(int mu) {
  if (mu < 1 || mu > 4) {
    throw std::out_of_range("pointer-state index must be in 1..4, got " + std::to_string(mu));
  }
}

double literal_angle(double num, double den) {
  if (den == 0.0) {
    if (num == 0.0) return 0.0;
    return std::copysign(std::numbers::pi / 2.0, num);
  }
  return std::atan(num / den);
}

}  // namespace

void ChainParams::validate() const {
  if (N < 3) throw InvalidParams("N must be >= 3, got " + std::to_string(N));
  const std::pair<const char*, double> fields[] = {
      {"gamma", gamma}, {"lambda", lambda}, {"D", D}, {"g", g}, {"delta_coupling", delta_coupling}};
  for (const auto& [name, value] : fields) {
    if (!std::isfinite(value)) throw InvalidParams(std::string(name) + " must be finite");
  }
}

double EffectiveFields::operator[](int mu) const {
  check_pointer_index(mu);
  return lambda_mu[static_cast<std::size_t>(mu - 1)];
}

int mode_cutoff(int N) { return (N - 1) / 2; }

double mode_angle(const ChainParams& p, ModeIndex k) {
  return 2.0 * std::numbers::pi * static_cast<double>(k.k) / static_cast<double>(p.N);
}

EffectiveFields effective_fields(const ChainParams& p) {
  const double shift = p.g * p.delta_coupling;
  return EffectiveFields{{p.lambda + p.g, p.lambda + shift, p.lambda - shift, p.lambda - p.g}};
}

double theta_k(double lambda_mu, const ChainParams& p, ModeIndex k) {
  const double a = mode_angle(p, k);
  const double num = p.gamma * std::sin(a);
  const double den = lambda_mu - std::cos(a);
  switch (p.angle_convention) {
    case AngleConvention::QuadrantAware:
      return std::atan2(num, den);
    case AngleConvention::PaperLiteral:
      break;
  }
  return literal_angle(num, den);
}

double big_theta(double lambda_mu, const ChainParams& p, ModeIndex k) {
  return (theta_k(lambda_mu, p, k) - theta_k(p.lambda, p, k)) / 2.0;
}

double epsilon_k(double lambda_mu, const ChainParams& p, ModeIndex k) {
  const double a = mode_angle(p, k);
  return std::hypot(lambda_mu - std::cos(a), p.gamma * std::sin(a));
}

double spectrum_k(double lambda_mu, const ChainParams& p, ModeIndex k) {
  const double a = mode_angle(p, k);
  return 2.0 * (epsilon_k(lambda_mu, p, k) + 2.0 * p.D * std::sin(a));
}

namespace {

// Bracket of the mode product written so that swapping (mu, nu) only
// swaps commutative operands; the result is exactly symmetric.
double bracket_from(double theta_mu, double lambda_mu, double theta_nu, double lambda_nu, double t) {
  const double sm = std::sin(2.0 * theta_mu);
  const double sn = std::sin(2.0 * theta_nu);
  const double phase_mu = lambda_mu * t;
  const double phase_nu = lambda_nu * t;
  const double wm = std::sin(phase_mu);
  const double wn = std::sin(phase_nu);
  const double wm2 = wm * wm;
  const double wn2 = wn * wn;
  const double diff = std::sin(theta_mu - theta_nu);

  const double damping = (sm * sm) * wm2 + (sn * sn) * wn2;
  const double cross = 2.0 * (sm * sn) * (wm * wn) * std::cos(phase_mu - phase_nu);
  const double quartic = 4.0 * (sm * sn) * (diff * diff) * (wm2 * wn2);
  return 1.0 - damping + cross - quartic;
}

}  // namespace

double per_mode_bracket(int mu, int nu, ModeIndex k, double t, const ChainParams& p) {
  const auto fields = effective_fields(p);
  const double lm = fields[mu];
  const double ln = fields[nu];
  return bracket_from(big_theta(lm, p, k), spectrum_k(lm, p, k), big_theta(ln, p, k),
                      spectrum_k(ln, p, k), t);
}

double per_mode_factor(int mu, int nu, ModeIndex k, double t, const ChainParams& p) {
  return std::clamp(per_mode_bracket(mu, nu, k, t, p), 0.0, 1.0);
}

double decoherence_factor(int mu, int nu, double t, const ChainParams& p) {
  check_pointer_index(mu);
  check_pointer_index(nu);
  return ModeSpectrum(p).factor(mu, nu, t);
}

DecoherencePair decoherence_pair(double t, const ChainParams& p) { return ModeSpectrum(p).pair(t); }

ModeSpectrum::ModeSpectrum(const ChainParams& p) : cutoff_(mode_cutoff(p.N)) {
  p.validate();
  const auto fields = effective_fields(p);
  for (int mu = 1; mu <= 4; ++mu) {
    auto& thetas = big_theta_[static_cast<std::size_t>(mu - 1)];
    auto& energies = spectrum_[static_cast<std::size_t>(mu - 1)];
    thetas.reserve(static_cast<std::size_t>(cutoff_));
    energies.reserve(static_cast<std::size_t>(cutoff_));
    for (int k = 1; k <= cutoff_; ++k) {
      thetas.push_back(big_theta(fields[mu], p, ModeIndex{k}));
      energies.push_back(spectrum_k(fields[mu], p, ModeIndex{k}));
    }
  }
}

double ModeSpectrum::bracket(int mu, int nu, std::size_t mode, double t) const {
  check_pointer_index(mu);
  check_pointer_index(nu);
  const auto m = static_cast<std::size_t>(mu - 1);
  const auto n = static_cast<std::size_t>(nu - 1);
  return bracket_from(big_theta_[m].at(mode), spectrum_[m].at(mode), big_theta_[n].at(mode),
                      spectrum_[n].at(mode), t);
}

double ModeSpectrum::factor(int mu, int nu, double t) const {
  check_pointer_index(mu);
  check_pointer_index(nu);
  if (t < 0.0 || !std::isfinite(t)) throw DomainError("time must be finite and >= 0");
  const auto m = static_cast<std::size_t>(mu - 1);
  const auto n = static_cast<std::size_t>(nu - 1);
  double product = 1.0;
  // k-ascending order, fixed for bit reproducibility.
  for (std::size_t i = 0; i < static_cast<std::size_t>(cutoff_); ++i) {
    const double b = bracket_from(big_theta_[m][i], spectrum_[m][i], big_theta_[n][i], spectrum_[n][i], t);
    product *= std::sqrt(std::clamp(b, 0.0, 1.0));
    if (product < kUnderflowFloor) return 0.0;
  }
  return product;
}

DecoherencePair ModeSpectrum::pair(double t) const { return DecoherencePair{t, factor(1, 4, t), factor(2, 3, t)}; }

}  // namespace eubsim
