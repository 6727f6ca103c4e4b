#pragma once

// Environment side of the model: an XY spin chain with z-axis
// Dzyaloshinskii-Moriya interaction, transversely coupled to two qubits.
// The chain is solved analytically mode by mode; only the spectral
// quantities and the modulus of the decoherence factor are represented.

#include <array>
#include <cstddef>
#include <vector>

namespace eubsim {

/// Branch choice for the Bogoliubov angle.
///
/// PaperLiteral uses the single-argument principal arctan of
/// gamma*sin(a)/(lambda - cos(a)); QuadrantAware uses atan2 and is
/// continuous across lambda = cos(a).
enum class AngleConvention { PaperLiteral, QuadrantAware };

struct ChainParams {
  int N = 600;
  double gamma = 1.0;
  double lambda = 1.0;
  double D = 0.0;
  double g = 0.05;
  double delta_coupling = 0.0;
  AngleConvention angle_convention = AngleConvention::PaperLiteral;

  /// Throws InvalidParams if N < 3 or any real field is not finite.
  void validate() const;
};

/// Fields seen by the chain when the qubit pair sits in pointer state
/// |00>, |01>, |10>, |11> (mu = 1..4).
struct EffectiveFields {
  std::array<double, 4> lambda_mu{};

  /// 1-based access, mu in {1,2,3,4}.
  double operator[](int mu) const;
};

/// Positive quasi-momentum label k in 1..M.
struct ModeIndex {
  int k = 1;
};

struct DecoherencePair {
  double t = 0.0;
  double f14 = 1.0;
  double f23 = 1.0;
};

/// M = floor((N-1)/2). For even N the dropped k = N/2 mode has
/// sin(2*pi*k/N) = 0 and contributes a unit factor.
int mode_cutoff(int N);

/// a_k = 2*pi*k/N
double mode_angle(const ChainParams& p, ModeIndex k);

EffectiveFields effective_fields(const ChainParams& p);

double theta_k(double lambda_mu, const ChainParams& p, ModeIndex k);

/// (theta_k(lambda_mu) - theta_k(lambda)) / 2, measured from the ground
/// state of the unperturbed chain.
double big_theta(double lambda_mu, const ChainParams& p, ModeIndex k);

double epsilon_k(double lambda_mu, const ChainParams& p, ModeIndex k);

/// Quasiparticle energy 2*(epsilon_k + 2*D*sin a_k). Can be negative.
double spectrum_k(double lambda_mu, const ChainParams& p, ModeIndex k);

/// Unclamped bracket of the mode product for one k. Exposed so the
/// roundoff window around [0, 1] can be checked directly.
double per_mode_bracket(int mu, int nu, ModeIndex k, double t, const ChainParams& p);

/// per_mode_bracket clamped to [0, 1].
double per_mode_factor(int mu, int nu, ModeIndex k, double t, const ChainParams& p);

/// |F_{mu nu}(t)| = prod_{k=1..M} sqrt(per_mode_factor).
double decoherence_factor(int mu, int nu, double t, const ChainParams& p);

DecoherencePair decoherence_pair(double t, const ChainParams& p);

/// Per-mode tables of Theta_k and Lambda_k for all four effective fields.
///
/// Building the tables once per parameter set and then evaluating many
/// time points is the hot path of the trace engine. The free functions
/// above route through this class, so both give bit-identical results.
class ModeSpectrum {
 public:
  explicit ModeSpectrum(const ChainParams& p);

  int cutoff() const { return cutoff_; }

  double bracket(int mu, int nu, std::size_t mode, double t) const;
  double factor(int mu, int nu, double t) const;
  DecoherencePair pair(double t) const;

 private:
  int cutoff_ = 0;
  // Indexed [mu-1][k-1].
  std::array<std::vector<double>, 4> big_theta_;
  std::array<std::vector<double>, 4> spectrum_;
};

}  // namespace eubsim
