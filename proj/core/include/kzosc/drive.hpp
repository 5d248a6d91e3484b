// Parameters and state of the driven two-level system in dimensionless units
// (time scaled by the square root of the sweep rate).
#pragma once

#include <complex>

namespace kzosc {

using Complex = std::complex<double>;

/// Drive of H = 1/2 (tau + eps - a_amp cos(omega tau)) sz + (delta + b_amp/2 cos(omega tau)) sx.
///
/// The diagonal amplitude is stored through eta = a_amp / omega so that
/// a_amp() == eta * omega holds exactly. delta may be negative: the Ising
/// mode mapping produces both signs and probabilities only see delta^2 and
/// the sign of delta * b_amp.
struct DriveParams {
  double delta = 0.0;
  double eps = 0.0;
  double eta = 0.0;
  double b_amp = 0.0;
  double omega = 1.0;

  double a_amp() const { return eta * omega; }
  double kappa() const { return delta * delta; }
  void validate() const;

  static DriveParams from_amplitudes(double delta, double eps, double a_amp, double b_amp, double omega);
};

/// Diabatic-basis amplitudes (|up>, |down>).
struct AmplitudePair {
  Complex c_up{1.0, 0.0};
  Complex c_down{0.0, 0.0};

  double norm() const { return std::norm(c_up) + std::norm(c_down); }
};

}  // namespace kzosc
