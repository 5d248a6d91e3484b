// First-order expansion around the exactly solvable linear sweep.
//
// The unperturbed propagator is U0 = [[f, -g*], [g, f*]] with
//   f = f1 P(x) + f2 sqrt(k) Q(x),   g = e^{i pi/4} (f1 sqrt(k) R(x) - f2 S(x)),
// x = tau + eps, P = D_{-ik}(e^{i pi/4} x), R = D_{-ik-1}(e^{i pi/4} x),
// S = conj(P), Q = conj(R). The perturbation 1/2 cos(omega tau)(-A sz + B sx)
// is treated to first order in the interaction picture.
#pragma once

#include <array>

#include "kzosc/drive.hpp"

namespace kzosc::furry {

struct LzsmPropagator {
  Complex f;
  Complex g;
  double kappa = 0.0;
  double eps = 0.0;
};

/// Start coefficients of the propagator. The factor common to both
/// (e^{i tau0^2/4} |tau0|^{ik} in the asymptotic form) is kept apart in
/// `common_phase`; f1 and f2 exclude it. Every probability is independent of it.
struct StartCoefficients {
  Complex f1;
  Complex f2;
  Complex common_phase{1.0, 0.0};

  Complex f1_full() const { return f1 * common_phase; }
  Complex f2_full() const { return f2 * common_phase; }
};

/// Exact coefficients for a start at tau0 (from D values at tau0 + eps).
StartCoefficients f_coefficients_exact(double kappa, double eps, double tau0);

/// Leading behaviour as tau0 -> -infinity. Throws RegimeError for tau0 > -50.
StartCoefficients f_coefficients_asymptotic(double kappa, double tau0);

/// U0(tau, tau0) for coupling delta = sqrt(kappa) >= 0.
LzsmPropagator u0_propagator(double kappa, double eps, double tau, double tau0);

/// f(tau) and g(tau) for given start coefficients.
LzsmPropagator u0_from_coefficients(double kappa, double eps, double tau, Complex f1, Complex f2);

struct KSet {
  std::array<Complex, 8> k{};  // k[0] = K1 ... k[7] = K8
  double omega_phase = 0.0;    // omega * eps + omega^2 / 2

  Complex K(int i) const { return k.at(i - 1); }
};

/// The eight combinations of Gamma, U and regularized 1F1 values that
/// assemble the integrals of the interaction-picture perturbation.
KSet k_set(double kappa, double omega, double eps, Complex f1, Complex f2);

/// Time integrals X = int H1_hat dtau of the interaction-picture perturbation
/// (entries (1,1) and (2,1); the others follow from hermiticity and trace zero).
struct PerturbationIntegrals {
  Complex x11;
  Complex x21;
};

/// Closed form from the K-set displays.
PerturbationIntegrals perturbation_integrals_kset(const DriveParams& p, Complex f1, Complex f2);

/// Closed form by expanding every product of basis functions and applying the
/// Fourier identities for products of parabolic cylinder functions.
PerturbationIntegrals perturbation_integrals_bilinear(const DriveParams& p, Complex f1, Complex f2);

/// Windowed quadrature of the matrix elements (window centred on the crossing).
PerturbationIntegrals perturbation_integrals_numeric(const DriveParams& p, Complex f1, Complex f2,
                                                     double window);

/// Survival amplitude f(1 - i X11) + i g* X21 at tau_end.
Complex first_order_amplitude(const DriveParams& p, Complex f1, Complex f2, double tau_end,
                              const PerturbationIntegrals& x);

/// Adiabatic-limit closed form (Bessel-free, two regularized 1F1 channels).
double p_fp_adiabatic(const DriveParams& p);

/// First-order probability with the closed-form integrals and the asymptotic
/// start coefficients. Requires tau0 <= -50 and tau_end >= 50.
double p_fp_exact(const DriveParams& p, double tau0 = -500.0, double tau_end = 500.0);

/// Same quantity with the integrals done by quadrature over a tapered window of
/// the given half-width and exact start coefficients at tau0.
double p_fp_numeric(const DriveParams& p, double tau0 = -500.0, double tau_end = 500.0, double window = 500.0);

/// Quadrature variant with caller-supplied start coefficients.
double p_fp_numeric(const DriveParams& p, Complex f1, Complex f2, double tau_end, double window);

}  // namespace kzosc::furry
