// Transverse-field Ising chain swept through its critical points with a
// periodic drive, reduced to independent two-level problems per momentum.
#pragma once

#include <utility>
#include <vector>

#include "kzosc/drive.hpp"
#include "kzosc/pt.hpp"
#include "kzosc/tdse.hpp"

namespace kzosc::ising {

/// Drive on the transverse field: g(t) = (v t + eps' - A cos(w t)) / 4.
struct IsingDiagParams {
  double j = 7.0;  // coupling in sweep units
  double eta = 0.0;
  double omega = 6.0;
  double eps_prime = 0.5;
  int n_sites = 200;

  void validate() const;
};

/// Drive on the coupling: J(t) = delta'/2 + (b'/4) cos(w t).
struct IsingOffDiagParams {
  double delta_prime = 7.0;
  double b_prime = 0.0;
  double omega = 5.0;
  double eps_prime = 0.5;
  int n_sites = 200;

  double eta_b() const { return b_prime / omega; }
  void validate() const;
};

struct ModeExcitation {
  double q = 0.0;
  double kappa_q = 0.0;
  double p_numeric = 0.0;
  double p_nonadiabatic = 0.0;
  double p_adiabatic = 0.0;
};

struct DensityBreakdown {
  double n_numeric = 0.0;    // grid average of the per-mode TDSE (0 when not computed)
  double n_kzm_peaks = 0.0;  // (alpha^{-1/2} + beta^{-1/2}) / (2 sqrt(pi))
  double n_fp = 0.0;         // drive-induced part from the adiabatic modes
  double alpha = 0.0;
  double beta = 0.0;

  double n_approx() const { return n_kzm_peaks + n_fp; }
};

struct GaussianWidths {
  double alpha = 0.0;  // curvature of -log|u_q|^2 at q = 0
  double beta = 0.0;   // ... at q = +-pi
};

struct NumericOptions {
  unsigned workers = 0;  // 0 = all cores
  // Modes at q and -q obey the same survival probability exactly (the map
  // q -> -q flips the sign of both sx terms); integrate only q > 0 and double.
  bool mirror_symmetry = true;
};

/// q = +-(2n - 1) pi / N, n = 1..N/2, in increasing order.
std::vector<double> mode_grid(int n_sites);

/// Two-level drive of mode q: delta = -J sin q, eps = eps' + 2 J cos q, same eta, no sx drive.
DriveParams mode_drive_diag(const IsingDiagParams& p, double q);

/// Two-level drive of mode q for the coupling drive: delta = -delta' sin q,
/// b = -b' sin q, a = -b' cos q, eps = eps' + 2 delta' cos q.
DriveParams mode_drive_offdiag(const IsingOffDiagParams& p, double q);

double kappa_q_diag(const IsingDiagParams& p, double q);
double kappa_q_offdiag(const IsingOffDiagParams& p, double q);

/// Perturbative |u_q|^2 for small kappa_q.
double uq_nonadiabatic_diag(const IsingDiagParams& p, double q, const pt::SumTruncation& trunc = {});
/// First-order Furry-picture |u_q|^2 for large kappa_q (the P_FP(q) profile).
double uq_adiabatic_diag(const IsingDiagParams& p, double q);

/// Perturbative |u_q|^2 for the coupling drive. The Bessel argument carries
/// +eta_b cos q; see mode_drive_offdiag for the physical sign.
double uq_nonadiabatic_offdiag(const IsingOffDiagParams& p, double q, const pt::SumTruncation& trunc = {});
double uq_adiabatic_offdiag(const IsingOffDiagParams& p, double q);

/// Throws RegimeError if either width is not positive.
GaussianWidths gaussian_widths_diag(const IsingDiagParams& p, const pt::SumTruncation& trunc = {});
GaussianWidths gaussian_widths_offdiag(const IsingOffDiagParams& p, const pt::SumTruncation& trunc = {});

/// Survival probability of every grid mode by direct integration.
std::vector<ModeExcitation> mode_profile(const IsingDiagParams& p, const tdse::IntegrationConfig& cfg,
                                         const pt::SumTruncation& trunc = {}, const NumericOptions& opt = {});
std::vector<ModeExcitation> mode_profile(const IsingOffDiagParams& p, const tdse::IntegrationConfig& cfg,
                                         const pt::SumTruncation& trunc = {}, const NumericOptions& opt = {});

/// n = (1/N) sum_q |u_q|^2 with the per-mode TDSE. Only n_numeric is filled.
DensityBreakdown defect_density_numeric(const IsingDiagParams& p, const tdse::IntegrationConfig& cfg = {},
                                        const NumericOptions& opt = {});
DensityBreakdown defect_density_numeric(const IsingOffDiagParams& p, const tdse::IntegrationConfig& cfg = {},
                                        const NumericOptions& opt = {});

/// Gaussian peaks plus the drive-induced integral. n_numeric is left at 0.
DensityBreakdown defect_density_approx_diag(const IsingDiagParams& p, const pt::SumTruncation& trunc = {});
DensityBreakdown defect_density_approx_offdiag(const IsingOffDiagParams& p, const pt::SumTruncation& trunc = {});

/// int_{-pi}^{pi} dq/(2 pi) P_FP(q) by adaptive quadrature.
double n_fp_integral(const IsingDiagParams& p);
double n_fp_integral_offdiag(const IsingOffDiagParams& p);

/// (1/N) sum over the grid of P_FP(q).
double n_fp_grid_sum(const IsingDiagParams& p);

/// Large-J form n_fp_coefficient(omega, eta) / J.
double n_fp_approx(const IsingDiagParams& p);

/// 2 pi eta^2 int_0^inf dx e^{-2 pi x^2} |1F1~(-i x^2; 0; i omega^2)|^2. The
/// eta-free integral is cached per omega.
double n_fp_coefficient(double omega, double eta);

struct ScalingFit {
  double exponent = 0.0;
  double prefactor = 0.0;
  double residual = 0.0;  // RMS deviation of log(density)
};

/// Least squares of log(density) = exponent log(coupling) + log(prefactor).
/// Throws DomainError for fewer than 3 points, repeated or non-positive couplings,
/// or non-positive densities.
ScalingFit scaling_fit(const std::vector<std::pair<double, double>>& points);

}  // namespace kzosc::ising
