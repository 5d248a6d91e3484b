// Direct integration of the driven two-level Schroedinger equation.
#pragma once

#include <array>
#include <cstddef>

#include "kzosc/drive.hpp"

namespace kzosc::tdse {

struct IntegrationConfig {
  double tau_start = -500.0;
  double tau_end = 500.0;
  double rel_tol = 1e-9;
  double abs_tol = 1e-12;
  /// Largest allowed step; 0 selects 0.05 * 2 pi / omega.
  double max_step = 0.0;

  void validate() const;
  double effective_max_step(const DriveParams& p) const;
};

using Matrix2 = std::array<std::array<Complex, 2>, 2>;

Matrix2 hamiltonian_at(const DriveParams& p, double tau);

struct EvolveStats {
  std::size_t steps = 0;
  double max_norm_drift = 0.0;  // max | |c_up|^2 + |c_down|^2 - 1 | over accepted steps
};

/// Amplitudes at cfg.tau_end starting from `init` at cfg.tau_start.
/// Throws StepSizeUnderflow if the step controller stalls.
AmplitudePair evolve(const DriveParams& p, const IntegrationConfig& cfg, const AmplitudePair& init,
                     EvolveStats* stats = nullptr);

/// |c_up(tau_end)|^2 starting from (1, 0).
double survival_probability(const DriveParams& p, const IntegrationConfig& cfg = {});

}  // namespace kzosc::tdse
