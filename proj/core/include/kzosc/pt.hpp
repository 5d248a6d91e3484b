// Perturbative (non-adiabatic) survival probabilities of the driven sweep.
#pragma once

#include "kzosc/drive.hpp"

namespace kzosc::pt {

/// Photon-index cutoff: the double sum runs over |n|, |m| <= n_max.
struct SumTruncation {
  int n_max = 10;
  void validate() const;
};

/// exp(-2 pi delta^2).
double lzsm_probability(double delta);

/// Exponent of the perturbative probability as the literal double sum
///   -4 pi sum_{n,m} w_n w_m cos(phi_n - phi_m) theta(n - m),
///   w_n = delta J_n(eta) + b/4 (J_{n+1}(eta) + J_{n-1}(eta)),
///   phi_n = omega (n^2 omega - 2 n eps) / 2,
/// with theta(0) = theta_zero (1/2 by definition of the step function).
double exponent_double_sum(const DriveParams& p, const SumTruncation& trunc, double theta_zero = 0.5);

/// The same exponent written as -2 pi |sum_n w_n e^{-i phi_n}|^2. Independent
/// route used to cross-check the double sum.
double exponent_modulus_form(const DriveParams& p, const SumTruncation& trunc);

/// Raw exponential of the double sum; not clamped to [0, 1].
double p_pt(const DriveParams& p, const SumTruncation& trunc = {});

/// Closed form for a_amp = 0. Throws PreconditionError otherwise.
double p_pt_a0(const DriveParams& p);

/// Specialization for b_amp = 0 (same kernel as p_pt, hence identical bits).
/// Throws PreconditionError if b_amp != 0.
double p_pt_b0(const DriveParams& p, const SumTruncation& trunc = {});

/// First order in eta of p_pt_b0. Throws PreconditionError if b_amp != 0.
double p_pt_b0_small_eta(const DriveParams& p);

}  // namespace kzosc::pt
