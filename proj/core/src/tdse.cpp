#include "kzosc/tdse.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "kzosc/errors.hpp"

namespace kzosc::tdse {

namespace {

constexpr double kTwoPi = 6.283185307179586477;

// Hamiltonian as a real vector of Pauli coefficients (x, y, z).
struct Pauli {
  double x = 0.0, y = 0.0, z = 0.0;
};

Pauli pauli_at(const DriveParams& p, double a_amp, double tau) {
  const double c = std::cos(p.omega * tau);
  return {p.delta + 0.5 * p.b_amp * c, 0.0, 0.5 * (tau + p.eps - a_amp * c)};
}

// Fourth-order Magnus exponent over [t, t+h] from the two Gauss points:
// Omega = -i n.sigma with n = h/2 (h1 + h2) + sqrt(3) h^2 / 6 (h2 x h1).
Pauli magnus4(const DriveParams& p, double a_amp, double t, double h) {
  static const double g = 0.5 - std::sqrt(3.0) / 6.0;
  static const double k = std::sqrt(3.0) / 6.0;
  const Pauli h1 = pauli_at(p, a_amp, t + g * h);
  const Pauli h2 = pauli_at(p, a_amp, t + (1.0 - g) * h);
  const double kh = k * h * h;
  return {0.5 * h * (h1.x + h2.x) + kh * (h2.y * h1.z - h2.z * h1.y),
          0.5 * h * (h1.y + h2.y) + kh * (h2.z * h1.x - h2.x * h1.z),
          0.5 * h * (h1.z + h2.z) + kh * (h2.x * h1.y - h2.y * h1.x)};
}

// (u, d) <- exp(-i n.sigma) (u, d)
void apply_su2(const Pauli& n, Complex& u, Complex& d) {
  const double r = std::sqrt(n.x * n.x + n.y * n.y + n.z * n.z);
  const double c = std::cos(r);
  const double s = r > 0.0 ? std::sin(r) / r : 1.0;
  const Complex a00(c, -s * n.z), a11(c, s * n.z);
  const Complex a01 = Complex(0.0, -s) * Complex(n.x, -n.y);
  const Complex a10 = Complex(0.0, -s) * Complex(n.x, n.y);
  const Complex nu = a00 * u + a01 * d;
  const Complex nd = a10 * u + a11 * d;
  u = nu;
  d = nd;
}

}  // namespace

void IntegrationConfig::validate() const {
  if (!(tau_start < 0.0 && tau_end > 0.0)) throw DomainError("IntegrationConfig: need tau_start < 0 < tau_end");
  if (!(rel_tol > 0.0) || !(abs_tol > 0.0)) throw DomainError("IntegrationConfig: tolerances must be > 0");
  if (max_step < 0.0) throw DomainError("IntegrationConfig: max_step must be >= 0");
}

double IntegrationConfig::effective_max_step(const DriveParams& p) const {
  return max_step > 0.0 ? max_step : 0.05 * kTwoPi / p.omega;
}

Matrix2 hamiltonian_at(const DriveParams& p, double tau) {
  const Pauli h = pauli_at(p, p.a_amp(), tau);
  return {{{Complex(h.z, 0.0), Complex(h.x, 0.0)}, {Complex(h.x, 0.0), Complex(-h.z, 0.0)}}};
}

AmplitudePair evolve(const DriveParams& p, const IntegrationConfig& cfg, const AmplitudePair& init,
                     EvolveStats* stats) {
  p.validate();
  cfg.validate();
  if (std::abs(init.norm() - 1.0) > 1e-10) throw DomainError("evolve: initial state must be normalized");

  const double a_amp = p.a_amp();
  const double h_max = cfg.effective_max_step(p);
  const double t_end = cfg.tau_end;
  Complex u = init.c_up, d = init.c_down;
  double t = cfg.tau_start;
  double h = std::min(h_max, 0.1 / (1.0 + std::abs(t)));
  EvolveStats local;
  const std::size_t max_steps = 200000000;
  std::size_t attempts = 0;

  while (t < t_end) {
    if (t + h > t_end) h = t_end - t;
    if (h < 1e-14 * std::max(1.0, std::abs(t)) || ++attempts > max_steps)
      throw StepSizeUnderflow("evolve: step size underflow at tau = " + std::to_string(t));

    // Step doubling: one full step against two half steps.
    Complex uf = u, df = d;
    apply_su2(magnus4(p, a_amp, t, h), uf, df);
    Complex uh = u, dh = d;
    apply_su2(magnus4(p, a_amp, t, 0.5 * h), uh, dh);
    apply_su2(magnus4(p, a_amp, t + 0.5 * h, 0.5 * h), uh, dh);
    const double err = std::max(std::abs(uf - uh), std::abs(df - dh)) / 15.0;
    const double scale = cfg.abs_tol + cfg.rel_tol * std::max(std::abs(uh), std::abs(dh));
    const double ratio = err / scale;

    if (ratio <= 1.0) {
      u = uh;
      d = dh;
      t += h;
      ++local.steps;
      const double drift = std::abs(std::norm(u) + std::norm(d) - 1.0);
      local.max_norm_drift = std::max(local.max_norm_drift, drift);
      h *= ratio > 0.0 ? std::min(4.0, 0.9 * std::pow(ratio, -0.2)) : 4.0;
    } else {
      h *= std::max(0.2, 0.9 * std::pow(ratio, -0.2));
    }
    h = std::min(h, h_max);
  }
  if (stats) *stats = local;
  return {u, d};
}

double survival_probability(const DriveParams& p, const IntegrationConfig& cfg) {
  const AmplitudePair out = evolve(p, cfg, AmplitudePair{});
  double prob = std::norm(out.c_up);
  // Clamp only integrator round-off, not genuine violations.
  if (prob > 1.0 && prob < 1.0 + 1e-12) prob = 1.0;
  if (prob < 0.0 && prob > -1e-12) prob = 0.0;
  return prob;
}

}  // namespace kzosc::tdse
