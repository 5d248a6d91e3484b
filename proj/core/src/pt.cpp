#include "kzosc/pt.hpp"

#include <cmath>
#include <complex>
#include <vector>

#include "kzosc/errors.hpp"
#include "kzosc/specfun.hpp"

namespace kzosc::pt {

namespace {

constexpr double kPi = 3.14159265358979323846;

struct Channels {
  std::vector<double> weight;  // index n + n_max
  std::vector<double> phase;
};

Channels channels(const DriveParams& p, int n_max) {
  std::vector<double> bj(2 * n_max + 3);
  for (int n = -n_max - 1; n <= n_max + 1; ++n) bj[n + n_max + 1] = specfun::bessel_j(n, p.eta);
  auto J = [&](int n) { return bj[n + n_max + 1]; };
  Channels c;
  c.weight.resize(2 * n_max + 1);
  c.phase.resize(2 * n_max + 1);
  for (int n = -n_max; n <= n_max; ++n) {
    c.weight[n + n_max] = p.delta * J(n) + 0.25 * p.b_amp * (J(n + 1) + J(n - 1));
    c.phase[n + n_max] = 0.5 * p.omega * (n * n * p.omega - 2.0 * n * p.eps);
  }
  return c;
}

}  // namespace

void SumTruncation::validate() const {
  if (n_max < 1) throw DomainError("SumTruncation: n_max must be >= 1");
}

double lzsm_probability(double delta) {
  if (!(delta >= 0.0)) throw DomainError("lzsm_probability: delta must be >= 0");
  return std::exp(-2.0 * kPi * delta * delta);
}

double exponent_double_sum(const DriveParams& p, const SumTruncation& trunc, double theta_zero) {
  p.validate();
  trunc.validate();
  const int N = trunc.n_max;
  const Channels c = channels(p, N);
  double sum = 0.0;
  for (int n = -N; n <= N; ++n) {
    const double wn = c.weight[n + N];
    if (wn == 0.0) continue;
    for (int m = -N; m <= n; ++m) {
      const double theta = (n == m) ? theta_zero : 1.0;
      sum += theta * wn * c.weight[m + N] * std::cos(c.phase[n + N] - c.phase[m + N]);
    }
  }
  return -4.0 * kPi * sum;
}

double exponent_modulus_form(const DriveParams& p, const SumTruncation& trunc) {
  p.validate();
  trunc.validate();
  const int N = trunc.n_max;
  const Channels c = channels(p, N);
  std::complex<double> s{0.0, 0.0};
  for (int n = -N; n <= N; ++n) s += c.weight[n + N] * std::polar(1.0, -c.phase[n + N]);
  return -2.0 * kPi * std::norm(s);
}

double p_pt(const DriveParams& p, const SumTruncation& trunc) {
  return std::exp(exponent_double_sum(p, trunc));
}

double p_pt_a0(const DriveParams& p) {
  p.validate();
  if (p.a_amp() != 0.0) throw PreconditionError("p_pt_a0: requires a_amp = 0");
  const double c = std::cos(p.omega * p.eps);
  return std::exp(-2.0 * kPi * p.delta * p.delta - 0.5 * kPi * p.b_amp * p.b_amp * c * c -
                  2.0 * kPi * p.b_amp * p.delta * std::cos(0.5 * p.omega * p.omega) * c);
}

double p_pt_b0(const DriveParams& p, const SumTruncation& trunc) {
  if (p.b_amp != 0.0) throw PreconditionError("p_pt_b0: requires b_amp = 0");
  return p_pt(p, trunc);
}

double p_pt_b0_small_eta(const DriveParams& p) {
  p.validate();
  if (p.b_amp != 0.0) throw PreconditionError("p_pt_b0_small_eta: requires b_amp = 0");
  return std::exp(-2.0 * kPi * p.delta * p.delta *
                  (1.0 + 2.0 * p.eta * std::sin(p.omega * p.eps) * std::sin(0.5 * p.omega * p.omega)));
}

}  // namespace kzosc::pt
