// Parabolic cylinder function D_nu(z) and the Fourier integrals of its products.
#include <array>
#include <cmath>
#include <string>

#include <boost/numeric/odeint.hpp>

#include "kzosc/errors.hpp"
#include "kzosc/specfun.hpp"
#include "specfun_internal.hpp"

namespace kzosc::specfun {

using detail::kPi;
using detail::QComplex;
using detail::Quad;

namespace {

constexpr double kLn2 = 0.69314718055994530942;
const Complex kI{0.0, 1.0};

struct PcfValue {
  ScaledComplex value;
  bool ok = false;
};

// e^{-z^2/4} z^nu sum_s (-1)^s (-nu)_{2s} / (s! (2 z^2)^s), truncated at the
// smallest term. Accepted only if that term is below double resolution.
PcfValue pcf_asymptotic(Complex nu, Complex z) {
  const Complex inv = 1.0 / (2.0 * z * z);
  Complex term = 1.0, sum = 1.0;
  double prev = 1.0;
  PcfValue out;
  for (int s = 1; s < 400; ++s) {
    const Complex k = -nu + 2.0 * s - 2.0;
    term *= -k * (k + 1.0) * inv / static_cast<double>(s);
    const double t = std::abs(term);
    if (t == 0.0) {
      out.ok = true;
      break;
    }
    if (t > prev && s > 2) break;  // past the optimal truncation point
    sum += term;
    prev = t;
    if (t < 1e-17 * std::abs(sum)) {
      out.ok = true;
      break;
    }
  }
  out.value = ScaledComplex::from_log(nu * std::log(z) - z * z * 0.25) * sum;
  return out;
}

// Even/odd 1F1 combination summed in quad precision:
// D = 2^{nu/2} e^{-z^2/4} [ sqrt(pi)/Gamma((1-nu)/2) M(-nu/2, 1/2, z^2/2)
//                           - sqrt(2 pi) z / Gamma(-nu/2) M((1-nu)/2, 3/2, z^2/2) ]
PcfValue pcf_series(Complex nu, Complex z) {
  PcfValue out;
  const Complex h = z * z * 0.5;
  const auto m1 = detail::kummer_series_quad(-0.5 * nu, 0.5, h, 600, 1e-22);
  const auto m2 = detail::kummer_series_quad(0.5 * (1.0 - nu), 1.5, h, 600, 1e-22);
  if (!m1.converged || !m2.converged) return out;
  const Complex ca = std::sqrt(kPi) * rgamma(0.5 * (1.0 - nu));
  const Complex cb = std::sqrt(2.0 * kPi) * rgamma(-0.5 * nu) * z;
  const QComplex t1 = m1.sum * QComplex(ca);
  const QComplex t2 = m2.sum * QComplex(cb);
  const QComplex d = t1 - t2;
  const double n1 = std::sqrt(static_cast<double>(t1.norm()));
  const double n2 = std::sqrt(static_cast<double>(t2.norm()));
  const double nd = std::sqrt(static_cast<double>(d.norm()));
  if (!(nd > 0.0)) return out;
  const double cancel = (n1 + n2) / nd;
  const double err = cancel * (std::max(m1.relative_error(), m2.relative_error()) + 2e-16);
  out.ok = err < 5e-14;
  out.value = ScaledComplex::from_log(0.5 * nu * kLn2 - z * z * 0.25) * detail::to_scaled(d);
  return out;
}

using WeberState = std::array<Complex, 2>;

// Integrate w'' = (z^2/4 - nu - 1/2) w along the ray arg z = theta from
// radius r_from to r_to. The state is carried with a shared log scale.
ScaledComplex weber_ray(Complex nu, double theta, double r_from, double r_to, const ScaledComplex& w,
                        const ScaledComplex& dw) {
  const Complex u = std::polar(1.0, theta);
  double log_scale = std::max(w.log_abs(), dw.log_abs());
  auto unscale = [&](const ScaledComplex& v) {
    return v.is_zero() ? Complex(0.0, 0.0) : v.mantissa * std::exp(v.log_scale - log_scale);
  };
  WeberState state{unscale(w), unscale(dw)};
  auto rhs = [&](const WeberState& x, WeberState& dx, double r) {
    const Complex zeta = u * r;
    dx[0] = u * x[1];
    dx[1] = u * (zeta * zeta * 0.25 - nu - 0.5) * x[0];
  };
  namespace ode = boost::numeric::odeint;
  using Stepper = ode::runge_kutta_fehlberg78<WeberState, double, WeberState, double>;
  const double dir = r_to > r_from ? 1.0 : -1.0;
  double r = r_from;
  while (dir * (r_to - r) > 0.0) {
    // Chunks short enough that growth between renormalizations stays tame.
    const double len = std::min(2.0, 8.0 / (1.0 + std::abs(r)));
    const double r_next = dir > 0 ? std::min(r_to, r + std::max(len, 0.25)) : std::max(r_to, r - std::max(len, 0.25));
    auto stepper = ode::make_controlled<Stepper>(1e-15, 1e-13);
    try {
      ode::integrate_adaptive(stepper, rhs, state, r, r_next, (r_next - r) * 0.1);
    } catch (const std::exception& e) {
      throw ConvergenceError(std::string("parabolic_cylinder_d: Weber integration failed: ") + e.what());
    }
    r = r_next;
    const double m = std::max(std::abs(state[0]), std::abs(state[1]));
    if (!(m > 0.0) || !std::isfinite(m)) throw ConvergenceError("parabolic_cylinder_d: Weber integration lost the solution");
    state[0] /= m;
    state[1] /= m;
    log_scale += std::log(m);
  }
  return ScaledComplex{state[0], log_scale}.normalized();
}

ScaledComplex pcf_right_half(Complex nu, Complex z);

// D'_nu = nu D_{nu-1} - (z/2) D_nu
ScaledComplex pcf_derivative(Complex nu, Complex z, const ScaledComplex& d_nu, const ScaledComplex& d_num1) {
  return d_num1 * nu - d_nu * (0.5 * z);
}

ScaledComplex pcf_bridge(Complex nu, Complex z) {
  const double r = std::abs(z);
  const double theta = std::arg(z);
  if (std::abs(theta) <= 0.25 * kPi + 1e-12) {
    // Inward from the asymptotic region: D is the growing solution inward.
    double big = std::max(r, 6.0);
    for (;;) {
      big *= 1.25;
      if (big > 4e4) throw ConvergenceError("parabolic_cylinder_d: asymptotic region out of reach");
      const Complex zb = std::polar(big, theta);
      const auto a0 = pcf_asymptotic(nu, zb);
      if (!a0.ok) continue;
      const auto a1 = pcf_asymptotic(nu - 1.0, zb);
      if (!a1.ok) continue;
      return weber_ray(nu, theta, big, r, a0.value, pcf_derivative(nu, zb, a0.value, a1.value));
    }
  }
  // Outward from the largest radius where the series is trustworthy.
  double small = std::min(r, 8.0);
  for (int attempt = 0; attempt < 40; ++attempt, small *= 0.8) {
    const Complex zs = std::polar(small, theta);
    const auto s0 = pcf_series(nu, zs);
    if (!s0.ok) continue;
    const auto s1 = pcf_series(nu - 1.0, zs);
    if (!s1.ok) continue;
    return weber_ray(nu, theta, small, r, s0.value, pcf_derivative(nu, zs, s0.value, s1.value));
  }
  throw ConvergenceError("parabolic_cylinder_d: no usable series start point");
}

ScaledComplex pcf_right_half(Complex nu, Complex z) {
  const double r = std::abs(z);
  if (r >= 5.0) {
    const auto a = pcf_asymptotic(nu, z);
    if (a.ok) return a.value;
  }
  if (r <= 14.0) {
    const auto s = pcf_series(nu, z);
    if (s.ok) return s.value;
  }
  return pcf_bridge(nu, z);
}

ScaledComplex gamma_scaled_inverse(Complex x) {
  if (detail::is_nonpositive_integer(x)) return {};
  return ScaledComplex::from_log(-log_gamma(x));
}

}  // namespace

ScaledComplex parabolic_cylinder_d_scaled(Complex nu, Complex z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()) || !std::isfinite(nu.real()) ||
      !std::isfinite(nu.imag()))
    throw DomainError("parabolic_cylinder_d: non-finite input");
  if (z == Complex(0.0, 0.0)) {
    return ScaledComplex::from_log(0.5 * nu * kLn2 + 0.5 * std::log(kPi)) * gamma_scaled_inverse(0.5 * (1.0 - nu));
  }
  if (z.real() >= 0.0) return pcf_right_half(nu, z);

  // Connection formulas map the left half-plane onto the right one.
  const ScaledComplex rg = gamma_scaled_inverse(-nu);
  const double sq2pi = std::sqrt(2.0 * kPi);
  if (z.imag() <= 0.0) {
    const ScaledComplex t1 = ScaledComplex::from_log(-kI * kPi * nu) * pcf_right_half(nu, -z);
    if (rg.is_zero()) return t1;
    const ScaledComplex t2 =
        ScaledComplex::from_log(-kI * kPi * (nu + 1.0) * 0.5) * rg * pcf_right_half(-nu - 1.0, kI * z) * sq2pi;
    return t1 + t2;
  }
  const ScaledComplex t1 = ScaledComplex::from_log(kI * kPi * nu) * pcf_right_half(nu, -z);
  if (rg.is_zero()) return t1;
  const ScaledComplex t2 =
      ScaledComplex::from_log(kI * kPi * (nu + 1.0) * 0.5) * rg * pcf_right_half(-nu - 1.0, -kI * z) * sq2pi;
  return t1 + t2;
}

Complex parabolic_cylinder_d(Complex nu, Complex z) { return parabolic_cylinder_d_scaled(nu, z).value(); }

// ---------------------------------------------------------------------------
// Fourier integrals of D products

namespace {

void check_omega(double omega, const char* who) {
  if (!(omega > 0.0) || !std::isfinite(omega)) throw DomainError(std::string(who) + ": requires omega > 0");
}

Complex omega_power(double omega, Complex p) { return std::exp(p * std::log(omega)); }

// 1F1(a; b; z) / Gamma(b) for any b, using the exact reduction at b = 0.
Complex regularized_any(Complex a, Complex b, Complex z) {
  if (b == Complex(0.0, 0.0)) return kummer_m_regularized(a, 0, z);
  if (detail::is_nonpositive_integer(b))
    throw DomainError("regularized 1F1: negative integer b is not supported");
  return kummer_m(a, b, z) * rgamma(b);
}

}  // namespace

Complex pcf_fourier_mixed(Complex nu1, Complex nu2, double omega) {
  check_omega(omega, "pcf_fourier_mixed");
  const Complex z = kI * omega * omega;
  const Complex pref = 2.0 * kPi * rgamma(-nu1) * std::exp(-kI * 0.25 * kPi * (nu1 - nu2) - 0.5 * z) *
                       omega_power(omega, -nu1 - nu2 - 1.0);
  if (pref == Complex(0.0, 0.0)) return pref;
  return pref * detail::tricomi_u_any(-nu2, -nu1 - nu2, z);
}

Complex pcf_fourier_upper(Complex nu1, Complex nu2, double omega) {
  check_omega(omega, "pcf_fourier_upper");
  const Complex b = -nu1 + nu2 + 1.0;
  const Complex z = kI * omega * omega;
  const Complex common = std::sqrt(2.0 * kPi) * gamma(nu2 + 1.0) * std::exp(-0.5 * z) * omega_power(omega, -nu1 + nu2);
  const Complex rg = rgamma(-nu1);
  Complex u_part{0.0, 0.0};
  if (rg != Complex(0.0, 0.0))
    u_part = rg * std::exp(-kI * 0.25 * kPi * (nu1 + 3.0 * nu2 + 1.0)) * detail::tricomi_u_any(nu2 + 1.0, b, z);
  const Complex m_part = std::exp(-kI * 0.25 * kPi * (nu1 - nu2 + 1.0)) * regularized_any(nu2 + 1.0, b, z);
  return common * (u_part + m_part);
}

Complex pcf_fourier_lower(Complex nu1, Complex nu2, double omega) {
  check_omega(omega, "pcf_fourier_lower");
  const Complex z = kI * omega * omega;
  return std::sqrt(2.0 * kPi) * std::exp(kI * 0.25 * kPi * (nu1 + 3.0 * nu2 + 1.0) - 0.5 * z) *
         omega_power(omega, -nu1 + nu2) * detail::tricomi_u_any(-nu1, -nu1 + nu2 + 1.0, z);
}

}  // namespace kzosc::specfun
