#include "kzosc/specfun.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <string>

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/numeric/odeint.hpp>

#include "kzosc/errors.hpp"
#include "specfun_internal.hpp"

namespace kzosc::specfun {

using detail::kPi;
using detail::QComplex;
using detail::Quad;

void SeriesControl::validate() const {
  if (max_terms < 1) throw DomainError("SeriesControl: max_terms must be >= 1");
  if (!(tail_tolerance > 0.0)) throw DomainError("SeriesControl: tail_tolerance must be > 0");
}

// ---------------------------------------------------------------------------
// ScaledComplex

namespace {

ScaledComplex renormalize(Complex m, double s) {
  if (m == Complex(0.0, 0.0)) return {};
  const double a = std::abs(m);
  if (!std::isfinite(a)) throw OverflowError("ScaledComplex: non-finite mantissa");
  return {m / a, s + std::log(a)};
}

}  // namespace

ScaledComplex ScaledComplex::from(Complex v) { return renormalize(v, 0.0); }

ScaledComplex ScaledComplex::from_log(Complex log_value) {
  if (!std::isfinite(log_value.real()) || !std::isfinite(log_value.imag())) {
    if (log_value.real() == -std::numeric_limits<double>::infinity()) return {};
    throw OverflowError("ScaledComplex: non-finite logarithm");
  }
  return {std::polar(1.0, log_value.imag()), log_value.real()};
}

double ScaledComplex::log_abs() const {
  if (is_zero()) return -std::numeric_limits<double>::infinity();
  return log_scale + std::log(std::abs(mantissa));
}

Complex ScaledComplex::value() const {
  if (is_zero()) return {0.0, 0.0};
  const double la = log_abs();
  if (la > 709.0) throw OverflowError("value exceeds double range (log|v| = " + std::to_string(la) + ")");
  if (la < -745.0) return {0.0, 0.0};
  return mantissa * std::exp(log_scale);
}

ScaledComplex ScaledComplex::normalized() const { return renormalize(mantissa, log_scale); }

ScaledComplex operator*(const ScaledComplex& x, const ScaledComplex& y) {
  return renormalize(x.mantissa * y.mantissa, x.log_scale + y.log_scale);
}

ScaledComplex operator*(const ScaledComplex& x, Complex y) {
  return renormalize(x.mantissa * y, x.log_scale);
}

ScaledComplex operator+(const ScaledComplex& x, const ScaledComplex& y) {
  if (x.is_zero()) return y;
  if (y.is_zero()) return x;
  const double s = std::max(x.log_scale, y.log_scale);
  return renormalize(x.mantissa * std::exp(x.log_scale - s) + y.mantissa * std::exp(y.log_scale - s), s);
}

ScaledComplex operator-(const ScaledComplex& x, const ScaledComplex& y) {
  return x + ScaledComplex{-y.mantissa, y.log_scale};
}

// ---------------------------------------------------------------------------
// Gamma

namespace detail {

bool is_nonpositive_integer(Complex z) {
  return z.imag() == 0.0 && z.real() <= 0.0 && z.real() == std::floor(z.real());
}

}  // namespace detail

Complex log_gamma(Complex z) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
    throw DomainError("log_gamma: non-finite argument");
  if (detail::is_nonpositive_integer(z))
    throw PoleError("log_gamma: pole at non-positive integer " + std::to_string(z.real()));

  // Shift into the Stirling region. Each log is principal, and z + k never
  // crosses the cut when Im z != 0, so the sum continues the real-axis branch.
  Complex shift{0.0, 0.0};
  while (z.real() < 12.0) {
    shift += std::log(z);
    z += 1.0;
  }
  const Complex w = 1.0 / z;
  const Complex w2 = w * w;
  const Complex tail =
      w * (1.0 / 12 +
           w2 * (-1.0 / 360 +
                 w2 * (1.0 / 1260 +
                       w2 * (-1.0 / 1680 +
                             w2 * (1.0 / 1188 +
                                   w2 * (-691.0 / 360360 + w2 * (1.0 / 156 + w2 * (-3617.0 / 122400))))))));
  const double half_log_2pi = 0.91893853320467274178;
  return (z - 0.5) * std::log(z) - z + half_log_2pi + tail - shift;
}

Complex gamma(Complex z) { return std::exp(log_gamma(z)); }

Complex rgamma(Complex z) {
  if (detail::is_nonpositive_integer(z)) return {0.0, 0.0};
  return std::exp(-log_gamma(z));
}

// ---------------------------------------------------------------------------
// Bessel

double bessel_j(int n, double x) {
  if (!(std::abs(x) <= 50.0)) throw DomainError("bessel_j: |x| > 50 outside documented domain");
  double sign = 1.0;
  if (n < 0) {
    n = -n;
    if (n % 2) sign = -sign;
  }
  if (x < 0.0) {
    x = -x;
    if (n % 2) sign = -sign;
  }
  return sign * std::cyl_bessel_j(static_cast<double>(n), x);
}

// ---------------------------------------------------------------------------
// Kummer M

namespace detail {

ScaledComplex to_scaled(QComplex v) {
  if (is_zero(v)) return {};
  const Quad m = fabsq(v.re) > fabsq(v.im) ? fabsq(v.re) : fabsq(v.im);
  const double log_m = static_cast<double>(logq(m));
  return renormalize(Complex(static_cast<double>(v.re / m), static_cast<double>(v.im / m)), log_m);
}

double QuadSeries::relative_error() const {
  const Quad s = sum.norm();
  if (s == 0) return std::numeric_limits<double>::infinity();
  const double ratio = std::sqrt(static_cast<double>(max_term_norm / s));
  return kQuadEpsilon * (1.0 + ratio) * std::sqrt(static_cast<double>(terms) + 1.0);
}

ScaledComplex QuadSeries::scaled() const { return to_scaled(sum); }

QuadSeries kummer_series_quad(Complex a, Complex b, Complex z, int max_terms, double tail_tol) {
  const QComplex qa(a), qb(b), qz(z);
  const Quad tol2 = static_cast<Quad>(tail_tol) * static_cast<Quad>(tail_tol);
  QuadSeries out;
  out.sum = QComplex(1);
  out.max_term_norm = 1;
  QComplex term(1);
  int quiet = 0;
  for (int n = 0; n < max_terms; ++n) {
    const QComplex an = qa + QComplex(n);
    out.terms = n + 1;
    if (is_zero(an)) {  // terminating (polynomial) case
      out.converged = true;
      return out;
    }
    term = term * an / ((qb + QComplex(n)) * QComplex(n + 1)) * qz;
    out.sum = out.sum + term;
    const Quad t2 = term.norm();
    if (t2 > out.max_term_norm) out.max_term_norm = t2;
    // Two consecutive small terms guard against an accidental near-zero term.
    if (t2 <= tol2 * out.sum.norm()) {
      if (++quiet >= 2) {
        out.converged = true;
        return out;
      }
    } else {
      quiet = 0;
    }
  }
  return out;
}

}  // namespace detail

namespace {

constexpr double kSeriesAcceptError = 1e-16;

void check_kummer_b(Complex b) {
  if (detail::is_nonpositive_integer(b))
    throw DomainError("kummer_m: b must not be a non-positive integer");
}

using OdeState = std::array<Complex, 2>;

// Continue M(a, b, .) from a series point along the ray to z by integrating
// z w'' + (b - z) w' - a w = 0 with an embedded 7(8) Runge-Kutta pair.
ScaledComplex kummer_ray_ode(Complex a, Complex b, Complex z, const SeriesControl& ctl) {
  const double r = std::abs(z);
  const Complex u = z / r;
  // Largest start radius at which the quad series is still trustworthy for
  // both M(a, b) and M(a+1, b+1) (the latter gives the derivative).
  double r0 = r;
  ScaledComplex w0, dw0;
  const int budget = std::max(ctl.max_terms, 400);
  for (int attempt = 0;; ++attempt) {
    r0 *= 0.5;
    if (attempt > 60) throw ConvergenceError("kummer_m: no usable series start point");
    const Complex z0 = u * r0;
    const auto s0 = detail::kummer_series_quad(a, b, z0, budget, 1e-20);
    if (!s0.converged || s0.relative_error() > 1e-17) continue;
    const auto s1 = detail::kummer_series_quad(a + 1.0, b + 1.0, z0, budget, 1e-20);
    if (!s1.converged || s1.relative_error() > 1e-17) continue;
    w0 = s0.scaled();
    dw0 = s1.scaled() * (a / b);
    break;
  }

  // Common scale for the state vector; renormalize after every chunk.
  double log_scale = std::max(w0.log_abs(), dw0.is_zero() ? w0.log_abs() : dw0.log_abs());
  auto unscale = [&](const ScaledComplex& v) {
    if (v.is_zero()) return Complex(0.0, 0.0);
    return v.mantissa * std::exp(v.log_scale - log_scale);
  };
  OdeState state{unscale(w0), unscale(dw0)};

  namespace ode = boost::numeric::odeint;
  using Stepper = ode::runge_kutta_fehlberg78<OdeState, double, OdeState, double>;
  auto rhs = [&](const OdeState& x, OdeState& dx, double s) {
    const Complex zeta = u * s;
    dx[0] = u * x[1];
    dx[1] = u * ((zeta - b) * x[1] + a * x[0]) / zeta;
  };
  const double chunk = 4.0;
  double s = r0;
  while (s < r) {
    const double s_next = std::min(r, s + chunk);
    auto stepper = ode::make_controlled<Stepper>(1e-15, 1e-13);
    try {
      ode::integrate_adaptive(stepper, rhs, state, s, s_next, std::min(0.05, s_next - s));
    } catch (const std::exception& e) {
      throw ConvergenceError(std::string("kummer_m: ray integration failed: ") + e.what());
    }
    s = s_next;
    const double m = std::max(std::abs(state[0]), std::abs(state[1]));
    if (!(m > 0.0) || !std::isfinite(m)) throw ConvergenceError("kummer_m: ray integration lost the solution");
    state[0] /= m;
    state[1] /= m;
    log_scale += std::log(m);
  }
  return ScaledComplex{state[0], log_scale}.normalized();
}

}  // namespace

ScaledComplex kummer_m_scaled(Complex a, Complex b, Complex z, const SeriesControl& ctl) {
  ctl.validate();
  check_kummer_b(b);
  if (z == Complex(0.0, 0.0)) return ScaledComplex::from(1.0);
  const auto s = detail::kummer_series_quad(a, b, z, ctl.max_terms, ctl.tail_tolerance * 1e-3);
  if (s.converged && s.relative_error() <= kSeriesAcceptError) return s.scaled();
  return kummer_ray_ode(a, b, z, ctl);
}

Complex kummer_m(Complex a, Complex b, Complex z, const SeriesControl& ctl) {
  return kummer_m_scaled(a, b, z, ctl).value();
}

Complex kummer_m_series(Complex a, Complex b, Complex z, const SeriesControl& ctl) {
  ctl.validate();
  check_kummer_b(b);
  const auto s = detail::kummer_series_quad(a, b, z, ctl.max_terms, ctl.tail_tolerance);
  if (!s.converged)
    throw ConvergenceError("kummer_m_series: max_terms = " + std::to_string(ctl.max_terms) +
                           " exhausted before the tail criterion was met");
  return s.scaled().value();
}

ScaledComplex kummer_m_regularized_scaled(Complex a, int b, Complex z, const SeriesControl& ctl) {
  if (b == 1) return kummer_m_scaled(a, 1.0, z, ctl);
  if (b == 0) {
    if (a == Complex(0.0, 0.0) || z == Complex(0.0, 0.0)) return {};
    return kummer_m_scaled(a + 1.0, 2.0, z, ctl) * (a * z);
  }
  throw DomainError("kummer_m_regularized: unsupported b = " + std::to_string(b) + " (only 0 and 1)");
}

Complex kummer_m_regularized(Complex a, int b, Complex z, const SeriesControl& ctl) {
  return kummer_m_regularized_scaled(a, b, z, ctl).value();
}

// ---------------------------------------------------------------------------
// Tricomi U

namespace {

// U(a, b, z) = e^{-i th a} / Gamma(a) int_0^inf e^{-|z| s} s^{a-1} (1 + s e^{-i th})^{b-a-1} ds,
// th = arg z, valid for Re a > 0.
Complex tricomi_u_contour(Complex a, Complex b, Complex z) {
  // integrate() is non-const (it may extend its abscissa tables), so keep one per thread.
  static thread_local boost::math::quadrature::exp_sinh<double> integrator;
  const double r = std::abs(z);
  const double th = std::arg(z);
  const Complex rot = std::polar(1.0, -th);
  const Complex p = a - 1.0;
  const Complex q = b - a - 1.0;
  auto f = [&](double s) -> Complex {
    if (s <= 0.0) return {0.0, 0.0};
    const double decay = -r * s;
    if (decay < -745.0) return {0.0, 0.0};
    return std::exp(decay + p * std::log(s) + q * std::log(1.0 + s * rot));
  };
  double err = 0.0, l1 = 0.0;
  Complex val;
  try {
    val = integrator.integrate(f, 1e-13, &err, &l1);
  } catch (const std::exception& e) {
    throw QuadratureError(std::string("tricomi_u: contour quadrature failed: ") + e.what());
  }
  if (!std::isfinite(val.real()) || !std::isfinite(val.imag()) || err > 1e-9 * std::max(std::abs(val), 1e-300) + 1e-13 * l1)
    throw QuadratureError("tricomi_u: contour quadrature did not converge");
  return std::exp(Complex(0.0, -th) * a - log_gamma(a)) * val;
}

}  // namespace

namespace detail {

Complex tricomi_u_any(Complex a, Complex b, Complex z) {
  if (z == Complex(0.0, 0.0)) throw DomainError("tricomi_u: branch point at z = 0");
  if (z.real() < 0.0 && z.imag() == 0.0) throw DomainError("tricomi_u: z on the branch cut");
  if (a == Complex(0.0, 0.0)) return {1.0, 0.0};
  // Shift a to the right half-plane, then recur back down; U is the minimal
  // solution of the a-recurrence, so the downward direction is stable.
  const int shift = a.real() >= 0.5 ? 0 : static_cast<int>(std::ceil(0.5 - a.real()));
  if (shift == 0) return tricomi_u_contour(a, b, z);
  const Complex top = a + static_cast<double>(shift);
  Complex u_hi = tricomi_u_contour(top + 1.0, b, z);
  Complex u = tricomi_u_contour(top, b, z);
  const Complex bd = b;
  for (int k = shift; k > 0; --k) {
    // U(a-1) = -(b - 2a - z) U(a) - a (a - b + 1) U(a+1)
    const Complex ak = a + static_cast<double>(k);
    const Complex u_lo = -(bd - 2.0 * ak - z) * u - ak * (ak - bd + 1.0) * u_hi;
    u_hi = u;
    u = u_lo;
  }
  return u;
}

}  // namespace detail

Complex tricomi_u(Complex a, int b, Complex z) {
  if (b != 0 && b != 1) throw DomainError("tricomi_u: unsupported b = " + std::to_string(b) + " (only 0 and 1)");
  return detail::tricomi_u_any(a, static_cast<double>(b), z);
}

}  // namespace kzosc::specfun
