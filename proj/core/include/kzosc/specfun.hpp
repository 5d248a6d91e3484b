// Complex special functions used by the closed-form transition probabilities.
//
// Coverage is deliberately narrow: the confluent hypergeometric functions are
// only supported at the integer second parameters the probability formulas
// need, and the parabolic cylinder function is tuned for arguments on the
// rays arg z = ±pi/4 and the real axis.
#pragma once

#include <complex>

namespace kzosc::specfun {

using Complex = std::complex<double>;

/// Truncation policy for every power series in this module.
struct SeriesControl {
  int max_terms = 400;
  double tail_tolerance = 1e-14;

  void validate() const;
};

/// A complex number stored as mantissa * exp(log_scale).
///
/// Products of parabolic cylinder and Gamma values overflow double range long
/// before the balanced quantity they feed into does, so the kernels carry the
/// scale separately and only collapse it at the public boundary.
struct ScaledComplex {
  Complex mantissa{0.0, 0.0};
  double log_scale = 0.0;

  static ScaledComplex from(Complex v);
  /// exp(log_value) without ever forming the unscaled number.
  static ScaledComplex from_log(Complex log_value);

  bool is_zero() const { return mantissa == Complex(0.0, 0.0); }
  double log_abs() const;
  /// Unscaled value; throws OverflowError if it is not representable.
  Complex value() const;
  /// Unscaled value, flushing to zero on underflow and throwing on overflow.
  ScaledComplex normalized() const;

  friend ScaledComplex operator*(const ScaledComplex& x, const ScaledComplex& y);
  friend ScaledComplex operator*(const ScaledComplex& x, Complex y);
  friend ScaledComplex operator+(const ScaledComplex& x, const ScaledComplex& y);
  friend ScaledComplex operator-(const ScaledComplex& x, const ScaledComplex& y);
};

/// Principal branch of log Gamma(z), continuous off the negative real axis.
/// Throws PoleError at non-positive integers.
Complex log_gamma(Complex z);
Complex gamma(Complex z);
/// 1/Gamma(z); exactly zero at the poles of Gamma.
Complex rgamma(Complex z);

/// Bessel function of the first kind J_n(x) for |x| <= 50.
double bessel_j(int n, double x);

/// Kummer's function 1F1(a; b; z).
///
/// The power series is summed in quad precision and accepted when its own
/// cancellation estimate allows it; otherwise the value is continued from a
/// short-radius series point by integrating Kummer's equation along the ray
/// to z. Throws DomainError if b is a non-positive integer.
Complex kummer_m(Complex a, Complex b, Complex z, const SeriesControl& ctl = {});
ScaledComplex kummer_m_scaled(Complex a, Complex b, Complex z, const SeriesControl& ctl = {});

/// Plain power series for 1F1 with no fallback. Throws ConvergenceError when
/// max_terms is exhausted before the tail criterion is met.
Complex kummer_m_series(Complex a, Complex b, Complex z, const SeriesControl& ctl = {});

/// Regularized 1F1(a; b; z) / Gamma(b) for b in {0, 1}.
Complex kummer_m_regularized(Complex a, int b, Complex z, const SeriesControl& ctl = {});
ScaledComplex kummer_m_regularized_scaled(Complex a, int b, Complex z,
                                          const SeriesControl& ctl = {});

/// Tricomi's confluent hypergeometric function U(a, b, z) for b in {0, 1}
/// and z != 0 off the negative real axis (the formulas only need z = ±i y).
Complex tricomi_u(Complex a, int b, Complex z);

/// Parabolic cylinder function D_nu(z).
Complex parabolic_cylinder_d(Complex nu, Complex z);
ScaledComplex parabolic_cylinder_d_scaled(Complex nu, Complex z);

/// Closed forms of the Fourier integrals
///   mixed: int e^{i w t} D_{nu1}(e^{ i pi/4} t) D_{nu2}(e^{-i pi/4} t) dt
///   upper: int e^{i w t} D_{nu1}(e^{ i pi/4} t) D_{nu2}(e^{ i pi/4} t) dt
///   lower: int e^{i w t} D_{nu1}(e^{-i pi/4} t) D_{nu2}(e^{-i pi/4} t) dt
/// over the whole real line (Abel-regularized when the integrand does not
/// decay). Valid for omega > 0.
Complex pcf_fourier_mixed(Complex nu1, Complex nu2, double omega);
Complex pcf_fourier_upper(Complex nu1, Complex nu2, double omega);
Complex pcf_fourier_lower(Complex nu1, Complex nu2, double omega);

namespace detail {
// U(a, b, z) for any b, by contour quadrature plus downward a-recurrence.
Complex tricomi_u_any(Complex a, Complex b, Complex z);
}  // namespace detail

}  // namespace kzosc::specfun
