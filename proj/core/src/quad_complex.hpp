// Minimal quad-precision complex arithmetic for the cancellation-prone power
// series. std::complex<__float128> is avoided on purpose: libstdc++ routes its
// division and modulus through generic helpers that may silently fall back to
// double-precision sqrt.
#pragma once

#include <complex>
#include <quadmath.h>

namespace kzosc::specfun::detail {

using Quad = __float128;

struct QComplex {
  Quad re = 0;
  Quad im = 0;

  QComplex() = default;
  QComplex(Quad r, Quad i = 0) : re(r), im(i) {}
  explicit QComplex(std::complex<double> z) : re(z.real()), im(z.imag()) {}

  Quad norm() const { return re * re + im * im; }
  std::complex<double> to_double() const {
    return {static_cast<double>(re), static_cast<double>(im)};
  }
};

inline QComplex operator+(QComplex x, QComplex y) { return {x.re + y.re, x.im + y.im}; }
inline QComplex operator-(QComplex x, QComplex y) { return {x.re - y.re, x.im - y.im}; }
inline QComplex operator*(QComplex x, QComplex y) {
  return {x.re * y.re - x.im * y.im, x.re * y.im + x.im * y.re};
}
inline QComplex operator*(QComplex x, Quad s) { return {x.re * s, x.im * s}; }
inline QComplex operator/(QComplex x, QComplex y) {
  const Quad n = y.norm();
  return {(x.re * y.re + x.im * y.im) / n, (x.im * y.re - x.re * y.im) / n};
}
inline QComplex operator/(QComplex x, Quad s) { return {x.re / s, x.im / s}; }
inline bool is_zero(QComplex x) { return x.re == 0 && x.im == 0; }

// Relative precision of __float128 arithmetic.
inline constexpr double kQuadEpsilon = 1.0e-34;

}  // namespace kzosc::specfun::detail
