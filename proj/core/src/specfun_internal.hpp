// Helpers shared between the specfun translation units.
#pragma once

#include "kzosc/specfun.hpp"
#include "quad_complex.hpp"

namespace kzosc::specfun::detail {

inline constexpr double kPi = 3.14159265358979323846;

// Result of a quad-precision power series together with the information
// needed to judge how much of the 34-digit budget cancellation consumed.
struct QuadSeries {
  QComplex sum;
  Quad max_term_norm = 0;  // squared modulus of the largest term
  int terms = 0;
  bool converged = false;

  // Estimated relative error of the rounded sum.
  double relative_error() const;
  ScaledComplex scaled() const;
};

QuadSeries kummer_series_quad(Complex a, Complex b, Complex z, int max_terms, double tail_tol);

ScaledComplex to_scaled(QComplex v);

bool is_nonpositive_integer(Complex z);

}  // namespace kzosc::specfun::detail
