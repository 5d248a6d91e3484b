// Windowed quadrature for slowly decaying, chirped integrands on the real line.
#pragma once

#include <cmath>
#include <complex>
#include <type_traits>

#include <boost/math/quadrature/gauss.hpp>

#include "kzosc/errors.hpp"

namespace kzosc::quad {

using Complex = std::complex<double>;

inline bool is_finite_value(double v) { return std::isfinite(v); }
inline bool is_finite_value(const Complex& v) { return std::isfinite(v.real()) && std::isfinite(v.imag()); }
template <class V>
auto is_finite_value(const V& v) -> decltype(v.is_finite()) {
  return v.is_finite();
}

/// Smooth window of half-width `half_width` around `center`. The weight is 1
/// on the inner part and rolls off with an erfc profile across the outer
/// `taper_fraction` of the half-width, reaching ~4e-7 at the edge.
struct TaperedWindow {
  double center = 0.0;
  double half_width = 500.0;
  double taper_fraction = 0.1;

  void validate() const {
    if (!(half_width > 0.0)) throw DomainError("TaperedWindow: half_width must be > 0");
    if (!(taper_fraction > 0.0 && taper_fraction <= 1.0))
      throw DomainError("TaperedWindow: taper_fraction must lie in (0, 1]");
  }
  double lo() const { return center - half_width; }
  double hi() const { return center + half_width; }
  double taper_length() const { return taper_fraction * half_width; }

  double weight(double t) const {
    const double len = taper_length();
    const double mid = half_width - 0.5 * len;
    const double sigma = len / 7.0;
    return 0.5 * std::erfc((std::abs(t - center) - mid) / sigma);
  }
};

/// Integrates w(t) f(t) over the window with fixed-order Gauss-Legendre
/// panels whose length tracks the local oscillation frequency reported by
/// `frequency(t)` (radians per unit t). Panels never exceed `max_panel`.
/// The value type only needs `+=`, scaling by double, and value-initialization,
/// so several integrands sharing one evaluation can be integrated together.
template <class F, class Freq>
auto integrate_windowed(F&& f, Freq&& frequency, const TaperedWindow& win, double cycles_per_panel = 1.5,
                        double max_panel = 1.0) {
  using Value = std::decay_t<std::invoke_result_t<F&, double>>;
  using Rule = boost::math::quadrature::gauss<double, 20>;
  constexpr double kTwoPi = 6.283185307179586477;
  win.validate();
  const auto& nodes = Rule::abscissa();
  const auto& weights = Rule::weights();
  Value total{};
  double a = win.lo();
  const double end = win.hi();
  while (a < end) {
    const double freq = std::abs(frequency(a)) + 1e-12;
    const double b = std::min(end, a + std::min(max_panel, cycles_per_panel * kTwoPi / freq));
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      // 20-point rule: every abscissa is paired with its mirror image
      const double dt = half * nodes[i];
      const double wt = half * weights[i];
      total += (wt * win.weight(mid + dt)) * f(mid + dt);
      total += (wt * win.weight(mid - dt)) * f(mid - dt);
    }
    a = b;
  }
  if (!is_finite_value(total)) throw QuadratureError("integrate_windowed: non-finite result");
  return total;
}

}  // namespace kzosc::quad
