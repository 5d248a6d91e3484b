#include "kzosc/furry.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <utility>

#include "kzosc/errors.hpp"
#include "kzosc/quadrature.hpp"
#include "kzosc/specfun.hpp"

namespace kzosc::furry {
namespace {

namespace sf = kzosc::specfun;

constexpr double kPi = 3.14159265358979323846;
const Complex kI{0.0, 1.0};

Complex cis(double phase) { return std::polar(1.0, phase); }

void check_kappa(double kappa) {
  if (!(kappa >= 0.0) || !std::isfinite(kappa)) throw DomainError("furry: kappa must be >= 0");
}

// Common phase e^{i x^2/4} |x|^{ik} of the start coefficients.
Complex common_phase_at(double kappa, double x0) {
  if (x0 == 0.0) return 1.0;
  const double ax = std::abs(x0);
  return cis(0.25 * x0 * x0 + kappa * std::log(ax));
}

// The two independent basis values at x: P = D_{-ik}(e^{i pi/4} x) and
// R = D_{-ik-1}(e^{i pi/4} x). The other two are their conjugates.
struct BasisValues {
  Complex p;
  Complex r;
};

BasisValues basis_at(double kappa, double x) {
  const Complex z = cis(0.25 * kPi) * x;
  return {sf::parabolic_cylinder_d(Complex(0.0, -kappa), z), sf::parabolic_cylinder_d(Complex(-1.0, -kappa), z)};
}

// Negative delta maps onto positive delta by the sz conjugation, which flips
// the sign of every sx term and leaves the survival amplitude unchanged.
DriveParams canonical(const DriveParams& p) {
  p.validate();
  DriveParams q = p;
  if (q.delta < 0.0) {
    q.delta = -q.delta;
    q.b_amp = -q.b_amp;
  }
  return q;
}

// ---- closed form by bilinear expansion -----------------------------------

// Basis order: P, R (upper ray), S = conj P, Q = conj R (lower ray).
constexpr int kBasis = 4;
using Combo = std::array<Complex, kBasis>;
constexpr std::array<int, kBasis> kConjugate{2, 3, 0, 1};

Combo conj_combo(const Combo& c) {
  Combo out{};
  for (int i = 0; i < kBasis; ++i) out[kConjugate[i]] = std::conj(c[i]);
  return out;
}

class FourierTable {
 public:
  FourierTable(double kappa, double omega, double eps)
      : order_{Complex(0.0, -kappa), Complex(-1.0, -kappa), Complex(0.0, kappa), Complex(-1.0, kappa)},
        omega_(omega),
        shift_minus_(cis(-omega * eps)),
        shift_plus_(cis(omega * eps)) {}

  // int cos(w tau) F(tau) G(tau) dtau, with tau = x - eps
  Complex cos_product(const Combo& f, const Combo& g) {
    Complex total{0.0, 0.0};
    for (int i = 0; i < kBasis; ++i) {
      if (f[i] == Complex(0.0, 0.0)) continue;
      for (int j = 0; j < kBasis; ++j) {
        if (g[j] == Complex(0.0, 0.0)) continue;
        const Complex minus = std::conj(plus(kConjugate[i], kConjugate[j]));
        total += f[i] * g[j] * 0.5 * (shift_minus_ * plus(i, j) + shift_plus_ * minus);
      }
    }
    return total;
  }

 private:
  // int e^{i w x} B_i(x) B_j(x) dx, evaluated on first use: at k = 0 the
  // entries with order -1 sit on a Gamma pole but always carry zero weight.
  Complex plus(int i, int j) {
    if (j < i) std::swap(i, j);
    auto& slot = cache_[i][j];
    if (!slot) {
      const bool up_i = i < 2;
      const bool up_j = j < 2;
      if (up_i && up_j) {
        slot = sf::pcf_fourier_upper(order_[i], order_[j], omega_);
      } else if (!up_i && !up_j) {
        slot = sf::pcf_fourier_lower(order_[i], order_[j], omega_);
      } else {
        slot = sf::pcf_fourier_mixed(order_[i], order_[j], omega_);  // i < j, so i is the upper one
      }
    }
    return *slot;
  }

  std::array<Complex, kBasis> order_;
  double omega_;
  Complex shift_minus_;
  Complex shift_plus_;
  std::array<std::array<std::optional<Complex>, kBasis>, kBasis> cache_{};
};

Combo f_combo(double kappa, Complex f1, Complex f2) { return {f1, 0.0, 0.0, f2 * std::sqrt(kappa)}; }

Combo g_combo(double kappa, Complex f1, Complex f2) {
  const Complex e = cis(0.25 * kPi);
  return {0.0, e * f1 * std::sqrt(kappa), -e * f2, 0.0};
}

// ---- quadrature -----------------------------------------------------------

struct IntegralPair {
  Complex x11;
  Complex x21;

  IntegralPair& operator+=(const IntegralPair& o) {
    x11 += o.x11;
    x21 += o.x21;
    return *this;
  }
  friend IntegralPair operator*(double s, const IntegralPair& v) { return {s * v.x11, s * v.x21}; }
  bool is_finite() const {
    return std::isfinite(x11.real()) && std::isfinite(x11.imag()) && std::isfinite(x21.real()) &&
           std::isfinite(x21.imag());
  }
};

void check_asymptotic_window(double tau0, double tau_end) {
  if (!(tau0 <= -50.0)) throw RegimeError("p_fp_exact: tau0 must be <= -50");
  if (!(tau_end >= 50.0)) throw RegimeError("p_fp_exact: tau_end must be >= 50");
}

}  // namespace

StartCoefficients f_coefficients_exact(double kappa, double eps, double tau0) {
  check_kappa(kappa);
  const double x0 = tau0 + eps;
  const BasisValues b = basis_at(kappa, x0);
  const double damp = std::exp(-0.5 * kPi * kappa);
  const Complex common = common_phase_at(kappa, x0);
  return {damp * std::conj(b.p) / common, damp * std::sqrt(kappa) * b.r / common, common};
}

StartCoefficients f_coefficients_asymptotic(double kappa, double tau0) {
  check_kappa(kappa);
  if (!(tau0 <= -50.0)) throw RegimeError("f_coefficients_asymptotic: tau0 must be <= -50");
  const double arg_gamma = sf::log_gamma(Complex(1.0, -kappa)).imag();
  const Complex f1 = std::exp(-1.25 * kPi * kappa);
  const Complex f2 = std::exp(-0.25 * kPi * kappa) * std::sqrt(-std::expm1(-2.0 * kPi * kappa)) * cis(arg_gamma);
  return {f1, f2, common_phase_at(kappa, tau0)};
}

LzsmPropagator u0_from_coefficients(double kappa, double eps, double tau, Complex f1, Complex f2) {
  check_kappa(kappa);
  const BasisValues b = basis_at(kappa, tau + eps);
  const double sk = std::sqrt(kappa);
  const Complex f = f1 * b.p + f2 * sk * std::conj(b.r);
  const Complex g = cis(0.25 * kPi) * (f1 * sk * b.r - f2 * std::conj(b.p));
  return {f, g, kappa, eps};
}

LzsmPropagator u0_propagator(double kappa, double eps, double tau, double tau0) {
  if (!(tau0 < tau)) throw DomainError("u0_propagator: tau0 must be < tau");
  const StartCoefficients c = f_coefficients_exact(kappa, eps, tau0);
  return u0_from_coefficients(kappa, eps, tau, c.f1_full(), c.f2_full());
}

KSet k_set(double kappa, double omega, double eps, Complex f1, Complex f2) {
  check_kappa(kappa);
  if (!(omega > 0.0)) throw DomainError("k_set: omega must be > 0");
  const double sk = std::sqrt(kappa);
  const double s2pi = std::sqrt(2.0 * kPi);
  const double e1 = std::exp(-0.5 * kPi * kappa);
  const double e2 = std::exp(-kPi * kappa);
  const Complex ik(0.0, kappa);
  const Complex w2(0.0, omega * omega);

  KSet out;
  out.omega_phase = omega * eps + 0.5 * omega * omega;
  const Complex ph = cis(-out.omega_phase);

  const Complex rg_ik = sf::rgamma(ik);
  const Complex rg_1ik = sf::rgamma(1.0 + ik);
  const Complex g_1mik = sf::gamma(1.0 - ik);
  // Gamma(-ik) / Gamma(ik) = -Gamma(1-ik) / Gamma(1+ik) stays finite at k = 0
  const Complex gamma_ratio = -g_1mik * rg_1ik;

  const Complex u0m = sf::tricomi_u(-ik, 0, w2);          // U(-ik, 0, i w^2)
  const Complex u0p = sf::tricomi_u(ik, 0, std::conj(w2));  // U(ik, 0, -i w^2)
  const Complex u1a = sf::tricomi_u(1.0 - ik, 1, w2);      // U(1-ik, 1, i w^2)
  const Complex u1b = sf::tricomi_u(-ik, 1, w2);           // U(-ik, 1, i w^2)
  const Complex m0 = sf::kummer_m_regularized(-ik, 0, w2);
  const Complex m1a = sf::kummer_m_regularized(1.0 - ik, 1, w2);
  const Complex m1b = sf::kummer_m_regularized(-ik, 1, w2);

  const Complex n1 = std::norm(f1) - std::norm(f2);
  const Complex f1s = f1 * f1;
  const Complex f2s = f2 * f2;
  const Complex e_p4 = cis(0.25 * kPi);
  const Complex e_m4 = cis(-0.25 * kPi);
  const Complex e_p34 = cis(0.75 * kPi);
  const Complex e_m34 = cis(-0.75 * kPi);

  auto& k = out.k;
  k[0] = s2pi * e1 * (ph * rg_ik * u0m).real();
  if (kappa > 0.0) {
    k[1] = e2 * std::conj(ph) * u0p + ph * sf::gamma(-ik) * (e2 * rg_ik * u0m - m0);
  } else {
    // Gamma(-ik) (rgamma(ik) U - 1F1~) -> -e^{i w^2} as k -> 0
    k[1] = std::conj(ph) * u0p - ph * std::exp(w2);
  }
  k[2] = -kI * n1 * sk * 2.0 * kPi * e1 * rg_ik * u1a + (f1 * std::conj(f2) * gamma_ratio - f2 * std::conj(f1)) * kappa * s2pi * e2 * u1a +
         kI * f1 * std::conj(f2) * s2pi * g_1mik * m1a;
  // K4: +f2^2 and K5: e^{+i pi/4} on the f1 f2 term, as the Fourier identities give
  // (the quadrature route reproduces these, the opposite choices miss by ~10%)
  k[3] = (f1s * gamma_ratio + f2s) * e_m34 * kappa * s2pi * e2 * u1a + f1s * s2pi * g_1mik * e_m4 * m1a +
         4.0 * kPi * f1 * f2 * sk * e1 * e_m4 * rg_ik * u1a;
  k[4] = -f1s * s2pi * g_1mik * e_m4 * m1b - 4.0 * kI * kPi * f1 * f2 * sk * e1 * e_p4 * rg_1ik * u1b +
         (f2s + f1s * gamma_ratio) * s2pi * e2 * e_p34 * u1b;
  k[5] = -kI * std::conj(n1 * sk * 2.0 * kPi * e1 * rg_1ik * u1b +
                         s2pi * e2 * (-std::conj(f1) * f2 + std::conj(f2) * f1 * gamma_ratio) * u1b +
                         std::conj(f2) * f1 * s2pi * g_1mik * m1b);
  k[6] = std::conj((std::conj(f1s) + std::conj(f2s) * gamma_ratio) * s2pi * e2 * e_p4 * u1b +
                   4.0 * kPi * std::conj(f1) * std::conj(f2) * sk * e1 * e_p4 * rg_1ik * u1b +
                   std::conj(f2s) * s2pi * kI * g_1mik * e_m4 * m1b);
  k[7] = std::conj(kappa * s2pi * e2 * e_p34 * (std::conj(f1s) + std::conj(f2s) * gamma_ratio) * u1a +
                   4.0 * kI * kPi * std::conj(f1) * std::conj(f2) * sk * e_m4 * e1 * rg_ik * u1a -
                   kI * std::conj(f2s) * s2pi * g_1mik * e_m4 * m1a);
  for (const Complex& v : k) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag())) throw OverflowError("k_set: non-finite value");
  }
  return out;
}

PerturbationIntegrals perturbation_integrals_kset(const DriveParams& raw, Complex f1, Complex f2) {
  const DriveParams p = canonical(raw);
  const KSet ks = k_set(p.kappa(), p.omega, p.eps, f1, f2);
  const double sk = std::sqrt(p.kappa());
  const double s2pi = std::sqrt(2.0 * kPi);
  const Complex k1 = ks.K(1);
  const Complex k2 = ks.K(2);
  const Complex ph_m = cis(-ks.omega_phase);
  const Complex ph_p = cis(ks.omega_phase);

  PerturbationIntegrals x{};
  x.x11 = -s2pi * p.eta * ((std::norm(f1) - std::norm(f2)) * k1 + sk * (kI * f1 * std::conj(f2) * k2).real());
  x.x21 = s2pi * p.eta * cis(0.25 * kPi) *
          (-2.0 * f1 * f2 * k1 + 0.5 * kI * sk * (f2 * f2 * std::conj(k2) + f1 * f1 * k2));
  x.x11 += 0.5 * p.b_amp * (ph_m * ks.K(3) + ph_p * ks.K(6)).real();
  x.x21 += 0.25 * p.b_amp * (ph_m * ks.K(4) + ph_p * ks.K(7) - ph_m * ks.K(5) - ph_p * ks.K(8));
  return x;
}

PerturbationIntegrals perturbation_integrals_bilinear(const DriveParams& raw, Complex f1, Complex f2) {
  const DriveParams p = canonical(raw);
  const double kappa = p.kappa();
  FourierTable table(kappa, p.omega, p.eps);
  const Combo f = f_combo(kappa, f1, f2);
  const Combo g = g_combo(kappa, f1, f2);
  const Combo fc = conj_combo(f);
  const Combo gc = conj_combo(g);
  const double a = p.a_amp();
  const double b = p.b_amp;

  PerturbationIntegrals x{};
  x.x11 = 0.5 * (-a * (table.cos_product(f, fc) - table.cos_product(g, gc)) +
                 b * (table.cos_product(f, gc) + table.cos_product(fc, g)));
  x.x21 = 0.5 * (2.0 * a * table.cos_product(f, g) + b * (table.cos_product(f, f) - table.cos_product(g, g)));
  return x;
}

PerturbationIntegrals perturbation_integrals_numeric(const DriveParams& raw, Complex f1, Complex f2, double window) {
  const DriveParams p = canonical(raw);
  const double kappa = p.kappa();
  const double reach = 10.0 * std::max(p.omega, std::sqrt(kappa));
  if (!(window >= reach)) throw PreconditionError("perturbation_integrals_numeric: window too narrow");
  const double a = p.a_amp();
  const double b = p.b_amp;

  auto integrand = [&](double tau) {
    const LzsmPropagator u = u0_from_coefficients(kappa, p.eps, tau, f1, f2);
    const double c = 0.5 * std::cos(p.omega * tau);
    const Complex fg_conj = u.f * std::conj(u.g);
    IntegralPair v;
    v.x11 = c * (-a * (std::norm(u.f) - std::norm(u.g)) + 2.0 * b * fg_conj.real());
    v.x21 = c * (2.0 * a * u.f * u.g + b * (u.f * u.f - u.g * u.g));
    return v;
  };
  // local angular frequency of the chirped products plus the drive
  auto frequency = [&](double tau) { return std::abs(tau + p.eps) + p.omega; };
  quad::TaperedWindow win;
  win.center = -p.eps;
  win.half_width = window;
  const IntegralPair r = quad::integrate_windowed(integrand, frequency, win, 1.5, 0.5);
  return {r.x11, r.x21};
}

Complex first_order_amplitude(const DriveParams& raw, Complex f1, Complex f2, double tau_end,
                              const PerturbationIntegrals& x) {
  const DriveParams p = canonical(raw);
  const LzsmPropagator u = u0_from_coefficients(p.kappa(), p.eps, tau_end, f1, f2);
  return u.f * (1.0 - kI * x.x11) + kI * std::conj(u.g) * x.x21;
}

double p_fp_adiabatic(const DriveParams& p) {
  p.validate();
  const double kappa = p.kappa();
  const Complex w2(0.0, p.omega * p.omega);
  const Complex ik(0.0, kappa);
  const Complex diag = p.eta * sf::kummer_m_regularized(-ik, 0, w2);
  // delta * b rather than |delta| * b: the relative sign of the two sx terms matters
  const Complex offd =
      -kI * p.b_amp * 0.5 * p.delta * (sf::kummer_m_regularized(-ik, 1, w2) + sf::kummer_m_regularized(1.0 - ik, 1, w2));
  return kPi * kPi * std::exp(-2.0 * kPi * kappa) * std::norm(diag + offd);
}

double p_fp_exact(const DriveParams& raw, double tau0, double tau_end) {
  const DriveParams p = canonical(raw);
  check_asymptotic_window(tau0, tau_end);
  // the common phase multiplies f, g and X21 alike and drops out of the modulus
  const StartCoefficients c = f_coefficients_asymptotic(p.kappa(), tau0);
  const PerturbationIntegrals x = perturbation_integrals_kset(p, c.f1, c.f2);
  return std::norm(first_order_amplitude(p, c.f1, c.f2, tau_end, x));
}

double p_fp_numeric(const DriveParams& raw, Complex f1, Complex f2, double tau_end, double window) {
  const DriveParams p = canonical(raw);
  const PerturbationIntegrals x = perturbation_integrals_numeric(p, f1, f2, window);
  return std::norm(first_order_amplitude(p, f1, f2, tau_end, x));
}

double p_fp_numeric(const DriveParams& raw, double tau0, double tau_end, double window) {
  const DriveParams p = canonical(raw);
  if (!(tau0 < tau_end)) throw DomainError("p_fp_numeric: tau0 must be < tau_end");
  const StartCoefficients c = f_coefficients_exact(p.kappa(), p.eps, tau0);
  return p_fp_numeric(p, c.f1, c.f2, tau_end, window);
}

}  // namespace kzosc::furry
