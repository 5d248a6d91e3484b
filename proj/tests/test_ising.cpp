#include <doctest.h>

#include <array>
#include <cmath>

#include <boost/numeric/odeint.hpp>

#include "kzosc/errors.hpp"
#include "kzosc/ising.hpp"
#include "kzosc/pt.hpp"
#include "kzosc/tdse.hpp"
#include "oracles/oracle_values.hpp"

using namespace kzosc;
using namespace kzosc::ising;

namespace {

constexpr double kPi = 3.141592653589793238;

// i d/dt (c_q, c_{-q}^dag) = [[E, d], [d, -E]] (c_q, c_{-q}^dag), coded
// straight from the mode equations rather than through DriveParams.
template <class EnergyFn, class GapFn>
double mode_ode_survival(EnergyFn energy, GapFn gap, double t0, double t1) {
  using State = std::array<Complex, 2>;
  const Complex mi(0.0, -1.0);
  auto rhs = [&](const State& y, State& dy, double t) {
    const double e = energy(t), d = gap(t);
    dy[0] = mi * (e * y[0] + d * y[1]);
    dy[1] = mi * (d * y[0] - e * y[1]);
  };
  State y{Complex(1.0, 0.0), Complex(0.0, 0.0)};
  namespace odeint = boost::numeric::odeint;
  odeint::integrate_adaptive(odeint::make_controlled(1e-13, 1e-13, odeint::runge_kutta_fehlberg78<State>()), rhs, y,
                             t0, t1, 1e-3);
  return std::norm(y[0]);
}

tdse::IntegrationConfig tight() {
  tdse::IntegrationConfig c;
  c.rel_tol = 1e-12;
  c.abs_tol = 1e-14;
  return c;
}

}  // namespace

TEST_CASE("mode grid") {
  const auto g = mode_grid(4);
  REQUIRE(g.size() == 4);
  CHECK(g[0] == doctest::Approx(-3 * kPi / 4));
  CHECK(g[1] == doctest::Approx(-kPi / 4));
  CHECK(g[2] == doctest::Approx(kPi / 4));
  CHECK(g[3] == doctest::Approx(3 * kPi / 4));
  CHECK(mode_grid(200).size() == 200);
  CHECK_THROWS_AS(mode_grid(5), DomainError);
  CHECK_THROWS_AS(mode_grid(0), DomainError);
}

TEST_CASE("transverse-field drive: two codings of the mode equation") {
  const IsingDiagParams p{2.0, 0.05, 6.0, 0.5, 200};
  const double q = kPi / 8;
  const double a = tdse::survival_probability(mode_drive_diag(p, q), tight());
  const double b = mode_ode_survival(
      [&](double t) { return p.j * std::cos(q) + 0.5 * (t + p.eps_prime - p.eta * p.omega * std::cos(p.omega * t)); },
      [&](double) { return -p.j * std::sin(q); }, -500.0, 500.0);
  CHECK(std::abs(a - b) < 1e-9);
  CHECK(kappa_q_diag(p, q) == doctest::Approx(4.0 * std::sin(q) * std::sin(q)));
}

TEST_CASE("coupling drive: two codings of the mode equation") {
  const IsingOffDiagParams p{2.0, 0.3, 5.0, 0.5, 200};
  const double q = kPi / 8;
  auto coupling = [&](double t) { return 0.5 * p.delta_prime + 0.25 * p.b_prime * std::cos(p.omega * t); };
  const double a = tdse::survival_probability(mode_drive_offdiag(p, q), tight());
  const double b = mode_ode_survival([&](double t) { return 2.0 * coupling(t) * std::cos(q) + 0.5 * (t + p.eps_prime); },
                                     [&](double t) { return -2.0 * coupling(t) * std::sin(q); }, -500.0, 500.0);
  CHECK(std::abs(a - b) < 1e-9);
}

TEST_CASE("non-adiabatic modes against the integrator") {
  const IsingDiagParams p{7.0, 0.05, 6.0, 0.5, 200};
  const double num = tdse::survival_probability(mode_drive_diag(p, 0.02));
  CHECK(std::abs(uq_nonadiabatic_diag(p, 0.02) - num) < 0.05 * num);
  const IsingOffDiagParams o{7.0, 0.05, 5.0, 0.5, 200};
  const double num_o = tdse::survival_probability(mode_drive_offdiag(o, 0.02));
  CHECK(std::abs(uq_nonadiabatic_offdiag(o, 0.02) - num_o) < 0.05 * num_o);
}

TEST_CASE("coupling-drive perturbative formula is p_pt with the drive sign reversed") {
  const IsingOffDiagParams o{7.0, 0.3, 5.0, 0.5, 200};
  for (double q : {0.03, 0.2, 1.0, 2.5, -0.7}) {
    DriveParams d = mode_drive_offdiag(o, q);
    d.eta = -d.eta;
    CHECK(std::abs(pt::p_pt(d) - uq_nonadiabatic_offdiag(o, q)) < 1e-10);
  }
  // vanishing coupling drive reduces to the undriven transverse-field formula
  const IsingOffDiagParams small{7.0, 1e-6, 5.0, 0.5, 200};
  const IsingDiagParams plain{7.0, 0.0, 5.0, 0.5, 200};
  CHECK(uq_nonadiabatic_offdiag(small, 0.05) == doctest::Approx(uq_nonadiabatic_diag(plain, 0.05)).epsilon(1e-5));
}

TEST_CASE("adiabatic profile against the integrator near its maximum") {
  const IsingDiagParams p{7.0, 0.05, 6.0, 0.5, 200};
  double best_q = 0.0, best = 0.0;
  for (double q = 0.15; q < 1.2; q += 0.002) {
    const double v = uq_adiabatic_diag(p, q);
    if (v > best) best = v, best_q = q;
  }
  const double num = tdse::survival_probability(mode_drive_diag(p, best_q));
  CHECK(std::abs(best - num) < 0.2 * num);
  const IsingOffDiagParams o{7.0, 0.0, 5.0, 0.5, 200};
  CHECK(uq_adiabatic_offdiag(o, 0.4) == 0.0);
  const IsingOffDiagParams ob{7.0, 0.05, 5.0, 0.5, 200};
  CHECK(uq_adiabatic_offdiag(ob, kPi / 2) > 0.0);
}

TEST_CASE("Gaussian widths") {
  const IsingDiagParams p{7.0, 0.05, 6.0, 0.5, 200};
  const auto w = gaussian_widths_diag(p);
  CHECK(w.alpha == doctest::Approx(oracle::alpha_j7_eta0p05_w6).epsilon(1e-10));
  CHECK(w.beta == doctest::Approx(oracle::beta_j7_eta0p05_w6).epsilon(1e-10));
  const auto w40 = gaussian_widths_diag(p, {40});
  CHECK(std::abs(w.alpha - w40.alpha) < 1e-10 * w.alpha);
  // -log|u_q|^2 / q^2 -> alpha as q -> 0
  const double q = 1e-3;
  CHECK(-std::log(uq_nonadiabatic_diag(p, q)) / (q * q) == doctest::Approx(w.alpha).epsilon(1e-3));
  CHECK(-std::log(uq_nonadiabatic_diag(p, kPi - q)) / (q * q) == doctest::Approx(w.beta).epsilon(1e-3));
  const IsingOffDiagParams o{7.0, 0.3, 5.0, 0.5, 200};
  const auto wo = gaussian_widths_offdiag(o);
  CHECK(-std::log(uq_nonadiabatic_offdiag(o, q)) / (q * q) == doctest::Approx(wo.alpha).epsilon(1e-3));
  CHECK(-std::log(uq_nonadiabatic_offdiag(o, kPi - q)) / (q * q) == doctest::Approx(wo.beta).epsilon(1e-3));
}

TEST_CASE("approximate density") {
  for (double j : {4.0, 7.0}) {
    const auto d = defect_density_approx_diag({j, 0.0, 6.0, 0.5, 200});
    CHECK(d.n_approx() == doctest::Approx(1.0 / (kPi * std::sqrt(2.0) * j)).epsilon(1e-12));
    CHECK(d.n_fp == 0.0);
    const auto o = defect_density_approx_offdiag({j, 0.0, 5.0, 0.5, 200});
    CHECK(o.n_approx() == doctest::Approx(1.0 / (kPi * std::sqrt(2.0) * j)).epsilon(1e-12));
  }
  const double r = defect_density_approx_diag({16.0, 0.05, 6.0, 0.5, 200}).n_approx() /
                   defect_density_approx_diag({8.0, 0.05, 6.0, 0.5, 200}).n_approx();
  CHECK(r >= 0.45);
  CHECK(r <= 0.55);
}

TEST_CASE("drive-induced density part") {
  const IsingDiagParams p{7.0, 0.05, 6.0, 0.5, 200};
  CHECK(n_fp_integral(p) == doctest::Approx(oracle::n_fp_integral_j7_eta0p05_w6).epsilon(1e-8));
  CHECK(n_fp_coefficient(6.0, 0.05) == doctest::Approx(oracle::n_fp_coefficient_w6_eta0p05).epsilon(1e-8));
  CHECK(n_fp_coefficient(6.0, 0.1) == doctest::Approx(4.0 * n_fp_coefficient(6.0, 0.05)).epsilon(1e-14));
  CHECK(std::abs(n_fp_grid_sum(p) - n_fp_integral(p)) < 0.01 * n_fp_integral(p));
  CHECK(n_fp_integral({7.0, 0.0, 6.0, 0.5, 200}) == 0.0);
  CHECK(n_fp_approx(p) == doctest::Approx(n_fp_coefficient(6.0, 0.05) / 7.0));
  double prev = 0.0;
  for (double w = 1.0; w <= 10.0; w += 0.5) {
    const double c = n_fp_coefficient(w, 0.05);
    CHECK(c > prev);
    prev = c;
  }
}

TEST_CASE("numeric density: symmetry, workers and the undriven limit") {
  const IsingDiagParams small{3.0, 0.05, 6.0, 0.5, 20};
  const auto a = defect_density_numeric(small, {}, {1, true});
  const auto b = defect_density_numeric(small, {}, {3, true});
  const auto c = defect_density_numeric(small, {}, {2, false});
  CHECK(a.n_numeric == b.n_numeric);
  CHECK(std::abs(a.n_numeric - c.n_numeric) < 1e-10);
  const auto prof = mode_profile(small, {}, {}, {1, false});
  for (std::size_t i = 0; i < prof.size() / 2; ++i) {
    const auto& lo = prof[i];
    const auto& hi = prof[prof.size() - 1 - i];
    CHECK(lo.q == doctest::Approx(-hi.q));
    CHECK(std::abs(lo.p_numeric - hi.p_numeric) < 1e-10);
    CHECK(std::abs(lo.p_nonadiabatic - hi.p_nonadiabatic) < 1e-10);
    CHECK(std::abs(lo.p_adiabatic - hi.p_adiabatic) < 1e-10);
  }
  const double n0 = defect_density_numeric(IsingDiagParams{7.0, 0.0, 6.0, 0.5, 200}).n_numeric;
  CHECK(n0 == doctest::Approx(1.0 / (kPi * std::sqrt(2.0) * 7.0)).epsilon(0.1));
}

TEST_CASE("scaling_fit") {
  std::vector<std::pair<double, double>> inv, inv2;
  for (double j : {4.0, 5.0, 6.0, 8.0}) {
    inv.emplace_back(j, 0.3 / j);
    inv2.emplace_back(j, 0.3 / (j * j));
  }
  const auto f = scaling_fit(inv);
  CHECK(f.exponent == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(f.prefactor == doctest::Approx(0.3).epsilon(1e-12));
  CHECK(f.residual < 1e-12);
  CHECK(scaling_fit(inv2).exponent == doctest::Approx(-2.0).epsilon(1e-12));
  CHECK_THROWS_AS(scaling_fit({{1.0, 1.0}, {2.0, 0.5}}), DomainError);
  CHECK_THROWS_AS(scaling_fit({{1.0, 1.0}, {1.0, 0.5}, {2.0, 0.3}}), DomainError);
  CHECK_THROWS_AS(scaling_fit({{1.0, 1.0}, {2.0, -0.5}, {3.0, 0.3}}), DomainError);
}
