#include <doctest.h>

#include <array>
#include <cmath>

#include <boost/numeric/odeint.hpp>

#include "kzosc/errors.hpp"
#include "kzosc/furry.hpp"
#include "kzosc/pt.hpp"
#include "kzosc/tdse.hpp"

using namespace kzosc;

namespace {

constexpr double kPi = 3.141592653589793238;

// Independent reference: embedded Runge-Kutta-Fehlberg 7(8) on the lab-frame
// equations at tight tolerance.
AmplitudePair rk78_reference(const DriveParams& p, double t0, double t1) {
  using State = std::array<Complex, 2>;
  const Complex mi(0.0, -1.0);
  auto rhs = [&](const State& y, State& dy, double t) {
    const double hz = 0.5 * (t + p.eps - p.a_amp() * std::cos(p.omega * t));
    const double hx = p.delta + 0.5 * p.b_amp * std::cos(p.omega * t);
    dy[0] = mi * (hz * y[0] + hx * y[1]);
    dy[1] = mi * (hx * y[0] - hz * y[1]);
  };
  State y{Complex(1.0, 0.0), Complex(0.0, 0.0)};
  namespace odeint = boost::numeric::odeint;
  odeint::integrate_adaptive(odeint::make_controlled(1e-12, 1e-12, odeint::runge_kutta_fehlberg78<State>()), rhs, y,
                             t0, t1, 1e-3);
  return {y[0], y[1]};
}

}  // namespace

TEST_CASE("hamiltonian_at") {
  const auto zero = tdse::hamiltonian_at(DriveParams{0, 0, 0, 0, 1}, 0.0);
  for (auto& row : zero)
    for (auto& v : row) CHECK(std::abs(v) == 0.0);
  const DriveParams p{0.2, 0.5, 0.0, 0.2, 2.0};
  const auto h = tdse::hamiltonian_at(p, kPi / 2.0);
  CHECK(h[0][0].real() == doctest::Approx(0.5 * (kPi / 2.0 + 0.5)));
  CHECK(h[1][1].real() == doctest::Approx(-0.5 * (kPi / 2.0 + 0.5)));
  CHECK(h[0][1].real() == doctest::Approx(0.1));
  CHECK(std::abs(h[0][1] - std::conj(h[1][0])) < 1e-15);
  CHECK(std::abs(h[0][0] + h[1][1]) < 1e-15);
}

TEST_CASE("config validation") {
  tdse::IntegrationConfig cfg;
  cfg.tau_start = 1.0;
  CHECK_THROWS_AS(cfg.validate(), DomainError);
  tdse::IntegrationConfig c2;
  c2.rel_tol = 0.0;
  CHECK_THROWS_AS(c2.validate(), DomainError);
  CHECK_THROWS_AS(tdse::survival_probability(DriveParams{0.2, 0, 0, 0, 0.0}), DomainError);
}

TEST_CASE("uncoupled and linear-sweep limits") {
  CHECK(tdse::survival_probability(DriveParams{0.0, 0.3, 0.5, 0.0, 2.0}) == doctest::Approx(1.0).epsilon(1e-12));
  // exact finite-window linear sweep
  for (double d : {0.2, 0.5, 0.75, 1.0}) {
    const auto u = furry::u0_propagator(d * d, 0.0, 500.0, -500.0);
    CHECK(std::abs(tdse::survival_probability(DriveParams{d, 0, 0, 0, 1}) - std::norm(u.f)) < 1e-7);
  }
  CHECK(std::abs(tdse::survival_probability(DriveParams{0.2, 0.5, 0, 0, 1}) - std::exp(-2 * kPi * 0.04)) < 1e-3);
}

TEST_CASE("agrees with an independent RK78 integration") {
  for (const DriveParams& p : {DriveParams{0.75, 0.5, 0.0, 0.1, 3.0}, DriveParams{0.2, 0.5, 0.5, 0.2, 2.0},
                               DriveParams{-0.4, 0.3, 0.8, 0.3, 1.5}}) {
    tdse::IntegrationConfig cfg;
    cfg.tau_start = -60.0;
    cfg.tau_end = 60.0;
    const auto a = tdse::evolve(p, cfg, AmplitudePair{});
    const auto b = rk78_reference(p, cfg.tau_start, cfg.tau_end);
    CHECK(std::abs(a.c_up - b.c_up) < 1e-6);
    CHECK(std::abs(a.c_down - b.c_down) < 1e-6);
  }
}

TEST_CASE("norm is conserved within ten times rel_tol") {
  tdse::IntegrationConfig cfg;
  tdse::EvolveStats stats;
  tdse::evolve(DriveParams{0.75, 0.5, 0.3, 0.2, 4.0}, cfg, AmplitudePair{}, &stats);
  CHECK(stats.max_norm_drift <= 10.0 * cfg.rel_tol);
  CHECK(stats.steps > 0);
}

TEST_CASE("regression pin at tightened tolerance") {
  // recorded with rel_tol 1e-10, abs_tol 1e-13
  CHECK(std::abs(tdse::survival_probability(DriveParams{0.75, 0.5, 0.0, 0.1, 3.0}) - 0.045344260000003703) < 1e-8);
}

TEST_CASE("tolerance convergence") {
  const DriveParams p{0.5, 0.5, 0.2, 0.1, 3.0};
  tdse::IntegrationConfig a, b;
  b.rel_tol = 0.5 * a.rel_tol;
  CHECK(std::abs(tdse::survival_probability(p, a) - tdse::survival_probability(p, b)) < 1e-7);
}

TEST_CASE("eps periodicity with the window moved by one period") {
  const DriveParams p{0.5, 0.3, 0.4, 0.2, 3.0};
  const double period = 2.0 * kPi / p.omega;
  DriveParams shifted = p;
  shifted.eps += period;
  // shifting eps by a period equals shifting the window by a period
  tdse::IntegrationConfig a;
  tdse::IntegrationConfig d = a;
  d.tau_start += period;
  d.tau_end += period;
  CHECK(std::abs(tdse::survival_probability(shifted, a) - tdse::survival_probability(p, d)) < 1e-6);
}

TEST_CASE("deterministic") {
  const DriveParams p{0.3, 0.5, 0.5, 0.1, 2.0};
  CHECK(tdse::survival_probability(p) == tdse::survival_probability(p));
}
