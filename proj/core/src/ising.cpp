#include "kzosc/ising.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "kzosc/errors.hpp"
#include "kzosc/specfun.hpp"
#include "kzosc/worker_pool.hpp"

namespace kzosc::ising {
namespace {

namespace sf = kzosc::specfun;

constexpr double kPi = 3.14159265358979323846;
const Complex kI{0.0, 1.0};

void check_sites(int n_sites) {
  if (n_sites < 2) throw DomainError("ising: n_sites must be >= 2");
  if (n_sites % 2 != 0) throw DomainError("ising: n_sites must be even");
}

void check_momentum(double q) {
  if (!(q > -kPi && q < kPi)) throw DomainError("ising: momentum must lie in (-pi, pi)");
}

// e^{-2 pi k} |c|^2 computed from the scaled form so large k neither
// overflows the hypergeometric value nor underflows the exponential.
double damped_norm(double kappa, const sf::ScaledComplex& c) {
  if (c.is_zero()) return 0.0;
  return std::exp(2.0 * c.log_abs() - 2.0 * kPi * kappa);
}

// P_FP / (pi^2 eta^2) as a function of kappa alone.
double fp_profile(double kappa, double omega) {
  if (kappa == 0.0) return 0.0;
  const Complex w2(0.0, omega * omega);
  return damped_norm(kappa, sf::kummer_m_regularized_scaled(Complex(0.0, -kappa), 0, w2));
}

// Adaptive Gauss-Kronrod over consecutive breakpoints.
template <class F>
double integrate_pieces(F&& f, const std::vector<double>& cuts) {
  using GK = boost::math::quadrature::gauss_kronrod<double, 31>;
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    if (!(cuts[i + 1] > cuts[i])) continue;
    double err = 0.0;
    const double piece = GK::integrate(f, cuts[i], cuts[i + 1], 12, 1e-9, &err);
    if (!std::isfinite(piece)) throw QuadratureError("ising: non-finite integral");
    if (err > 1e-6 * std::max(std::abs(piece), 1e-300) && err > 1e-14)
      throw QuadratureError("ising: adaptive quadrature did not converge");
    total += piece;
  }
  return total;
}

// Breakpoints in [0, pi/2] where P_FP(q) changes character: fixed kappa
// levels (the profile lives at kappa = O(1) .. omega^2/4) and the resonant
// momentum where the mode gap 2 J |sin q| equals omega.
std::vector<double> quarter_cuts(double coupling, double omega) {
  std::vector<double> cuts{0.0};
  for (double k = 0.125; k < coupling * coupling; k *= 2.0) cuts.push_back(std::asin(std::sqrt(k) / coupling));
  const double s = 0.5 * omega / coupling;
  if (s < 1.0) {
    const double qr = std::asin(s);
    cuts.push_back(qr);
    cuts.push_back(std::max(0.0, qr - 0.25 / coupling));
    cuts.push_back(std::min(0.5 * kPi, qr + 0.25 / coupling));
  }
  cuts.push_back(0.5 * kPi);
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  return cuts;
}

double peak_density(const GaussianWidths& w) {
  return (1.0 / std::sqrt(w.alpha) + 1.0 / std::sqrt(w.beta)) / (2.0 * std::sqrt(kPi));
}

// sum_{n > m} J_n(eta) J_m(eta) cos(w ((n^2 - m^2) w / 2 - (n - m) eps))
double bessel_cross_sum(double eta, double omega, double eps, int n_max) {
  std::vector<double> bj(2 * n_max + 1);
  for (int n = -n_max; n <= n_max; ++n) bj[n + n_max] = sf::bessel_j(n, eta);
  double s = 0.0;
  for (int n = -n_max; n <= n_max; ++n) {
    for (int m = -n_max; m < n; ++m) {
      const double arg = omega * (0.5 * (n * n - m * m) * omega - (n - m) * eps);
      s += bj[n + n_max] * bj[m + n_max] * std::cos(arg);
    }
  }
  return s;
}

template <class Params, class Drive, class NonAdiabatic, class Adiabatic, class Kappa>
std::vector<ModeExcitation> profile_impl(const Params& p, const tdse::IntegrationConfig& cfg,
                                         const NumericOptions& opt, Drive drive, NonAdiabatic nonadiabatic,
                                         Adiabatic adiabatic, Kappa kappa) {
  p.validate();
  cfg.validate();
  const std::vector<double> grid = mode_grid(p.n_sites);
  const std::size_t half = grid.size() / 2;  // grid[half + i] = -grid[half - 1 - i]
  const std::size_t count = opt.mirror_symmetry ? half : grid.size();
  auto index_of = [&](std::size_t k) { return opt.mirror_symmetry ? half + k : k; };

  std::vector<double> survival = parallel_map<double>(count, opt.workers, [&](std::size_t k) {
    return tdse::survival_probability(drive(p, grid[index_of(k)]), cfg);
  });

  std::vector<ModeExcitation> out(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double q = grid[i];
    ModeExcitation& m = out[i];
    m.q = q;
    m.kappa_q = kappa(p, q);
    if (opt.mirror_symmetry) {
      m.p_numeric = survival[i >= half ? i - half : half - 1 - i];
    } else {
      m.p_numeric = survival[i];
    }
    m.p_nonadiabatic = nonadiabatic(p, q);
    m.p_adiabatic = adiabatic(p, q);
  }
  return out;
}

template <class Params, class Drive>
DensityBreakdown density_impl(const Params& p, const tdse::IntegrationConfig& cfg, const NumericOptions& opt,
                              Drive drive) {
  p.validate();
  cfg.validate();
  const std::vector<double> grid = mode_grid(p.n_sites);
  const std::size_t half = grid.size() / 2;
  const std::size_t count = opt.mirror_symmetry ? half : grid.size();
  std::vector<double> survival = parallel_map<double>(count, opt.workers, [&](std::size_t k) {
    const double q = opt.mirror_symmetry ? grid[half + k] : grid[k];
    return tdse::survival_probability(drive(p, q), cfg);
  });
  // fixed summation order for reproducibility
  double sum = 0.0;
  for (double s : survival) sum += s;
  if (opt.mirror_symmetry) sum *= 2.0;
  DensityBreakdown d;
  d.n_numeric = sum / static_cast<double>(grid.size());
  return d;
}

}  // namespace

void IsingDiagParams::validate() const {
  check_sites(n_sites);
  if (!(j > 0.0) || !std::isfinite(j)) throw DomainError("IsingDiagParams: j must be > 0");
  if (!(omega > 0.0) || !std::isfinite(omega)) throw DomainError("IsingDiagParams: omega must be > 0");
  if (!std::isfinite(eta) || !std::isfinite(eps_prime)) throw DomainError("IsingDiagParams: non-finite parameter");
}

void IsingOffDiagParams::validate() const {
  check_sites(n_sites);
  if (!(delta_prime > 0.0) || !std::isfinite(delta_prime))
    throw DomainError("IsingOffDiagParams: delta_prime must be > 0");
  if (!(omega > 0.0) || !std::isfinite(omega)) throw DomainError("IsingOffDiagParams: omega must be > 0");
  if (!std::isfinite(b_prime) || !std::isfinite(eps_prime))
    throw DomainError("IsingOffDiagParams: non-finite parameter");
}

std::vector<double> mode_grid(int n_sites) {
  check_sites(n_sites);
  const int half = n_sites / 2;
  std::vector<double> q(n_sites);
  for (int n = 1; n <= half; ++n) {
    const double v = (2.0 * n - 1.0) * kPi / n_sites;
    q[half - n] = -v;
    q[half + n - 1] = v;
  }
  return q;
}

double kappa_q_diag(const IsingDiagParams& p, double q) {
  const double s = p.j * std::sin(q);
  return s * s;
}

double kappa_q_offdiag(const IsingOffDiagParams& p, double q) {
  const double s = p.delta_prime * std::sin(q);
  return s * s;
}

DriveParams mode_drive_diag(const IsingDiagParams& p, double q) {
  p.validate();
  check_momentum(q);
  DriveParams d;
  d.delta = -p.j * std::sin(q);
  d.eps = p.eps_prime + 2.0 * p.j * std::cos(q);
  d.eta = p.eta;
  d.b_amp = 0.0;
  d.omega = p.omega;
  return d;
}

DriveParams mode_drive_offdiag(const IsingOffDiagParams& p, double q) {
  p.validate();
  check_momentum(q);
  // E_q = delta' cos q + (b'/2) cos q cos(wt) + (t + eps')/2 puts -b' cos q in
  // the slot of a_amp; delta_q = -delta' sin q - (b'/2) sin q cos(wt).
  DriveParams d;
  d.delta = -p.delta_prime * std::sin(q);
  d.eps = p.eps_prime + 2.0 * p.delta_prime * std::cos(q);
  d.eta = -p.eta_b() * std::cos(q);
  d.b_amp = -p.b_prime * std::sin(q);
  d.omega = p.omega;
  return d;
}

double uq_nonadiabatic_diag(const IsingDiagParams& p, double q, const pt::SumTruncation& trunc) {
  p.validate();
  check_momentum(q);
  trunc.validate();
  const int N = trunc.n_max;
  const double eps_q = p.eps_prime + 2.0 * p.j * std::cos(q);
  std::vector<double> bj(2 * N + 1);
  for (int n = -N; n <= N; ++n) bj[n + N] = sf::bessel_j(n, p.eta);
  double s = 0.0;
  for (int n = -N; n <= N; ++n) {
    for (int m = -N; m <= n; ++m) {
      const double theta = (n == m) ? 0.5 : 1.0;
      s += theta * bj[n + N] * bj[m + N] * std::cos(p.omega * (0.5 * (n * n - m * m) * p.omega - (n - m) * eps_q));
    }
  }
  return std::exp(-4.0 * kPi * kappa_q_diag(p, q) * s);
}

double uq_adiabatic_diag(const IsingDiagParams& p, double q) {
  p.validate();
  check_momentum(q);
  if (p.eta == 0.0) return 0.0;
  return kPi * kPi * p.eta * p.eta * fp_profile(kappa_q_diag(p, q), p.omega);
}

double uq_nonadiabatic_offdiag(const IsingOffDiagParams& p, double q, const pt::SumTruncation& trunc) {
  p.validate();
  check_momentum(q);
  // the double sum has the weights delta' J_n(x) + (b'/4)(J_{n+1} + J_{n-1})(x),
  // x = eta_b cos q, which is the perturbative kernel with unit sin q factored out
  DriveParams k;
  k.delta = p.delta_prime;
  k.eps = p.eps_prime + 2.0 * p.delta_prime * std::cos(q);
  k.eta = p.eta_b() * std::cos(q);
  k.b_amp = p.b_prime;
  k.omega = p.omega;
  const double s = std::sin(q);
  return std::exp(s * s * pt::exponent_double_sum(k, trunc));
}

double uq_adiabatic_offdiag(const IsingOffDiagParams& p, double q) {
  p.validate();
  check_momentum(q);
  if (p.b_prime == 0.0) return 0.0;
  const double kappa = kappa_q_offdiag(p, q);
  if (kappa == 0.0) return 0.0;
  const Complex w2(0.0, p.omega * p.omega);
  const Complex a(0.0, -kappa);
  using sf::ScaledComplex;
  const ScaledComplex f0 = sf::kummer_m_regularized_scaled(a, 0, w2);
  const ScaledComplex f1 = sf::kummer_m_regularized_scaled(a, 1, w2) + sf::kummer_m_regularized_scaled(a + 1.0, 1, w2);
  const ScaledComplex diag = f0 * Complex(p.eta_b() * std::cos(q), 0.0);
  const ScaledComplex offd = f1 * (-kI * p.b_prime * std::sin(q) * 0.5 * std::sqrt(kappa));
  return kPi * kPi * damped_norm(kappa, diag + offd);
}

GaussianWidths gaussian_widths_diag(const IsingDiagParams& p, const pt::SumTruncation& trunc) {
  p.validate();
  trunc.validate();
  const double base = 2.0 * kPi * p.j * p.j;
  GaussianWidths w;
  w.alpha = base * (1.0 + 2.0 * bessel_cross_sum(p.eta, p.omega, p.eps_prime + 2.0 * p.j, trunc.n_max));
  w.beta = base * (1.0 + 2.0 * bessel_cross_sum(p.eta, p.omega, p.eps_prime - 2.0 * p.j, trunc.n_max));
  if (!(w.alpha > 0.0) || !(w.beta > 0.0)) throw RegimeError("gaussian_widths_diag: non-positive width");
  return w;
}

GaussianWidths gaussian_widths_offdiag(const IsingOffDiagParams& p, const pt::SumTruncation& trunc) {
  p.validate();
  trunc.validate();
  // Second order of the perturbative exponent around q = 0 (cos q -> 1) and
  // q = +-pi (cos q -> -1), where sin^2 q -> (q - q0)^2.
  DriveParams k;
  k.delta = p.delta_prime;
  k.b_amp = p.b_prime;
  k.omega = p.omega;
  GaussianWidths w;
  k.eta = p.eta_b();
  k.eps = p.eps_prime + 2.0 * p.delta_prime;
  w.alpha = -pt::exponent_double_sum(k, trunc);
  k.eta = -p.eta_b();
  k.eps = p.eps_prime - 2.0 * p.delta_prime;
  w.beta = -pt::exponent_double_sum(k, trunc);
  if (!(w.alpha > 0.0) || !(w.beta > 0.0)) throw RegimeError("gaussian_widths_offdiag: non-positive width");
  return w;
}

std::vector<ModeExcitation> mode_profile(const IsingDiagParams& p, const tdse::IntegrationConfig& cfg,
                                         const pt::SumTruncation& trunc, const NumericOptions& opt) {
  return profile_impl(
      p, cfg, opt, [](const IsingDiagParams& x, double q) { return mode_drive_diag(x, q); },
      [&](const IsingDiagParams& x, double q) { return uq_nonadiabatic_diag(x, q, trunc); },
      [](const IsingDiagParams& x, double q) { return uq_adiabatic_diag(x, q); },
      [](const IsingDiagParams& x, double q) { return kappa_q_diag(x, q); });
}

std::vector<ModeExcitation> mode_profile(const IsingOffDiagParams& p, const tdse::IntegrationConfig& cfg,
                                         const pt::SumTruncation& trunc, const NumericOptions& opt) {
  return profile_impl(
      p, cfg, opt, [](const IsingOffDiagParams& x, double q) { return mode_drive_offdiag(x, q); },
      [&](const IsingOffDiagParams& x, double q) { return uq_nonadiabatic_offdiag(x, q, trunc); },
      [](const IsingOffDiagParams& x, double q) { return uq_adiabatic_offdiag(x, q); },
      [](const IsingOffDiagParams& x, double q) { return kappa_q_offdiag(x, q); });
}

DensityBreakdown defect_density_numeric(const IsingDiagParams& p, const tdse::IntegrationConfig& cfg,
                                        const NumericOptions& opt) {
  return density_impl(p, cfg, opt, [](const IsingDiagParams& x, double q) { return mode_drive_diag(x, q); });
}

DensityBreakdown defect_density_numeric(const IsingOffDiagParams& p, const tdse::IntegrationConfig& cfg,
                                        const NumericOptions& opt) {
  return density_impl(p, cfg, opt, [](const IsingOffDiagParams& x, double q) { return mode_drive_offdiag(x, q); });
}

DensityBreakdown defect_density_approx_diag(const IsingDiagParams& p, const pt::SumTruncation& trunc) {
  const GaussianWidths w = gaussian_widths_diag(p, trunc);
  DensityBreakdown d;
  d.alpha = w.alpha;
  d.beta = w.beta;
  d.n_kzm_peaks = peak_density(w);
  d.n_fp = n_fp_integral(p);
  return d;
}

DensityBreakdown defect_density_approx_offdiag(const IsingOffDiagParams& p, const pt::SumTruncation& trunc) {
  const GaussianWidths w = gaussian_widths_offdiag(p, trunc);
  DensityBreakdown d;
  d.alpha = w.alpha;
  d.beta = w.beta;
  d.n_kzm_peaks = peak_density(w);
  d.n_fp = n_fp_integral_offdiag(p);
  return d;
}

double n_fp_integral(const IsingDiagParams& p) {
  p.validate();
  if (p.eta == 0.0) return 0.0;
  // P_FP depends on q only through sin^2 q: the four quarters of (-pi, pi) agree
  auto f = [&](double q) { return fp_profile(kappa_q_diag(p, q), p.omega); };
  const double quarter = integrate_pieces(f, quarter_cuts(p.j, p.omega));
  return kPi * kPi * p.eta * p.eta * quarter * 4.0 / (2.0 * kPi);
}

double n_fp_integral_offdiag(const IsingOffDiagParams& p) {
  p.validate();
  if (p.b_prime == 0.0) return 0.0;
  // no reflection symmetry is assumed: integrate each quarter on its own
  const std::vector<double> base = quarter_cuts(p.delta_prime, p.omega);
  double total = 0.0;
  for (int sign_q : {1, -1}) {
    for (int mirror : {0, 1}) {
      auto f = [&](double t) {
        double q = mirror ? kPi - t : t;
        q *= sign_q;
        if (!(q > -kPi && q < kPi)) return 0.0;
        return uq_adiabatic_offdiag(p, q);
      };
      total += integrate_pieces(f, base);
    }
  }
  return total / (2.0 * kPi);
}

double n_fp_grid_sum(const IsingDiagParams& p) {
  p.validate();
  double sum = 0.0;
  for (double q : mode_grid(p.n_sites)) sum += uq_adiabatic_diag(p, q);
  return sum / p.n_sites;
}

double n_fp_coefficient(double omega, double eta) {
  if (!(omega > 0.0) || !std::isfinite(omega)) throw DomainError("n_fp_coefficient: omega must be > 0");
  if (eta == 0.0) return 0.0;
  static std::mutex cache_mutex;
  static std::map<double, double> cache;
  double integral = 0.0;
  bool hit = false;
  {
    std::lock_guard<std::mutex> lock(cache_mutex);
    auto it = cache.find(omega);
    if (it != cache.end()) {
      integral = it->second;
      hit = true;
    }
  }
  if (!hit) {
    // e^{-2 pi x^2} |1F1~|^2 is negligible once x^2 is well past omega^2/4
    const double x_max = 0.5 * omega + 6.0;
    std::vector<double> cuts;
    for (double x = 0.0; x < x_max; x += 0.5) cuts.push_back(x);
    cuts.push_back(x_max);
    integral = integrate_pieces([&](double x) { return fp_profile(x * x, omega); }, cuts);
    std::lock_guard<std::mutex> lock(cache_mutex);
    cache.emplace(omega, integral);
  }
  return 2.0 * kPi * eta * eta * integral;
}

double n_fp_approx(const IsingDiagParams& p) {
  p.validate();
  return n_fp_coefficient(p.omega, p.eta) / p.j;
}

ScalingFit scaling_fit(const std::vector<std::pair<double, double>>& points) {
  if (points.size() < 3) throw DomainError("scaling_fit: need at least 3 points");
  std::vector<double> xs;
  std::vector<double> ys;
  for (const auto& [coupling, density] : points) {
    if (!(coupling > 0.0) || !(density > 0.0)) throw DomainError("scaling_fit: values must be positive");
    for (double x : xs) {
      if (x == std::log(coupling)) throw DomainError("scaling_fit: repeated coupling");
    }
    xs.push_back(std::log(coupling));
    ys.push_back(std::log(density));
  }
  const double n = static_cast<double>(xs.size());
  double mx = 0.0;
  double my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= n;
  my /= n;
  double sxx = 0.0;
  double sxy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxx += (xs[i] - mx) * (xs[i] - mx);
    sxy += (xs[i] - mx) * (ys[i] - my);
  }
  ScalingFit fit;
  fit.exponent = sxy / sxx;
  const double intercept = my - fit.exponent * mx;
  fit.prefactor = std::exp(intercept);
  double ss = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double r = ys[i] - (intercept + fit.exponent * xs[i]);
    ss += r * r;
  }
  fit.residual = std::sqrt(ss / n);
  return fit;
}

}  // namespace kzosc::ising
