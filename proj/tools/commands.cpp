#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>

#include "kzosc/errors.hpp"
#include "kzosc/furry.hpp"
#include "kzosc/ising.hpp"
#include "kzosc/pt.hpp"
#include "kzosc/tdse.hpp"
#include "kzosc/worker_pool.hpp"

namespace kzosc::cli {

namespace {

constexpr double kPi = 3.141592653589793238;

using Cell = std::optional<double>;

std::vector<std::string> with_common(std::vector<std::string> keys) {
  keys.insert(keys.end(), common_fields().begin(), common_fields().end());
  return keys;
}

// Methods outside their regime or preconditions leave the cell empty; any
// other numerical failure aborts the run.
Cell guarded(const std::function<double()>& fn) {
  try {
    return fn();
  } catch (const RegimeError&) {
    return std::nullopt;
  } catch (const PreconditionError&) {
    return std::nullopt;
  }
}

tdse::IntegrationConfig parse_integration(const Fields& top) {
  tdse::IntegrationConfig cfg;
  if (!top.has("integration")) return cfg;
  const Fields f = top.object("integration");
  f.only({"tau_start", "tau_end", "rel_tol", "abs_tol", "max_step"});
  cfg.tau_start = f.number("tau_start", cfg.tau_start);
  cfg.tau_end = f.number("tau_end", cfg.tau_end);
  cfg.rel_tol = f.number("rel_tol", cfg.rel_tol);
  cfg.abs_tol = f.number("abs_tol", cfg.abs_tol);
  cfg.max_step = f.number("max_step", cfg.max_step);
  try {
    cfg.validate();
  } catch (const DomainError& e) {
    throw ConfigError(f.where() + ": " + e.what());
  }
  return cfg;
}

pt::SumTruncation parse_truncation(const Fields& top) {
  pt::SumTruncation t{top.integer("n_max", 10)};
  if (t.n_max < 0) throw ConfigError(top.path("n_max") + ": must be >= 0");
  return t;
}

// ---- twolevel ------------------------------------------------------------

struct TwoLevelSetup {
  DriveParams base;
  bool fixed_amplitude = false;  // a_amp held fixed while omega varies
  double a_amp = 0.0;
  SweepSpec sweep;
  tdse::IntegrationConfig integration;
  pt::SumTruncation trunc;
  std::vector<std::string> methods;
};

const std::vector<std::string> kTwoLevelMethods{"tdse", "pt", "pt_special", "fp_exact", "fp_adiabatic"};

TwoLevelSetup parse_twolevel(const Json& cfg) {
  const Fields top(cfg, "");
  top.only(with_common({"drive", "sweep", "integration", "n_max", "methods"}));
  TwoLevelSetup s;
  s.sweep = parse_sweep(top.object("sweep"), {"omega", "b_amp", "eta"});
  const Fields d = top.object("drive");
  d.only({"delta", "eps", "eta", "a_amp", "b_amp", "omega"});
  if (d.has("eta") && d.has("a_amp")) throw ConfigError(d.where() + ": give either eta or a_amp, not both");
  s.base.delta = d.number("delta", 0.0);
  s.base.eps = d.number("eps", 0.0);
  s.base.b_amp = d.number("b_amp", 0.0);
  s.base.omega = s.sweep.axis == "omega" ? d.number("omega", s.sweep.min) : d.number("omega");
  s.fixed_amplitude = d.has("a_amp");
  if (s.fixed_amplitude && s.sweep.axis == "eta")
    throw ConfigError(d.path("a_amp") + ": an eta sweep needs eta, not a_amp");
  s.a_amp = d.number("a_amp", 0.0);
  s.base.eta = s.fixed_amplitude ? s.a_amp / s.base.omega : d.number("eta", 0.0);
  if (s.sweep.axis == "omega" && !(s.sweep.min > 0.0)) throw ConfigError("sweep.min: omega must be > 0");
  try {
    s.base.validate();
  } catch (const DomainError& e) {
    throw ConfigError(d.where() + ": " + e.what());
  }
  s.integration = parse_integration(top);
  s.trunc = parse_truncation(top);
  if (top.has("methods")) {
    const Json& m = top.raw("methods");
    if (!m.is_array()) throw ConfigError(top.path("methods") + ": expected a list");
    for (const auto& v : m) {
      if (!v.is_string() || std::find(kTwoLevelMethods.begin(), kTwoLevelMethods.end(), v.get<std::string>()) ==
                                kTwoLevelMethods.end())
        throw ConfigError(top.path("methods") + ": unknown method " + v.dump());
      s.methods.push_back(v.get<std::string>());
    }
  } else {
    s.methods = kTwoLevelMethods;
  }
  return s;
}

DriveParams twolevel_point(const TwoLevelSetup& s, double x) {
  DriveParams p = s.base;
  if (s.sweep.axis == "omega") {
    p.omega = x;
    if (s.fixed_amplitude) p.eta = s.a_amp / x;
  } else if (s.sweep.axis == "b_amp") {
    p.b_amp = x;
  } else {
    p.eta = x;
  }
  return p;
}

// ---- ising ---------------------------------------------------------------

struct IsingSetup {
  bool offdiag = false;
  bool modes = false;
  ising::IsingDiagParams diag;
  ising::IsingOffDiagParams offd;
  std::optional<SweepSpec> sweep;
  tdse::IntegrationConfig integration;
  pt::SumTruncation trunc;
  bool numeric = true;
  bool mirror_symmetry = true;
};

IsingSetup parse_ising(const Json& cfg) {
  const Fields top(cfg, "");
  top.only(with_common({"model", "mode", "params", "sweep", "integration", "n_max", "numeric", "mirror_symmetry"}));
  IsingSetup s;
  const std::string model = top.string("model", "diag");
  if (model != "diag" && model != "offdiag") throw ConfigError(top.path("model") + ": expected diag or offdiag");
  s.offdiag = model == "offdiag";
  const std::string mode = top.string("mode", "density");
  if (mode != "density" && mode != "modes") throw ConfigError(top.path("mode") + ": expected density or modes");
  s.modes = mode == "modes";
  if (top.has("params")) {
    const Fields f = top.object("params");
    if (s.offdiag) {
      f.only({"delta_prime", "b_prime", "omega", "eps_prime", "n_sites"});
      s.offd.delta_prime = f.number("delta_prime", s.offd.delta_prime);
      s.offd.b_prime = f.number("b_prime", s.offd.b_prime);
      s.offd.omega = f.number("omega", s.offd.omega);
      s.offd.eps_prime = f.number("eps_prime", s.offd.eps_prime);
      s.offd.n_sites = f.integer("n_sites", s.offd.n_sites);
    } else {
      f.only({"j", "eta", "omega", "eps_prime", "n_sites"});
      s.diag.j = f.number("j", s.diag.j);
      s.diag.eta = f.number("eta", s.diag.eta);
      s.diag.omega = f.number("omega", s.diag.omega);
      s.diag.eps_prime = f.number("eps_prime", s.diag.eps_prime);
      s.diag.n_sites = f.integer("n_sites", s.diag.n_sites);
    }
  }
  try {
    s.offdiag ? s.offd.validate() : s.diag.validate();
  } catch (const DomainError& e) {
    throw ConfigError(top.path("params") + ": " + e.what());
  }
  if (top.has("sweep")) {
    if (s.modes) throw ConfigError(top.path("sweep") + ": a mode dump is a single point");
    s.sweep = parse_sweep(top.object("sweep"), {s.offdiag ? "delta_prime" : "j"});
    if (!(s.sweep->min > 0.0)) throw ConfigError(top.path("sweep.min") + ": coupling must be > 0");
  }
  s.integration = parse_integration(top);
  s.trunc = parse_truncation(top);
  s.numeric = top.boolean("numeric", true);
  s.mirror_symmetry = top.boolean("mirror_symmetry", true);
  return s;
}

// ---- nfp-scan ------------------------------------------------------------

struct NfpSetup {
  std::vector<double> omega, eta, j;
  double eps_prime = 0.5;
  bool grid_sum = true;
  int n_sites = 200;
};

NfpSetup parse_nfp(const Json& cfg) {
  const Fields top(cfg, "");
  top.only(with_common({"omega", "eta", "j", "eps_prime", "grid_sum", "n_sites"}));
  NfpSetup s;
  s.omega = parse_axis_values(top, "omega", "omega", {6.0});
  s.eta = parse_axis_values(top, "eta", "eta", {0.05});
  s.j = parse_axis_values(top, "j", "j", {7.0});
  s.eps_prime = top.number("eps_prime", 0.5);
  s.grid_sum = top.boolean("grid_sum", true);
  s.n_sites = top.integer("n_sites", 200);
  for (double w : s.omega)
    if (!(w > 0.0)) throw ConfigError(top.path("omega") + ": values must be > 0");
  for (double j : s.j)
    if (!(j > 0.0)) throw ConfigError(top.path("j") + ": values must be > 0");
  try {
    ising::IsingDiagParams{s.j.front(), s.eta.front(), s.omega.front(), s.eps_prime, s.n_sites}.validate();
  } catch (const DomainError& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
  return s;
}

std::string status_of(const selftest::CheckResult& c, bool strict) {
  if (c.passed) return "pass";
  return c.warning_only && !strict ? "warn" : "fail";
}

}  // namespace

const std::vector<std::string>& common_fields() {
  static const std::vector<std::string> keys{"command", "workers", "format", "out"};
  return keys;
}

void validate_config(const std::string& command, const Json& cfg) {
  if (command == "twolevel") {
    parse_twolevel(cfg);
  } else if (command == "ising") {
    parse_ising(cfg);
  } else if (command == "nfp-scan") {
    parse_nfp(cfg);
  } else {
    throw ConfigError("unknown command '" + command + "'");
  }
}

CommandResult run_twolevel(const Json& cfg, unsigned workers) {
  const TwoLevelSetup s = parse_twolevel(cfg);
  const auto xs = s.sweep.values();
  auto wants = [&](const char* m) { return std::find(s.methods.begin(), s.methods.end(), m) != s.methods.end(); };
  const bool w_tdse = wants("tdse"), w_pt = wants("pt"), w_special = wants("pt_special"),
             w_exact = wants("fp_exact"), w_adi = wants("fp_adiabatic");

  using Row = std::vector<Cell>;
  auto rows = parallel_map<Row>(xs.size(), workers, [&](std::size_t i) {
    const DriveParams p = twolevel_point(s, xs[i]);
    Row r(6);
    r[0] = xs[i];
    if (w_tdse) r[1] = tdse::survival_probability(p, s.integration);
    if (w_pt) r[2] = guarded([&] { return pt::p_pt(p, s.trunc); });
    if (w_special) {
      if (p.a_amp() == 0.0)
        r[3] = guarded([&] { return pt::p_pt_a0(p); });
      else if (p.b_amp == 0.0)
        r[3] = guarded([&] { return pt::p_pt_b0(p, s.trunc); });
    }
    if (w_exact)
      r[4] = guarded([&] { return furry::p_fp_exact(p, s.integration.tau_start, s.integration.tau_end); });
    if (w_adi) r[5] = guarded([&] { return furry::p_fp_adiabatic(p); });
    return r;
  });
  CommandResult out;
  out.table.columns = {s.sweep.axis, "p_tdse", "p_pt", "p_pt_special", "p_fp_exact", "p_fp_adiabatic"};
  out.table.rows = std::move(rows);
  return out;
}

CommandResult run_ising(const Json& cfg, unsigned workers) {
  const IsingSetup s = parse_ising(cfg);
  const ising::NumericOptions opt{workers, s.mirror_symmetry};
  CommandResult out;

  if (s.modes) {
    const auto prof = s.offdiag ? ising::mode_profile(s.offd, s.integration, s.trunc, opt)
                                : ising::mode_profile(s.diag, s.integration, s.trunc, opt);
    out.table.columns = {"q", "kappa_q", "p_numeric", "p_nonadiabatic", "p_adiabatic"};
    for (const auto& m : prof) out.table.rows.push_back({m.q, m.kappa_q, m.p_numeric, m.p_nonadiabatic, m.p_adiabatic});
    return out;
  }

  std::vector<double> couplings;
  if (s.sweep)
    couplings = s.sweep->values();
  else
    couplings = {s.offdiag ? s.offd.delta_prime : s.diag.j};

  out.table.columns = {s.offdiag ? "delta_prime" : "j", "n_numeric", "n_approx", "n_kzm_peaks", "n_fp",
                       "n_qkzm_no_drive"};
  std::vector<std::pair<double, double>> fit_points;
  for (double c : couplings) {
    ising::DensityBreakdown approx, numeric;
    Cell n_numeric;
    if (s.offdiag) {
      ising::IsingOffDiagParams p = s.offd;
      p.delta_prime = c;
      approx = ising::defect_density_approx_offdiag(p, s.trunc);
      if (s.numeric) n_numeric = ising::defect_density_numeric(p, s.integration, opt).n_numeric;
    } else {
      ising::IsingDiagParams p = s.diag;
      p.j = c;
      approx = ising::defect_density_approx_diag(p, s.trunc);
      if (s.numeric) n_numeric = ising::defect_density_numeric(p, s.integration, opt).n_numeric;
    }
    if (n_numeric) fit_points.emplace_back(c, *n_numeric);
    out.table.rows.push_back(
        {c, n_numeric, approx.n_approx(), approx.n_kzm_peaks, approx.n_fp, 1.0 / (kPi * std::sqrt(2.0) * c)});
  }
  if (fit_points.size() >= 3) {
    const auto fit = ising::scaling_fit(fit_points);
    std::ostringstream os;
    os.precision(6);
    os << "scaling_fit n_numeric: exponent " << fit.exponent << " prefactor " << fit.prefactor << " residual "
       << fit.residual;
    out.notes.push_back(os.str());
  }
  return out;
}

CommandResult run_nfp_scan(const Json& cfg, unsigned workers) {
  const NfpSetup s = parse_nfp(cfg);
  struct Point {
    double omega, eta, j;
  };
  std::vector<Point> points;
  for (double w : s.omega)
    for (double e : s.eta)
      for (double j : s.j) points.push_back({w, e, j});

  using Row = std::vector<Cell>;
  auto rows = parallel_map<Row>(points.size(), workers, [&](std::size_t i) {
    const Point& pt = points[i];
    const ising::IsingDiagParams p{pt.j, pt.eta, pt.omega, s.eps_prime, s.n_sites};
    Row r{pt.omega, pt.eta, pt.j, ising::n_fp_integral(p), ising::n_fp_approx(p),
          ising::n_fp_coefficient(pt.omega, pt.eta), std::nullopt};
    if (s.grid_sum) r[6] = ising::n_fp_grid_sum(p);
    return r;
  });
  CommandResult out;
  out.table.columns = {"omega", "eta", "j", "n_fp_integral", "n_fp_approx", "n_fp_coefficient",
                       "grid_sum_N" + std::to_string(s.n_sites)};
  out.table.rows = std::move(rows);
  return out;
}

Json selftest_report_json(const selftest::Report& r) {
  Json checks = Json::array();
  for (const auto& c : r.checks) {
    checks.push_back(Json{{"suite", c.suite},
                          {"name", c.name},
                          {"status", status_of(c, r.strict)},
                          {"measured", std::isfinite(c.measured) ? Json(c.measured) : Json(nullptr)},
                          {"tolerance", c.tolerance},
                          {"detail", c.detail}});
  }
  return Json{{"tool_version", tool_version()}, {"strict", r.strict},        {"passed", r.ok()},
              {"failures", r.failures()},       {"warnings", r.warnings()}, {"checks", std::move(checks)}};
}

std::string selftest_report_text(const selftest::Report& r) {
  std::ostringstream os;
  os.precision(3);
  for (const auto& c : r.checks) {
    os << status_of(c, r.strict) << "  " << c.suite << "/" << c.name << "  " << c.measured << " <= " << c.tolerance;
    if (!c.detail.empty()) os << "  (" << c.detail << ")";
    os << '\n';
  }
  os << (r.ok() ? "selftest passed" : "selftest FAILED") << ": " << r.checks.size() << " checks, " << r.failures()
     << " failures, " << r.warnings() << " warnings" << (r.strict ? " (strict)" : "") << '\n';
  return os.str();
}

}  // namespace kzosc::cli
