#include "hybrid/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <limits>
#include <numbers>
#include <sstream>

#include <unistd.h>

#include <Eigen/Dense>

#include "hybrid/errors.hpp"
#include "hybrid/oracles.hpp"
#include "hybrid/runner.hpp"

namespace hybrid {

namespace fs = std::filesystem;

namespace {

std::string g(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", v);
  return buf;
}

Scenario builtin(const std::string& name) { return resolve_scenario(load_scenario_text(name)); }

CheckResult guarded(int criterion, std::string name,
                    const std::function<std::pair<bool, std::string>()>& body) {
  CheckResult r{criterion, std::move(name), false, {}};
  try {
    auto [ok, detail] = body();
    r.pass = ok;
    r.detail = std::move(detail);
  } catch (const std::exception& e) {
    r.pass = false;
    r.detail = std::string("error: ") + e.what();
  }
  return r;
}

struct Extremum {
  double t;
  double value;
  bool maximum;
};

// Interior local extrema of uniformly sampled data, refined by a parabola
// through the three neighbouring samples.
std::vector<Extremum> find_extrema(const std::vector<double>& t, const std::vector<double>& y) {
  std::vector<Extremum> out;
  for (std::size_t i = 1; i + 1 < y.size(); ++i) {
    const bool mx = y[i] > y[i - 1] && y[i] >= y[i + 1];
    const bool mn = y[i] < y[i - 1] && y[i] <= y[i + 1];
    if (!mx && !mn) continue;
    const double h = t[i + 1] - t[i];
    const double curv = y[i - 1] - 2.0 * y[i] + y[i + 1];
    const double off = curv != 0.0 ? 0.5 * (y[i - 1] - y[i + 1]) / curv : 0.0;
    out.push_back({t[i] + off * h, y[i] - 0.25 * (y[i - 1] - y[i + 1]) * off, mx});
  }
  return out;
}

double max_rel_drift(const std::vector<double>& v) {
  double d = 0.0;
  for (double x : v) d = std::max(d, std::abs(x - v.front()));
  return d / std::max(std::abs(v.front()), std::numeric_limits<double>::min());
}

double max_abs_entry(const SymMat2& m) { return std::max({std::abs(m.qq), std::abs(m.qx), std::abs(m.xx)}); }

// --- criteria 1, 2: energy values and conservation -------------------------

CheckResult energy_check(int criterion, const std::string& scenario, double expected,
                         double tol) {
  return guarded(criterion, scenario + " total energy and conservation", [&] {
    const RunResult r = simulate(builtin(scenario));
    std::vector<double> e;
    for (const auto& s : r.samples) e.push_back(s.energy.E_total);
    const double e0 = e.front();
    const double drift = max_rel_drift(e);
    const double tspan = r.samples.back().t;
    const bool ok = std::abs(e0 - expected) <= tol && drift <= 1e-8 &&
                    std::abs(tspan - 4.0 * std::numbers::pi) < 1e-9;
    return std::pair{ok, "E0 = " + std::to_string(e0) + " (expect " + std::to_string(expected) + " +- " + g(tol) +
                             "), drift " + g(drift) + " <= 1e-08 over t in [0, " + g(tspan) + "]"};
  });
}

// --- criterion 3: energy exchange -------------------------------------------

CheckResult exchange_check() {
  return guarded(3, "fig4 energy exchange fraction and E_R peak timing", [] {
    Scenario sc = builtin("fig4");
    sc.samples_per_period = 1024;  // fine sampling to locate the peaks
    const RunResult r = simulate(sc);
    const double T = sc.params.period();
    std::vector<double> t, er;
    for (const auto& s : r.samples) {
      t.push_back(s.t);
      er.push_back(s.energy.E_R);
    }
    bool timing = true;
    std::ostringstream peaks;
    int count = 0;
    for (const auto& e : find_extrema(t, er)) {
      if (!e.maximum) continue;
      const double tq = e.t / T;
      const double off = std::abs(tq - 0.25 * std::round(tq / 0.25));
      timing = timing && off <= 0.08;
      peaks << (count++ ? ", " : "") << g(tq) << "T";
    }
    timing = timing && count > 0;
    const double f = r.exchange_fraction;
    const bool ok = f >= 0.30 && f <= 0.50 && timing;
    return std::pair{ok, "exchange fraction " + g(f) + " in [0.30, 0.50]; E_R maxima at " +
                             peaks.str() + " (each within 0.08T of a quarter mark: " +
                             (timing ? "yes" : "no") + ")"};
  });
}

// --- criterion 4: quantum sector structure ----------------------------------

std::vector<CheckResult> quantum_structure_checks() {
  std::vector<CheckResult> out;
  RunResult r;
  try {
    r = simulate(builtin("fig2-quantum"));
  } catch (const std::exception& e) {
    out.push_back({4, "fig2-quantum simulation", false, std::string("error: ") + e.what()});
    return out;
  }
  out.push_back(guarded(4, "fig2-quantum Z'_Rr stays zero", [&] {
    double m = 0.0;
    for (const auto& s : r.samples) m = std::max(m, std::abs(s.Zp.qx));
    return std::pair{m <= 1e-10, "max |Z'_Rr| = " + g(m) + " <= 1e-10"};
  }));
  out.push_back(guarded(4, "fig2-quantum Var(R) quadratic in t", [&] {
    const auto n = static_cast<Eigen::Index>(r.samples.size());
    Eigen::MatrixXd A(n, 3);
    Eigen::VectorXd y(n);
    for (Eigen::Index i = 0; i < n; ++i) {
      const double t = r.samples[static_cast<std::size_t>(i)].t;
      A(i, 0) = 1.0;
      A(i, 1) = t;
      A(i, 2) = t * t;
      y(i) = r.samples[static_cast<std::size_t>(i)].Zp.qq;
    }
    const Eigen::VectorXd c = A.colPivHouseholderQr().solve(y);
    const double res = (A * c - y).cwiseAbs().maxCoeff() / y.cwiseAbs().maxCoeff();
    return std::pair{res < 1e-9, "quadratic fit residual " + g(res) + " < 1e-09 relative (c1 = " +
                                     g(c(1)) + ", c2 = " + g(c(2)) + ")"};
  }));
  out.push_back(guarded(4, "fig2-quantum E_R and E_I separately conserved", [&] {
    std::vector<double> er, ei;
    for (const auto& s : r.samples) {
      er.push_back(s.energy.E_R);
      ei.push_back(s.energy.E_I);
    }
    const double dr = max_rel_drift(er), di = max_rel_drift(ei);
    return std::pair{dr <= 1e-8 && di <= 1e-8,
                     "E_R drift " + g(dr) + ", E_I drift " + g(di) + " (each <= 1e-08)"};
  }));
  return out;
}

// --- criterion 5: growing Z'_Rr oscillation ---------------------------------

CheckResult coupling_growth_check() {
  return guarded(5, "fig3 hybrid Z'_Rr growing oscillation", [] {
    Scenario sc = builtin("fig3");
    sc.samples_per_period = 1024;
    const RunResult r = simulate(sc);
    std::vector<double> t, c;
    for (const auto& s : r.samples) {
      t.push_back(s.t);
      c.push_back(s.Zp.qx);
    }
    const auto ext = find_extrema(t, c);
    std::vector<double> maxima, minima;
    std::ostringstream seq;
    for (std::size_t i = 0; i < ext.size(); ++i) {
      (ext[i].maximum ? maxima : minima).push_back(ext[i].value);
      seq << (i ? ", " : "") << g(ext[i].value);
    }
    const double amp = *std::max_element(c.begin(), c.end(), [](double a, double b) {
      return std::abs(a) < std::abs(b);
    });
    // upper envelope rises, lower envelope falls
    bool grows = maxima.size() >= 2 && minima.size() >= 2;
    for (std::size_t i = 1; i < maxima.size(); ++i) grows = grows && maxima[i] > maxima[i - 1];
    for (std::size_t i = 1; i < minima.size(); ++i) grows = grows && minima[i] < minima[i - 1];
    bool alternating_monotone = true;
    for (std::size_t i = 1; i < ext.size(); ++i)
      alternating_monotone = alternating_monotone && std::abs(ext[i].value) > std::abs(ext[i - 1].value);
    const bool ok = std::abs(amp) > 1e-3 && grows;
    return std::pair{ok, "extrema " + seq.str() + "; maxima rising and minima falling: " +
                             (grows ? "yes" : "no") + "; every extremum larger than the previous: " +
                             (alternating_monotone ? "yes" : "no")};
  });
}

// --- criterion 6: mass-ratio ordering ---------------------------------------

std::vector<CheckResult> mass_ratio_checks() {
  std::vector<CheckResult> out;
  out.push_back(guarded(6, "fig5 exchange ordering", [] {
    const double fa = simulate(builtin("fig5a")).exchange_fraction;  // dominant classical
    const double fe = simulate(builtin("fig4")).exchange_fraction;
    const double fb = simulate(builtin("fig5b")).exchange_fraction;  // dominant quantum
    return std::pair{fb > fe && fa < fe, "m_q = 20 m_x: " + g(fb) + " > equal: " + g(fe) +
                                             " > m_x = 20 m_q: " + g(fa)};
  }));
  out.push_back(guarded(6, "mass_ratio sweep reproduces the ordering", [] {
    char tmpl[] = "/tmp/hybridsim-sweep-XXXXXX";
    if (mkdtemp(tmpl) == nullptr) throw EngineError("cannot create a temporary directory");
    const fs::path dir(tmpl);
    ScenarioText base = load_scenario_text("fig4");
    base.entries.erase("m_q");
    base.entries.erase("m_x");
    const auto pts = run_sweep(base, parse_vary("mass_ratio=0.05,1,20"), dir, OutputFormat::Csv);
    fs::remove_all(dir);
    for (const auto& p : pts)
      if (!p.ok) throw EngineError("sweep point " + p.value + ": " + p.error);
    const double quantum_heavy = pts[0].exchange_fraction, equal = pts[1].exchange_fraction,
                 classical_heavy = pts[2].exchange_fraction;
    return std::pair{quantum_heavy > equal && equal > classical_heavy,
                     "m_x/m_q = 0.05: " + g(quantum_heavy) + ", 1: " + g(equal) + ", 20: " +
                         g(classical_heavy)};
  }));
  return out;
}

// --- criterion 7: oracles ---------------------------------------------------

// Equal-mass quantum state prepared diagonal in the CM/relative frame.
GaussianEnsembleState frame_diagonal_state(const ModelParams& p, double ZRR, double Zrr,
                                           double LRR, double Lrr) {
  const Mat2 T = cm_transform(p);
  const Mat2 Ti = T.inverse();
  GaussianEnsembleState s;
  s.K = inverse(congruence(T, SymMat2::diag(ZRR, Zrr)));
  s.L = congruence(Ti.transpose(), SymMat2::diag(LRR, Lrr));
  return s;
}

std::vector<CheckResult> oracle_checks() {
  std::vector<CheckResult> out;
  out.push_back(guarded(7, "quantum ODE vs analytic oracle (fig2-quantum)", [] {
    const Scenario sc = builtin("fig2-quantum");
    const Trajectory traj = integrate(sc.initial, sc.params, sc.t_final(),
                                      uniform_output_times(0.0, sc.t_final(), sc.params, 64),
                                      sc.integrator);
    const ConsistencyReport rep = hybrid_consistency_check(traj, sc.params);
    return std::pair{rep.oracle_available && rep.max_deviation < 1e-8,
                     rep.oracle + ": max |dZ'| = " + g(rep.max_deviation) + " < 1e-08 over " +
                         std::to_string(rep.samples_compared) + " samples"};
  }));
  out.push_back(guarded(7, "quantum ODE vs analytic oracle (squeezed, chirped)", [] {
    const ModelParams p(2.0, 2.0, 1.0, 1.0, SectorKind::Quantum);
    const GaussianEnsembleState s0 = frame_diagonal_state(p, 0.8, 0.3, 0.2, -0.4);
    const double tf = 2.0 * p.period();
    const Trajectory traj = integrate(s0, p, tf, uniform_output_times(0.0, tf, p, 64));
    const ConsistencyReport rep = hybrid_consistency_check(traj, p);
    return std::pair{rep.oracle_available && rep.max_deviation < 1e-8,
                     rep.oracle + ": max |dZ'| = " + g(rep.max_deviation) + " < 1e-08"};
  }));
  out.push_back(guarded(7, "mean motion vs closed form", [] {
    const ModelParams p(2.0, 2.0, 1.0);
    GaussianEnsembleState s0;
    s0.L = SymMat2::diag(0.0, 0.5);
    s0.alpha = {0.3, -0.2};
    s0.beta = {0.1, 0.4};
    const double tf = 2.0 * p.period();
    const Trajectory traj = integrate(s0, p, tf, uniform_output_times(0.0, tf, p, 64));
    const MeanMotionConstants c = fit_mean_constants(s0.alpha, s0.beta, p);
    double dev = 0.0;
    for (const auto& s : traj.samples) {
      const auto [a, b] = analytic_mean(c, p, s.t);
      dev = std::max({dev, std::abs(a.q - s.alpha.q), std::abs(a.x - s.alpha.x),
                      std::abs(b.q - s.beta.q), std::abs(b.x - s.beta.x)});
    }
    return std::pair{dev < 1e-9, "max |d(alpha, beta)| = " + g(dev) + " < 1e-09"};
  }));
  out.push_back(guarded(7, "classical moments finite at T/4, K/L path singular near T/4", [] {
    Scenario sc = builtin("fig2-hybrid");
    const ModelParams p = sc.params.with_sector(SectorKind::Classical);
    const double T = p.period();
    const PhaseSpaceMoments m = classical_moment_propagate(classical_moments(sc.initial), p, T / 4.0);
    const bool finite = m.cov.allFinite() && m.cov(0, 0) > 0.0 && m.cov(1, 1) > 0.0 &&
                        m.cov.topLeftCorner<2, 2>().determinant() > 0.0;
    std::string kl = "no exception";
    bool raised = false;
    try {
      integrate(sc.initial, p, T / 2.0, {});
    } catch (const PositiveDefinitenessLost& e) {
      raised = std::abs(e.time / T - 0.25) <= 0.02;
      kl = "PositiveDefinitenessLost at t = " + g(e.time / T) + "T";
    }
    const double det = m.cov.topLeftCorner<2, 2>().determinant();
    return std::pair{finite && raised, "moment propagation at T/4: Var(q) = " + g(m.cov(0, 0)) +
                                           ", Var(x) = " + g(m.cov(1, 1)) + ", det Z = " + g(det) +
                                           "; K/L integration: " + kl};
  }));
  out.push_back(guarded(0, "classical K/L path vs moment propagation on [0, T/8]", [] {
    Scenario sc = builtin("fig2-hybrid");
    const ModelParams p = sc.params.with_sector(SectorKind::Classical);
    const double tf = p.period() / 8.0;
    const Trajectory traj = integrate(sc.initial, p, tf, uniform_output_times(0.0, tf, p, 512));
    const ConsistencyReport rep = hybrid_consistency_check(traj, p);
    return std::pair{rep.oracle_available && rep.max_deviation < 1e-6,
                     rep.oracle + ": max |dZ| = " + g(rep.max_deviation) + " < 1e-06 over " +
                         std::to_string(rep.samples_compared) + " samples"};
  }));
  return out;
}

// --- supplementary conservation over built-ins ------------------------------

std::vector<CheckResult> builtin_conservation_checks() {
  std::vector<CheckResult> out;
  for (const auto& b : builtin_scenarios()) {
    out.push_back(guarded(0, b.name + " E_total and p_R conserved", [&] {
      const RunResult r = simulate(builtin(b.name));
      std::vector<double> e;
      double dp = 0.0;
      for (const auto& s : r.samples) {
        e.push_back(s.energy.E_total);
        dp = std::max(dp, std::abs(s.energy.p_R - r.samples.front().energy.p_R));
      }
      const double de = max_rel_drift(e);
      return std::pair{de <= 1e-8 && dp <= 1e-12,
                       "E_total drift " + g(de) + " <= 1e-08, p_R drift " + g(dp) + " <= 1e-12"};
    }));
  }
  out.push_back(guarded(0, "moving fig4 ensemble, classical motion included", [] {
    ScenarioText text = load_scenario_text("fig4");
    set_scenario_value(text, "alpha_q", "0.2");
    set_scenario_value(text, "beta_q", "0.3");
    set_scenario_value(text, "beta_x", "-0.1");
    set_scenario_value(text, "include_classical_motion", "true");
    const RunResult r = simulate(resolve_scenario(text));
    std::vector<double> e;
    double dp = 0.0;
    for (const auto& s : r.samples) {
      e.push_back(s.energy.E_total);
      dp = std::max(dp, std::abs(s.energy.p_R - r.samples.front().energy.p_R));
    }
    const double de = max_rel_drift(e);
    return std::pair{de <= 1e-8 && dp <= 1e-12, "E_total = " + g(e.front()) + ", drift " + g(de) +
                                                    ", p_R drift " + g(dp)};
  }));
  return out;
}

// --- criteria 8, 9: grid solver ---------------------------------------------

struct GridRun {
  GridMoments start, end;
  double norm_drift = 0.0;
  double energy_drift = 0.0;
};

GridRun run_grid(const GaussianEnsembleState& s0, const ModelParams& p, const GridSpec& grid,
                 double t1) {
  GridRun r;
  WaveField f = init_wavefield(s0, p, grid);
  r.start = extract_moments(f, p);
  const double n0 = f.norm();
  f = propagate_pde(std::move(f), p, t1);
  r.end = extract_moments(f, p);
  r.norm_drift = std::abs(f.norm() - n0) / n0;
  r.energy_drift = std::abs(r.end.energies.E_total - r.start.energies.E_total) /
                   std::abs(r.start.energies.E_total);
  return r;
}

GaussianEnsembleState ode_reference(const GaussianEnsembleState& s0, const ModelParams& p,
                                    double t1) {
  IntegratorConfig tight;
  tight.rel_tol = 1e-13;
  tight.abs_tol = 1e-15;
  tight.max_step = 0.01;
  tight.initial_step = 1e-4;
  return integrate(s0, p, t1, {0.0, t1}, tight).samples.back();
}

double rel_entry_error(const SymMat2& got, const SymMat2& ref) {
  return max_abs_entry(got - ref) / max_abs_entry(ref);
}

std::vector<CheckResult> pde_checks(const PdeStudyConfig& cfg) {
  std::vector<CheckResult> out;
  out.push_back(guarded(0, "grid initialization round trip (fig4 state, 256^2, half-width 8)", [] {
    const Scenario sc = builtin("fig4");
    GaussianEnsembleState s = sc.initial;
    s.alpha = {0.5, -0.3};
    const WaveField f = init_wavefield(s, sc.params, GridSpec{8.0, 256, 0.05});
    const GridMoments m = extract_moments(f, sc.params);
    const double dn = std::abs(m.norm - 1.0);
    const double da = std::max(std::abs(m.mean.q - s.alpha.q), std::abs(m.mean.x - s.alpha.x));
    const double dz = max_abs_entry(m.Z - inverse(s.K));
    return std::pair{dn < 1e-9 && da < 1e-8 && dz < 1e-6,
                     "norm error " + g(dn) + " < 1e-09, mean error " + g(da) +
                         " < 1e-08, covariance error " + g(dz) + " < 1e-06"};
  }));

  const GridSpec coarse{cfg.half_width, cfg.points, 0.0};
  const GridSpec fine{cfg.half_width, 2 * cfg.points, 0.0};
  const std::string grids = std::to_string(cfg.points) + "^2 -> " + std::to_string(2 * cfg.points) +
                            "^2, " + std::to_string(cfg.steps) + " -> " +
                            std::to_string(2 * cfg.steps) + " steps";

  struct Pair {
    GridRun coarse, fine;
  };
  auto study = [&](const Scenario& sc) {
    const double t1 = sc.params.period() / 8.0;
    GridSpec c = coarse, f = fine;
    c.dt = t1 / cfg.steps;
    f.dt = c.dt / 2.0;
    return Pair{run_grid(sc.initial, sc.params, c, t1), run_grid(sc.initial, sc.params, f, t1)};
  };

  std::vector<std::pair<std::string, GridRun>> conservation_runs;

  out.push_back(guarded(8, "quantum grid covariances vs ODE at T/8 (fig2-quantum)", [&] {
    const Scenario sc = builtin("fig2-quantum");
    const GaussianEnsembleState ref = ode_reference(sc.initial, sc.params, sc.params.period() / 8.0);
    const SymMat2 Zr = inverse(ref.K);
    const SymMat2 Pr = momentum_covariance(ref.K, ref.L, build_E(SectorKind::Quantum), sc.params.hbar());
    const Pair runs = study(sc);
    conservation_runs.push_back({"quantum " + std::to_string(cfg.points), runs.coarse});
    conservation_runs.push_back({"quantum " + std::to_string(2 * cfg.points), runs.fine});
    const double ec = std::max(rel_entry_error(runs.coarse.end.Z, Zr), rel_entry_error(runs.coarse.end.Pi, Pr));
    const double ef = std::max(rel_entry_error(runs.fine.end.Z, Zr), rel_entry_error(runs.fine.end.Pi, Pr));
    const double ratio = ec / ef;
    return std::pair{ec < 2e-3 && ratio >= 4.0, "relative covariance error " + g(ec) + " < 2e-03; refined " + g(ef) +
                                     ", reduction " + std::to_string(ratio) + " >= 4 (" + grids + ")"};
  }));
  out.push_back(guarded(8, "hybrid grid E_R vs ODE at T/8 (fig4)", [&] {
    const Scenario sc = builtin("fig4");
    const GaussianEnsembleState ref = ode_reference(sc.initial, sc.params, sc.params.period() / 8.0);
    const double er = energies(ref, sc.params).E_R;
    const Pair runs = study(sc);
    conservation_runs.push_back({"hybrid " + std::to_string(cfg.points), runs.coarse});
    conservation_runs.push_back({"hybrid " + std::to_string(2 * cfg.points), runs.fine});
    const double ec = std::abs(runs.coarse.end.energies.E_R - er) / er;
    const double ef = std::abs(runs.fine.end.energies.E_R - er) / er;
    const double ratio = ec / ef;
    return std::pair{ec < 5e-3 && ratio >= 4.0, "relative E_R error " + g(ec) + " < 5e-03; refined " + g(ef) +
                                    ", reduction " + std::to_string(ratio) + " >= 4 (" + grids + ")"};
  }));

  for (const auto& [label, run] : conservation_runs) {
    out.push_back(guarded(9, "grid conservation, " + label, [&] {
      return std::pair{run.norm_drift < 1e-6 && run.energy_drift < 1e-3,
                       "norm drift " + g(run.norm_drift) + " < 1e-06, E_total drift " +
                           g(run.energy_drift) + " < 1e-03 over [0, T/8]"};
    }));
  }
  if (conservation_runs.size() < 4)
    out.push_back({9, "grid conservation", false, "not all grid runs completed (see criterion 8)"});
  return out;
}

// --- criterion 10: determinism ----------------------------------------------

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

CheckResult determinism_check() {
  return guarded(10, "repeated runs are byte-identical (all built-ins)", [] {
    char tmpl[] = "/tmp/hybridsim-determinism-XXXXXX";
    if (mkdtemp(tmpl) == nullptr) throw EngineError("cannot create a temporary directory");
    const fs::path dir(tmpl);
    std::size_t files = 0;
    std::string mismatch;
    for (const auto& b : builtin_scenarios()) {
      for (int rep = 0; rep < 2; ++rep)
        write_run(simulate(builtin(b.name)), dir / b.name / std::to_string(rep), OutputFormat::Csv);
      for (const auto& entry : fs::directory_iterator(dir / b.name / "0")) {
        const auto other = dir / b.name / "1" / entry.path().filename();
        ++files;
        if (slurp(entry.path()) != slurp(other) && mismatch.empty())
          mismatch = b.name + "/" + entry.path().filename().string();
      }
    }
    fs::remove_all(dir);
    return std::pair{mismatch.empty() && files > 0,
                     mismatch.empty() ? std::to_string(files) + " file pairs identical"
                                      : "differs: " + mismatch};
  });
}

void append(std::vector<CheckResult>& dst, std::vector<CheckResult> src) {
  dst.insert(dst.end(), std::make_move_iterator(src.begin()), std::make_move_iterator(src.end()));
}

}  // namespace

Suite parse_suite(const std::string& name) {
  if (name == "oracles") return Suite::Oracles;
  if (name == "pde") return Suite::Pde;
  if (name == "conservation") return Suite::Conservation;
  if (name == "properties") return Suite::Properties;
  if (name == "determinism") return Suite::Determinism;
  if (name == "all") return Suite::All;
  throw ConfigError("unknown suite '" + name +
                    "' (expected oracles|pde|conservation|properties|determinism|all)");
}

std::string_view to_string(Suite s) {
  switch (s) {
    case Suite::Oracles: return "oracles";
    case Suite::Pde: return "pde";
    case Suite::Conservation: return "conservation";
    case Suite::Properties: return "properties";
    case Suite::Determinism: return "determinism";
    case Suite::All: return "all";
  }
  return "?";
}

std::vector<CheckResult> run_suite(Suite suite, const PdeStudyConfig& pde) {
  std::vector<CheckResult> out;
  const bool all = suite == Suite::All;
  if (all || suite == Suite::Conservation) {
    out.push_back(energy_check(1, "fig4", 1.125, 1e-12));
    out.push_back(energy_check(2, "fig6", 12.51, 0.005));
    append(out, quantum_structure_checks());
    append(out, builtin_conservation_checks());
  }
  if (all || suite == Suite::Properties) {
    out.push_back(exchange_check());
    out.push_back(coupling_growth_check());
    append(out, mass_ratio_checks());
  }
  if (all || suite == Suite::Oracles) append(out, oracle_checks());
  if (all || suite == Suite::Pde) append(out, pde_checks(pde));
  if (all || suite == Suite::Determinism) out.push_back(determinism_check());
  return out;
}

}  // namespace hybrid
