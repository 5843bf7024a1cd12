#include "hybrid/runner.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "hybrid/errors.hpp"

namespace hybrid {

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

int output_precision() {
  const char* env = std::getenv("HYBRIDSIM_PRECISION");
  if (env == nullptr || *env == '\0') return 17;
  const std::string s(env);
  int p = 0;
  auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), p);
  if (ec != std::errc{} || end != s.data() + s.size() || p < 1 || p > 17)
    throw ConfigError("HYBRIDSIM_PRECISION must be an integer in [1, 17], got '" + s + "'");
  return p;
}

class CsvWriter {
 public:
  CsvWriter(const fs::path& path, int precision) : os_(path), precision_(precision) {
    if (!os_) throw EngineError("cannot open " + path.string() + " for writing");
  }

  void header(std::initializer_list<const char*> cols) {
    bool first = true;
    for (const char* c : cols) {
      if (!first) os_ << ',';
      os_ << c;
      first = false;
    }
    os_ << '\n';
  }

  void row(std::initializer_list<double> values) {
    char buf[40];
    bool first = true;
    for (double v : values) {
      if (!first) os_ << ',';
      std::snprintf(buf, sizeof buf, "%.*g", precision_, v == 0.0 ? 0.0 : v);  // no "-0"
      os_ << buf;
      first = false;
    }
    os_ << '\n';
  }

  void finish(const fs::path& path) {
    os_.flush();
    if (!os_) throw EngineError("failed writing " + path.string());
  }

 private:
  std::ofstream os_;
  int precision_;
};

void drop_negative_zero(ordered_json& j) {
  if (j.is_number_float()) {
    if (j.get<double>() == 0.0) j = 0.0;
  } else if (j.is_structured()) {
    for (auto& v : j) drop_negative_zero(v);
  }
}

void write_json(ordered_json j, const fs::path& path) {
  drop_negative_zero(j);
  std::ofstream os(path);
  if (!os) throw EngineError("cannot open " + path.string() + " for writing");
  os << j.dump(2) << '\n';
  if (!os) throw EngineError("failed writing " + path.string());
}

constexpr std::initializer_list<const char*> kTrajectoryColumns = {
    "t",  "Zqq", "Zxx", "Zqx", "ZRR",  "Zrr", "ZRr",     "ER",      "Er",
    "V",  "EI",  "Etot", "pR", "alpha_q", "alpha_x", "beta_q", "beta_x"};
constexpr std::initializer_list<const char*> kEnergyColumns = {"t",  "ER",   "Er", "V",
                                                               "EI", "Etot", "pR", "coupling"};
constexpr std::initializer_list<const char*> kEllipseColumns = {
    "t", "quarter", "center_q", "center_x", "semi_major", "semi_minor", "angle"};

ordered_json manifest(const RunResult& r, OutputFormat format, int precision) {
  const Scenario& sc = r.scenario;
  const ModelParams& p = sc.params;
  ordered_json j;
  j["scenario"] = sc.name;
  j["format"] = format == OutputFormat::Csv ? "csv" : "json";
  j["precision"] = precision;
  ordered_json keys = ordered_json::array();
  for (const auto& e : sc.resolved)
    keys.push_back({{"key", e.key}, {"value", e.value}, {"source", e.source}});
  j["keys"] = keys;
  j["engine_units"] = {
      {"m_q", p.m_q()},
      {"m_x", p.m_x()},
      {"k", p.k()},
      {"hbar", p.hbar()},
      {"sector", std::string(to_string(p.sector()))},
      {"total_mass", p.total_mass()},
      {"reduced_mass", p.reduced_mass()},
      {"omega", p.omega()},
      {"period", p.k() > 0.0 ? p.period() : 0.0},
      {"oscillator_length", p.k() > 0.0 ? p.oscillator_length() : 1.0},
      {"t_final", sc.t_final()},
      {"K0", {sc.initial.K.qq, sc.initial.K.qx, sc.initial.K.xx}},
      {"L0", {sc.initial.L.qq, sc.initial.L.qx, sc.initial.L.xx}},
      {"alpha0", {sc.initial.alpha.q, sc.initial.alpha.x}},
      {"beta0", {sc.initial.beta.q, sc.initial.beta.x}},
      {"sigma", sc.initial.sigma}};
  j["integrator"] = {{"method", "runge_kutta_dopri5 (adaptive, controlled)"},
                     {"rel_tol", sc.integrator.rel_tol},
                     {"abs_tol", sc.integrator.abs_tol},
                     {"max_step", sc.integrator.max_step},
                     {"initial_step", sc.integrator.initial_step}};
  j["samples"] = r.samples.size();
  j["energy_includes_classical_motion"] = sc.include_classical_motion;
  j["exchange"] = r.exchange;
  j["exchange_fraction"] = r.exchange_fraction;
  const char* ext = format == OutputFormat::Csv ? ".csv" : ".json";
  j["files"] = {std::string("trajectory") + ext, std::string("energy") + ext,
                std::string("ellipses") + ext};
  return j;
}

std::string fmt17(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double parse_double(const std::string& s, const std::string& what) {
  double v = 0.0;
  auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || end != s.data() + s.size() || !std::isfinite(v))
    throw ConfigError(what + ": expected a number, got '" + s + "'");
  return v;
}

}  // namespace

OutputFormat parse_format(const std::string& name) {
  if (name == "csv") return OutputFormat::Csv;
  if (name == "json") return OutputFormat::Json;
  throw ConfigError("unknown format '" + name + "' (expected csv|json)");
}

RunResult simulate(const Scenario& sc) {
  RunResult r;
  r.scenario = sc;
  const ModelParams& p = sc.params;
  const double tf = sc.t_final();
  std::vector<double> times = uniform_output_times(0.0, tf, p, sc.samples_per_period);
  const Trajectory traj = integrate(sc.initial, p, tf, times, sc.integrator);

  const Mat2 T = cm_transform(p);
  r.samples.reserve(traj.samples.size());
  for (const auto& s : traj.samples) {
    SampleRecord rec;
    rec.t = s.t;
    rec.Z = position_covariance(s.K);
    rec.Zp = transform_covariance(s.K, T);
    rec.energy = energies(s, p, sc.include_classical_motion);
    rec.coupling = cm_relative_coupling(s, p);
    rec.alpha = s.alpha;
    rec.beta = s.beta;
    r.samples.push_back(rec);
  }

  // samples_per_period is a multiple of 4, so every quarter mark is a sample
  // (a trailing off-grid t_final is not)
  const std::size_t stride = static_cast<std::size_t>(sc.samples_per_period / 4);
  const double quarter = (p.k() > 0.0 ? p.period() : tf) / 4.0;
  for (std::size_t i = 0; i < r.samples.size(); i += stride) {
    const auto& rec = r.samples[i];
    const auto qi = static_cast<int>(i / stride);
    if (std::abs(rec.t - qi * quarter) > 1e-9 * quarter) break;
    r.ellipses.push_back({rec.t, qi, error_ellipse(rec.Z, rec.alpha)});
  }

  auto [lo, hi] = std::minmax_element(r.samples.begin(), r.samples.end(),
                                      [](const auto& a, const auto& b) {
                                        return a.energy.E_R < b.energy.E_R;
                                      });
  r.exchange = hi->energy.E_R - lo->energy.E_R;
  r.exchange_fraction = r.exchange / r.samples.front().energy.E_total;
  return r;
}

void write_run(const RunResult& r, const fs::path& out_dir, OutputFormat format) {
  const int precision = output_precision();
  fs::create_directories(out_dir);

  if (format == OutputFormat::Csv) {
    {
      const fs::path path = out_dir / "trajectory.csv";
      CsvWriter w(path, precision);
      w.header(kTrajectoryColumns);
      for (const auto& s : r.samples) {
        const auto& e = s.energy;
        w.row({s.t, s.Z.qq, s.Z.xx, s.Z.qx, s.Zp.qq, s.Zp.xx, s.Zp.qx, e.E_R, e.E_r, e.V, e.E_I,
               e.E_total, e.p_R, s.alpha.q, s.alpha.x, s.beta.q, s.beta.x});
      }
      w.finish(path);
    }
    {
      const fs::path path = out_dir / "energy.csv";
      CsvWriter w(path, precision);
      w.header(kEnergyColumns);
      for (const auto& s : r.samples) {
        const auto& e = s.energy;
        w.row({s.t, e.E_R, e.E_r, e.V, e.E_I, e.E_total, e.p_R, s.coupling});
      }
      w.finish(path);
    }
    {
      const fs::path path = out_dir / "ellipses.csv";
      CsvWriter w(path, precision);
      w.header(kEllipseColumns);
      for (const auto& el : r.ellipses) {
        const auto& e = el.ellipse;
        w.row({el.t, static_cast<double>(el.quarter), e.center.q, e.center.x, e.semi_major,
               e.semi_minor, e.angle});
      }
      w.finish(path);
    }
  } else {
    ordered_json traj = ordered_json::array(), energy = ordered_json::array(),
                 ellipses = ordered_json::array();
    for (const auto& s : r.samples) {
      const auto& e = s.energy;
      traj.push_back({{"t", s.t},        {"Zqq", s.Z.qq},     {"Zxx", s.Z.xx},
                      {"Zqx", s.Z.qx},   {"ZRR", s.Zp.qq},    {"Zrr", s.Zp.xx},
                      {"ZRr", s.Zp.qx},  {"ER", e.E_R},       {"Er", e.E_r},
                      {"V", e.V},        {"EI", e.E_I},       {"Etot", e.E_total},
                      {"pR", e.p_R},     {"alpha_q", s.alpha.q}, {"alpha_x", s.alpha.x},
                      {"beta_q", s.beta.q}, {"beta_x", s.beta.x}});
      energy.push_back({{"t", s.t}, {"ER", e.E_R}, {"Er", e.E_r}, {"V", e.V}, {"EI", e.E_I},
                        {"Etot", e.E_total}, {"pR", e.p_R}, {"coupling", s.coupling}});
    }
    for (const auto& el : r.ellipses) {
      const auto& e = el.ellipse;
      ellipses.push_back({{"t", el.t}, {"quarter", el.quarter}, {"center_q", e.center.q},
                          {"center_x", e.center.x}, {"semi_major", e.semi_major},
                          {"semi_minor", e.semi_minor}, {"angle", e.angle}});
    }
    write_json(traj, out_dir / "trajectory.json");
    write_json(energy, out_dir / "energy.json");
    write_json(ellipses, out_dir / "ellipses.json");
  }
  write_json(manifest(r, format, precision), out_dir / "manifest.json");
}

SweepAxis parse_vary(const std::string& spec) {
  const auto eq = spec.find('=');
  if (eq == std::string::npos || eq == 0 || eq + 1 == spec.size())
    throw ConfigError("--vary expects key=start:stop:n or key=v1,v2,..., got '" + spec + "'");
  SweepAxis axis;
  axis.key = spec.substr(0, eq);
  const auto& keys = scenario_keys();
  if (std::find(keys.begin(), keys.end(), axis.key) == keys.end())
    throw ConfigError("--vary: unknown scenario key '" + axis.key + "'");
  if (axis.key == "sector" || axis.key == "match_momentum_variance" ||
      axis.key == "include_classical_motion")
    throw ConfigError("--vary: key '" + axis.key + "' is not numeric");

  const std::string rhs = spec.substr(eq + 1);
  const std::string what = "--vary " + axis.key;
  if (std::count(rhs.begin(), rhs.end(), ':') == 2) {
    const auto c1 = rhs.find(':'), c2 = rhs.rfind(':');
    const double start = parse_double(rhs.substr(0, c1), what);
    const double stop = parse_double(rhs.substr(c1 + 1, c2 - c1 - 1), what);
    const std::string ns = rhs.substr(c2 + 1);
    int n = 0;
    auto [end, ec] = std::from_chars(ns.data(), ns.data() + ns.size(), n);
    if (ec != std::errc{} || end != ns.data() + ns.size() || n < 1)
      throw ConfigError(what + ": point count must be an integer >= 1, got '" + ns + "'");
    for (int i = 0; i < n; ++i) {
      const double v = n == 1 ? start : start + (stop - start) * i / (n - 1);
      axis.values.push_back(fmt17(v));
    }
  } else {
    std::stringstream ss(rhs);
    std::string item;
    while (std::getline(ss, item, ',')) {
      parse_double(item, what);
      axis.values.push_back(item);
    }
  }
  if (axis.values.empty()) throw ConfigError(what + ": no values");
  return axis;
}

std::vector<SweepPoint> run_sweep(const ScenarioText& base, const SweepAxis& axis,
                                  const fs::path& out_dir, OutputFormat format) {
  const std::size_t n = axis.values.size();
  std::vector<Scenario> scenarios;
  std::vector<SweepPoint> points(n);
  // resolve everything first so configuration mistakes stop the sweep early
  for (std::size_t i = 0; i < n; ++i) {
    ScenarioText text = base;
    set_scenario_value(text, axis.key, axis.values[i]);
    scenarios.push_back(resolve_scenario(text));
    char dir[32];
    std::snprintf(dir, sizeof dir, "point_%03zu", i);
    points[i].value = axis.values[i];
    points[i].directory = dir;
  }
  output_precision();  // surface a bad override before the parallel region
  fs::create_directories(out_dir);

  const auto count = static_cast<std::ptrdiff_t>(n);
#pragma omp parallel for schedule(dynamic, 1)
  for (std::ptrdiff_t i = 0; i < count; ++i) {
    SweepPoint& pt = points[static_cast<std::size_t>(i)];
    try {
      const RunResult r = simulate(scenarios[static_cast<std::size_t>(i)]);
      write_run(r, out_dir / pt.directory, format);
      pt.ok = true;
      pt.E_total = r.samples.front().energy.E_total;
      pt.exchange = r.exchange;
      pt.exchange_fraction = r.exchange_fraction;
    } catch (const std::exception& e) {
      pt.ok = false;
      pt.error = e.what();
    }
  }

  const int precision = output_precision();
  if (format == OutputFormat::Csv) {
    const fs::path path = out_dir / "summary.csv";
    std::ofstream os(path);
    if (!os) throw EngineError("cannot open " + path.string() + " for writing");
    os << "index," << axis.key << ",directory,status,Etot,exchange,exchange_fraction\n";
    char buf[40];
    for (std::size_t i = 0; i < n; ++i) {
      const auto& pt = points[i];
      os << i << ',' << pt.value << ',' << pt.directory << ',' << (pt.ok ? "ok" : "error");
      for (double v : {pt.E_total, pt.exchange, pt.exchange_fraction}) {
        if (pt.ok) std::snprintf(buf, sizeof buf, "%.*g", precision, v);
        else std::snprintf(buf, sizeof buf, "nan");
        os << ',' << buf;
      }
      os << '\n';
    }
    if (!os) throw EngineError("failed writing " + path.string());
  } else {
    ordered_json j = ordered_json::array();
    for (std::size_t i = 0; i < n; ++i) {
      const auto& pt = points[i];
      ordered_json e = {{"index", i}, {axis.key, pt.value}, {"directory", pt.directory},
                        {"status", pt.ok ? "ok" : "error"}};
      if (pt.ok) {
        e["Etot"] = pt.E_total;
        e["exchange"] = pt.exchange;
        e["exchange_fraction"] = pt.exchange_fraction;
      } else {
        e["error"] = pt.error;
      }
      j.push_back(e);
    }
    write_json(j, out_dir / "summary.json");
  }
  return points;
}

}  // namespace hybrid
