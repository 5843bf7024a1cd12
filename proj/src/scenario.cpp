#include "hybrid/scenario.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>

#include "hybrid/errors.hpp"

namespace hybrid {

namespace {

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

std::string where(const ScenarioText& text, const std::string& key) {
  std::ostringstream os;
  os << text.origin;
  if (auto it = text.entries.find(key); it != text.entries.end() && it->second.line > 0)
    os << ":" << it->second.line;
  os << ": key '" << key << "'";
  return os.str();
}

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

bool known_key(const std::string& key) {
  const auto& keys = scenario_keys();
  return std::find(keys.begin(), keys.end(), key) != keys.end();
}

// Typed access with provenance recording.
class Reader {
 public:
  Reader(const ScenarioText& text, Scenario& out) : text_(text), out_(out) {}

  bool has(const std::string& key) const { return text_.entries.count(key) != 0; }

  double number(const std::string& key, double fallback) {
    if (!has(key)) return record(key, fallback, "default");
    return record(key, parse_number(key), "file");
  }

  std::optional<double> maybe_number(const std::string& key) {
    if (!has(key)) return std::nullopt;
    return record(key, parse_number(key), "file");
  }

  int integer(const std::string& key, int fallback) {
    if (!has(key)) {
      out_.resolved.push_back({key, std::to_string(fallback), "default"});
      return fallback;
    }
    const std::string& s = text_.entries.at(key).value;
    int v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size())
      throw ConfigError(where(text_, key) + ": expected an integer, got '" + s + "'");
    out_.resolved.push_back({key, std::to_string(v), "file"});
    return v;
  }

  bool flag(const std::string& key, bool fallback) {
    if (!has(key)) {
      out_.resolved.push_back({key, fallback ? "true" : "false", "default"});
      return fallback;
    }
    const std::string& s = text_.entries.at(key).value;
    bool v;
    if (s == "true" || s == "yes" || s == "1") v = true;
    else if (s == "false" || s == "no" || s == "0") v = false;
    else throw ConfigError(where(text_, key) + ": expected true|false, got '" + s + "'");
    out_.resolved.push_back({key, v ? "true" : "false", "file"});
    return v;
  }

  std::string word(const std::string& key, const std::string& fallback) {
    if (!has(key)) {
      out_.resolved.push_back({key, fallback, "default"});
      return fallback;
    }
    const std::string& s = text_.entries.at(key).value;
    out_.resolved.push_back({key, s, "file"});
    return s;
  }

  double derived(const std::string& key, double v) { return record(key, v, "derived"); }

  [[noreturn]] void fail(const std::string& key, const std::string& msg) const {
    throw ConfigError(where(text_, key) + ": " + msg);
  }

 private:
  double parse_number(const std::string& key) const {
    const std::string& s = text_.entries.at(key).value;
    double v = 0.0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || p != s.data() + s.size() || !std::isfinite(v))
      throw ConfigError(where(text_, key) + ": expected a number, got '" + s + "'");
    return v;
  }

  double record(const std::string& key, double v, const char* source) {
    out_.resolved.push_back({key, fmt(v), source});
    return v;
  }

  const ScenarioText& text_;
  Scenario& out_;
};

}  // namespace

const std::vector<std::string>& scenario_keys() {
  static const std::vector<std::string> keys = {
      "m_q", "m_x", "mass_ratio", "mu", "k", "hbar", "sector",
      "Kqq", "Kxx", "Kqx", "Lqq", "Lxx", "Lqx", "match_momentum_variance",
      "alpha_q", "alpha_x", "beta_q", "beta_x", "sigma",
      "t_final", "samples_per_period", "include_classical_motion",
      "rel_tol", "abs_tol", "max_step", "initial_step"};
  return keys;
}

ScenarioText parse_scenario_text(std::string_view text, std::string origin) {
  ScenarioText out;
  out.origin = std::move(origin);
  int line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? text.npos : nl - pos);
    pos = (nl == std::string_view::npos) ? text.size() + 1 : nl + 1;
    ++line_no;

    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    const auto eq = line.find('=');
    std::ostringstream at;
    at << out.origin << ":" << line_no << ": ";
    if (eq == std::string_view::npos) throw ConfigError(at.str() + "expected 'key = value'");
    const std::string key(trim(line.substr(0, eq)));
    const std::string value(trim(line.substr(eq + 1)));
    if (key.empty()) throw ConfigError(at.str() + "missing key");
    if (value.empty()) throw ConfigError(at.str() + "key '" + key + "' has no value");
    if (!known_key(key)) throw ConfigError(at.str() + "unknown key '" + key + "'");
    if (out.entries.count(key)) {
      throw ConfigError(at.str() + "duplicate key '" + key + "' (first set on line " +
                        std::to_string(out.entries[key].line) + ")");
    }
    out.entries[key] = {value, line_no};
  }
  return out;
}

void set_scenario_value(ScenarioText& text, const std::string& key, const std::string& value) {
  if (!known_key(key)) throw ConfigError("unknown scenario key '" + key + "'");
  // an override of one mass parameterization replaces the other
  if (key == "mass_ratio" || key == "mu") {
    text.entries.erase("m_q");
    text.entries.erase("m_x");
  } else if (key == "m_q" || key == "m_x") {
    text.entries.erase("mass_ratio");
    text.entries.erase("mu");
  }
  text.entries[key] = {value, 0};
}

double Scenario::t_final() const {
  return params.k() > 0.0 ? t_final_periods * params.period() : t_final_periods;
}

Scenario resolve_scenario(const ScenarioText& text) {
  Scenario sc;
  sc.name = text.origin;
  Reader r(text, sc);

  double m_q = 2.0, m_x = 2.0;
  if (r.has("mass_ratio")) {
    if (r.has("m_q") || r.has("m_x")) r.fail("mass_ratio", "cannot be combined with m_q or m_x");
    const double ratio = *r.maybe_number("mass_ratio");  // m_x / m_q
    const double mu = r.number("mu", 1.0);
    if (!(ratio > 0.0)) r.fail("mass_ratio", "must be > 0");
    if (!(mu > 0.0)) r.fail("mu", "must be > 0");
    m_q = r.derived("m_q", mu * (1.0 + ratio) / ratio);
    m_x = r.derived("m_x", mu * (1.0 + ratio));
  } else {
    if (r.has("mu")) r.fail("mu", "only meaningful together with mass_ratio");
    m_q = r.number("m_q", 2.0);
    m_x = r.number("m_x", 2.0);
  }
  const double k = r.number("k", 1.0);
  const double hbar = r.number("hbar", 1.0);
  SectorKind sector;
  try {
    sector = parse_sector(r.word("sector", "hybrid"));
  } catch (const ConfigError& e) {
    r.fail("sector", e.what());
  }
  try {
    sc.params = ModelParams(m_q, m_x, k, hbar, sector);
  } catch (const InvalidParameter& e) {
    throw ConfigError(text.origin + ": " + e.what());
  }

  // Scales: K in x0^-2, L in hbar x0^-2, alpha in x0, beta in hbar/x0.
  const double x0 = k > 0.0 ? sc.params.oscillator_length() : 1.0;
  const double x0_2 = x0 * x0;

  const double Kqq = r.number("Kqq", 1.0);
  const double Kxx = r.number("Kxx", 1.0);
  const double Kqx = r.number("Kqx", 0.0);
  const SymMat2 K_units{Kqq, Kqx, Kxx};
  if (!is_positive_definite(K_units)) r.fail("Kqq", "initial K must be positive definite");

  const double Lqq = r.number("Lqq", 0.0);
  const double Lqx = r.number("Lqx", 0.0);
  const bool match = r.flag("match_momentum_variance", false);
  double Lxx;
  if (match) {
    if (r.has("Lxx")) r.fail("Lxx", "cannot be set together with match_momentum_variance");
    if (sector != SectorKind::Hybrid) r.fail("match_momentum_variance", "needs sector = hybrid");
    // classical Var(p_x) = Lxx^2 Z_xx equal to the quantum floor hbar^2 K_qq / 4
    const double Zxx = inverse(K_units).xx;
    Lxx = r.derived("Lxx", 0.5 * std::sqrt(Kqq / Zxx));
  } else if (r.has("Lxx")) {
    Lxx = r.number("Lxx", 0.0);
  } else {
    // quantum: minimum-uncertainty start; otherwise give x the quantum
    // momentum spread
    Lxx = r.derived("Lxx", sector == SectorKind::Quantum ? 0.0 : 0.5 * Kxx);
  }

  auto& s0 = sc.initial;
  s0.t = 0.0;
  s0.K = (1.0 / x0_2) * K_units;
  s0.L = (hbar / x0_2) * SymMat2{Lqq, Lqx, Lxx};
  s0.alpha = x0 * Vec2{r.number("alpha_q", 0.0), r.number("alpha_x", 0.0)};
  s0.beta = (hbar / x0) * Vec2{r.number("beta_q", 0.0), r.number("beta_x", 0.0)};
  s0.sigma = r.number("sigma", 0.0);

  sc.t_final_periods = r.number("t_final", 2.0);
  if (!(sc.t_final_periods > 0.0)) r.fail("t_final", "must be > 0");
  sc.samples_per_period = r.integer("samples_per_period", 64);
  if (sc.samples_per_period < 4 || sc.samples_per_period % 4 != 0)
    r.fail("samples_per_period", "must be a positive multiple of 4 (quarter-period marks)");
  sc.include_classical_motion = r.flag("include_classical_motion", false);

  const IntegratorConfig def;
  sc.integrator.rel_tol = r.number("rel_tol", def.rel_tol);
  sc.integrator.abs_tol = r.number("abs_tol", def.abs_tol);
  sc.integrator.max_step = r.number("max_step", def.max_step);
  sc.integrator.initial_step = r.number("initial_step", def.initial_step);
  for (const char* key : {"rel_tol", "abs_tol", "max_step", "initial_step"}) {
    const auto it = std::find_if(sc.resolved.begin(), sc.resolved.end(),
                                 [&](const auto& e) { return e.key == key; });
    if (!(std::stod(it->value) > 0.0)) r.fail(key, "must be > 0");
  }

  if (sc.include_classical_motion && k <= 0.0)
    r.fail("include_classical_motion", "needs k > 0 (closed-form mean motion)");
  return sc;
}

const std::vector<BuiltinScenario>& builtin_scenarios() {
  static const std::vector<BuiltinScenario> all = {
      {"fig2-hybrid", "error ellipses, hybrid: equal masses, K = I, L_xx = 0.5 K_xx",
       "m_q = 2\nm_x = 2\nk = 1\nsector = hybrid\nKqq = 1\nKxx = 1\nLxx = 0.5\n"},
      {"fig2-quantum", "error ellipses, quantum: equal masses, K = I, L = 0",
       "m_q = 2\nm_x = 2\nk = 1\nsector = quantum\nKqq = 1\nKxx = 1\nLxx = 0\n"},
      {"fig3", "CM/relative covariances of the hybrid equal-mass solution",
       "m_q = 2\nm_x = 2\nk = 1\nsector = hybrid\nKqq = 1\nKxx = 1\nLxx = 0.5\n"},
      {"fig4", "hybrid energy exchange, equal masses (E = 1.125)",
       "m_q = 2\nm_x = 2\nk = 1\nsector = hybrid\nKqq = 1\nKxx = 1\nLxx = 0.5\n"},
      {"fig5a", "dominant classical mass: m_x = 20 m_q = 21",
       "m_q = 1.05\nm_x = 21\nk = 1\nsector = hybrid\nKqq = 1\nKxx = 1\nLxx = 0.5\n"},
      {"fig5b", "dominant quantum mass: m_q = 20 m_x = 21",
       "m_q = 21\nm_x = 1.05\nk = 1\nsector = hybrid\nKqq = 1\nKxx = 1\nLxx = 0.5\n"},
      {"fig6", "narrow initial state, K = 100 I (E = 12.51)",
       "m_q = 2\nm_x = 2\nk = 1\nsector = hybrid\nKqq = 100\nKxx = 100\nLxx = 50\n"},
  };
  return all;
}

ScenarioText load_scenario_text(const std::string& name_or_path) {
  for (const auto& b : builtin_scenarios())
    if (b.name == name_or_path) return parse_scenario_text(b.text, b.name);
  std::ifstream in(name_or_path);
  if (!in) throw ConfigError("'" + name_or_path + "' is neither a built-in scenario nor a readable file");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_scenario_text(ss.str(), name_or_path);
}

}  // namespace hybrid
