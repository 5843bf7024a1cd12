#include <doctest.h>

#include <string>

#include "hybrid/errors.hpp"
#include "hybrid/scenario.hpp"

using namespace hybrid;
using doctest::Approx;

namespace {

std::string message_of(const std::string& text) {
  try {
    resolve_scenario(parse_scenario_text(text, "test.scn"));
  } catch (const ConfigError& e) {
    return e.what();
  }
  return "";
}

const Scenario::Resolved& entry(const Scenario& sc, const std::string& key) {
  for (const auto& e : sc.resolved)
    if (e.key == key) return e;
  FAIL("missing key " << key);
  return sc.resolved.front();
}

}  // namespace

TEST_CASE("parser diagnostics carry file and line") {
  CHECK(message_of("m_q = 2\nbogus = 1\n").find("test.scn:2") != std::string::npos);
  CHECK(message_of("m_q = 2\nbogus = 1\n").find("unknown key 'bogus'") != std::string::npos);
  CHECK(message_of("m_q 2\n").find("test.scn:1") != std::string::npos);
  CHECK(message_of("k = 1\n\nk = 2\n").find("duplicate key 'k'") != std::string::npos);
  CHECK(message_of("# c\nKqq = abc\n").find("test.scn:2: key 'Kqq'") != std::string::npos);
  CHECK(message_of("sector = semi\n").find("key 'sector'") != std::string::npos);
  CHECK(message_of("m_q = -1\n").find("m_q must be > 0") != std::string::npos);
  CHECK(message_of("Kqq = 1\nKxx = 1\nKqx = 2\n").find("positive definite") != std::string::npos);
  CHECK(message_of("samples_per_period = 10\n").find("multiple of 4") != std::string::npos);
  CHECK(message_of("t_final = 0\n").find("t_final") != std::string::npos);
  CHECK(message_of("m_q = 1\nmass_ratio = 2\n").find("mass_ratio") != std::string::npos);
  CHECK(message_of("rel_tol = 0\n").find("rel_tol") != std::string::npos);
}

TEST_CASE("comments, blanks and whitespace") {
  const auto t = parse_scenario_text("  # header\n\nm_q=3   # trailing\n\tk =  0.5\r\n", "x");
  REQUIRE(t.entries.size() == 2);
  CHECK(t.entries.at("m_q").value == "3");
  CHECK(t.entries.at("m_q").line == 3);
  CHECK(t.entries.at("k").value == "0.5");
}

TEST_CASE("defaults are the equal-mass hybrid caption state") {
  const Scenario sc = resolve_scenario(parse_scenario_text("", "empty"));
  CHECK(sc.params.m_q() == 2.0);
  CHECK(sc.params.m_x() == 2.0);
  CHECK(sc.params.sector() == SectorKind::Hybrid);
  CHECK(sc.initial.K == SymMat2::identity());
  CHECK(sc.initial.L == SymMat2::diag(0.0, 0.5));
  CHECK(sc.t_final_periods == 2.0);
  CHECK(sc.samples_per_period == 64);
  CHECK(sc.t_final() == Approx(4.0 * 3.141592653589793));
  CHECK(entry(sc, "Lxx").source == "derived");
  CHECK(entry(sc, "m_q").source == "default");
  // every key is echoed
  for (const auto& k : scenario_keys()) {
    if (k == "mass_ratio" || k == "mu") continue;
    CHECK_NOTHROW(entry(sc, k));
  }
}

TEST_CASE("quantum default starts with L = 0") {
  const Scenario sc = resolve_scenario(parse_scenario_text("sector = quantum\n", "q"));
  CHECK(sc.initial.L == SymMat2{});
}

TEST_CASE("oscillator-length units") {
  // mu = 1, k = 4 -> omega = 2, x0^2 = 1/2
  const Scenario sc =
      resolve_scenario(parse_scenario_text("k = 4\nKqq = 2\nLxx = 1\nalpha_q = 1\nbeta_x = 1\n", "u"));
  CHECK(sc.params.oscillator_length() == Approx(std::sqrt(0.5)));
  CHECK(sc.initial.K.qq == Approx(4.0));
  CHECK(sc.initial.K.xx == Approx(2.0));
  CHECK(sc.initial.L.xx == Approx(2.0));
  CHECK(sc.initial.alpha.q == Approx(std::sqrt(0.5)));
  CHECK(sc.initial.beta.x == Approx(1.0 / std::sqrt(0.5)));
}

TEST_CASE("mass_ratio keeps the reduced mass") {
  const Scenario sc = resolve_scenario(parse_scenario_text("mass_ratio = 20\n", "r"));
  CHECK(sc.params.m_q() == Approx(1.05));
  CHECK(sc.params.m_x() == Approx(21.0));
  CHECK(sc.params.reduced_mass() == Approx(1.0));
  CHECK(entry(sc, "m_x").source == "derived");
}

TEST_CASE("momentum-variance matching reading of the unequal-mass captions") {
  const Scenario lit = resolve_scenario(load_scenario_text("fig5a"));
  ScenarioText t = load_scenario_text("fig5a");
  t.entries.erase("Lxx");
  set_scenario_value(t, "match_momentum_variance", "true");
  const Scenario matched = resolve_scenario(t);
  // for K = I both readings give the same L
  CHECK(matched.initial.L.xx == Approx(lit.initial.L.xx));

  const Scenario aniso = resolve_scenario(
      parse_scenario_text("Kqq = 4\nKxx = 1\nmatch_momentum_variance = true\n", "a"));
  // classical Var(p_x) = L_xx^2 Z_xx equals hbar^2 K_qq / 4
  CHECK(aniso.initial.L.xx * aniso.initial.L.xx / aniso.initial.K.xx ==
        Approx(aniso.initial.K.qq / 4.0));
  CHECK(message_of("Lxx = 1\nmatch_momentum_variance = true\n").find("Lxx") != std::string::npos);
}

TEST_CASE("built-ins resolve and encode the captions") {
  CHECK(builtin_scenarios().size() == 7);
  for (const auto& b : builtin_scenarios()) CHECK_NOTHROW(resolve_scenario(load_scenario_text(b.name)));
  const Scenario f5a = resolve_scenario(load_scenario_text("fig5a"));
  CHECK(f5a.params.m_x() == Approx(20.0 * f5a.params.m_q()));
  CHECK(f5a.params.reduced_mass() == Approx(1.0));
  const Scenario f5b = resolve_scenario(load_scenario_text("fig5b"));
  CHECK(f5b.params.m_q() == Approx(20.0 * f5b.params.m_x()));
  const Scenario f6 = resolve_scenario(load_scenario_text("fig6"));
  CHECK(f6.initial.K == 100.0 * SymMat2::identity());
  CHECK(f6.initial.L.xx == 50.0);
  CHECK(resolve_scenario(load_scenario_text("fig2-quantum")).params.sector() == SectorKind::Quantum);
  CHECK_THROWS_AS(load_scenario_text("/nonexistent/file.scn"), ConfigError);
}

TEST_CASE("overrides") {
  ScenarioText t = load_scenario_text("fig4");
  set_scenario_value(t, "k", "0.5");
  CHECK(resolve_scenario(t).params.k() == 0.5);
  CHECK(t.entries.at("k").line == 0);
  CHECK_THROWS_AS(set_scenario_value(t, "spring", "1"), ConfigError);

  // mass_ratio replaces explicit masses, and back
  set_scenario_value(t, "mass_ratio", "20");
  const auto heavy_x = resolve_scenario(t).params;
  CHECK(heavy_x.m_x() / heavy_x.m_q() == Approx(20.0));
  CHECK(heavy_x.reduced_mass() == Approx(1.0));
  set_scenario_value(t, "m_q", "3");
  CHECK(t.entries.count("mass_ratio") == 0);
  CHECK(resolve_scenario(t).params.m_q() == 3.0);
}
