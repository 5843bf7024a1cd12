#pragma once

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "hybrid/dynamics.hpp"

namespace hybrid {

/// Raw `key = value` pairs as read from a scenario file, with the line each
/// came from (0 for values injected on the command line).
struct ScenarioText {
  struct Entry {
    std::string value;
    int line = 0;
  };
  std::string origin;  // file name or built-in name
  std::map<std::string, Entry> entries;
};

/// Parses the flat scenario format: one `key = value` per line, `#` starts a
/// comment, blank lines ignored. Throws ConfigError with line diagnostics on
/// malformed lines, unknown keys and duplicates.
ScenarioText parse_scenario_text(std::string_view text, std::string origin);

/// Replaces (or adds) one key; used by sweeps and --set. Setting mass_ratio
/// or mu drops m_q/m_x from the text and vice versa. Throws ConfigError on an
/// unknown key.
void set_scenario_value(ScenarioText& text, const std::string& key, const std::string& value);

/// Every accepted key in documentation order.
const std::vector<std::string>& scenario_keys();

/// Fully resolved run description. Lengths in the file are in oscillator
/// lengths x0 and times in periods; the fields below are in engine units.
struct Scenario {
  std::string name;
  ModelParams params{2.0, 2.0, 1.0};
  GaussianEnsembleState initial;
  double t_final_periods = 2.0;
  int samples_per_period = 64;
  bool include_classical_motion = false;
  IntegratorConfig integrator;

  struct Resolved {
    std::string key;
    std::string value;
    std::string source;  // "file", "default", "derived"
  };
  std::vector<Resolved> resolved;  // every key with the value actually used

  /// t_final in time units (periods * T; plain time when k == 0).
  double t_final() const;
};

Scenario resolve_scenario(const ScenarioText& text);

struct BuiltinScenario {
  std::string name;
  std::string description;
  std::string text;  // scenario file contents
};

const std::vector<BuiltinScenario>& builtin_scenarios();

/// Resolves `name_or_path` as a built-in name first, then as a file.
ScenarioText load_scenario_text(const std::string& name_or_path);

}  // namespace hybrid
