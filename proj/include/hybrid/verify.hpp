#pragma once

#include <string>
#include <vector>

#include "hybrid/pde.hpp"

namespace hybrid {

struct CheckResult {
  int criterion = 0;  // acceptance criterion 1..10; 0 for supplementary checks
  std::string name;
  bool pass = false;
  std::string detail;  // measured values against their limits
};

enum class Suite { Oracles, Pde, Conservation, Properties, Determinism, All };

Suite parse_suite(const std::string& name);  // throws ConfigError
std::string_view to_string(Suite s);

/// Grid settings of the PDE cross-validation: the coarse run uses `points`
/// per axis and T/8 split into `steps` steps; the refined run doubles both.
struct PdeStudyConfig {
  std::size_t points = 256;
  double half_width = 10.0;  // oscillator lengths
  int steps = 16;
};

/// Runs a suite. Checks never throw: an engine error inside a check is
/// reported as a failure with the error text.
std::vector<CheckResult> run_suite(Suite suite, const PdeStudyConfig& pde = {});

}  // namespace hybrid
