#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "hybrid/observables.hpp"
#include "hybrid/scenario.hpp"

namespace hybrid {

enum class OutputFormat { Csv, Json };

OutputFormat parse_format(const std::string& name);  // throws ConfigError

/// Observables of one trajectory sample, in output column order.
struct SampleRecord {
  double t = 0.0;
  SymMat2 Z;
  SymMat2 Zp;  // CM/relative frame: qq -> RR, qx -> Rr, xx -> rr
  EnergyReport energy;
  double coupling = 0.0;  // CM/relative cross term of the ensemble Hamiltonian
  Vec2 alpha, beta;
};

struct EllipseRecord {
  double t = 0.0;
  int quarter = 0;  // t = quarter * T/4
  EllipseSpec ellipse;
};

struct RunResult {
  Scenario scenario;
  std::vector<SampleRecord> samples;
  std::vector<EllipseRecord> ellipses;
  double exchange = 0.0;           // max E_R - min E_R
  double exchange_fraction = 0.0;  // exchange / E_total(0)
};

/// Integrates a resolved scenario and derives every output table; no I/O.
RunResult simulate(const Scenario& scenario);

/// Writes trajectory, energy and ellipse tables plus manifest.json into
/// `out_dir` (created if needed). Printed precision defaults to 17
/// significant digits; HYBRIDSIM_PRECISION overrides it.
void write_run(const RunResult& result, const std::filesystem::path& out_dir, OutputFormat format);

/// Parsed `--vary` argument: `key=start:stop:n` or `key=v1,v2,...`.
struct SweepAxis {
  std::string key;
  std::vector<std::string> values;  // already formatted for the scenario
};

SweepAxis parse_vary(const std::string& spec);  // throws ConfigError

struct SweepPoint {
  std::string value;
  std::string directory;
  bool ok = false;
  std::string error;  // engine error text when !ok
  double E_total = 0.0;
  double exchange = 0.0;
  double exchange_fraction = 0.0;
};

/// Runs every sweep point (concurrently) into out_dir/point_NNN and writes
/// out_dir/summary.csv (or .json). Engine errors of individual points are
/// recorded in the summary; ConfigError aborts before anything runs.
std::vector<SweepPoint> run_sweep(const ScenarioText& base, const SweepAxis& axis,
                                  const std::filesystem::path& out_dir, OutputFormat format);

}  // namespace hybrid
