// hybridsim: run, sweep and verify Gaussian hybrid-oscillator scenarios.

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hybrid/errors.hpp"
#include "hybrid/runner.hpp"
#include "hybrid/scenario.hpp"
#include "hybrid/verify.hpp"

namespace {

enum Exit { kOk = 0, kEngine = 1, kConfig = 2, kVerify = 3 };

void apply_overrides(hybrid::ScenarioText& text, const std::vector<std::string>& sets) {
  for (const auto& s : sets) {
    const auto eq = s.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == s.size())
      throw hybrid::ConfigError("--set expects key=value, got '" + s + "'");
    hybrid::set_scenario_value(text, s.substr(0, eq), s.substr(eq + 1));
  }
}

int cmd_run(const std::string& scenario, const std::string& out, const std::string& format,
            const std::vector<std::string>& sets) {
  auto text = hybrid::load_scenario_text(scenario);
  apply_overrides(text, sets);
  const auto fmt = hybrid::parse_format(format);
  const auto sc = hybrid::resolve_scenario(text);
  hybrid::RunResult r;
  try {
    r = hybrid::simulate(sc);
  } catch (const hybrid::EngineError& e) {
    throw hybrid::EngineError("scenario " + sc.name + ": " + e.what());
  }
  hybrid::write_run(r, out, fmt);
  const auto& e0 = r.samples.front().energy;
  std::printf("%s: %zu samples to t = %.6g, E_total = %.10g, exchange fraction = %.4g -> %s\n",
              sc.name.c_str(), r.samples.size(), r.samples.back().t, e0.E_total,
              r.exchange_fraction, out.c_str());
  return kOk;
}

int cmd_sweep(const std::string& scenario, const std::string& vary, const std::string& out,
              const std::string& format, const std::vector<std::string>& sets) {
  auto text = hybrid::load_scenario_text(scenario);
  apply_overrides(text, sets);
  const auto axis = hybrid::parse_vary(vary);
  const auto pts = hybrid::run_sweep(text, axis, out, hybrid::parse_format(format));
  int failed = 0;
  for (const auto& p : pts) {
    if (p.ok) {
      std::printf("%s = %-12s exchange fraction %.6g (E_total %.6g)\n", axis.key.c_str(),
                  p.value.c_str(), p.exchange_fraction, p.E_total);
    } else {
      ++failed;
      std::printf("%s = %-12s FAILED: %s\n", axis.key.c_str(), p.value.c_str(), p.error.c_str());
    }
  }
  return failed ? kEngine : kOk;
}

int cmd_verify(const std::string& suite, const hybrid::PdeStudyConfig& pde) {
  const auto results = hybrid::run_suite(hybrid::parse_suite(suite), pde);
  int failed = 0;
  for (const auto& r : results) {
    if (!r.pass) ++failed;
    const std::string tag = r.criterion ? "[" + std::to_string(r.criterion) + "]" : "[-]";
    std::printf("%s %-5s %s: %s\n", r.pass ? "PASS" : "FAIL", tag.c_str(), r.name.c_str(),
                r.detail.c_str());
  }
  std::printf("%zu checks, %d failed\n", results.size(), failed);
  return failed ? kVerify : kOk;
}

int cmd_scenarios(const std::string& show) {
  for (const auto& b : hybrid::builtin_scenarios()) {
    if (!show.empty()) {
      if (b.name == show) {
        std::printf("# %s: %s\n%s", b.name.c_str(), b.description.c_str(), b.text.c_str());
        return kOk;
      }
      continue;
    }
    std::printf("%-13s %s\n", b.name.c_str(), b.description.c_str());
  }
  if (!show.empty()) throw hybrid::ConfigError("no built-in scenario named '" + show + "'");
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gaussian-ensemble simulator for the hybrid classical-quantum oscillator"};
  app.require_subcommand(1);

  std::string scenario, out, format = "csv", vary, suite = "all", show;
  std::vector<std::string> sets;
  hybrid::PdeStudyConfig pde;

  auto* run = app.add_subcommand("run", "integrate one scenario and write its tables");
  run->add_option("scenario", scenario, "built-in name or scenario file")->required();
  run->add_option("--out", out, "output directory")->required();
  run->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  run->add_option("--set", sets, "override a scenario key (key=value), repeatable");

  auto* sweep = app.add_subcommand("sweep", "run a scenario over a grid of one key");
  sweep->add_option("scenario", scenario, "built-in name or scenario file")->required();
  sweep->add_option("--vary", vary, "key=start:stop:n or key=v1,v2,...")->required();
  sweep->add_option("--out", out, "output directory")->required();
  sweep->add_option("--format", format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  sweep->add_option("--set", sets, "override a scenario key (key=value), repeatable");

  auto* verify = app.add_subcommand("verify", "run the verification suites");
  verify->add_option("--suite", suite, "oracles|pde|conservation|properties|determinism|all");
  verify->add_option("--grid-points", pde.points, "coarse grid points per axis (PDE suite)");
  verify->add_option("--grid-half-width", pde.half_width, "grid half-width in x0 (PDE suite)");
  verify->add_option("--grid-steps", pde.steps, "coarse time steps over T/8 (PDE suite)");

  auto* list = app.add_subcommand("scenarios", "list built-in scenarios");
  list->add_option("--show", show, "print the scenario file of one built-in");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kConfig;
  }

  try {
    if (*run) return cmd_run(scenario, out, format, sets);
    if (*sweep) return cmd_sweep(scenario, vary, out, format, sets);
    if (*verify) return cmd_verify(suite, pde);
    if (*list) return cmd_scenarios(show);
  } catch (const hybrid::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kConfig;
  } catch (const hybrid::EngineError& e) {
    std::fprintf(stderr, "engine error: %s\n", e.what());
    return kEngine;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kEngine;
  }
  return kOk;
}
