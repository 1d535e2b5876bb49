// nch: command-line driver for the non-isothermal Cahn-Hilliard simulator.
//
//   nch run <config.json> [--csv PATH] [--vtk-dir DIR]
//   nch converge-space <config.json> [--json PATH]
//   nch converge-time <config.json> [--json PATH]
//   nch check <config.json>
//
// Exit code 0 on success. Failures print a JSON object {"error": {...}} to
// stderr and exit nonzero.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "nch/config.hpp"
#include "nch/convergence.hpp"
#include "nch/errors.hpp"
#include "nch/io.hpp"
#include "nch/simulation.hpp"

namespace {

using nlohmann::json;

int report_error(const std::string& type, const std::string& message, json extra = json::object()) {
  json err = {{"type", type}, {"message", message}};
  for (auto& [k, v] : extra.items()) err[k] = v;
  std::cerr << json{{"error", err}}.dump() << std::endl;
  return 2;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
  out << text << '\n';
}

int cmd_run(const std::string& config, const std::string& csv, const std::string& vtk) {
  nch::RunConfig cfg = nch::load_run_config(config);
  if (!csv.empty()) cfg.output.csv = csv;
  if (!vtk.empty()) cfg.output.vtk_dir = vtk;
  const nch::SimulationResult res = nch::run_simulation(cfg);
  const auto& first = res.records.front();
  const auto& last = res.records.back();
  int max_newton = 0;
  for (const auto& r : res.records) max_newton = std::max(max_newton, r.newton_iterations);
  json summary = {{"steps", last.step},
                  {"time", last.time},
                  {"mass_drift", last.mass - first.mass},
                  {"energy_change", last.energy - first.energy},
                  {"entropy_change", last.entropy - first.entropy},
                  {"theta_min", last.theta_min},
                  {"theta_max", last.theta_max},
                  {"max_newton_iterations", max_newton}};
  std::cout << summary.dump(2) << std::endl;
  return 0;
}

int cmd_converge(const std::string& config, const std::string& json_path, bool space) {
  const nch::RunConfig cfg = nch::load_run_config(config);
  const nch::ConvergenceTable table =
      space ? nch::self_convergence_space(cfg) : nch::self_convergence_time(cfg);
  std::cout << nch::format_table(table);
  if (!json_path.empty()) write_text(json_path, nch::table_to_json(table));
  return 0;
}

int cmd_check(const std::string& config) {
  nch::RunConfig cfg = nch::load_run_config(config);
  cfg.output = {};
  const nch::SimulationResult res = nch::run_simulation(cfg);
  const auto& rec = res.records;

  double mass_drift = 0.0, min_entropy_step = INFINITY, max_energy_step = -INFINITY;
  double identity_gap = 0.0, min_theta = INFINITY;
  for (std::size_t k = 1; k < rec.size(); ++k) {
    mass_drift = std::max(mass_drift, std::abs(rec[k].mass - rec[0].mass));
    min_entropy_step = std::min(min_entropy_step, rec[k].entropy - rec[k - 1].entropy);
    max_energy_step = std::max(max_energy_step, rec[k].energy - rec[k - 1].energy);
    identity_gap = std::max(identity_gap,
                            std::abs(rec[k].production - (rec[k].entropy - rec[k - 1].entropy) / cfg.tau));
    min_theta = std::min(min_theta, rec[k].theta_min);
  }
  struct Check {
    const char* name;
    bool pass;
    double value;
    double threshold;
  };
  const Check checks[] = {
      {"mass conservation |m_k - m_0|", mass_drift <= 1e-10, mass_drift, 1e-10},
      {"entropy production S_k+1 - S_k", min_entropy_step >= -1e-11, min_entropy_step, -1e-11},
      {"energy dissipation E_k+1 - E_k", max_energy_step <= 1e-11, max_energy_step, 1e-11},
      {"discrete identity |D_h - dS/tau|", identity_gap <= 1e-10, identity_gap, 1e-10},
      {"temperature positivity min theta", min_theta > 0.0, min_theta, 0.0},
  };
  bool all = true;
  for (const Check& c : checks) {
    std::printf("%s  %-36s value=%.3e threshold=%.1e\n", c.pass ? "PASS" : "FAIL", c.name, c.value,
                c.threshold);
    all = all && c.pass;
  }
  return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Structure-preserving finite element solver for the non-isothermal Cahn-Hilliard system"};
  app.require_subcommand(1);

  std::string config, csv, vtk, json_path;
  auto* run = app.add_subcommand("run", "run a simulation and write diagnostics");
  run->add_option("config", config, "JSON run configuration")->required()->check(CLI::ExistingFile);
  run->add_option("--csv", csv, "diagnostics CSV path (overrides config)");
  run->add_option("--vtk-dir", vtk, "VTK snapshot directory (overrides config)");

  auto* space = app.add_subcommand("converge-space", "spatial self-convergence study");
  space->add_option("config", config, "JSON run configuration")->required()->check(CLI::ExistingFile);
  space->add_option("--json", json_path, "write the table as JSON");

  auto* time = app.add_subcommand("converge-time", "temporal self-convergence study");
  time->add_option("config", config, "JSON run configuration")->required()->check(CLI::ExistingFile);
  time->add_option("--json", json_path, "write the table as JSON");

  auto* check = app.add_subcommand("check", "run and verify the discrete structural identities");
  check->add_option("config", config, "JSON run configuration")->required()->check(CLI::ExistingFile);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  try {
    if (*run) return cmd_run(config, csv, vtk);
    if (*space) return cmd_converge(config, json_path, true);
    if (*time) return cmd_converge(config, json_path, false);
    if (*check) return cmd_check(config);
  } catch (const nch::SimulationFailed& e) {
    return report_error("SimulationFailed", e.what(), {{"step", e.step()}});
  } catch (const std::invalid_argument& e) {
    return report_error("InvalidConfig", e.what());
  } catch (const std::exception& e) {
    return report_error("Error", e.what());
  }
  return 0;
}
