#include "nch/simulation.hpp"

#include <cstdio>
#include <filesystem>

#include "nch/io.hpp"

namespace nch {

SimulationFailed::SimulationFailed(int step, State last_good, const std::string& what)
    : std::runtime_error("step " + std::to_string(step) + ": " + what),
      step_(step),
      last_good_(std::move(last_good)) {}

namespace {

std::string snapshot_path(const std::string& dir, int step) {
  char name[32];
  std::snprintf(name, sizeof name, "state_%06d.vtk", step);
  return (std::filesystem::path(dir) / name).string();
}

}  // namespace

SimulationResult run_simulation(const RunConfig& cfg, const StepObserver& observer) {
  cfg.validate();
  const int steps = cfg.num_steps();
  const Mesh mesh(cfg.mesh_n);
  const SchemeConfig scheme = cfg.scheme();

  SimulationResult result;
  State state = initial_state(mesh, scheme, cfg.initial());
  result.records.reserve(static_cast<std::size_t>(steps) + 1);
  result.records.push_back(initial_record(mesh, scheme, state));

  const bool snapshots = !cfg.output.vtk_dir.empty();
  if (snapshots) {
    std::filesystem::create_directories(cfg.output.vtk_dir);
    write_vtk_snapshot(mesh, state, snapshot_path(cfg.output.vtk_dir, 0));
  }
  if (observer) observer(0, state);

  for (int k = 1; k <= steps; ++k) {
    StepResult step;
    try {
      step = solve_timestep(mesh, state, scheme);
    } catch (const std::exception& e) {
      throw SimulationFailed(k, state, e.what());
    }
    // Uniform grid: time from the step index, not accumulated sums.
    step.state.time = k * cfg.tau;
    result.records.push_back(record_step(result.records.back(), mesh, scheme, step.state, state, step.stats));
    state = std::move(step.state);
    if (snapshots && (k % cfg.output.snapshot_stride == 0 || k == steps))
      write_vtk_snapshot(mesh, state, snapshot_path(cfg.output.vtk_dir, k));
    if (observer) observer(k, state);
  }

  if (!cfg.output.csv.empty()) write_csv(result.records, cfg.output.csv);
  result.final_state = std::move(state);
  return result;
}

}  // namespace nch
