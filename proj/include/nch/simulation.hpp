#pragma once

#include <functional>
#include <stdexcept>
#include <vector>

#include "nch/config.hpp"
#include "nch/diagnostics.hpp"
#include "nch/mesh.hpp"
#include "nch/scheme.hpp"

namespace nch {

struct SimulationResult {
  State final_state;
  std::vector<DiagnosticsRecord> records;
};

/// Called with (step index, state) for the initial state and after every
/// accepted step.
using StepObserver = std::function<void(int, const State&)>;

/// Wraps a solver failure with the step at which it happened and the last
/// accepted state.
class SimulationFailed : public std::runtime_error {
 public:
  SimulationFailed(int step, State last_good, const std::string& what);

  int step() const noexcept { return step_; }
  const State& last_good() const noexcept { return last_good_; }

 private:
  int step_;
  State last_good_;
};

/// Runs num_steps() uniform steps, writing CSV/VTK output as configured.
SimulationResult run_simulation(const RunConfig& cfg, const StepObserver& observer = {});

}  // namespace nch
