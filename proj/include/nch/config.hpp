#pragma once

#include <optional>
#include <string>

#include "nch/scheme.hpp"

namespace nch {

struct InitialDataConfig {
  /// "convergence", "illustration" or "custom".
  std::string kind = "convergence";
  Vec2 center{0.0, 0.0};
  /// Expressions in x, y for the custom kind.
  std::string phi = "0.6";
  std::string theta = "4";
  /// Expression, or "equilibrium" for mu = df/dphi(phi, theta).
  std::string mu = "0";
};

struct OutputConfig {
  std::string csv;      // empty: no CSV
  std::string vtk_dir;  // empty: no snapshots
  int snapshot_stride = 100;
};

/// Refinement range for the self-convergence studies. Space: n = 2^k for
/// k in [k_min, k_max]. Time: tau = 2^-k * tau_base.
struct StudyConfig {
  int k_min = 4;
  int k_max = 6;
  double tau_base = 0.1;
};

struct RunConfig {
  int mesh_n = 32;
  double tau = 1e-3;
  double t_final = 0.2;
  PotentialParams potential{};
  OnsagerCoeffs onsager{};
  double newton_tol = 1e-12;
  int newton_max_iter = 25;
  int quad_degree = 4;
  InitialDataConfig initial_data{};
  OutputConfig output{};
  StudyConfig study{};

  /// Number of uniform steps; throws if t_final / tau is not an integer.
  int num_steps() const;
  void validate() const;
  SchemeConfig scheme() const;
  InitialData initial() const;
};

/// Parses a JSON config. Unknown keys are rejected; missing keys keep their
/// defaults. Throws std::invalid_argument with the offending key path.
RunConfig parse_run_config(const std::string& json_text);
RunConfig load_run_config(const std::string& path);
std::string to_json(const RunConfig& cfg);

}  // namespace nch
