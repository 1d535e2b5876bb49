#pragma once

#include <functional>
#include <vector>

#include "nch/fem.hpp"
#include "nch/mesh.hpp"
#include "nch/sparse.hpp"
#include "nch/thermo.hpp"

namespace nch {

/// Unknowns at one time level. The three fields share one P1 space.
struct State {
  NodalField phi;
  NodalField mu;
  NodalField theta;
  double time = 0.0;

  bool operator==(const State&) const = default;
};

struct SchemeConfig {
  double tau = 1e-3;
  double newton_tol = 1e-12;
  int newton_max_iter = 25;
  /// Step-halvings allowed when a Newton update makes a nodal temperature
  /// nonpositive.
  int max_halvings = 10;
  PotentialParams potential{};
  OnsagerCoeffs onsager{};
  QuadRule quad = reference_quadrature(4);

  void validate() const;
};

struct StepStats {
  int newton_iterations = 0;
  double final_residual_norm = 0.0;
  double theta_min = 0.0;
  double theta_max = 0.0;
  /// Residual infinity norm before each Newton update and at acceptance.
  std::vector<double> residual_history;
};

struct StepResult {
  State state;
  StepStats stats;
};

/// Layout of the 3N unknown vector: [phi | mu | theta], each block in node
/// order.
enum Field : int { kPhi = 0, kMu = 1, kTheta = 2 };
constexpr int kNumFields = 3;

std::vector<double> pack(const State& s);
void unpack(std::span<const double> x, State& s);

/// Residual of one step of the entropy-based scheme (all terms on one side).
/// Explicit ("starred") quantities are taken from x_old. Throws
/// NonpositiveTemperature if the new temperature is not positive at some
/// quadrature point.
std::vector<double> residual(const Mesh& mesh, const State& x_new, const State& x_old,
                             const SchemeConfig& cfg);

/// Exact derivative of residual() with respect to the new nodal unknowns.
SparseMatrix jacobian(const Mesh& mesh, const State& x_new, const State& x_old,
                      const SchemeConfig& cfg);

/// Newton solve of one time step starting from x_old.
StepResult solve_timestep(const Mesh& mesh, const State& x_old, const SchemeConfig& cfg);

/// Smooth step (min(max(tanh z, -1), 1) + 1) / 2 onto [0, 1].
double trans01(double z);

/// Quench temperature profile 6.0 - 5.9 trans01((sqrt(0.3 r^2) - 0.2)/sqrt(0.001))
/// with r measured from `center`. With center (0, 0) the profile is used
/// verbatim on [0, 1]^2 and is not periodic across the seam.
double quench_temperature(double x, double y, const Vec2& center = {0.0, 0.0});

struct InitialData {
  enum class Kind { kConvergence, kIllustration, kCustom };

  Kind kind = Kind::kConvergence;
  /// Center of the hot spot of the quench temperature profile.
  Vec2 center{0.0, 0.0};
  /// Custom kind only. Unset mu means mu = 0.
  std::function<double(double, double)> phi;
  std::function<double(double, double)> theta;
  std::function<double(double, double)> mu;
  /// Replace mu by the nodal values of df/dphi(phi, theta), which makes
  /// spatially constant states stationary.
  bool mu_equilibrium = false;
};

/// Nodal interpolation of the chosen initial data:
///   convergence:  phi = 0.6, theta = quench_temperature, mu = 0
///   illustration: phi = 0.5 + 0.01 sin(211 pi x) sin(211 pi y), same theta
State initial_state(const Mesh& mesh, const SchemeConfig& cfg, const InitialData& data);

}  // namespace nch
