#pragma once

#include "nch/fem.hpp"
#include "nch/mesh.hpp"
#include "nch/scheme.hpp"

namespace nch {

struct DiagnosticsRecord {
  int step = 0;
  double time = 0.0;
  double mass = 0.0;
  double energy = 0.0;
  double entropy = 0.0;
  /// Discrete entropy production of the step that produced this state.
  double production = 0.0;
  /// energy(this) - energy(previous); the measured numerical dissipation
  /// times tau.
  double energy_increment = 0.0;
  double theta_min = 0.0;
  double theta_max = 0.0;
  int newton_iterations = 0;
  double final_residual = 0.0;

  bool operator==(const DiagnosticsRecord&) const = default;
};

double total_mass(const Mesh& mesh, const QuadRule& quad, const State& s);
double total_internal_energy(const Mesh& mesh, const QuadRule& quad, const State& s,
                             const PotentialParams& p);
double total_entropy(const Mesh& mesh, const QuadRule& quad, const State& s,
                     const PotentialParams& p);

/// Discrete entropy production of the step x_old -> x_new, integrating the
/// Onsager quadratic form v^T L v with
///   v1 = grad theta' / (theta' theta_old),
///   v2 = mu_old grad theta' / (theta' theta_old) - grad mu' / theta'.
double entropy_production(const Mesh& mesh, const QuadRule& quad, const State& x_new,
                          const State& x_old, const OnsagerCoeffs& c);

/// Same quantity assembled as three separate scalar products
/// <K v1, v1> - 2 <C v2, v1> + <M v2, v2>.
double entropy_production_expanded(const Mesh& mesh, const QuadRule& quad, const State& x_new,
                                   const State& x_old, const OnsagerCoeffs& c);

/// Integral of |v1|^2 + |v2|^2; production is bounded below by
/// lambda_0 times this value.
double production_vector_norm(const Mesh& mesh, const QuadRule& quad, const State& x_new,
                              const State& x_old);

double theta_min(const State& s);
double theta_max(const State& s);

/// Record for the initial state (production and increment are zero).
DiagnosticsRecord initial_record(const Mesh& mesh, const SchemeConfig& cfg, const State& s0);

DiagnosticsRecord record_step(const DiagnosticsRecord& prev, const Mesh& mesh,
                              const SchemeConfig& cfg, const State& x_new, const State& x_old,
                              const StepStats& stats);

}  // namespace nch
