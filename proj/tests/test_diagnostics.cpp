#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "nch/diagnostics.hpp"
#include "nch/errors.hpp"
#include "support.hpp"

using namespace nch;
using nch::testing::constant_state;
using nch::testing::random_state;

namespace {

SchemeConfig config() {
  SchemeConfig c;
  c.tau = 1e-3;
  return c;
}

}  // namespace

TEST(Diagnostics, MassOfConstantAndIllustrationData) {
  const Mesh m(8);
  const SchemeConfig cfg = config();
  EXPECT_NEAR(total_mass(m, cfg.quad, constant_state(m, 0.6, 3.0, cfg.potential)), 0.6, 1e-14);

  InitialData d;
  d.kind = InitialData::Kind::kIllustration;
  const Mesh m32(32);
  const State s = initial_state(m32, cfg, d);
  // Oracle: P1 mass is the nodal sum times the lumped weight 1/n^2.
  double nodal = 0.0;
  for (int j = 0; j < 32; ++j)
    for (int i = 0; i < 32; ++i)
      nodal += std::sin(211 * std::numbers::pi * i / 32.0) * std::sin(211 * std::numbers::pi * j / 32.0);
  EXPECT_NEAR(total_mass(m32, cfg.quad, s), 0.5 + 0.01 * nodal / 1024.0, 1e-14);
  EXPECT_NEAR(total_mass(m32, cfg.quad, s), 0.5, 1e-4);
}

TEST(Diagnostics, EnergyAndEntropyOfConstantState) {
  const Mesh m(4);
  const SchemeConfig cfg = config();
  State s = constant_state(m, 0.5, 3.0, cfg.potential);
  EXPECT_NEAR(total_internal_energy(m, cfg.quad, s, cfg.potential), 6.00125, 1e-12);
  EXPECT_NEAR(total_entropy(m, cfg.quad, s, cfg.potential), 2.0, 1e-12);

  State hot = constant_state(m, 0.5, 4.0, cfg.potential);
  State cold = constant_state(m, 0.5, 2.0, cfg.potential);
  EXPECT_NEAR(total_internal_energy(m, cfg.quad, hot, cfg.potential) -
                  total_internal_energy(m, cfg.quad, cold, cfg.potential),
              2.0, 1e-12);
  EXPECT_GT(total_entropy(m, cfg.quad, hot, cfg.potential), total_entropy(m, cfg.quad, cold, cfg.potential));
}

TEST(Diagnostics, EntropyIncludesGradientPenalty) {
  const Mesh m(16);
  const SchemeConfig cfg = config();
  State s = constant_state(m, 0.5, 3.0, cfg.potential);
  const double flat = total_entropy(m, cfg.quad, s, cfg.potential);
  s.phi = interpolate(m, [](double x, double) { return 0.5 + 0.1 * std::sin(2 * std::numbers::pi * x); });
  // The bulk term changes too; compare against the pointwise densities.
  const double expected = integrate(m, cfg.quad, std::vector<const NodalField*>{&s.phi},
                                    [&](const QuadPoint&, std::span<const FieldSample> f) {
                                      return thermo::entropy_density(f[0].value, f[0].grad, 3.0, cfg.potential);
                                    });
  EXPECT_NEAR(total_entropy(m, cfg.quad, s, cfg.potential), expected, 1e-13);
  EXPECT_LT(total_entropy(m, cfg.quad, s, cfg.potential), flat);
}

TEST(Diagnostics, RejectsNonpositiveTemperature) {
  const Mesh m(4);
  const SchemeConfig cfg = config();
  State s = constant_state(m, 0.5, 3.0, cfg.potential);
  s.theta[2] = -5.0;
  EXPECT_THROW(total_entropy(m, cfg.quad, s, cfg.potential), NonpositiveTemperature);
  EXPECT_THROW(total_internal_energy(m, cfg.quad, s, cfg.potential), NonpositiveTemperature);
  EXPECT_THROW(entropy_production(m, cfg.quad, s, constant_state(m, 0.5, 3.0, cfg.potential), cfg.onsager),
               NonpositiveTemperature);
}

TEST(Production, ZeroForConstantStates) {
  const Mesh m(6);
  const SchemeConfig cfg = config();
  const State a = constant_state(m, 0.5, 3.0, cfg.potential);
  const State b = constant_state(m, 0.4, 2.0, cfg.potential);
  EXPECT_EQ(entropy_production(m, cfg.quad, b, a, cfg.onsager), 0.0);
  EXPECT_EQ(entropy_production_expanded(m, cfg.quad, b, a, cfg.onsager), 0.0);
}

TEST(Production, TwoAssemblyPathsAgree) {
  std::mt19937_64 rng(21);
  const Mesh m(6);
  for (double c : {0.0, 1e-4, 1e-2}) {
    OnsagerCoeffs on{1e-2, 5e-2, c};
    const State a = random_state(m, rng), b = random_state(m, rng);
    const double q = entropy_production(m, reference_quadrature(), b, a, on);
    const double e = entropy_production_expanded(m, reference_quadrature(), b, a, on);
    EXPECT_NEAR(q, e, 1e-13 * std::max(1.0, std::abs(q)));
  }
}

TEST(Production, BoundedBelowBySmallestEigenvalue) {
  std::mt19937_64 rng(22);
  const Mesh m(6);
  for (const OnsagerCoeffs& on : {OnsagerCoeffs{1e-2, 5e-2, 1e-4}, OnsagerCoeffs{1.0, 5e-2, 1e-4},
                                  OnsagerCoeffs{1e-2, 5e-2, 2e-2}}) {
    const double l0 = thermo::validate_onsager(on);
    for (int t = 0; t < 5; ++t) {
      const State a = random_state(m, rng), b = random_state(m, rng);
      const double d = entropy_production(m, reference_quadrature(), b, a, on);
      const double v = production_vector_norm(m, reference_quadrature(), b, a);
      EXPECT_GE(d - l0 * v, -1e-12);
    }
  }
}

TEST(Production, NonnegativeWithoutCrossCoupling) {
  std::mt19937_64 rng(23);
  const Mesh m(5);
  const OnsagerCoeffs on{1e-2, 5e-2, 0.0};
  for (int t = 0; t < 10; ++t) {
    const State a = random_state(m, rng), b = random_state(m, rng);
    EXPECT_GE(entropy_production(m, reference_quadrature(), b, a, on), 0.0);
  }
}

TEST(Records, InitialAndStepRecords) {
  const Mesh m(8);
  const SchemeConfig cfg = config();
  InitialData d;
  d.center = {0.5, 0.5};
  const State s0 = initial_state(m, cfg, d);
  const DiagnosticsRecord r0 = initial_record(m, cfg, s0);
  EXPECT_EQ(r0.step, 0);
  EXPECT_EQ(r0.production, 0.0);
  EXPECT_EQ(r0.energy_increment, 0.0);
  EXPECT_EQ(r0.theta_min, theta_min(s0));
  EXPECT_EQ(r0.theta_max, theta_max(s0));

  const StepResult step = solve_timestep(m, s0, cfg);
  const DiagnosticsRecord r1 = record_step(r0, m, cfg, step.state, s0, step.stats);
  EXPECT_EQ(r1.step, 1);
  EXPECT_DOUBLE_EQ(r1.time, cfg.tau);
  EXPECT_EQ(r1.newton_iterations, step.stats.newton_iterations);
  EXPECT_EQ(r1.final_residual, step.stats.final_residual_norm);
  EXPECT_EQ(r1.energy_increment, r1.energy - r0.energy);
  EXPECT_NEAR(r1.mass, r0.mass, 1e-12);
  EXPECT_GE(r1.entropy - r0.entropy, -10 * cfg.newton_tol);
  EXPECT_LE(r1.energy - r0.energy, 10 * cfg.newton_tol);
  EXPECT_NEAR(r1.production, (r1.entropy - r0.entropy) / cfg.tau, 10 * cfg.newton_tol);
}
