#include <gtest/gtest.h>

#include <cmath>
#include <stdexcept>

#include "nch/errors.hpp"
#include "nch/thermo.hpp"

using namespace nch;
using namespace nch::thermo;

namespace {

const PotentialParams kP{};

// Reference values from symbolic differentiation of the potential with
// a = 0.01, b = 1, d = 1, theta_c = 3:
// phi, theta, f, f_phi, f_theta, f_theta_theta, f_phi_theta, e, s (grad 0).
struct Row {
  double phi, theta, f, fp, ft, ftt, fpt, e, s;
};
constexpr Row kRows[] = {
    {0.5, 3.0, 0.00125, 0, -2, -0.33333333333333331, 0, 6.0012499999999998, 2},
    {0.0, 3.0, 0.0025000000000000001, -0.01, -1.9975000000000001, -0.33333333333333331, -0.01,
     5.9950000000000001, 1.9975000000000001},
    {0.3, 1.1, 3.0041543197501634, 0.00696, -0.99629789113621514, -0.90909090909090906,
     -0.0040000000000000001, 4.1000819999999996, 0.99629789113621514},
    {1.2, 5.0, -4.5382761188299536, 0.055440000000000003, -2.5059256237659908,
     -0.20000000000000001, 0.014, 7.991352, 2.5059256237659908},
    {-0.4, 0.2, 3.3333020402204419, -0.00792, 0.71615020110221006, -5, -0.017999999999999999,
     3.1900719999999998, -0.71615020110221006},
    {0.7, 4.0, -2.1490462898071239, 0.00464, -2.2872820724517808, -0.25, 0.0040000000000000001,
     7.0000819999999999, 2.2872820724517808},
};

double rel(double a, double b) { return std::abs(a - b) / std::max(1.0, std::abs(b)); }

}  // namespace

TEST(Thermo, WorkedPointValues) {
  EXPECT_NEAR(f_value(0.5, 3.0, kP), 0.00125, 1e-12);
  EXPECT_NEAR(f_value(0.0, 3.0, kP), 0.0025, 1e-12);
  EXPECT_NEAR(df_dtheta(0.5, 3.0, kP), -2.0, 1e-12);
  EXPECT_NEAR(d2f_dtheta2(0.3, 2.0, kP), -0.5, 1e-12);
  EXPECT_NEAR(entropy_density(0.5, {0.0, 0.0}, 3.0, kP), 2.0, 1e-12);
  EXPECT_NEAR(internal_energy_density(0.5, 3.0, kP), 6.00125, 1e-12);
}

TEST(Thermo, SymbolicReferenceTable) {
  for (const Row& r : kRows) {
    EXPECT_NEAR(f_value(r.phi, r.theta, kP), r.f, 1e-12) << r.phi << "," << r.theta;
    EXPECT_NEAR(df_dphi(r.phi, r.theta, kP), r.fp, 1e-12);
    EXPECT_NEAR(df_dtheta(r.phi, r.theta, kP), r.ft, 1e-12);
    EXPECT_NEAR(d2f_dtheta2(r.phi, r.theta, kP), r.ftt, 1e-12);
    EXPECT_NEAR(d2f_dphi_dtheta(r.phi, r.theta, kP), r.fpt, 1e-12);
    EXPECT_NEAR(internal_energy_density(r.phi, r.theta, kP), r.e, 1e-12);
    EXPECT_NEAR(entropy_density(r.phi, {0.0, 0.0}, r.theta, kP), r.s, 1e-12);
  }
}

TEST(Thermo, ThermalTermVanishesAtCriticalTemperature) {
  for (double phi = -1.0; phi <= 2.0; phi += 0.125) {
    const double q = 0.0;
    const double poly = kP.a * (2 * std::pow(phi, 4) - 4 * std::pow(phi, 3) + (q + 3) * phi * phi -
                                (q + 1) * phi + 0.25 * (q + 1));
    EXPECT_NEAR(f_value(phi, kP.theta_c, kP), poly, 1e-15);
  }
}

TEST(Thermo, SplitConsistencyAndCurvatureOnGrid) {
  for (int i = 0; i <= 40; ++i)
    for (int j = 0; j <= 59; ++j) {
      const double phi = -0.5 + 0.05 * i;
      const double theta = 0.1 + 0.1 * j;
      EXPECT_LE(std::abs(df_vex_dphi(phi, theta, kP) + df_cav_dphi(phi, theta, kP) - df_dphi(phi, theta, kP)),
                1e-12);
      EXPECT_LE(std::abs(f_vex(phi, theta, kP) + f_cav(phi, theta, kP) -
                         (f_value(phi, theta, kP) - f_value(0.0, theta, kP) + kP.a * 0.25 *
                              ((theta - kP.theta_c) / kP.d + 1))),
                1e-12);
      EXPECT_GE(d2f_vex_dphi2(phi, theta, kP), 0.0);
      EXPECT_LE(d2f_cav_dphi2(phi, theta, kP), 0.0);
      EXPECT_EQ(split_coefficients(phi, phi, theta, kP),
                df_vex_dphi(phi, theta, kP) + df_cav_dphi(phi, theta, kP));
      EXPECT_NEAR(split_coefficients(phi, phi, theta, kP), df_dphi(phi, theta, kP), 1e-12);
    }
}

TEST(Thermo, ConvexCurvatureVanishesAtHalfBelowCritical) {
  for (double theta : {0.5, 2.0, 3.0}) EXPECT_NEAR(d2f_vex_dphi2(0.5, theta, kP), 0.0, 1e-15);
  EXPECT_GT(d2f_vex_dphi2(0.5, 4.0, kP), 0.0);
}

TEST(Thermo, CriticalTemperatureSplit) {
  // c = 0: quartic implicit, linear explicit.
  const double phi = 0.37;
  EXPECT_NEAR(df_vex_dphi(phi, 3.0, kP), kP.a * (8 * phi * phi * phi - 12 * phi * phi + 6 * phi), 1e-15);
  EXPECT_NEAR(df_cav_dphi(0.9, 3.0, kP), -kP.a, 1e-15);
  EXPECT_EQ(d2f_cav_dphi2(phi, 3.0, kP), 0.0);
}

TEST(Thermo, DerivativesMatchFiniteDifferences) {
  const double h = 1e-6;
  for (double phi : {-0.4, 0.1, 0.5, 0.83, 1.3})
    for (double theta : {0.3, 1.0, 2.9, 3.1, 5.5}) {
      auto f = [&](double p, double t) { return f_value(p, t, kP); };
      const double fp = (f(phi + h, theta) - f(phi - h, theta)) / (2 * h);
      const double ft = (f(phi, theta + h) - f(phi, theta - h)) / (2 * h);
      EXPECT_LE(rel(df_dphi(phi, theta, kP), fp), 1e-6);
      EXPECT_LE(rel(df_dtheta(phi, theta, kP), ft), 1e-6);
      const double ftt =
          (df_dtheta(phi, theta + h, kP) - df_dtheta(phi, theta - h, kP)) / (2 * h);
      const double fpt = (df_dtheta(phi + h, theta, kP) - df_dtheta(phi - h, theta, kP)) / (2 * h);
      EXPECT_LE(rel(d2f_dtheta2(phi, theta, kP), ftt), 1e-6);
      EXPECT_LE(rel(d2f_dphi_dtheta(phi, theta, kP), fpt), 1e-6);
      const double vex = (f_vex(phi + h, theta, kP) - f_vex(phi - h, theta, kP)) / (2 * h);
      const double cav = (f_cav(phi + h, theta, kP) - f_cav(phi - h, theta, kP)) / (2 * h);
      EXPECT_LE(rel(df_vex_dphi(phi, theta, kP), vex), 1e-6);
      EXPECT_LE(rel(df_cav_dphi(phi, theta, kP), cav), 1e-6);
      const double ds = (entropy_density(phi, {0.0, 0.0}, theta + h, kP) -
                         entropy_density(phi, {0.0, 0.0}, theta - h, kP)) / (2 * h);
      EXPECT_LE(rel(ds, kP.b / theta), 1e-6);
      const double de = (internal_energy_density(phi, theta + h, kP) -
                         internal_energy_density(phi, theta - h, kP)) / (2 * h);
      EXPECT_LE(rel(de, kP.b), 1e-6);
    }
}

TEST(Thermo, SplitDerivativesMatchFiniteDifferences) {
  const double h = 1e-6;
  for (double pn : {0.1, 0.6, 1.1})
    for (double po : {0.2, 0.7})
      for (double theta : {1.0, 2.5, 4.0}) {
        const double dp = (split_coefficients(pn + h, po, theta, kP) -
                           split_coefficients(pn - h, po, theta, kP)) / (2 * h);
        const double dt = (split_coefficients(pn, po, theta + h, kP) -
                           split_coefficients(pn, po, theta - h, kP)) / (2 * h);
        EXPECT_LE(rel(split_dphi_new(pn, theta, kP), dp), 1e-6);
        EXPECT_LE(rel(split_dtheta(pn, po, theta, kP), dt), 1e-6);
      }
}

TEST(Thermo, EnergyEqualsFreeEnergyPlusThetaEntropy) {
  for (double phi : {-0.3, 0.2, 0.9})
    for (double theta : {0.4, 3.0, 5.2})
      for (Vec2 g : {Vec2{0.0, 0.0}, Vec2{3.0, -4.0}, Vec2{-20.0, 7.5}}) {
        const double F = helmholtz_density(phi, g, theta, kP);
        const double s = entropy_density(phi, g, theta, kP);
        EXPECT_NEAR(internal_energy_density(phi, theta, kP), F + theta * s, 1e-12 * std::max(1.0, std::abs(F)));
        EXPECT_NEAR(s - entropy_density(phi, {0.0, 0.0}, theta, kP), -0.5 * kP.gamma * (g[0] * g[0] + g[1] * g[1]),
                    1e-14);
      }
}

TEST(Thermo, MonotoneInTemperature) {
  double s_prev = -1e300, e_prev = -1e300;
  for (double theta = 0.05; theta < 8.0; theta += 0.05) {
    EXPECT_LT(d2f_dtheta2(0.4, theta, kP), 0.0);
    const double s = entropy_density(0.4, {1.0, 1.0}, theta, kP);
    const double e = internal_energy_density(0.4, theta, kP);
    EXPECT_GT(s, s_prev);
    EXPECT_GT(e, e_prev);
    s_prev = s;
    e_prev = e;
  }
}

TEST(Thermo, RejectsNonpositiveTemperature) {
  EXPECT_THROW(f_value(0.5, 0.0, kP), NonpositiveTemperature);
  EXPECT_THROW(df_dtheta(0.5, -1.0, kP), NonpositiveTemperature);
  EXPECT_THROW(d2f_dtheta2(0.5, 0.0, kP), NonpositiveTemperature);
  EXPECT_THROW(split_coefficients(0.5, 0.5, -2.0, kP), NonpositiveTemperature);
  EXPECT_THROW(entropy_density(0.5, {0.0, 0.0}, 0.0, kP), NonpositiveTemperature);
  EXPECT_THROW(internal_energy_density(0.5, -0.1, kP), NonpositiveTemperature);
  EXPECT_THROW(f_value(0.5, std::nan(""), kP), NonpositiveTemperature);
}

TEST(Thermo, ParameterValidation) {
  EXPECT_NO_THROW(kP.validate());
  PotentialParams p;
  p.gamma = 0.0;
  EXPECT_THROW(p.validate(), std::invalid_argument);
  p = {};
  p.d = -1.0;
  EXPECT_THROW(p.validate(), std::invalid_argument);
}

TEST(Onsager, SmallestEigenvalue) {
  EXPECT_NEAR(validate_onsager({1e-2, 5e-2, 1e-4}), 0.03 - std::hypot(0.02, 1e-4), 1e-17);
  EXPECT_NEAR(validate_onsager({1e-2, 5e-2, 1e-4}), 0.0099997, 1e-7);
  EXPECT_DOUBLE_EQ(validate_onsager({1e-2, 5e-2, 0.0}), 0.01);
  EXPECT_THROW(validate_onsager({1e-2, 5e-2, 3e-2}), std::invalid_argument);
  EXPECT_THROW(validate_onsager({0.0, 5e-2, 0.0}), std::invalid_argument);
}
