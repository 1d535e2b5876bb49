#include <gtest/gtest.h>

#include <bit>
#include <cmath>
#include <cstdlib>
#include <random>

#include "nch/diagnostics.hpp"
#include "nch/io.hpp"
#include "nch/mesh.hpp"
#include "nch/thermo.hpp"
#include "support.hpp"

using namespace nch;

namespace {

constexpr int kCases = 50;

double random_double_bits(std::mt19937_64& rng) {
  for (;;) {
    const double v = std::bit_cast<double>(rng());
    if (std::isfinite(v)) return v;
  }
}

}  // namespace

TEST(Property, CsvNumbersRoundTripBitExactly) {
  std::mt19937_64 rng(31);
  for (int i = 0; i < 2000; ++i) {
    const double v = random_double_bits(rng);
    EXPECT_EQ(std::bit_cast<std::uint64_t>(std::strtod(format_double(v).c_str(), nullptr)), std::bit_cast<std::uint64_t>(v))
        << format_double(v);
  }
}

TEST(Property, ProlongationIsLinear) {
  std::mt19937_64 rng(32);
  std::normal_distribution<double> g;
  const Mesh c(4), f(8);
  for (int t = 0; t < kCases; ++t) {
    std::vector<double> u(16), v(16), w(16);
    const double a = g(rng), b = g(rng);
    for (int i = 0; i < 16; ++i) {
      u[i] = g(rng);
      v[i] = g(rng);
      w[i] = a * u[i] + b * v[i];
    }
    const auto pu = prolong_nodal(c, f, u), pv = prolong_nodal(c, f, v), pw = prolong_nodal(c, f, w);
    for (int i = 0; i < 64; ++i) EXPECT_NEAR(pw[i], a * pu[i] + b * pv[i], 1e-13);
  }
}

TEST(Property, SplitConsistencyAtRandomPoints) {
  std::mt19937_64 rng(33);
  std::uniform_real_distribution<double> phi(-2.0, 3.0), theta(1e-3, 20.0), scale(0.1, 5.0);
  for (int t = 0; t < 10 * kCases; ++t) {
    PotentialParams p{scale(rng) * 0.01, scale(rng), scale(rng), scale(rng) * 3.0, 1e-3};
    const double x = phi(rng), th = theta(rng);
    EXPECT_NEAR(thermo::split_coefficients(x, x, th, p), thermo::df_dphi(x, th, p),
                1e-12 * std::max(1.0, std::abs(thermo::df_dphi(x, th, p))));
    EXPECT_GE(thermo::d2f_vex_dphi2(x, th, p), 0.0);
    EXPECT_LE(thermo::d2f_cav_dphi2(x, th, p), 0.0);
  }
}

TEST(Property, OnsagerEigenvalueIsQuadraticFormMinimum) {
  std::mt19937_64 rng(34);
  std::uniform_real_distribution<double> pos(1e-3, 1.0), ang(0.0, 2 * 3.141592653589793);
  for (int t = 0; t < kCases; ++t) {
    const double m = pos(rng), k = pos(rng);
    const double c = 0.9 * std::sqrt(m * k) * (2 * pos(rng) - 1);
    const double l0 = thermo::validate_onsager({m, k, c});
    double lo = 1e300;
    for (int s = 0; s < 720; ++s) {
      const double a = ang(rng), x = std::cos(a), y = std::sin(a);
      lo = std::min(lo, k * x * x - 2 * c * x * y + m * y * y);
    }
    EXPECT_GE(lo, l0 - 1e-12);
    EXPECT_LE(lo, l0 + 1e-3 * (k + m));
  }
}

TEST(Property, ResidualIsBlockwiseConservative) {
  // Testing block phi with 1 gives the mass increment, block s with 1 gives
  // the entropy increment minus the production, for arbitrary states.
  std::mt19937_64 rng(35);
  const Mesh m(5);
  for (int t = 0; t < 10; ++t) {
    SchemeConfig cfg;
    cfg.tau = std::ldexp(1.0, -(5 + t % 6));
    const State a = nch::testing::random_state(m, rng), b = nch::testing::random_state(m, rng);
    const auto r = residual(m, b, a, cfg);
    const int n = m.num_nodes();
    double rphi = 0.0, rs = 0.0;
    for (int i = 0; i < n; ++i) {
      rphi += r[kPhi * n + i];
      rs += r[kTheta * n + i];
    }
    const double dm = (total_mass(m, cfg.quad, b) - total_mass(m, cfg.quad, a)) / cfg.tau;
    const double ds = (total_entropy(m, cfg.quad, b, cfg.potential) - total_entropy(m, cfg.quad, a, cfg.potential)) /
                      cfg.tau;
    const double dh = entropy_production(m, cfg.quad, b, a, cfg.onsager);
    EXPECT_NEAR(rphi, dm, 1e-11 * std::max(1.0, std::abs(dm)));
    EXPECT_NEAR(rs, ds - dh, 1e-11 * std::max({1.0, std::abs(ds), std::abs(dh)}));
  }
}

TEST(Property, JacobianMatchesFiniteDifferencesAcrossTimeSteps) {
  std::mt19937_64 rng(36);
  const Mesh m(3);
  for (double tau : {1e-1, 1e-3, 1e-5}) {
    SchemeConfig cfg;
    cfg.tau = tau;
    cfg.onsager.M = 1.0;
    const State a = nch::testing::random_state(m, rng), b = nch::testing::random_state(m, rng);
    EXPECT_LE(nch::testing::jacobian_fd_error(m, b, a, cfg), 1e-5) << tau;
  }
}
