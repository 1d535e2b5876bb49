#include "nch/thermo.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "nch/errors.hpp"

namespace nch {

void PotentialParams::validate() const {
  if (!(a > 0.0) || !(b > 0.0) || !(d > 0.0) || !(theta_c > 0.0) || !(gamma > 0.0))
    throw std::invalid_argument("potential parameters a, b, d, theta_c, gamma must be positive");
}

namespace thermo {

namespace {

inline void require_positive(double theta) {
  if (!(theta > 0.0)) throw NonpositiveTemperature(theta);
}

// c = a (theta - theta_c) / d, the temperature shift of the phi^2 coefficient.
inline double shift(double theta, const PotentialParams& p) { return p.a * (theta - p.theta_c) / p.d; }

}  // namespace

double f_value(double phi, double theta, const PotentialParams& p) {
  require_positive(theta);
  const double q = (theta - p.theta_c) / p.d;
  const double phi2 = phi * phi;
  const double poly =
      2.0 * phi2 * phi2 - 4.0 * phi2 * phi + (q + 3.0) * phi2 - (q + 1.0) * phi + 0.25 * (q + 1.0);
  return p.a * poly - p.b * (theta * std::log(theta / p.theta_c) + theta - p.theta_c);
}

double df_dphi(double phi, double theta, const PotentialParams& p) {
  require_positive(theta);
  const double q = (theta - p.theta_c) / p.d;
  return p.a * (8.0 * phi * phi * phi - 12.0 * phi * phi + 2.0 * (q + 3.0) * phi - (q + 1.0));
}

double df_dtheta(double phi, double theta, const PotentialParams& p) {
  require_positive(theta);
  return (p.a / p.d) * (phi * phi - phi + 0.25) - p.b * (std::log(theta / p.theta_c) + 2.0);
}

double d2f_dtheta2(double /*phi*/, double theta, const PotentialParams& p) {
  require_positive(theta);
  return -p.b / theta;
}

double d2f_dphi_dtheta(double phi, double theta, const PotentialParams& p) {
  require_positive(theta);
  return (p.a / p.d) * (2.0 * phi - 1.0);
}

double f_vex(double phi, double theta, const PotentialParams& p) {
  require_positive(theta);
  const double phi2 = phi * phi;
  return p.a * (2.0 * phi2 * phi2 - 4.0 * phi2 * phi + 3.0 * phi2) +
         std::max(shift(theta, p), 0.0) * phi2;
}

double f_cav(double phi, double theta, const PotentialParams& p) {
  require_positive(theta);
  const double c = shift(theta, p);
  return std::min(c, 0.0) * phi * phi - (c + p.a) * phi + 0.25 * (c + p.a);
}

double df_vex_dphi(double phi, double theta, const PotentialParams& p) {
  require_positive(theta);
  return p.a * (8.0 * phi * phi * phi - 12.0 * phi * phi + 6.0 * phi) +
         2.0 * std::max(shift(theta, p), 0.0) * phi;
}

double df_cav_dphi(double phi, double theta, const PotentialParams& p) {
  require_positive(theta);
  const double c = shift(theta, p);
  return 2.0 * std::min(c, 0.0) * phi - (c + p.a);
}

double d2f_vex_dphi2(double phi, double theta, const PotentialParams& p) {
  require_positive(theta);
  const double t = 2.0 * phi - 1.0;
  return 6.0 * p.a * t * t + 2.0 * std::max(shift(theta, p), 0.0);
}

double d2f_cav_dphi2(double /*phi*/, double theta, const PotentialParams& p) {
  require_positive(theta);
  return 2.0 * std::min(shift(theta, p), 0.0);
}

double split_coefficients(double phi_new, double phi_old, double theta_new,
                          const PotentialParams& p) {
  return df_vex_dphi(phi_new, theta_new, p) + df_cav_dphi(phi_old, theta_new, p);
}

double split_dphi_new(double phi_new, double theta_new, const PotentialParams& p) {
  return d2f_vex_dphi2(phi_new, theta_new, p);
}

double split_dtheta(double phi_new, double phi_old, double theta_new, const PotentialParams& p) {
  require_positive(theta_new);
  const double dc = p.a / p.d;
  const bool above = shift(theta_new, p) > 0.0;
  const double dmax = above ? dc : 0.0;
  const double dmin = dc - dmax;
  return 2.0 * dmax * phi_new + 2.0 * dmin * phi_old - dc;
}

double helmholtz_density(double phi, const Vec2& g, double theta, const PotentialParams& p) {
  return 0.5 * p.gamma * theta * (g[0] * g[0] + g[1] * g[1]) + f_value(phi, theta, p);
}

double entropy_density(double phi, const Vec2& g, double theta, const PotentialParams& p) {
  return -0.5 * p.gamma * (g[0] * g[0] + g[1] * g[1]) - df_dtheta(phi, theta, p);
}

double internal_energy_density(double phi, double theta, const PotentialParams& p) {
  return f_value(phi, theta, p) - theta * df_dtheta(phi, theta, p);
}

double validate_onsager(const OnsagerCoeffs& c) {
  const double mean = 0.5 * (c.K + c.M);
  const double half_gap = 0.5 * (c.K - c.M);
  const double lambda0 = mean - std::hypot(half_gap, c.C);
  if (!(c.M > 0.0) || !(c.K > 0.0) || !(c.K * c.M - c.C * c.C > 0.0) || !(lambda0 > 0.0))
    throw std::invalid_argument("Onsager matrix [[K, -C], [-C, M]] is not positive definite");
  return lambda0;
}

}  // namespace thermo
}  // namespace nch
