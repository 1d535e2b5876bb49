#pragma once

#include "nch/mesh.hpp"

namespace nch {

/// Parameters of the quartic driving potential
///   f = a (2p^4 - 4p^3 + (q + 3) p^2 - (q + 1) p + (q + 1)/4)
///       - b (t log(t / theta_c) + t - theta_c),   q = (t - theta_c) / d,
/// plus the interface parameter gamma of the gradient energy.
struct PotentialParams {
  double a = 0.01;
  double b = 1.0;
  double d = 1.0;
  double theta_c = 3.0;
  double gamma = 1e-3;

  /// Throws std::invalid_argument unless every parameter is positive.
  void validate() const;
};

/// Isotropic Onsager coefficients: L = [[K, -C], [-C, M]] (each times I).
struct OnsagerCoeffs {
  double M = 1e-2;
  double K = 5e-2;
  double C = 1e-4;
};

namespace thermo {

double f_value(double phi, double theta, const PotentialParams& p);
double df_dphi(double phi, double theta, const PotentialParams& p);
double df_dtheta(double phi, double theta, const PotentialParams& p);
double d2f_dtheta2(double phi, double theta, const PotentialParams& p);
double d2f_dphi_dtheta(double phi, double theta, const PotentialParams& p);

// Convex-concave split in phi at fixed theta. With c = a (theta - theta_c)/d:
//   f_vex = a (2p^4 - 4p^3 + 3p^2) + max(c, 0) p^2
//   f_cav = min(c, 0) p^2 - (c + a) p + (c + a)/4
double f_vex(double phi, double theta, const PotentialParams& p);
double f_cav(double phi, double theta, const PotentialParams& p);
double df_vex_dphi(double phi, double theta, const PotentialParams& p);
double df_cav_dphi(double phi, double theta, const PotentialParams& p);
double d2f_vex_dphi2(double phi, double theta, const PotentialParams& p);
double d2f_cav_dphi2(double phi, double theta, const PotentialParams& p);

/// Semi-implicit chemical force: d/dphi f_vex(phi_new, theta_new)
/// + d/dphi f_cav(phi_old, theta_new).
double split_coefficients(double phi_new, double phi_old, double theta_new,
                          const PotentialParams& p);

/// Partial derivatives of split_coefficients with respect to phi_new and
/// theta_new. At theta_new == theta_c the kink of max(c, 0) is resolved by
/// taking its derivative as zero (indicator of c > 0).
double split_dphi_new(double phi_new, double theta_new, const PotentialParams& p);
double split_dtheta(double phi_new, double phi_old, double theta_new, const PotentialParams& p);

/// Helmholtz free energy density F = (gamma theta / 2)|g|^2 + f.
double helmholtz_density(double phi, const Vec2& grad_phi, double theta, const PotentialParams& p);
/// s = -(gamma/2)|g|^2 - df/dtheta.
double entropy_density(double phi, const Vec2& grad_phi, double theta, const PotentialParams& p);
/// e = f - theta df/dtheta (gradient contributions cancel).
double internal_energy_density(double phi, double theta, const PotentialParams& p);

/// Smallest eigenvalue of [[K, -C], [-C, M]]; throws std::invalid_argument
/// if the matrix is not positive definite.
double validate_onsager(const OnsagerCoeffs& c);

}  // namespace thermo
}  // namespace nch
