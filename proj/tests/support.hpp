#pragma once

#include <algorithm>
#include <cmath>
#include <random>

#include "nch/scheme.hpp"
#include "nch/sparse.hpp"

namespace nch::testing {

inline State random_state(const Mesh& mesh, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> phi(0.2, 0.8), theta(1.0, 5.0), mu(-1.0, 1.0);
  State s;
  const int n = mesh.num_nodes();
  s.phi.resize(n);
  s.mu.resize(n);
  s.theta.resize(n);
  for (int i = 0; i < n; ++i) {
    s.phi[i] = phi(rng);
    s.mu[i] = mu(rng);
    s.theta[i] = theta(rng);
  }
  return s;
}

inline State constant_state(const Mesh& mesh, double phi, double theta, const PotentialParams& p) {
  const int n = mesh.num_nodes();
  return State{NodalField(n, phi), NodalField(n, thermo::df_dphi(phi, theta, p)), NodalField(n, theta), 0.0};
}

/// Largest relative column error of the analytic Jacobian against centered
/// differences of the residual: max_j ||J e_j - FD_j||_inf / ||J e_j||_inf.
inline double jacobian_fd_error(const Mesh& mesh, const State& x_new, const State& x_old,
                                const SchemeConfig& cfg, double h = 1e-6) {
  const SparseMatrix jac = jacobian(mesh, x_new, x_old, cfg);
  const auto dense = jac.to_dense();
  const std::vector<double> x0 = pack(x_new);
  State probe = x_new;
  double worst = 0.0;
  for (std::size_t j = 0; j < x0.size(); ++j) {
    std::vector<double> x = x0;
    x[j] = x0[j] + h;
    unpack(x, probe);
    const auto rp = residual(mesh, probe, x_old, cfg);
    x[j] = x0[j] - h;
    unpack(x, probe);
    const auto rm = residual(mesh, probe, x_old, cfg);
    double diff = 0.0, scale = 0.0;
    for (std::size_t i = 0; i < x0.size(); ++i) {
      const double fd = (rp[i] - rm[i]) / (2 * h);
      diff = std::max(diff, std::abs(dense[i][j] - fd));
      scale = std::max(scale, std::abs(dense[i][j]));
    }
    worst = std::max(worst, diff / scale);
  }
  return worst;
}

}  // namespace nch::testing
