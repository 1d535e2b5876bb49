#include "nch/diagnostics.hpp"

#include <algorithm>
#include <stdexcept>

#include "nch/errors.hpp"

namespace nch {

namespace {

inline double dot(const Vec2& a, const Vec2& b) { return a[0] * b[0] + a[1] * b[1]; }

double positive_theta(const FieldSample& s, const QuadPoint& qp) {
  if (!(s.value > 0.0)) throw NonpositiveTemperature(s.value, qp.element, qp.index);
  return s.value;
}

// v1 = grad t' / (t' t_o), v2 = mu_o grad t' / (t' t_o) - grad mu' / t'
struct ProductionVectors {
  Vec2 v1, v2;
};

ProductionVectors production_vectors(const QuadPoint& qp, std::span<const FieldSample> s) {
  const double t = positive_theta(s[1], qp);
  const double to = positive_theta(s[3], qp);
  const Vec2& gm = s[0].grad;
  const Vec2& gt = s[1].grad;
  const double mo = s[2].value;
  ProductionVectors v;
  for (int k = 0; k < 2; ++k) {
    v.v1[k] = gt[k] / (t * to);
    v.v2[k] = mo * gt[k] / (t * to) - gm[k] / t;
  }
  return v;
}

template <typename Fn>
double integrate_production(const Mesh& mesh, const QuadRule& quad, const State& x_new,
                            const State& x_old, Fn&& fn) {
  const NodalField* fields[] = {&x_new.mu, &x_new.theta, &x_old.mu, &x_old.theta};
  return integrate(mesh, quad, fields, [&](const QuadPoint& qp, std::span<const FieldSample> s) {
    return fn(production_vectors(qp, s));
  });
}

}  // namespace

double total_mass(const Mesh& mesh, const QuadRule& quad, const State& s) {
  const NodalField* fields[] = {&s.phi};
  return integrate(mesh, quad, fields,
                   [](const QuadPoint&, std::span<const FieldSample> f) { return f[0].value; });
}

double total_internal_energy(const Mesh& mesh, const QuadRule& quad, const State& s,
                             const PotentialParams& p) {
  const NodalField* fields[] = {&s.phi, &s.theta};
  return integrate(mesh, quad, fields, [&](const QuadPoint& qp, std::span<const FieldSample> f) {
    return thermo::internal_energy_density(f[0].value, positive_theta(f[1], qp), p);
  });
}

double total_entropy(const Mesh& mesh, const QuadRule& quad, const State& s,
                     const PotentialParams& p) {
  const NodalField* fields[] = {&s.phi, &s.theta};
  return integrate(mesh, quad, fields, [&](const QuadPoint& qp, std::span<const FieldSample> f) {
    return thermo::entropy_density(f[0].value, f[0].grad, positive_theta(f[1], qp), p);
  });
}

double entropy_production(const Mesh& mesh, const QuadRule& quad, const State& x_new,
                          const State& x_old, const OnsagerCoeffs& c) {
  return integrate_production(mesh, quad, x_new, x_old, [&](const ProductionVectors& v) {
    // (v1, v2) [[K, -C], [-C, M]] (v1, v2)^T per component
    double acc = 0.0;
    for (int k = 0; k < 2; ++k) {
      const double l1 = c.K * v.v1[k] - c.C * v.v2[k];
      const double l2 = -c.C * v.v1[k] + c.M * v.v2[k];
      acc += v.v1[k] * l1 + v.v2[k] * l2;
    }
    return acc;
  });
}

double entropy_production_expanded(const Mesh& mesh, const QuadRule& quad, const State& x_new,
                                   const State& x_old, const OnsagerCoeffs& c) {
  const double kk = integrate_production(mesh, quad, x_new, x_old, [&](const ProductionVectors& v) {
    return c.K * dot(v.v1, v.v1);
  });
  const double cc = integrate_production(mesh, quad, x_new, x_old, [&](const ProductionVectors& v) {
    return c.C * dot(v.v2, v.v1);
  });
  const double mm = integrate_production(mesh, quad, x_new, x_old, [&](const ProductionVectors& v) {
    return c.M * dot(v.v2, v.v2);
  });
  return kk - 2.0 * cc + mm;
}

double production_vector_norm(const Mesh& mesh, const QuadRule& quad, const State& x_new,
                              const State& x_old) {
  return integrate_production(mesh, quad, x_new, x_old, [](const ProductionVectors& v) {
    return dot(v.v1, v.v1) + dot(v.v2, v.v2);
  });
}

double theta_min(const State& s) { return *std::min_element(s.theta.begin(), s.theta.end()); }
double theta_max(const State& s) { return *std::max_element(s.theta.begin(), s.theta.end()); }

DiagnosticsRecord initial_record(const Mesh& mesh, const SchemeConfig& cfg, const State& s0) {
  DiagnosticsRecord r;
  r.step = 0;
  r.time = s0.time;
  r.mass = total_mass(mesh, cfg.quad, s0);
  r.energy = total_internal_energy(mesh, cfg.quad, s0, cfg.potential);
  r.entropy = total_entropy(mesh, cfg.quad, s0, cfg.potential);
  r.theta_min = theta_min(s0);
  r.theta_max = theta_max(s0);
  return r;
}

DiagnosticsRecord record_step(const DiagnosticsRecord& prev, const Mesh& mesh,
                              const SchemeConfig& cfg, const State& x_new, const State& x_old,
                              const StepStats& stats) {
  DiagnosticsRecord r;
  r.step = prev.step + 1;
  r.time = x_new.time;
  r.mass = total_mass(mesh, cfg.quad, x_new);
  r.energy = total_internal_energy(mesh, cfg.quad, x_new, cfg.potential);
  r.entropy = total_entropy(mesh, cfg.quad, x_new, cfg.potential);
  r.production = entropy_production(mesh, cfg.quad, x_new, x_old, cfg.onsager);
  r.energy_increment = r.energy - total_internal_energy(mesh, cfg.quad, x_old, cfg.potential);
  r.theta_min = stats.theta_min;
  r.theta_max = stats.theta_max;
  r.newton_iterations = stats.newton_iterations;
  r.final_residual = stats.final_residual_norm;
  return r;
}

}  // namespace nch
