#include "nch/scheme.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "nch/errors.hpp"

namespace nch {

void SchemeConfig::validate() const {
  if (!(tau > 0.0)) throw std::invalid_argument("time step tau must be positive");
  if (!(newton_tol > 0.0)) throw std::invalid_argument("newton_tol must be positive");
  if (newton_max_iter < 1) throw std::invalid_argument("newton_max_iter must be >= 1");
  if (max_halvings < 0) throw std::invalid_argument("max_halvings must be >= 0");
  if (quad.size() == 0) throw std::invalid_argument("empty quadrature rule");
  potential.validate();
  thermo::validate_onsager(onsager);
}

std::vector<double> pack(const State& s) {
  std::vector<double> x;
  x.reserve(s.phi.size() * kNumFields);
  x.insert(x.end(), s.phi.begin(), s.phi.end());
  x.insert(x.end(), s.mu.begin(), s.mu.end());
  x.insert(x.end(), s.theta.begin(), s.theta.end());
  return x;
}

void unpack(std::span<const double> x, State& s) {
  if (x.size() % kNumFields != 0) throw std::invalid_argument("packed state size is not a multiple of 3");
  const std::size_t n = x.size() / kNumFields;
  s.phi.assign(x.begin(), x.begin() + n);
  s.mu.assign(x.begin() + n, x.begin() + 2 * n);
  s.theta.assign(x.begin() + 2 * n, x.end());
}

namespace {

inline double dot(const Vec2& a, const Vec2& b) { return a[0] * b[0] + a[1] * b[1]; }

// Everything an integrand needs at one quadrature point. Primes in the
// comments denote the new time level, "o" the old (explicit) level.
struct PointValues {
  double p, m, t;   // phi', mu', theta'
  Vec2 gp, gm, gt;  // their gradients
  double po, mo, to;
  Vec2 gpo;

  // Coefficients of the explicit Onsager weights.
  double alpha;  // (M mo - C) / to
  double beta;   // (K - 2 C mo + M mo^2) / to
  double delta;  // C - M mo
  double eps;    // delta / to
};

PointValues gather(const QuadPoint& qp, std::span<const FieldSample> s, const OnsagerCoeffs& c) {
  PointValues v;
  v.p = s[0].value;
  v.gp = s[0].grad;
  v.m = s[1].value;
  v.gm = s[1].grad;
  v.t = s[2].value;
  v.gt = s[2].grad;
  v.po = s[3].value;
  v.gpo = s[3].grad;
  v.mo = s[4].value;
  v.to = s[5].value;
  if (!(v.t > 0.0)) throw NonpositiveTemperature(v.t, qp.element, qp.index);
  if (!(v.to > 0.0)) throw NonpositiveTemperature(v.to, qp.element, qp.index);
  v.alpha = (c.M * v.mo - c.C) / v.to;
  v.beta = (c.K - 2.0 * c.C * v.mo + c.M * v.mo * v.mo) / v.to;
  v.delta = c.C - c.M * v.mo;
  v.eps = v.delta / v.to;
  return v;
}

void check_states(const Mesh& mesh, const State& a, const State& b) {
  const auto n = static_cast<std::size_t>(mesh.num_nodes());
  for (const State* s : {&a, &b})
    if (s->phi.size() != n || s->mu.size() != n || s->theta.size() != n)
      throw std::invalid_argument("state fields do not match mesh size");
}

}  // namespace

std::vector<double> residual(const Mesh& mesh, const State& x_new, const State& x_old,
                             const SchemeConfig& cfg) {
  check_states(mesh, x_new, x_old);
  const NodalField* fields[] = {&x_new.phi, &x_new.mu, &x_new.theta,
                                &x_old.phi, &x_old.mu, &x_old.theta};
  const PotentialParams& pp = cfg.potential;
  const OnsagerCoeffs& oc = cfg.onsager;
  const double inv_tau = 1.0 / cfg.tau;
  const double gamma = pp.gamma;

  return assemble_system_vector(
      mesh, cfg.quad, fields, kNumFields,
      [&](const QuadPoint& qp, std::span<const FieldSample> s, std::span<TestDensity> out) {
        const PointValues v = gather(qp, s, oc);
        const double t2 = v.t * v.t;
        const double dphi_dt = (v.p - v.po) * inv_tau;

        // phi: <d_tau phi, psi> - <(alpha grad t' - M grad mu') / t', grad psi>
        out[kPhi].value = dphi_dt;
        out[kPhi].grad = {(oc.M * v.gm[0] - v.alpha * v.gt[0]) / v.t,
                          (oc.M * v.gm[1] - v.alpha * v.gt[1]) / v.t};

        // mu: <mu', xi> - gamma <grad phi', t' grad xi> - gamma <grad phi_o, xi grad t'>
        //     - <f_phi(phi', phi_o, t'), xi>
        out[kMu].value =
            v.m - gamma * dot(v.gpo, v.gt) - thermo::split_coefficients(v.p, v.po, v.t, pp);
        out[kMu].grad = {-gamma * v.t * v.gp[0], -gamma * v.t * v.gp[1]};

        // s: <d_tau s, omega> minus the Onsager flux terms and interface transport.
        const double s_new = thermo::entropy_density(v.p, v.gp, v.t, pp);
        const double s_old = thermo::entropy_density(v.po, v.gpo, v.to, pp);
        out[kTheta].value = (s_new - s_old) * inv_tau - v.beta * dot(v.gt, v.gt) / (t2 * v.to) -
                            2.0 * v.eps * dot(v.gm, v.gt) / t2 - oc.M * dot(v.gm, v.gm) / t2;
        const double w = 1.0 / (v.to * v.t);
        out[kTheta].grad = {(v.beta * v.gt[0] + v.delta * v.gm[0]) * w - gamma * dphi_dt * v.gpo[0],
                            (v.beta * v.gt[1] + v.delta * v.gm[1]) * w - gamma * dphi_dt * v.gpo[1]};
      });
}

SparseMatrix jacobian(const Mesh& mesh, const State& x_new, const State& x_old,
                      const SchemeConfig& cfg) {
  check_states(mesh, x_new, x_old);
  const NodalField* fields[] = {&x_new.phi, &x_new.mu, &x_new.theta,
                                &x_old.phi, &x_old.mu, &x_old.theta};
  const PotentialParams& pp = cfg.potential;
  const OnsagerCoeffs& oc = cfg.onsager;
  const double inv_tau = 1.0 / cfg.tau;
  const double gamma = pp.gamma;

  return assemble_system_matrix(
      mesh, cfg.quad, fields, kNumFields,
      [&](const QuadPoint& qp, std::span<const FieldSample> s, std::span<BilinearDensity> out) {
        const PointValues v = gather(qp, s, oc);
        const double t2 = v.t * v.t, t3 = t2 * v.t;
        auto block = [&](int test, int trial) -> BilinearDensity& {
          return out[test * kNumFields + trial];
        };
        auto set_grad_identity = [](BilinearDensity& d, double c) {
          d[1][1] = c;
          d[2][2] = c;
        };

        // phi row
        block(kPhi, kPhi)[0][0] = inv_tau;
        set_grad_identity(block(kPhi, kMu), oc.M / v.t);
        {
          BilinearDensity& d = block(kPhi, kTheta);
          for (int k = 0; k < 2; ++k) d[1 + k][0] = -(oc.M * v.gm[k] - v.alpha * v.gt[k]) / t2;
          set_grad_identity(d, -v.alpha / v.t);
        }

        // mu row
        {
          BilinearDensity& d = block(kMu, kPhi);
          d[0][0] = -thermo::split_dphi_new(v.p, v.t, pp);
          set_grad_identity(d, -gamma * v.t);
        }
        block(kMu, kMu)[0][0] = 1.0;
        {
          BilinearDensity& d = block(kMu, kTheta);
          d[0][0] = -thermo::split_dtheta(v.p, v.po, v.t, pp);
          for (int k = 0; k < 2; ++k) {
            d[0][1 + k] = -gamma * v.gpo[k];
            d[1 + k][0] = -gamma * v.gp[k];
          }
        }

        // entropy row; ds/dphi = -f_phi_theta, ds/dgrad phi = -gamma grad phi, ds/dtheta = b/theta
        {
          BilinearDensity& d = block(kTheta, kPhi);
          d[0][0] = -thermo::d2f_dphi_dtheta(v.p, v.t, pp) * inv_tau;
          for (int k = 0; k < 2; ++k) {
            d[0][1 + k] = -gamma * v.gp[k] * inv_tau;
            d[1 + k][0] = -gamma * v.gpo[k] * inv_tau;
          }
        }
        {
          BilinearDensity& d = block(kTheta, kMu);
          for (int k = 0; k < 2; ++k) d[0][1 + k] = -2.0 * (v.eps * v.gt[k] + oc.M * v.gm[k]) / t2;
          set_grad_identity(d, v.delta / (v.to * v.t));
        }
        {
          BilinearDensity& d = block(kTheta, kTheta);
          d[0][0] = -thermo::d2f_dtheta2(v.p, v.t, pp) * inv_tau +
                    2.0 * v.beta * dot(v.gt, v.gt) / (t3 * v.to) + 4.0 * v.eps * dot(v.gm, v.gt) / t3 +
                    2.0 * oc.M * dot(v.gm, v.gm) / t3;
          for (int k = 0; k < 2; ++k) {
            d[0][1 + k] = -2.0 * v.beta * v.gt[k] / (t2 * v.to) - 2.0 * v.eps * v.gm[k] / t2;
            d[1 + k][0] = -(v.beta * v.gt[k] + v.delta * v.gm[k]) / (v.to * t2);
          }
          set_grad_identity(d, v.beta / (v.to * v.t));
        }
      });
}

namespace {

double norm_inf(std::span<const double> r) {
  double m = 0.0;
  for (double v : r) {
    if (!std::isfinite(v)) return std::numeric_limits<double>::infinity();
    m = std::max(m, std::abs(v));
  }
  return m;
}

}  // namespace

StepResult solve_timestep(const Mesh& mesh, const State& x_old, const SchemeConfig& cfg) {
  cfg.validate();
  for (double t : x_old.theta)
    if (!(t > 0.0)) throw NonpositiveTemperature(t);

  StepResult result;
  State& x = result.state;
  x = x_old;
  x.time = x_old.time + cfg.tau;
  StepStats& stats = result.stats;
  const int n = mesh.num_nodes();

  std::vector<double> r = residual(mesh, x, x_old, cfg);
  double rnorm = norm_inf(r);
  stats.residual_history.push_back(rnorm);
  while (rnorm > cfg.newton_tol) {
    if (stats.newton_iterations >= cfg.newton_max_iter) throw NewtonDiverged(stats.newton_iterations, rnorm);
    const LuFactorization lu(jacobian(mesh, x, x_old, cfg));
    for (double& v : r) v = -v;
    const std::vector<double> dx = lu.solve(r);
    ++stats.newton_iterations;

    const std::vector<double> x0 = pack(x);
    std::vector<double> trial(x0.size());
    double step = 1.0;
    for (int halving = 0;; ++halving) {
      for (std::size_t k = 0; k < x0.size(); ++k) trial[k] = x0[k] + step * dx[k];
      const auto theta_begin = trial.begin() + 2 * n;
      const double tmin = *std::min_element(theta_begin, trial.end());
      if (tmin > 0.0) break;
      if (halving >= cfg.max_halvings) throw NonpositiveTemperature(tmin);
      step *= 0.5;
    }
    unpack(trial, x);
    r = residual(mesh, x, x_old, cfg);
    rnorm = norm_inf(r);
    stats.residual_history.push_back(rnorm);
    if (!std::isfinite(rnorm)) throw NewtonDiverged(stats.newton_iterations, rnorm);
  }

  stats.final_residual_norm = rnorm;
  const auto [lo, hi] = std::minmax_element(x.theta.begin(), x.theta.end());
  stats.theta_min = *lo;
  stats.theta_max = *hi;
  if (!(stats.theta_min > 0.0)) throw NonpositiveTemperature(stats.theta_min);
  return result;
}

double trans01(double z) { return (std::min(std::max(std::tanh(z), -1.0), 1.0) + 1.0) / 2.0; }

double quench_temperature(double x, double y, const Vec2& center) {
  const double dx = x - center[0], dy = y - center[1];
  const double z = (std::sqrt(0.3 * dx * dx + 0.3 * dy * dy) - 0.2) / std::sqrt(0.001);
  return -5.9 * trans01(z) + 6.0;
}

State initial_state(const Mesh& mesh, const SchemeConfig& cfg, const InitialData& data) {
  State s;
  const Vec2 center = data.center;
  auto theta0 = [center](double x, double y) { return quench_temperature(x, y, center); };
  switch (data.kind) {
    case InitialData::Kind::kConvergence:
      s.phi = interpolate(mesh, [](double, double) { return 0.6; });
      s.theta = interpolate(mesh, theta0);
      break;
    case InitialData::Kind::kIllustration:
      s.phi = interpolate(mesh, [](double x, double y) {
        constexpr double k = 211.0 * std::numbers::pi;
        return 0.5 + 0.01 * std::sin(k * x) * std::sin(k * y);
      });
      s.theta = interpolate(mesh, theta0);
      break;
    case InitialData::Kind::kCustom:
      if (!data.phi || !data.theta)
        throw std::invalid_argument("custom initial data needs phi and theta expressions");
      s.phi = interpolate(mesh, data.phi);
      s.theta = interpolate(mesh, data.theta);
      break;
  }
  s.mu = data.mu ? interpolate(mesh, data.mu) : NodalField(mesh.num_nodes(), 0.0);
  if (data.mu_equilibrium)
    for (int k = 0; k < mesh.num_nodes(); ++k)
      s.mu[k] = thermo::df_dphi(s.phi[k], s.theta[k], cfg.potential);
  s.time = 0.0;
  return s;
}

}  // namespace nch
