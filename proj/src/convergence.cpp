#include "nch/convergence.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include <json.hpp>


namespace nch {

double eoc(double err_coarse, double err_fine) {
  if (!(err_coarse > 0.0) || !(err_fine > 0.0))
    throw std::invalid_argument("eoc needs positive errors");
  return std::log2(err_coarse / err_fine);
}

namespace {

using Trajectory = std::vector<State>;

Trajectory run_trajectory(const RunConfig& cfg, const StepObserver& observer) {
  Trajectory states;
  states.reserve(static_cast<std::size_t>(cfg.num_steps()) + 1);
  run_simulation(cfg, [&](int k, const State& s) {
    if (observer) observer(k, s);
    states.push_back(s);
  });
  return states;
}

RunConfig quiet(RunConfig cfg) {
  cfg.output = OutputConfig{};
  return cfg;
}

// Accumulates the four Cauchy errors over paired time nodes.
struct ErrorAccumulator {
  double tau;
  ConvergenceRow row;

  void add(int time_index, const Mesh& mesh, const QuadRule& quad, const State& coarse_on_fine,
           const State& fine) {
    const DifferenceNorms phi = norms_of_difference(mesh, coarse_on_fine.phi, fine.phi, quad);
    const DifferenceNorms th = norms_of_difference(mesh, coarse_on_fine.theta, fine.theta, quad);
    row.err_grad_phi = std::max(row.err_grad_phi, phi.h1_squared);
    row.err_theta = std::max(row.err_theta, th.l2_squared);
    if (time_index >= 1) {
      const DifferenceNorms mu = norms_of_difference(mesh, coarse_on_fine.mu, fine.mu, quad);
      row.err_grad_mu += tau * mu.h1_squared;
      row.err_grad_theta += tau * th.h1_squared;
    }
  }
};

void check_levels(const StudyConfig& s) {
  if (s.k_max <= s.k_min) throw std::invalid_argument("study needs k_max > k_min");
}

}  // namespace

void fill_eoc(ConvergenceTable& table) {
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    ConvergenceRow& r = table.rows[i];
    if (i == 0) {
      r.eoc_grad_phi = r.eoc_grad_mu = r.eoc_theta = r.eoc_grad_theta = std::nullopt;
      continue;
    }
    const ConvergenceRow& p = table.rows[i - 1];
    auto rate = [](double a, double b) -> std::optional<double> {
      if (a > 0.0 && b > 0.0) return eoc(a, b);
      return std::nullopt;
    };
    r.eoc_grad_phi = rate(p.err_grad_phi, r.err_grad_phi);
    r.eoc_grad_mu = rate(p.err_grad_mu, r.err_grad_mu);
    r.eoc_theta = rate(p.err_theta, r.err_theta);
    r.eoc_grad_theta = rate(p.err_grad_theta, r.err_grad_theta);
  }
}

ConvergenceTable self_convergence_space(const RunConfig& base, const StepObserver& observer) {
  check_levels(base.study);
  ConvergenceTable table{"space", {}};
  const QuadRule quad = reference_quadrature(base.quad_degree);

  RunConfig coarse_cfg = quiet(base);
  coarse_cfg.mesh_n = 1 << base.study.k_min;
  Trajectory coarse;
  try {
    coarse = run_trajectory(coarse_cfg, observer);
  } catch (const std::exception& e) {
    throw std::runtime_error("level k=" + std::to_string(base.study.k_min) + " failed: " + e.what());
  }
  for (int k = base.study.k_min; k < base.study.k_max; ++k) {
    RunConfig fine_cfg = quiet(base);
    fine_cfg.mesh_n = 1 << (k + 1);
    Trajectory fine;
    try {
      fine = run_trajectory(fine_cfg, observer);
    } catch (const std::exception& e) {
      throw std::runtime_error("level k=" + std::to_string(k + 1) + " failed: " + e.what());
    }
    const Mesh cm(coarse_cfg.mesh_n), fm(fine_cfg.mesh_n);
    ErrorAccumulator acc{base.tau, {}};
    acc.row.level = k;
    for (std::size_t n = 0; n < coarse.size(); ++n) {
      State prolonged;
      prolonged.phi = prolong_nodal(cm, fm, coarse[n].phi);
      prolonged.mu = prolong_nodal(cm, fm, coarse[n].mu);
      prolonged.theta = prolong_nodal(cm, fm, coarse[n].theta);
      acc.add(static_cast<int>(n), fm, quad, prolonged, fine[n]);
    }
    table.rows.push_back(acc.row);
    coarse = std::move(fine);
    coarse_cfg = fine_cfg;
  }
  fill_eoc(table);
  return table;
}

ConvergenceTable self_convergence_time(const RunConfig& base, const StepObserver& observer) {
  check_levels(base.study);
  ConvergenceTable table{"time", {}};
  const QuadRule quad = reference_quadrature(base.quad_degree);
  const Mesh mesh(base.mesh_n);

  auto level_cfg = [&](int k) {
    RunConfig c = quiet(base);
    c.tau = std::ldexp(base.study.tau_base, -k);
    return c;
  };
  auto run_level = [&](int k) {
    try {
      return run_trajectory(level_cfg(k), observer);
    } catch (const std::exception& e) {
      throw std::runtime_error("level k=" + std::to_string(k) + " failed: " + e.what());
    }
  };

  Trajectory coarse = run_level(base.study.k_min);
  for (int k = base.study.k_min; k < base.study.k_max; ++k) {
    Trajectory fine = run_level(k + 1);
    ErrorAccumulator acc{level_cfg(k).tau, {}};
    acc.row.level = k;
    for (std::size_t n = 0; n < coarse.size(); ++n) acc.add(static_cast<int>(n), mesh, quad, coarse[n], fine[2 * n]);
    table.rows.push_back(acc.row);
    coarse = std::move(fine);
  }
  fill_eoc(table);
  return table;
}

std::string format_table(const ConvergenceTable& table) {
  std::string out;
  char line[256];
  std::snprintf(line, sizeof line, "%3s | %-10s %6s | %-10s %6s | %-10s %6s | %-10s %6s\n", "k",
                "err(gphi)", "eoc", "err(gmu)", "eoc", "err(theta)", "eoc", "err(gth)", "eoc");
  out += line;
  auto rate = [](const std::optional<double>& v) {
    char b[16];
    if (v) std::snprintf(b, sizeof b, "%6.2f", *v);
    else std::snprintf(b, sizeof b, "%6s", "--");
    return std::string(b);
  };
  for (const ConvergenceRow& r : table.rows) {
    std::snprintf(line, sizeof line, "%3d | %10.3e %s | %10.3e %s | %10.3e %s | %10.3e %s\n", r.level,
                  r.err_grad_phi, rate(r.eoc_grad_phi).c_str(), r.err_grad_mu, rate(r.eoc_grad_mu).c_str(),
                  r.err_theta, rate(r.eoc_theta).c_str(), r.err_grad_theta, rate(r.eoc_grad_theta).c_str());
    out += line;
  }
  return out;
}

std::string table_to_json(const ConvergenceTable& table) {
  nlohmann::json rows = nlohmann::json::array();
  auto opt = [](const std::optional<double>& v) -> nlohmann::json {
    return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
  };
  for (const ConvergenceRow& r : table.rows) {
    rows.push_back({{"k", r.level},
                    {"err_grad_phi", r.err_grad_phi},
                    {"eoc_grad_phi", opt(r.eoc_grad_phi)},
                    {"err_grad_mu", r.err_grad_mu},
                    {"eoc_grad_mu", opt(r.eoc_grad_mu)},
                    {"err_theta", r.err_theta},
                    {"eoc_theta", opt(r.eoc_theta)},
                    {"err_grad_theta", r.err_grad_theta},
                    {"eoc_grad_theta", opt(r.eoc_grad_theta)}});
  }
  return nlohmann::json{{"kind", table.kind}, {"rows", rows}}.dump(2);
}

}  // namespace nch
