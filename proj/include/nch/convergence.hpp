#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nch/config.hpp"
#include "nch/simulation.hpp"

namespace nch {

/// log2(err_coarse / err_fine); both errors must be positive.
double eoc(double err_coarse, double err_fine);

struct ConvergenceRow {
  int level = 0;
  double err_grad_phi = 0.0;
  double err_grad_mu = 0.0;
  double err_theta = 0.0;
  double err_grad_theta = 0.0;
  // Unset on the first row.
  std::optional<double> eoc_grad_phi;
  std::optional<double> eoc_grad_mu;
  std::optional<double> eoc_theta;
  std::optional<double> eoc_grad_theta;
};

struct ConvergenceTable {
  std::string kind;  // "space" or "time"
  std::vector<ConvergenceRow> rows;
};

/// Squared-norm Cauchy errors between levels k and k+1:
///   err(grad phi)   = max_n ||phi_k^n - phi_{k+1}^n||_1^2
///   err(grad mu)    = tau * sum_{n>=1} ||mu_k^n - mu_{k+1}^n||_1^2
///   err(theta)      = max_n ||theta_k^n - theta_{k+1}^n||_0^2
///   err(grad theta) = tau * sum_{n>=1} ||theta_k^n - theta_{k+1}^n||_1^2
/// Row k exists for k in [k_min, k_max - 1]. `observer` sees every state of
/// every level run, with the step index within that run.
ConvergenceTable self_convergence_space(const RunConfig& base, const StepObserver& observer = {});
ConvergenceTable self_convergence_time(const RunConfig& base, const StepObserver& observer = {});

/// Fills the eoc columns from the error columns.
void fill_eoc(ConvergenceTable& table);

std::string format_table(const ConvergenceTable& table);
std::string table_to_json(const ConvergenceTable& table);

}  // namespace nch
