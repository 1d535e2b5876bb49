#pragma once

#include <stdexcept>
#include <string>

namespace nch {

/// Raised when a temperature value at a node or quadrature point is not
/// strictly positive. `element` and `quad_point` are -1 when the failure was
/// detected outside of an element loop (e.g. a pointwise thermo call).
class NonpositiveTemperature : public std::domain_error {
 public:
  NonpositiveTemperature(double theta, int element = -1, int quad_point = -1);

  double theta() const noexcept { return theta_; }
  int element() const noexcept { return element_; }
  int quad_point() const noexcept { return quad_point_; }

 private:
  double theta_;
  int element_;
  int quad_point_;
};

class NewtonDiverged : public std::runtime_error {
 public:
  NewtonDiverged(int iterations, double residual);

  int iterations() const noexcept { return iterations_; }
  double residual() const noexcept { return residual_; }

 private:
  int iterations_;
  double residual_;
};

class SingularMatrix : public std::runtime_error {
 public:
  SingularMatrix(int row, const std::string& detail);

  /// Row/column at which factorization broke down, or -1 if unknown.
  int row() const noexcept { return row_; }

 private:
  int row_;
};

}  // namespace nch
