#include "nch/errors.hpp"

#include <sstream>

namespace nch {

namespace {

std::string temperature_message(double theta, int element, int quad_point) {
  std::ostringstream os;
  os << "nonpositive temperature " << theta;
  if (element >= 0) os << " at element " << element << ", quadrature point " << quad_point;
  return os.str();
}

}  // namespace

NonpositiveTemperature::NonpositiveTemperature(double theta, int element, int quad_point)
    : std::domain_error(temperature_message(theta, element, quad_point)),
      theta_(theta),
      element_(element),
      quad_point_(quad_point) {}

NewtonDiverged::NewtonDiverged(int iterations, double residual)
    : std::runtime_error("Newton did not converge after " + std::to_string(iterations) +
                         " iterations (residual " + std::to_string(residual) + ")"),
      iterations_(iterations),
      residual_(residual) {}

SingularMatrix::SingularMatrix(int row, const std::string& detail)
    : std::runtime_error("singular matrix" +
                         (row >= 0 ? " at row " + std::to_string(row) : std::string()) + ": " +
                         detail),
      row_(row) {}

}  // namespace nch
