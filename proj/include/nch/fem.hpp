#pragma once

#include <array>
#include <functional>
#include <span>
#include <utility>
#include <vector>

#include "nch/mesh.hpp"
#include "nch/sparse.hpp"

namespace nch {

/// One P1 coefficient per periodic node.
using NodalField = std::vector<double>;

/// Symmetric quadrature rule on the reference triangle. Weights sum to one
/// and are scaled by the element area at assembly time.
struct QuadRule {
  std::vector<std::array<double, 3>> points;  // barycentric
  std::vector<double> weights;
  int degree = 0;

  std::size_t size() const noexcept { return weights.size(); }
};

/// Smallest built-in rule with exactness >= min_degree (1..6). Degree 3 and 4
/// share the 6-point rule.
QuadRule reference_quadrature(int min_degree = 4);

/// Value and gradient of a P1 field at one quadrature point.
struct FieldSample {
  double value = 0.0;
  Vec2 grad{0.0, 0.0};
};

/// Location handed to integrand callbacks.
struct QuadPoint {
  int element = 0;
  int index = 0;
  std::array<double, 3> bary{};
  Vec2 x{};              // unwrapped physical coordinates
  double weight = 0.0;   // rule weight times element area
};

std::pair<double, Vec2> evaluate_p1(const Mesh& mesh, std::span<const double> u, int e,
                                    const std::array<double, 3>& bary);

/// Linear functional density: value * v + dot(grad, grad v) for test v.
struct TestDensity {
  double value = 0.0;
  Vec2 grad{0.0, 0.0};
};

/// Bilinear density on (value, d/dx, d/dy) of test (rows) and trial (cols).
using BilinearDensity = std::array<std::array<double, 3>, 3>;

using FieldRefs = std::span<const NodalField* const>;

using ScalarIntegrand = std::function<double(const QuadPoint&, std::span<const FieldSample>)>;
using VectorIntegrand = std::function<TestDensity(const QuadPoint&, std::span<const FieldSample>)>;
using MatrixIntegrand = std::function<BilinearDensity(const QuadPoint&, std::span<const FieldSample>)>;

/// Vector of a `components`-field system: `out` has one TestDensity per
/// test component. Global index is component * num_nodes + node.
using SystemVectorIntegrand =
    std::function<void(const QuadPoint&, std::span<const FieldSample>, std::span<TestDensity> out)>;
/// `out[test * components + trial]`.
using SystemMatrixIntegrand =
    std::function<void(const QuadPoint&, std::span<const FieldSample>, std::span<BilinearDensity> out)>;

double integrate(const Mesh& mesh, const QuadRule& quad, FieldRefs fields,
                 const ScalarIntegrand& integrand);

std::vector<double> assemble_vector(const Mesh& mesh, const QuadRule& quad, FieldRefs fields,
                                    const VectorIntegrand& integrand);

std::vector<double> assemble_system_vector(const Mesh& mesh, const QuadRule& quad, FieldRefs fields,
                                           int components, const SystemVectorIntegrand& integrand);

/// Sparsity pattern of the node adjacency graph replicated over a
/// components x components block layout; values are zero.
SparseMatrix system_pattern(const Mesh& mesh, int components);

SparseMatrix assemble_matrix(const Mesh& mesh, const QuadRule& quad, FieldRefs fields,
                             const MatrixIntegrand& integrand);

SparseMatrix assemble_system_matrix(const Mesh& mesh, const QuadRule& quad, FieldRefs fields,
                                    int components, const SystemMatrixIntegrand& integrand);

SparseMatrix mass_matrix(const Mesh& mesh, const QuadRule& quad);
SparseMatrix stiffness_matrix(const Mesh& mesh, const QuadRule& quad);

/// Nodal interpolant of a closed-form function.
NodalField interpolate(const Mesh& mesh, const std::function<double(double, double)>& fn);

struct DifferenceNorms {
  double l2_squared = 0.0;
  double h1_squared = 0.0;  // L2^2 + |grad|^2
};

DifferenceNorms norms_of_difference(const Mesh& fine, std::span<const double> u_fine,
                                    std::span<const double> v_fine,
                                    const QuadRule& quad = reference_quadrature(4));

}  // namespace nch
