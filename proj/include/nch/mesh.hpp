#pragma once

#include <array>
#include <span>
#include <vector>

#include "nch/sparse.hpp"

namespace nch {

using Vec2 = std::array<double, 2>;

/// Geometry of one triangle with periodic seams unwrapped.
struct ElementGeometry {
  std::array<Vec2, 3> vertices;
  double area = 0.0;
  /// Constant gradient of each barycentric basis function.
  std::array<Vec2, 3> grads;
};

/// Uniform diagonal-split triangulation of the unit square identified with
/// the 2-torus. Node (i, j) sits at (i/n, j/n) and has index i + n*j; it is
/// the single representative of all of its periodic images.
class Mesh {
 public:
  explicit Mesh(int n);

  int n() const noexcept { return n_; }
  int num_nodes() const noexcept { return n_ * n_; }
  int num_elements() const noexcept { return 2 * n_ * n_; }
  /// Number of distinct edges on the torus (3 n^2).
  int num_edges() const noexcept { return 3 * n_ * n_; }
  /// Element diameter, sqrt(2)/n.
  double h() const noexcept;

  int node_index(int i, int j) const noexcept;
  const std::vector<Vec2>& nodes() const noexcept { return nodes_; }
  const std::vector<std::array<int, 3>>& elements() const noexcept { return elements_; }
  /// Per-element, per-vertex coordinate shift (0 or 1 per axis) applied to
  /// the representative node to make the triangle contiguous.
  const std::vector<std::array<std::array<int, 2>, 3>>& shifts() const noexcept { return shifts_; }

  const ElementGeometry& geometry(int e) const { return geometry_.at(static_cast<std::size_t>(e)); }

  /// Sorted node-neighbour lists (including the node itself).
  const std::vector<std::vector<int>>& adjacency() const noexcept { return adjacency_; }

  bool operator==(const Mesh& other) const;

 private:
  int n_;
  std::vector<Vec2> nodes_;
  std::vector<std::array<int, 3>> elements_;
  std::vector<std::array<std::array<int, 2>, 3>> shifts_;
  std::vector<ElementGeometry> geometry_;
  std::vector<std::vector<int>> adjacency_;
};

Mesh build_periodic_unit_square_mesh(int n);

ElementGeometry element_geometry(const Mesh& mesh, int e);

/// Exact P1 interpolation of a coarse nodal function onto the once-refined
/// mesh (fine.n() == 2 * coarse.n()).
std::vector<double> prolong_nodal(const Mesh& coarse, const Mesh& fine,
                                  std::span<const double> u_coarse);

/// The linear map applied by prolong_nodal, as a (fine x coarse) matrix.
SparseMatrix prolongation_matrix(const Mesh& coarse, const Mesh& fine);

}  // namespace nch
