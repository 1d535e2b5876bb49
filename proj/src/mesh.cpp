#include "nch/mesh.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace nch {

namespace {

// Geometry from integer lattice coordinates scaled by 1/n, so areas and
// gradients are exact (gradient entries are 0 or +-n).
ElementGeometry compute_geometry(const std::array<std::array<int, 2>, 3>& lattice, int n) {
  ElementGeometry g;
  const double h = 1.0 / n;
  for (int k = 0; k < 3; ++k) g.vertices[k] = {lattice[k][0] * h, lattice[k][1] * h};
  const int x10 = lattice[1][0] - lattice[0][0], y10 = lattice[1][1] - lattice[0][1];
  const int x20 = lattice[2][0] - lattice[0][0], y20 = lattice[2][1] - lattice[0][1];
  const int det = x10 * y20 - x20 * y10;
  g.area = 0.5 * det * h * h;
  for (int i = 0; i < 3; ++i) {
    const auto& a = lattice[(i + 1) % 3];
    const auto& b = lattice[(i + 2) % 3];
    g.grads[i] = {static_cast<double>((a[1] - b[1]) * n) / det,
                  static_cast<double>((b[0] - a[0]) * n) / det};
  }
  return g;
}

}  // namespace

Mesh::Mesh(int n) : n_(n) {
  if (n < 2) throw std::invalid_argument("mesh needs n >= 2, got " + std::to_string(n));
  const double h = 1.0 / n;
  nodes_.reserve(static_cast<std::size_t>(n) * n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) nodes_.push_back({i * h, j * h});

  elements_.reserve(2 * static_cast<std::size_t>(n) * n);
  shifts_.reserve(elements_.capacity());
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) {
      const int ip = (i + 1) % n, jp = (j + 1) % n;
      const int sx = (i + 1 == n) ? 1 : 0, sy = (j + 1 == n) ? 1 : 0;
      const int ll = node_index(i, j), lr = node_index(ip, j);
      const int ur = node_index(ip, jp), ul = node_index(i, jp);
      // Both triangles share the lower-left to upper-right diagonal.
      elements_.push_back({ll, lr, ur});
      shifts_.push_back({{{0, 0}, {sx, 0}, {sx, sy}}});
      elements_.push_back({ll, ur, ul});
      shifts_.push_back({{{0, 0}, {sx, sy}, {0, sy}}});
    }
  }

  geometry_.reserve(elements_.size());
  for (std::size_t e = 0; e < elements_.size(); ++e) {
    std::array<std::array<int, 2>, 3> lattice;
    for (int k = 0; k < 3; ++k) {
      const int node = elements_[e][k];
      lattice[k] = {node % n + shifts_[e][k][0] * n, node / n + shifts_[e][k][1] * n};
    }
    geometry_.push_back(compute_geometry(lattice, n));
  }

  adjacency_.assign(nodes_.size(), {});
  for (const auto& el : elements_)
    for (int a : el)
      for (int b : el) adjacency_[a].push_back(b);
  for (auto& row : adjacency_) {
    std::sort(row.begin(), row.end());
    row.erase(std::unique(row.begin(), row.end()), row.end());
  }
}

double Mesh::h() const noexcept { return std::sqrt(2.0) / n_; }

int Mesh::node_index(int i, int j) const noexcept {
  i = ((i % n_) + n_) % n_;
  j = ((j % n_) + n_) % n_;
  return i + n_ * j;
}

bool Mesh::operator==(const Mesh& other) const {
  return n_ == other.n_ && nodes_ == other.nodes_ && elements_ == other.elements_ &&
         shifts_ == other.shifts_;
}

Mesh build_periodic_unit_square_mesh(int n) { return Mesh(n); }

ElementGeometry element_geometry(const Mesh& mesh, int e) {
  if (e < 0 || e >= mesh.num_elements())
    throw std::out_of_range("element index " + std::to_string(e) + " out of range");
  return mesh.geometry(e);
}

namespace {

void check_nested(const Mesh& coarse, const Mesh& fine) {
  if (fine.n() != 2 * coarse.n())
    throw std::invalid_argument("prolongation needs fine.n == 2 * coarse.n (got " +
                                std::to_string(coarse.n()) + " -> " + std::to_string(fine.n()) +
                                ")");
}

// Coarse nodes (and weights) whose average gives the value at fine node (I, J).
template <typename Fn>
void for_each_parent(const Mesh& coarse, int I, int J, Fn&& fn) {
  const int i = I / 2, j = J / 2;
  const bool odd_x = I % 2 == 1, odd_y = J % 2 == 1;
  if (!odd_x && !odd_y) {
    fn(coarse.node_index(i, j), 1.0);
  } else if (odd_x && !odd_y) {
    fn(coarse.node_index(i, j), 0.5);
    fn(coarse.node_index(i + 1, j), 0.5);
  } else if (!odd_x && odd_y) {
    fn(coarse.node_index(i, j), 0.5);
    fn(coarse.node_index(i, j + 1), 0.5);
  } else {
    // Cell midpoint lies on the shared diagonal.
    fn(coarse.node_index(i, j), 0.5);
    fn(coarse.node_index(i + 1, j + 1), 0.5);
  }
}

}  // namespace

std::vector<double> prolong_nodal(const Mesh& coarse, const Mesh& fine,
                                  std::span<const double> u_coarse) {
  check_nested(coarse, fine);
  if (u_coarse.size() != static_cast<std::size_t>(coarse.num_nodes()))
    throw std::invalid_argument("coarse field has wrong length");
  std::vector<double> out(fine.num_nodes(), 0.0);
  for (int J = 0; J < fine.n(); ++J) {
    for (int I = 0; I < fine.n(); ++I) {
      double v = 0.0;
      for_each_parent(coarse, I, J, [&](int c, double w) { v += w * u_coarse[c]; });
      out[fine.node_index(I, J)] = v;
    }
  }
  return out;
}

SparseMatrix prolongation_matrix(const Mesh& coarse, const Mesh& fine) {
  check_nested(coarse, fine);
  std::vector<int> rows, cols;
  std::vector<double> vals;
  for (int J = 0; J < fine.n(); ++J) {
    for (int I = 0; I < fine.n(); ++I) {
      for_each_parent(coarse, I, J, [&](int c, double w) {
        rows.push_back(fine.node_index(I, J));
        cols.push_back(c);
        vals.push_back(w);
      });
    }
  }
  return SparseMatrix::from_triplets(fine.num_nodes(), coarse.num_nodes(), rows, cols, vals);
}

}  // namespace nch
