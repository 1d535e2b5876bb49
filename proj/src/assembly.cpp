#include <algorithm>
#include <stdexcept>
#include <string>

#include "nch/fem.hpp"

namespace nch {

namespace {

void check_fields(const Mesh& mesh, FieldRefs fields) {
  for (const NodalField* f : fields) {
    if (f == nullptr || f->size() != static_cast<std::size_t>(mesh.num_nodes()))
      throw std::invalid_argument("nodal field length does not match mesh (" +
                                  std::to_string(mesh.num_nodes()) + " nodes)");
  }
}

// Gradient written with differences so that constant fields have an exactly
// zero gradient.
FieldSample sample(const ElementGeometry& g, const std::array<int, 3>& nodes,
                   std::span<const double> u, const std::array<double, 3>& bary) {
  const double u0 = u[nodes[0]], u1 = u[nodes[1]], u2 = u[nodes[2]];
  FieldSample s;
  s.value = bary[0] * u0 + bary[1] * u1 + bary[2] * u2;
  const double d1 = u1 - u0, d2 = u2 - u0;
  s.grad = {d1 * g.grads[1][0] + d2 * g.grads[2][0], d1 * g.grads[1][1] + d2 * g.grads[2][1]};
  return s;
}

// Visits every quadrature point in element-major order.
template <typename Fn>
void for_each_quad_point(const Mesh& mesh, const QuadRule& quad, FieldRefs fields, Fn&& fn) {
  check_fields(mesh, fields);
  std::vector<FieldSample> samples(fields.size());
  for (int e = 0; e < mesh.num_elements(); ++e) {
    const ElementGeometry& g = mesh.geometry(e);
    const auto& nodes = mesh.elements()[e];
    for (std::size_t q = 0; q < quad.size(); ++q) {
      QuadPoint qp;
      qp.element = e;
      qp.index = static_cast<int>(q);
      qp.bary = quad.points[q];
      for (int k = 0; k < 3; ++k)
        for (int d = 0; d < 2; ++d) qp.x[d] += qp.bary[k] * g.vertices[k][d];
      qp.weight = quad.weights[q] * g.area;
      for (std::size_t f = 0; f < fields.size(); ++f)
        samples[f] = sample(g, nodes, *fields[f], qp.bary);
      fn(qp, g, nodes, std::span<const FieldSample>(samples));
    }
  }
}

inline double apply(const TestDensity& d, double phi, const Vec2& grad) {
  return d.value * phi + d.grad[0] * grad[0] + d.grad[1] * grad[1];
}

inline double apply(const BilinearDensity& c, double test, const Vec2& gtest, double trial,
                    const Vec2& gtrial) {
  const std::array<double, 3> t{test, gtest[0], gtest[1]};
  const std::array<double, 3> s{trial, gtrial[0], gtrial[1]};
  double acc = 0.0;
  for (int a = 0; a < 3; ++a) {
    if (t[a] == 0.0) continue;
    double row = 0.0;
    for (int b = 0; b < 3; ++b) row += c[a][b] * s[b];
    acc += t[a] * row;
  }
  return acc;
}

}  // namespace

std::pair<double, Vec2> evaluate_p1(const Mesh& mesh, std::span<const double> u, int e,
                                    const std::array<double, 3>& bary) {
  if (e < 0 || e >= mesh.num_elements()) throw std::out_of_range("element index out of range");
  if (u.size() != static_cast<std::size_t>(mesh.num_nodes()))
    throw std::invalid_argument("nodal field length does not match mesh");
  const FieldSample s = sample(mesh.geometry(e), mesh.elements()[e], u, bary);
  return {s.value, s.grad};
}

double integrate(const Mesh& mesh, const QuadRule& quad, FieldRefs fields,
                 const ScalarIntegrand& integrand) {
  double total = 0.0;
  for_each_quad_point(mesh, quad, fields,
                      [&](const QuadPoint& qp, const ElementGeometry&, const std::array<int, 3>&,
                          std::span<const FieldSample> s) { total += qp.weight * integrand(qp, s); });
  return total;
}

std::vector<double> assemble_system_vector(const Mesh& mesh, const QuadRule& quad, FieldRefs fields,
                                           int components, const SystemVectorIntegrand& integrand) {
  const int n = mesh.num_nodes();
  std::vector<double> out(static_cast<std::size_t>(components) * n, 0.0);
  std::vector<TestDensity> dens(components);
  for_each_quad_point(mesh, quad, fields,
                      [&](const QuadPoint& qp, const ElementGeometry& g, const std::array<int, 3>& nodes,
                          std::span<const FieldSample> s) {
                        std::fill(dens.begin(), dens.end(), TestDensity{});
                        integrand(qp, s, dens);
                        for (int c = 0; c < components; ++c)
                          for (int i = 0; i < 3; ++i)
                            out[c * n + nodes[i]] += qp.weight * apply(dens[c], qp.bary[i], g.grads[i]);
                      });
  return out;
}

std::vector<double> assemble_vector(const Mesh& mesh, const QuadRule& quad, FieldRefs fields,
                                    const VectorIntegrand& integrand) {
  return assemble_system_vector(
      mesh, quad, fields, 1,
      [&](const QuadPoint& qp, std::span<const FieldSample> s, std::span<TestDensity> out) {
        out[0] = integrand(qp, s);
      });
}

SparseMatrix system_pattern(const Mesh& mesh, int components) {
  const int n = mesh.num_nodes();
  const auto& adj = mesh.adjacency();
  std::vector<int> offsets(static_cast<std::size_t>(components) * n + 1, 0), cols;
  for (int ci = 0; ci < components; ++ci) {
    for (int i = 0; i < n; ++i) {
      for (int cj = 0; cj < components; ++cj)
        for (int j : adj[i]) cols.push_back(cj * n + j);
      offsets[ci * n + i + 1] = static_cast<int>(cols.size());
    }
  }
  const int size = components * n;
  return SparseMatrix(size, size, std::move(offsets), std::move(cols));
}

SparseMatrix assemble_system_matrix(const Mesh& mesh, const QuadRule& quad, FieldRefs fields,
                                    int components, const SystemMatrixIntegrand& integrand) {
  const int n = mesh.num_nodes();
  SparseMatrix a = system_pattern(mesh, components);
  auto& vals = a.values();
  std::vector<BilinearDensity> dens(static_cast<std::size_t>(components) * components);
  int cached_element = -1;
  // slot[ci][cj][i][j]: value index of (ci*n + node_i, cj*n + node_j)
  std::vector<int> slot(static_cast<std::size_t>(components) * components * 9);
  for_each_quad_point(
      mesh, quad, fields,
      [&](const QuadPoint& qp, const ElementGeometry& g, const std::array<int, 3>& nodes,
          std::span<const FieldSample> s) {
        if (qp.element != cached_element) {
          cached_element = qp.element;
          for (int ci = 0; ci < components; ++ci)
            for (int cj = 0; cj < components; ++cj)
              for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j)
                  slot[((ci * components + cj) * 3 + i) * 3 + j] =
                      a.find(ci * n + nodes[i], cj * n + nodes[j]);
        }
        for (auto& d : dens)
          for (auto& row : d) row.fill(0.0);
        integrand(qp, s, dens);
        for (int ci = 0; ci < components; ++ci) {
          for (int cj = 0; cj < components; ++cj) {
            const BilinearDensity& c = dens[ci * components + cj];
            for (int i = 0; i < 3; ++i)
              for (int j = 0; j < 3; ++j)
                vals[slot[((ci * components + cj) * 3 + i) * 3 + j]] +=
                    qp.weight * apply(c, qp.bary[i], g.grads[i], qp.bary[j], g.grads[j]);
          }
        }
      });
  return a;
}

SparseMatrix assemble_matrix(const Mesh& mesh, const QuadRule& quad, FieldRefs fields,
                             const MatrixIntegrand& integrand) {
  return assemble_system_matrix(
      mesh, quad, fields, 1,
      [&](const QuadPoint& qp, std::span<const FieldSample> s, std::span<BilinearDensity> out) {
        out[0] = integrand(qp, s);
      });
}

SparseMatrix mass_matrix(const Mesh& mesh, const QuadRule& quad) {
  return assemble_matrix(mesh, quad, {}, [](const QuadPoint&, std::span<const FieldSample>) {
    BilinearDensity d{};
    d[0][0] = 1.0;
    return d;
  });
}

SparseMatrix stiffness_matrix(const Mesh& mesh, const QuadRule& quad) {
  return assemble_matrix(mesh, quad, {}, [](const QuadPoint&, std::span<const FieldSample>) {
    BilinearDensity d{};
    d[1][1] = 1.0;
    d[2][2] = 1.0;
    return d;
  });
}

NodalField interpolate(const Mesh& mesh, const std::function<double(double, double)>& fn) {
  NodalField u(mesh.num_nodes());
  for (int k = 0; k < mesh.num_nodes(); ++k) u[k] = fn(mesh.nodes()[k][0], mesh.nodes()[k][1]);
  return u;
}

DifferenceNorms norms_of_difference(const Mesh& fine, std::span<const double> u_fine,
                                    std::span<const double> v_fine, const QuadRule& quad) {
  if (u_fine.size() != v_fine.size() || u_fine.size() != static_cast<std::size_t>(fine.num_nodes()))
    throw std::invalid_argument("norms_of_difference: field sizes do not match the mesh");
  NodalField diff(u_fine.size());
  for (std::size_t k = 0; k < diff.size(); ++k) diff[k] = u_fine[k] - v_fine[k];
  const NodalField* refs[] = {&diff};
  DifferenceNorms out;
  double grad_sq = 0.0;
  for_each_quad_point(fine, quad, refs,
                      [&](const QuadPoint& qp, const ElementGeometry&, const std::array<int, 3>&,
                          std::span<const FieldSample> s) {
                        out.l2_squared += qp.weight * s[0].value * s[0].value;
                        grad_sq += qp.weight * (s[0].grad[0] * s[0].grad[0] + s[0].grad[1] * s[0].grad[1]);
                      });
  out.h1_squared = out.l2_squared + grad_sq;
  return out;
}

}  // namespace nch
