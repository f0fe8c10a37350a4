// This file is part of weaksym, a library of rectangular mixed finite
// elements for linear elasticity with weakly imposed stress symmetry.
// Distributed under the BSD 3-Clause license. See LICENSE for details.

#pragma once

#include <array>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace weaksym {

using Point = std::array<double, 3>;  // z-slot unused in 2D

/// Axis-aligned cell-to-reference map F(xhat) = corner + diag(h) * xhat.
/// All cells of a uniform tensor mesh share the same diagonal part.
struct AffineMap {
  Point corner{0, 0, 0};
  Point h{1, 1, 1};
  int dim = 2;

  Point apply(const Point& xhat) const {
    Point x = corner;
    for (int a = 0; a < dim; ++a) x[a] += h[a] * xhat[a];
    return x;
  }
  Point pull_back(const Point& x) const {
    Point xhat{0, 0, 0};
    for (int a = 0; a < dim; ++a) xhat[a] = (x[a] - corner[a]) / h[a];
    return xhat;
  }
  double det() const {
    double d = 1;
    for (int a = 0; a < dim; ++a) d *= h[a];
    return d;
  }
};

/// Facet of a tensor-product mesh: an edge in 2D, an axis-aligned face in 3D.
/// The facet normal is the fixed global direction +e_axis (not an outward
/// normal); both incident cells see the same normal and the same
/// parametrisation, which is what makes shared degrees of freedom match
/// without sign flips.
struct Facet {
  int axis = 0;                       // normal direction
  std::array<int, 3> grid{0, 0, 0};   // plane index on `axis`, cell index elsewhere
  Point corner{0, 0, 0};              // lowest-coordinate corner
  double measure = 0;                 // length (2D) or area (3D)
  bool interior = false;
  // Incident cells: `cell_minus` lies on the -normal side (the facet is its
  // local facet (axis, side 1)), `cell_plus` on the +normal side (side 0).
  // -1 when absent (boundary).
  int cell_minus = -1;
  int cell_plus = -1;
};

/// 3D mesh edge with tangent along +e_axis.
struct MeshEdge {
  int axis = 0;                      // tangent direction
  std::array<int, 3> grid{0, 0, 0};  // cell index on `axis`, vertex plane elsewhere
  Point corner{0, 0, 0};
  double measure = 0;
};

/// Uniform tensor-product mesh of an axis-aligned box in 2D or 3D.
///
/// Deterministic numbering throughout: entities are grouped by their axis
/// label (facets by normal, edges by tangent) and ordered within each group
/// lexicographically by grid tuple with the x-index fastest. Vertices and
/// cells are ordered the same way.
class Mesh {
public:
  Mesh(int dim, std::array<int, 3> divisions, Point lo = {0, 0, 0}, Point hi = {1, 1, 1})
      : m_dim(dim), m_n(divisions), m_lo(lo), m_hi(hi) {
    if (dim != 2 && dim != 3) throw std::invalid_argument("Mesh: dim must be 2 or 3");
    if (dim == 2) m_n[2] = 1;
    for (int a = 0; a < dim; ++a) {
      if (m_n[a] < 1) throw std::invalid_argument("Mesh: divisions must be positive");
      if (!(hi[a] > lo[a])) throw std::invalid_argument("Mesh: empty extent");
      m_h[a] = (hi[a] - lo[a]) / m_n[a];
    }
    if (dim == 2) {
      m_h[2] = 1;
      m_lo[2] = 0;
    }
    build_facets();
    if (dim == 3) build_edges();
  }

  /// Uniform n x n (x n) mesh of the unit box.
  static Mesh unit(int dim, int n) { return Mesh(dim, {n, n, n}); }

  int dim() const { return m_dim; }
  const std::array<int, 3>& divisions() const { return m_n; }
  Point spacing() const { return m_h; }
  Point lo() const { return m_lo; }
  Point hi() const { return m_hi; }

  int n_cells() const {
    int n = 1;
    for (int a = 0; a < m_dim; ++a) n *= m_n[a];
    return n;
  }
  int n_vertices() const {
    int n = 1;
    for (int a = 0; a < m_dim; ++a) n *= m_n[a] + 1;
    return n;
  }
  int n_facets() const { return static_cast<int>(m_facets.size()); }
  int n_edges() const { return static_cast<int>(m_edges.size()); }

  const Facet& facet(int f) const { return m_facets.at(f); }
  const MeshEdge& edge(int e) const { return m_edges.at(e); }
  const std::vector<int>& interior_facets() const { return m_interior; }
  const std::vector<int>& boundary_facets() const { return m_boundary; }

  std::array<int, 3> cell_coords(int c) const {
    std::array<int, 3> i{0, 0, 0};
    i[0] = c % m_n[0];
    c /= m_n[0];
    i[1] = c % m_n[1];
    if (m_dim == 3) i[2] = c / m_n[1];
    return i;
  }
  int cell_index(const std::array<int, 3>& i) const {
    return i[0] + m_n[0] * (i[1] + (m_dim == 3 ? m_n[1] * i[2] : 0));
  }

  int vertex_index(const std::array<int, 3>& g) const {
    return g[0] + (m_n[0] + 1) * (g[1] + (m_dim == 3 ? (m_n[1] + 1) * g[2] : 0));
  }
  Point vertex(int v) const {
    std::array<int, 3> g{0, 0, 0};
    g[0] = v % (m_n[0] + 1);
    v /= m_n[0] + 1;
    g[1] = v % (m_n[1] + 1);
    if (m_dim == 3) g[2] = v / (m_n[1] + 1);
    Point p{0, 0, 0};
    for (int a = 0; a < m_dim; ++a) p[a] = m_lo[a] + m_h[a] * g[a];
    return p;
  }

  AffineMap cell_map(int c) const {
    const auto i = cell_coords(c);
    AffineMap m;
    m.dim = m_dim;
    m.h = m_h;
    for (int a = 0; a < m_dim; ++a) m.corner[a] = m_lo[a] + m_h[a] * i[a];
    return m;
  }
  double cell_volume() const {
    double v = 1;
    for (int a = 0; a < m_dim; ++a) v *= m_h[a];
    return v;
  }

  /// Global vertex of cell `c` at local corner ix + 2*iy + 4*iz.
  int cell_vertex(int c, int local) const {
    auto g = cell_coords(c);
    g[0] += local & 1;
    g[1] += (local >> 1) & 1;
    if (m_dim == 3) g[2] += (local >> 2) & 1;
    return vertex_index(g);
  }

  /// Global facet of cell `c` at local facet 2*axis + side (side 0 is the
  /// low coordinate face).
  int cell_facet(int c, int local) const {
    const int axis = local / 2;
    const int side = local % 2;
    auto g = cell_coords(c);
    g[axis] += side;
    return facet_index(axis, g);
  }
  int facets_per_cell() const { return 2 * m_dim; }

  /// Global 3D edge of cell `c` at local edge 4*axis + 2*sv + su, where
  /// (u, v) are the non-tangent axes in increasing order and su, sv pick the
  /// low/high plane on each.
  int cell_edge(int c, int local) const {
    if (m_dim != 3) throw std::logic_error("cell_edge: 3D only");
    const int axis = local / 4;
    const int su = (local % 4) % 2;
    const int sv = (local % 4) / 2;
    const int u = axis == 0 ? 1 : 0;
    const int v = axis == 2 ? 1 : 2;
    auto g = cell_coords(c);
    g[u] += su;
    g[v] += sv;
    return edge_index(axis, g);
  }

  int facet_index(int axis, const std::array<int, 3>& grid) const {
    int idx = m_facet_offset[axis];
    // x-fastest mixed radix over the grid tuple; the axis slot ranges over
    // n+1 planes, the others over cell counts.
    int stride = 1;
    for (int a = 0; a < m_dim; ++a) {
      idx += grid[a] * stride;
      stride *= (a == axis) ? m_n[a] + 1 : m_n[a];
    }
    return idx;
  }

  int edge_index(int axis, const std::array<int, 3>& grid) const {
    int idx = m_edge_offset[axis];
    int stride = 1;
    for (int a = 0; a < 3; ++a) {
      idx += grid[a] * stride;
      stride *= (a == axis) ? m_n[a] : m_n[a] + 1;
    }
    return idx;
  }

  /// Axes parametrising facets with the given normal, in increasing order.
  std::array<int, 2> facet_param_axes(int normal_axis) const {
    std::array<int, 2> p{-1, -1};
    int k = 0;
    for (int a = 0; a < m_dim; ++a)
      if (a != normal_axis) p[k++] = a;
    return p;
  }

  /// Physical point of facet `f` at parameter shat in [0,1]^{dim-1}.
  Point facet_point(int f, const std::array<double, 2>& shat) const {
    const Facet& fc = m_facets[f];
    const auto axes = facet_param_axes(fc.axis);
    Point x = fc.corner;
    for (int k = 0; k < m_dim - 1; ++k) x[axes[k]] += m_h[axes[k]] * shat[k];
    return x;
  }

  Point edge_point(int e, double shat) const {
    const MeshEdge& ed = m_edges[e];
    Point x = ed.corner;
    x[ed.axis] += m_h[ed.axis] * shat;
    return x;
  }

private:
  void build_facets() {
    m_facet_offset = {0, 0, 0};
    for (int axis = 0; axis < m_dim; ++axis) {
      int count = 1;
      for (int a = 0; a < m_dim; ++a) count *= (a == axis) ? m_n[a] + 1 : m_n[a];
      if (axis + 1 < 3) m_facet_offset[axis + 1] = m_facet_offset[axis] + count;
    }
    const int total = m_facet_offset[m_dim - 1] + [&] {
      int count = 1;
      for (int a = 0; a < m_dim; ++a) count *= (a == m_dim - 1) ? m_n[a] + 1 : m_n[a];
      return count;
    }();
    m_facets.resize(total);

    for (int axis = 0; axis < m_dim; ++axis) {
      std::array<int, 3> lim{1, 1, 1};
      for (int a = 0; a < m_dim; ++a) lim[a] = (a == axis) ? m_n[a] + 1 : m_n[a];
      std::array<int, 3> g{0, 0, 0};
      for (g[2] = 0; g[2] < lim[2]; ++g[2])
        for (g[1] = 0; g[1] < lim[1]; ++g[1])
          for (g[0] = 0; g[0] < lim[0]; ++g[0]) {
            Facet fc;
            fc.axis = axis;
            fc.grid = g;
            for (int a = 0; a < m_dim; ++a) fc.corner[a] = m_lo[a] + m_h[a] * g[a];
            fc.measure = 1;
            for (int a = 0; a < m_dim; ++a)
              if (a != axis) fc.measure *= m_h[a];
            fc.interior = g[axis] > 0 && g[axis] < m_n[axis];
            if (g[axis] > 0) {
              auto cm = g;
              cm[axis] -= 1;
              fc.cell_minus = cell_index(cm);
            }
            if (g[axis] < m_n[axis]) fc.cell_plus = cell_index(g);
            const int idx = facet_index(axis, g);
            m_facets[idx] = fc;
            (fc.interior ? m_interior : m_boundary).push_back(idx);
          }
    }
  }

  void build_edges() {
    m_edge_offset = {0, 0, 0};
    int total = 0;
    for (int axis = 0; axis < 3; ++axis) {
      m_edge_offset[axis] = total;
      total += m_n[axis] * (m_n[(axis + 1) % 3] + 1) * (m_n[(axis + 2) % 3] + 1);
    }
    m_edges.resize(total);
    for (int axis = 0; axis < 3; ++axis) {
      std::array<int, 3> lim;
      for (int a = 0; a < 3; ++a) lim[a] = (a == axis) ? m_n[a] : m_n[a] + 1;
      std::array<int, 3> g;
      for (g[2] = 0; g[2] < lim[2]; ++g[2])
        for (g[1] = 0; g[1] < lim[1]; ++g[1])
          for (g[0] = 0; g[0] < lim[0]; ++g[0]) {
            MeshEdge ed;
            ed.axis = axis;
            ed.grid = g;
            for (int a = 0; a < 3; ++a) ed.corner[a] = m_lo[a] + m_h[a] * g[a];
            ed.measure = m_h[axis];
            m_edges[edge_index(axis, g)] = ed;
          }
    }
  }

  int m_dim;
  std::array<int, 3> m_n;
  Point m_lo{0, 0, 0}, m_hi{1, 1, 1}, m_h{1, 1, 1};
  std::vector<Facet> m_facets;
  std::vector<MeshEdge> m_edges;
  std::vector<int> m_interior, m_boundary;
  std::array<int, 3> m_facet_offset{0, 0, 0};
  std::array<int, 3> m_edge_offset{0, 0, 0};
};

}  // namespace weaksym
