// This file is part of weaksym, a library of rectangular mixed finite
// elements for linear elasticity with weakly imposed stress symmetry.
// Distributed under the BSD 3-Clause license. See LICENSE for details.

#pragma once

#include <weaksym/polyfield.hpp>

#include <string>

namespace weaksym {

// Reference-cell entity conventions, shared with Mesh:
//  * vertices of [0,1]^d are numbered ix + 2*iy + 4*iz;
//  * facets (edges in 2D, faces in 3D) are numbered 2*axis + side and carry
//    the fixed normal +e_axis regardless of side; their parameter domain is
//    [0,1]^{d-1} over the non-normal axes in increasing order;
//  * 3D edges are numbered 4*tangent + 2*sv + su where (u,v) are the
//    non-tangent axes in increasing order; the tangent is +e_tangent.

enum class EntityKind { VERTEX, EDGE3D, FACET, CELL };

/// Scalar value extracted from the field before weighting:
///   VALUE       component (row, col) of the field itself;
///   NORMAL      (q n)_row for matrices, q . n for vectors (row = -1);
///   TANGENTIAL  (q t)_row / q . t, along the facet tangent (2D) or the
///               3D edge tangent;
///   WEDGE       component col of (row of q) ^ n on a 3D face, where
///               (q ^ n)_0 = q_2 n_0 - q_0 n_2, (q ^ n)_1 = q_0 n_1 - q_1 n_0,
///               (q ^ n)_2 = q_1 n_2 - q_2 n_1.
enum class TraceKind { VALUE, NORMAL, TANGENTIAL, WEDGE };

/// One degree of freedom of a reference element: either a point evaluation
/// or a weighted moment over a reference entity. `normalized` marks moments
/// whose physical realisation divides by the physical entity measure (the
/// convention for value-mapped elements); H(div) elements use plain
/// physical integrals instead.
struct DofFunctional {
  EntityKind entity = EntityKind::CELL;
  int entity_index = 0;

  bool is_point = false;
  std::array<Rational, 3> point{0, 0, 0};

  TraceKind trace = TraceKind::VALUE;
  int row = -1;
  int col = -1;
  Poly weight;            // in entity parameters; unused for point dofs
  PolyField cell_weight;  // full-shape weight for interior moments
  bool has_cell_weight = false;
  bool normalized = false;

  static DofFunctional point_value(EntityKind entity, int index, std::array<Rational, 3> at,
                                   int row, int col = 0) {
    DofFunctional d;
    d.entity = entity;
    d.entity_index = index;
    d.is_point = true;
    d.point = at;
    d.trace = TraceKind::VALUE;
    d.row = row;
    d.col = col;
    return d;
  }

  static DofFunctional moment(EntityKind entity, int index, TraceKind trace, int row, int col,
                              Poly weight, bool normalized) {
    DofFunctional d;
    d.entity = entity;
    d.entity_index = index;
    d.trace = trace;
    d.row = row;
    d.col = col;
    d.weight = std::move(weight);
    d.normalized = normalized;
    return d;
  }

  static DofFunctional interior_moment(PolyField weight) {
    DofFunctional d;
    d.entity = EntityKind::CELL;
    d.cell_weight = std::move(weight);
    d.has_cell_weight = true;
    return d;
  }
};

namespace detail {

/// The scalar component of `f` selected by a trace, before restriction.
/// `axis` is the facet normal axis (NORMAL/WEDGE) or the tangent axis
/// (TANGENTIAL).
inline Poly trace_poly(const PolyField& f, TraceKind trace, int axis, int row, int col) {
  switch (trace) {
    case TraceKind::VALUE:
      if (f.is_scalar()) return f(0, 0);
      if (f.is_vector()) return f(row);
      return f(row, col);
    case TraceKind::NORMAL:
      if (f.is_vector()) return f(axis);
      return f(row, axis);
    case TraceKind::TANGENTIAL:
      if (f.is_vector()) return f(axis);
      return f(row, axis);
    case TraceKind::WEDGE: {
      const auto q = [&](int c) { return f.is_vector() ? f(c) : f(row, c); };
      // (q ^ e_axis) has one identically vanishing slot; the other two are
      // single signed components of q.
      switch (axis) {
        case 0:
          if (col == 0) return q(2);
          if (col == 1) return -q(1);
          break;
        case 1:
          if (col == 1) return q(0);
          if (col == 2) return -q(2);
          break;
        case 2:
          if (col == 0) return -q(0);
          if (col == 2) return q(1);
          break;
      }
      throw std::invalid_argument("trace_poly: wedge component vanishes identically");
    }
  }
  throw std::logic_error("trace_poly: unreachable");
}

}  // namespace detail

/// Exact evaluation of a reference degree of freedom on a polynomial field.
inline Rational eval_dof(const DofFunctional& dof, const PolyField& f) {
  if (dof.is_point) {
    const Poly p = detail::trace_poly(f, TraceKind::VALUE, -1, dof.row, dof.col);
    return p.eval_rational(dof.point);
  }
  if (dof.has_cell_weight) {
    if (!dof.cell_weight.same_shape(f))
      throw std::invalid_argument("eval_dof: interior weight shape mismatch");
    Rational s = 0;
    for (std::size_t k = 0; k < f.comp.size(); ++k)
      s += (f.comp[k] * dof.cell_weight.comp[k]).integral_unit();
    return s;
  }

  const int d = f.dim;
  if (dof.entity == EntityKind::FACET) {
    const int axis = dof.entity_index / 2;
    const int side = dof.entity_index % 2;
    const int trace_axis =
        dof.trace == TraceKind::TANGENTIAL ? (d == 2 ? 1 - axis : -1) : axis;
    if (d == 3 && dof.trace == TraceKind::TANGENTIAL)
      throw std::invalid_argument("eval_dof: tangential trace on a 3D face is ambiguous");
    Poly p = detail::trace_poly(f, dof.trace, trace_axis, dof.row, dof.col);
    p = p.substitute(axis, side);  // remaining axes, in order, are the params
    return (p * dof.weight).integral_unit();
  }
  if (dof.entity == EntityKind::EDGE3D) {
    const int t = dof.entity_index / 4;
    const int su = (dof.entity_index % 4) % 2;
    const int sv = (dof.entity_index % 4) / 2;
    const int u = t == 0 ? 1 : 0;
    const int v = t == 2 ? 1 : 2;
    Poly p = detail::trace_poly(f, dof.trace, t, dof.row, dof.col);
    p = p.substitute(v, sv).substitute(u, su);  // v > u, so remove v first
    return (p * dof.weight).integral_unit();
  }
  if (dof.entity == EntityKind::CELL) {
    // Plain scalar-weighted cell moment of one component.
    const Poly p = detail::trace_poly(f, dof.trace, -1, dof.row, dof.col);
    return (p * dof.weight).integral_unit();
  }
  throw std::invalid_argument("eval_dof: vertex dofs must be point evaluations");
}

/// Reference vertex coordinates for index ix + 2*iy + 4*iz.
inline std::array<Rational, 3> reference_vertex(int dim, int v) {
  std::array<Rational, 3> p{0, 0, 0};
  p[0] = v & 1;
  p[1] = (v >> 1) & 1;
  if (dim == 3) p[2] = (v >> 2) & 1;
  return p;
}

/// The two non-vanishing components of (q ^ e_axis), in increasing order.
inline std::array<int, 2> wedge_components(int axis) {
  switch (axis) {
    case 0: return {0, 1};
    case 1: return {1, 2};
    case 2: return {0, 2};
  }
  throw std::invalid_argument("wedge_components: bad axis");
}

}  // namespace weaksym
