// This file is part of weaksym, a library of rectangular mixed finite
// elements for linear elasticity with weakly imposed stress symmetry.
// Distributed under the BSD 3-Clause license. See LICENSE for details.
//
// Interpolation of analytic fields into global finite element spaces and the
// commuting-diagram residuals that certify the discrete spaces reproduce the
// continuous structure:
//
//   DIV_SIGMA     cell averages of div(Pi_Sigma f) match cell averages of
//                 div f (the stress interpolant commutes with divergence);
//   DIV_R         the same for the auxiliary row space;
//   SURJECTIVITY  facet loads see no difference between f and its reduced
//                 interpolant Pi0 f: in 2D the facet integral of (f - Pi0 f).n
//                 vanishes, in 3D the facet integral of S(f - Pi0 f) n does.

#pragma once

#include <weaksym/fespace.hpp>
#include <weaksym/fields.hpp>
#include <weaksym/material.hpp>
#include <weaksym/quadrature.hpp>

#include <Eigen/Dense>

#include <functional>
#include <optional>

namespace weaksym {

/// Shape-tagged view of an analytic field: values (and, where needed,
/// row-wise divergences) padded into Matrix3d as in eval_padded.
struct FieldView {
  int dim = 2;
  bool vector_shape = false;
  std::function<Eigen::Matrix3d(const Point&)> value;
  std::function<Eigen::Matrix3d(const Point&)> divergence;  // optional
};

inline FieldView view(const VectorField& f) {
  FieldView v;
  v.dim = f.dim;
  v.vector_shape = true;
  v.value = [f](const Point& x) {
    Eigen::Matrix3d m = Eigen::Matrix3d::Zero();
    m.col(0) = f.value(x);
    return m;
  };
  v.divergence = [f](const Point& x) {
    Eigen::Matrix3d m = Eigen::Matrix3d::Zero();
    m(0, 0) = f.divergence(x);
    return m;
  };
  return v;
}

inline FieldView view(const MatrixField& f) {
  FieldView v;
  v.dim = f.dim;
  v.vector_shape = false;
  v.value = [f](const Point& x) { return f.value(x); };
  v.divergence = [f](const Point& x) {
    Eigen::Matrix3d m = Eigen::Matrix3d::Zero();
    m.col(0) = f.divergence(x);
    return m;
  };
  return v;
}

inline FieldView view(const ScalarField& f, int dim) {
  FieldView v;
  v.dim = dim;
  v.vector_shape = false;
  v.value = [f](const Point& x) {
    Eigen::Matrix3d m = Eigen::Matrix3d::Zero();
    m(0, 0) = f.value(x);
    return m;
  };
  return v;
}

/// Physical realisation of one reference degree of freedom on one cell,
/// applied to an analytic field: point traces at mapped points; facet and 3D
/// edge moments as physical integrals against the reference-parameter weight
/// (divided by the entity measure when the dof is normalised).
inline double physical_dof_value(const Mesh& mesh, int cell, const DofFunctional& dof,
                                 const FieldView& f, int quad_points = 5) {
  if (dof.is_point) {
    Point xhat{0, 0, 0};
    for (int a = 0; a < 3; ++a) xhat[a] = to_double(dof.point[a]);
    const Point x = mesh.cell_map(cell).apply(xhat);
    return trace_value(f.value(x), f.vector_shape, TraceKind::VALUE, -1, std::max(dof.row, 0),
                       dof.col);
  }
  if (dof.has_cell_weight)
    throw std::invalid_argument("physical_dof_value: interior moments are not meshed");

  if (dof.entity == EntityKind::FACET) {
    const int gf = mesh.cell_facet(cell, dof.entity_index);
    const Facet& fc = mesh.facet(gf);
    const int trace_axis = dof.trace == TraceKind::TANGENTIAL ? 1 - fc.axis : fc.axis;
    if (mesh.dim() == 3 && dof.trace == TraceKind::TANGENTIAL)
      throw std::invalid_argument("physical_dof_value: tangential trace on a 3D face");
    const QuadratureRule rule(mesh.dim() - 1, quad_points);
    double acc = 0;
    for (std::size_t q = 0; q < rule.size(); ++q) {
      const std::array<double, 2> s{rule.points[q][0], rule.points[q][1]};
      const Point x = mesh.facet_point(gf, s);
      const double t =
          trace_value(f.value(x), f.vector_shape, dof.trace, trace_axis, dof.row, dof.col);
      acc += rule.weights[q] * t * dof.weight.eval_double(rule.points[q]);
    }
    return dof.normalized ? acc : acc * fc.measure;
  }
  if (dof.entity == EntityKind::EDGE3D) {
    const int ge = mesh.cell_edge(cell, dof.entity_index);
    const MeshEdge& ed = mesh.edge(ge);
    const QuadratureRule1D rule(quad_points);
    double acc = 0;
    for (std::size_t q = 0; q < rule.points.size(); ++q) {
      const Point x = mesh.edge_point(ge, rule.points[q]);
      const double t =
          trace_value(f.value(x), f.vector_shape, dof.trace, ed.axis, dof.row, dof.col);
      acc += rule.weights[q] * t * dof.weight.eval_double({rule.points[q], 0, 0});
    }
    return dof.normalized ? acc : acc * ed.measure;
  }
  throw std::invalid_argument("physical_dof_value: unsupported degree of freedom");
}

/// Degree-of-freedom interpolant: every global dof is set to its physical
/// value on `f`. Shared dofs are evaluated once per incident cell; the
/// largest disagreement between those evaluations (an internal consistency
/// diagnostic, zero up to quadrature error by construction) is reported
/// through `max_disagreement` when given.
inline Eigen::VectorXd canonical_interpolant(const FESpace& sp, const FieldView& f,
                                             int quad_points = 5,
                                             double* max_disagreement = nullptr) {
  Eigen::VectorXd coef = Eigen::VectorXd::Zero(sp.n_dofs);
  std::vector<char> written(sp.n_dofs, 0);
  double worst = 0;
  for (int c = 0; c < sp.mesh->n_cells(); ++c)
    for (int l = 0; l < sp.n_local(); ++l) {
      const int g = sp.global_dof(c, l);
      const double v = physical_dof_value(*sp.mesh, c, sp.elem.dofs[l], f, quad_points);
      if (written[g])
        worst = std::max(worst, std::abs(v - coef[g]));
      else {
        coef[g] = v;
        written[g] = 1;
      }
    }
  if (max_disagreement) *max_disagreement = worst;
  return coef;
}

/// Reduced interpolant Pi0: vertex dofs (and 3D edge dofs) are set to zero,
/// facet moments are matched. Lets facet loads be transferred exactly while
/// staying bounded on merely H1 fields.
inline Eigen::VectorXd reduced_interpolant(const FESpace& sp, const FieldView& f,
                                           int quad_points = 5) {
  Eigen::VectorXd coef = Eigen::VectorXd::Zero(sp.n_dofs);
  for (int c = 0; c < sp.mesh->n_cells(); ++c)
    for (int l = 0; l < sp.n_local(); ++l) {
      const auto& dof = sp.elem.dofs[l];
      if (dof.entity == EntityKind::VERTEX || dof.entity == EntityKind::EDGE3D) continue;
      coef[sp.global_dof(c, l)] = physical_dof_value(*sp.mesh, c, dof, f, quad_points);
    }
  return coef;
}

/// Cell-average (L2) projection onto a piecewise-constant space: each dof of
/// the P0 element is set to the mean of its component over the cell. This is
/// the projection entering the commuting identities, not the midpoint value.
inline Eigen::VectorXd average_interpolant(const FESpace& sp, const FieldView& f,
                                           int quad_points = 5) {
  for (const auto& dof : sp.elem.dofs)
    if (!dof.is_point || dof.entity != EntityKind::CELL)
      throw std::invalid_argument("average_interpolant: piecewise-constant spaces only");
  Eigen::VectorXd coef = Eigen::VectorXd::Zero(sp.n_dofs);
  const QuadratureRule rule(sp.mesh->dim(), quad_points);
  for (int c = 0; c < sp.mesh->n_cells(); ++c) {
    const AffineMap F = sp.mesh->cell_map(c);
    for (int l = 0; l < sp.n_local(); ++l) {
      const auto& dof = sp.elem.dofs[l];
      double acc = 0;
      for (std::size_t q = 0; q < rule.size(); ++q) {
        const Point x = F.apply(rule.points[q]);
        acc += rule.weights[q] * trace_value(f.value(x), f.vector_shape, TraceKind::VALUE, -1,
                                             std::max(dof.row, 0), dof.col);
      }
      coef[sp.global_dof(c, l)] = acc;  // reference weights sum to one
    }
  }
  return coef;
}

enum class CommutingCheck { DIV_SIGMA, DIV_R, SURJECTIVITY };

/// Largest cell or facet residual of a commuting identity on the given mesh;
/// see the header comment for the three checks. `f` must be matrix-shaped
/// for DIV_SIGMA (and 3D SURJECTIVITY), vector-shaped for DIV_R in 2D and
/// 2D SURJECTIVITY, matrix-shaped for DIV_R in 3D.
inline double commuting_residual(CommutingCheck which, const Mesh& mesh, const FieldView& f,
                                 int quad_points = 5) {
  const int dim = mesh.dim();
  if (which == CommutingCheck::DIV_SIGMA || which == CommutingCheck::DIV_R) {
    const Family family = which == CommutingCheck::DIV_SIGMA
                              ? (dim == 2 ? Family::BDM1_ROW_STRESS : Family::BDM1_ROW_STRESS_3D)
                              : (dim == 2 ? Family::RT0 : Family::RT0_ROW_3D);
    const FESpace sp = build_space(mesh, family);
    const Eigen::VectorXd coef = canonical_interpolant(sp, f, quad_points);
    const QuadratureRule rule(dim, quad_points);
    double worst = 0;
    for (int c = 0; c < mesh.n_cells(); ++c) {
      const AffineMap F = mesh.cell_map(c);
      Eigen::Matrix3d acc = Eigen::Matrix3d::Zero();
      for (std::size_t q = 0; q < rule.size(); ++q) {
        acc += rule.weights[q] * sp.divergence(coef, c, rule.points[q]);
        acc -= rule.weights[q] * f.divergence(F.apply(rule.points[q]));
      }
      worst = std::max(worst, acc.norm());
    }
    return worst;
  }

  // SURJECTIVITY: facet loads applied to f and to Pi0 f agree.
  const FESpace sp =
      build_space(mesh, dim == 2 ? Family::THETA_SERENDIPITY : Family::THETA_UK);
  const Eigen::VectorXd coef = reduced_interpolant(sp, f, quad_points);
  const QuadratureRule rule(dim - 1, quad_points);
  double worst = 0;
  for (int gf = 0; gf < mesh.n_facets(); ++gf) {
    const Facet& fc = mesh.facet(gf);
    const int c = fc.cell_plus >= 0 ? fc.cell_plus : fc.cell_minus;
    const double side = fc.cell_plus >= 0 ? 0.0 : 1.0;
    const auto axes = mesh.facet_param_axes(fc.axis);
    Eigen::Vector3d acc = Eigen::Vector3d::Zero();
    for (std::size_t q = 0; q < rule.size(); ++q) {
      Point xhat{0, 0, 0};
      xhat[fc.axis] = side;
      for (int k = 0; k < dim - 1; ++k) xhat[axes[k]] = rule.points[q][k];
      const std::array<double, 2> s{rule.points[q][0], rule.points[q][1]};
      const Eigen::Matrix3d dv = f.value(mesh.facet_point(gf, s)) - sp.value(coef, c, xhat);
      if (dim == 2) {
        acc(0) += rule.weights[q] * dv(fc.axis, 0);  // (f - Pi0 f) . n
      } else {
        acc += rule.weights[q] * (s_value(3, dv) * Eigen::Vector3d::Unit(fc.axis));
      }
    }
    worst = std::max(worst, (acc * fc.measure).norm());
  }
  return worst;
}

}  // namespace weaksym
