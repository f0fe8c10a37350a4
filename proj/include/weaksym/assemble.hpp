// This file is part of weaksym, a library of rectangular mixed finite
// elements for linear elasticity with weakly imposed stress symmetry.
// Distributed under the BSD 3-Clause license. See LICENSE for details.
//
// Assembly of the three-field saddle system
//
//   [ M  B^T  C^T ] [ sigma ]   [ 0 ]      M_ij = int A phi_i : phi_j
//   [ B   0    0  ] [   u   ] = [ g ]      B_kj = int div phi_j . psi_k
//   [ C   0    0  ] [ gamma ]   [ 0 ]      C_lj = int as(phi_j) . chi_l
//
// with g_k = int f . psi_k. Unknown ordering is stress, then displacement,
// then rotation. The mesh is uniform, so the local blocks are identical on
// every cell and are tabulated once; only the load integrates per cell.
// The problem is posed with displacement as the natural (clamped) boundary
// condition, so no boundary term enters here; consistency tests with
// non-vanishing boundary displacement add their own stress-block load.

#pragma once

#include <weaksym/fespace.hpp>
#include <weaksym/interpolate.hpp>
#include <weaksym/material.hpp>
#include <weaksym/quadrature.hpp>

#include <Eigen/Sparse>

#include <vector>

namespace weaksym {

struct SaddleSystem {
  const Mesh* mesh = nullptr;
  Material material;
  FESpace sigma, u, gamma;
  Eigen::SparseMatrix<double> M, B, C;
  Eigen::VectorXd g;

  int n_sigma() const { return sigma.n_dofs; }
  int n_u() const { return u.n_dofs; }
  int n_gamma() const { return gamma.n_dofs; }
  int n_total() const { return n_sigma() + n_u() + n_gamma(); }

  /// The full symmetric indefinite matrix in the sigma / u / gamma ordering.
  Eigen::SparseMatrix<double> full_matrix() const {
    std::vector<Eigen::Triplet<double>> trip;
    trip.reserve(M.nonZeros() + 2 * B.nonZeros() + 2 * C.nonZeros());
    const int ou = n_sigma();
    const int og = n_sigma() + n_u();
    for (int k = 0; k < M.outerSize(); ++k)
      for (Eigen::SparseMatrix<double>::InnerIterator it(M, k); it; ++it)
        trip.emplace_back(it.row(), it.col(), it.value());
    for (int k = 0; k < B.outerSize(); ++k)
      for (Eigen::SparseMatrix<double>::InnerIterator it(B, k); it; ++it) {
        trip.emplace_back(ou + it.row(), it.col(), it.value());
        trip.emplace_back(it.col(), ou + it.row(), it.value());
      }
    for (int k = 0; k < C.outerSize(); ++k)
      for (Eigen::SparseMatrix<double>::InnerIterator it(C, k); it; ++it) {
        trip.emplace_back(og + it.row(), it.col(), it.value());
        trip.emplace_back(it.col(), og + it.row(), it.value());
      }
    Eigen::SparseMatrix<double> K(n_total(), n_total());
    K.setFromTriplets(trip.begin(), trip.end());
    return K;
  }

  /// Right-hand side [sigma_load; g; 0]; the stress slot is zero for the
  /// clamped problem and carries boundary-displacement data in consistency
  /// tests.
  Eigen::VectorXd full_rhs(const Eigen::VectorXd* sigma_load = nullptr) const {
    Eigen::VectorXd rhs = Eigen::VectorXd::Zero(n_total());
    if (sigma_load) {
      if (sigma_load->size() != n_sigma())
        throw std::invalid_argument("full_rhs: stress load size mismatch");
      rhs.head(n_sigma()) = *sigma_load;
    }
    rhs.segment(n_sigma(), n_u()) = g;
    return rhs;
  }
};

namespace detail {

/// Values (and divergences, for Piola spaces) of the pushed nodal basis at
/// the reference quadrature points; identical on every cell of a uniform
/// mesh.
struct TabulatedBasis {
  std::vector<std::vector<Eigen::Matrix3d>> value;  // [dof][qpt]
  std::vector<std::vector<Eigen::Matrix3d>> div;    // [dof][qpt], Piola only
};

inline TabulatedBasis tabulate(const FESpace& sp, const QuadratureRule& rule) {
  const AffineMap F = sp.mesh->cell_map(0);
  const bool vec = sp.elem.basis.front().is_vector();
  TabulatedBasis tab;
  tab.value.resize(sp.n_local());
  if (sp.elem.map == MapKind::PIOLA) tab.div.resize(sp.n_local());
  for (int l = 0; l < sp.n_local(); ++l) {
    tab.value[l].reserve(rule.size());
    for (std::size_t q = 0; q < rule.size(); ++q)
      tab.value[l].push_back(push_value(F, sp.elem.map, vec, eval_padded(sp.elem.nodal[l], rule.points[q])));
    if (sp.elem.map == MapKind::PIOLA) {
      tab.div[l].reserve(rule.size());
      for (std::size_t q = 0; q < rule.size(); ++q)
        tab.div[l].push_back(push_divergence(F, sp.elem.map, eval_padded(sp.nodal_div[l], rule.points[q])));
    }
  }
  return tab;
}

inline double frobenius(const Eigen::Matrix3d& a, const Eigen::Matrix3d& b) {
  return (a.array() * b.array()).sum();
}

}  // namespace detail

/// Assemble the saddle system for prebuilt spaces sharing one mesh.
inline SaddleSystem assemble(FESpace sigma_space, FESpace u_space, FESpace gamma_space,
                             const Material& material, const FieldView& load,
                             int quad_points = 5) {
  material.validate();
  if (sigma_space.mesh != u_space.mesh || u_space.mesh != gamma_space.mesh)
    throw std::invalid_argument("assemble: spaces live on different meshes");
  if (sigma_space.elem.map != MapKind::PIOLA)
    throw std::invalid_argument("assemble: stress space must be H(div)-mapped");

  SaddleSystem sys;
  sys.mesh = sigma_space.mesh;
  sys.material = material;
  sys.sigma = std::move(sigma_space);
  sys.u = std::move(u_space);
  sys.gamma = std::move(gamma_space);

  const Mesh& mesh = *sys.mesh;
  const int dim = mesh.dim();
  const QuadratureRule rule(dim, quad_points);
  const double vol = mesh.cell_volume();

  const detail::TabulatedBasis ts = detail::tabulate(sys.sigma, rule);
  const detail::TabulatedBasis tu = detail::tabulate(sys.u, rule);
  const detail::TabulatedBasis tg = detail::tabulate(sys.gamma, rule);

  const int ns = sys.sigma.n_local(), nu = sys.u.n_local(), ng = sys.gamma.n_local();

  // Local blocks, shared by all cells.
  Eigen::MatrixXd Ml = Eigen::MatrixXd::Zero(ns, ns);
  Eigen::MatrixXd Bl = Eigen::MatrixXd::Zero(nu, ns);
  Eigen::MatrixXd Cl = Eigen::MatrixXd::Zero(ng, ns);
  for (std::size_t q = 0; q < rule.size(); ++q) {
    const double w = rule.weights[q] * vol;
    std::vector<Eigen::Matrix3d> asig(ns);
    for (int l = 0; l < ns; ++l) asig[l] = material.compliance(dim, ts.value[l][q]);
    for (int l = 0; l < ns; ++l)
      for (int m = 0; m <= l; ++m) Ml(l, m) += w * detail::frobenius(asig[l], ts.value[m][q]);
    for (int k = 0; k < nu; ++k)
      for (int l = 0; l < ns; ++l)
        Bl(k, l) += w * ts.div[l][q].col(0).dot(tu.value[k][q].col(0));
    for (int k = 0; k < ng; ++k)
      for (int l = 0; l < ns; ++l) {
        const Eigen::Vector3d as = asym_value(dim, ts.value[l][q]);
        const double chi = dim == 2 ? tg.value[k][q](0, 0) * as(0)
                                    : tg.value[k][q].col(0).dot(as);
        Cl(k, l) += w * chi;
      }
  }
  for (int l = 0; l < ns; ++l)
    for (int m = l + 1; m < ns; ++m) Ml(l, m) = Ml(m, l);

  // Global scatter; shared stress dofs accumulate, u / gamma dofs are
  // cell-local.
  std::vector<Eigen::Triplet<double>> tm, tb, tc;
  tm.reserve(static_cast<std::size_t>(mesh.n_cells()) * ns * ns);
  tb.reserve(static_cast<std::size_t>(mesh.n_cells()) * nu * ns);
  tc.reserve(static_cast<std::size_t>(mesh.n_cells()) * ng * ns);
  sys.g = Eigen::VectorXd::Zero(sys.u.n_dofs);
  for (int c = 0; c < mesh.n_cells(); ++c) {
    const AffineMap F = mesh.cell_map(c);
    for (int l = 0; l < ns; ++l) {
      const int gl = sys.sigma.global_dof(c, l);
      for (int m = 0; m < ns; ++m) tm.emplace_back(gl, sys.sigma.global_dof(c, m), Ml(l, m));
      for (int k = 0; k < nu; ++k) tb.emplace_back(sys.u.global_dof(c, k), gl, Bl(k, l));
      for (int k = 0; k < ng; ++k) tc.emplace_back(sys.gamma.global_dof(c, k), gl, Cl(k, l));
    }
    for (int k = 0; k < nu; ++k) {
      double acc = 0;
      for (std::size_t q = 0; q < rule.size(); ++q)
        acc += rule.weights[q] * vol *
               load.value(F.apply(rule.points[q])).col(0).dot(tu.value[k][q].col(0));
      sys.g[sys.u.global_dof(c, k)] += acc;
    }
  }
  sys.M.resize(sys.sigma.n_dofs, sys.sigma.n_dofs);
  sys.M.setFromTriplets(tm.begin(), tm.end());
  sys.B.resize(sys.u.n_dofs, sys.sigma.n_dofs);
  sys.B.setFromTriplets(tb.begin(), tb.end());
  sys.C.resize(sys.gamma.n_dofs, sys.sigma.n_dofs);
  sys.C.setFromTriplets(tc.begin(), tc.end());
  return sys;
}

/// Convenience assembly with the standard triple for the dimension: the
/// given stress family against piecewise-constant displacement and rotation.
inline SaddleSystem assemble(const Mesh& mesh, const Material& material, const FieldView& load,
                             Family sigma_family, int quad_points = 5) {
  return assemble(build_space(mesh, sigma_family), build_space(mesh, Family::P0_VEC),
                  build_space(mesh, Family::P0_ROT), material, load, quad_points);
}

inline SaddleSystem assemble(const Mesh& mesh, const Material& material, const FieldView& load,
                             int quad_points = 5) {
  return assemble(mesh, material, load,
                  mesh.dim() == 2 ? Family::BDM1_ROW_STRESS : Family::BDM1_ROW_STRESS_3D,
                  quad_points);
}

}  // namespace weaksym
