// This file is part of weaksym, a library of rectangular mixed finite
// elements for linear elasticity with weakly imposed stress symmetry.
// Distributed under the BSD 3-Clause license. See LICENSE for details.
//
// Discrete stability (inf-sup) smoke test for the coupling block
//
//   b(tau; v, q) = (div tau, v) + (as tau, q),
//
// measured with the stress in the H(div) norm and the displacement /
// rotation pair in L^2. In these norms the constant
//
//   beta = inf_(v,q) sup_tau b(tau; v,q) / (||tau||_Hdiv ||(v,q)||_L2)
//
// is the smallest singular value of D = [B; C] restricted off its kernel,
// and is expected to stay bounded away from zero under refinement. It is
// computed as the smallest eigenvalue of the generalized problem
// (D X^-1 D^T) w = beta^2 N w with X the H(div) Gram matrix of the stress
// space and N the (diagonal) L^2 mass of displacement x rotation.

#pragma once

#include <weaksym/assemble.hpp>

#include <Eigen/Dense>
#include <Eigen/SparseCholesky>

namespace weaksym {

/// Smallest constrained singular value of the coupling block for the given
/// stress family (with piecewise-constant displacement and rotation).
inline double infsup_beta(const Mesh& mesh, Family sigma_family, int quad_points = 5) {
  // Unit compliance (A = identity) so sys.M is the plain stress L^2 mass.
  VectorField zero;
  zero.dim = mesh.dim();
  for (int c = 0; c < mesh.dim(); ++c) zero.comp.push_back(constant_scalar_field(0));
  const SaddleSystem sys =
      assemble(mesh, Material{0.5, 0}, view(zero), sigma_family, quad_points);

  const int dim = mesh.dim();
  const int ns = sys.n_sigma();
  const int m = sys.n_u() + sys.n_gamma();
  const double vol = mesh.cell_volume();

  // H(div) Gram X = L^2 mass + divergence Gram. The divergence part is
  // tabulated once; the mesh is uniform so the local block repeats.
  const QuadratureRule rule(dim, quad_points);
  const detail::TabulatedBasis ts = detail::tabulate(sys.sigma, rule);
  const int nl = sys.sigma.n_local();
  Eigen::MatrixXd Gl = Eigen::MatrixXd::Zero(nl, nl);
  for (std::size_t q = 0; q < rule.size(); ++q) {
    const double w = rule.weights[q] * vol;
    for (int l = 0; l < nl; ++l)
      for (int k = 0; k <= l; ++k)
        Gl(l, k) += w * ts.div[l][q].col(0).dot(ts.div[k][q].col(0));
  }
  std::vector<Eigen::Triplet<double>> trip;
  trip.reserve(static_cast<std::size_t>(mesh.n_cells()) * nl * nl);
  for (int c = 0; c < mesh.n_cells(); ++c)
    for (int l = 0; l < nl; ++l)
      for (int k = 0; k < nl; ++k)
        trip.emplace_back(sys.sigma.global_dof(c, l), sys.sigma.global_dof(c, k),
                          Gl(std::max(l, k), std::min(l, k)));
  Eigen::SparseMatrix<double> X(ns, ns);
  X.setFromTriplets(trip.begin(), trip.end());
  X += sys.M;

  // Stack D = [B; C] as a dense n x ns matrix (m is small: a few per cell).
  Eigen::MatrixXd Dt = Eigen::MatrixXd::Zero(ns, m);
  for (int k = 0; k < sys.B.outerSize(); ++k)
    for (Eigen::SparseMatrix<double>::InnerIterator it(sys.B, k); it; ++it)
      Dt(it.col(), it.row()) = it.value();
  for (int k = 0; k < sys.C.outerSize(); ++k)
    for (Eigen::SparseMatrix<double>::InnerIterator it(sys.C, k); it; ++it)
      Dt(it.col(), sys.n_u() + it.row()) = it.value();

  Eigen::SimplicialLLT<Eigen::SparseMatrix<double>> llt(X);
  if (llt.info() != Eigen::Success)
    throw std::runtime_error("infsup_beta: H(div) Gram matrix is not positive definite");
  const Eigen::MatrixXd S = Dt.transpose() * llt.solve(Dt);

  // N is vol * identity: every displacement / rotation basis function is the
  // constant 1 on one cell.
  const Eigen::MatrixXd N = vol * Eigen::MatrixXd::Identity(m, m);
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(S, N);
  if (es.info() != Eigen::Success)
    throw std::runtime_error("infsup_beta: eigenvalue computation failed");
  return std::sqrt(std::max(es.eigenvalues().minCoeff(), 0.0));
}

/// Default stress family for the dimension.
inline double infsup_beta(const Mesh& mesh, int quad_points = 5) {
  return infsup_beta(
      mesh, mesh.dim() == 2 ? Family::BDM1_ROW_STRESS : Family::BDM1_ROW_STRESS_3D, quad_points);
}

}  // namespace weaksym
