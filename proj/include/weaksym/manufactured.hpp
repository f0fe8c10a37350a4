// This file is part of weaksym, a library of rectangular mixed finite
// elements for linear elasticity with weakly imposed stress symmetry.
// Distributed under the BSD 3-Clause license. See LICENSE for details.
//
// Manufactured solutions: from a smooth displacement u the exact stress
// sigma = 2 mu eps(u) + lambda tr(eps(u)) I, the rotation gamma = skew part
// of grad u in the multiplier convention, and the body force f = div sigma
// are derived analytically. Construction validates itself: u must vanish on
// the boundary (the problem is clamped) unless interior-restriction mode is
// requested, A sigma must invert back to eps(u), and the exact triple must
// satisfy the first weak equation against every discrete stress test field.

#pragma once

#include <weaksym/assemble.hpp>

#include <random>

namespace weaksym {

/// Consistency load s_j = oint_dOmega (phi_j n_out) . u ds appearing in the
/// first weak equation when the exact displacement does not vanish on the
/// boundary (interior-restriction mode). Zero for clamped cases.
inline Eigen::VectorXd boundary_load(const FESpace& sigma_space, const FieldView& u,
                                     int quad_points = 5) {
  const Mesh& mesh = *sigma_space.mesh;
  const int dim = mesh.dim();
  if (sigma_space.elem.map != MapKind::PIOLA)
    throw std::invalid_argument("boundary_load: stress space must be H(div)-mapped");
  Eigen::VectorXd s = Eigen::VectorXd::Zero(sigma_space.n_dofs);
  const QuadratureRule rule(dim - 1, quad_points);
  for (const int f : mesh.boundary_facets()) {
    const Facet& fc = mesh.facet(f);
    // A boundary facet with no cell on its +normal side is the high face of
    // cell_minus (outward normal +e_axis); otherwise it is the low face of
    // cell_plus (outward normal -e_axis).
    const bool high = fc.cell_plus < 0;
    const int cell = high ? fc.cell_minus : fc.cell_plus;
    const double sign = high ? 1.0 : -1.0;
    const AffineMap F = mesh.cell_map(cell);
    const std::array<int, 2> par = mesh.facet_param_axes(fc.axis);
    for (std::size_t q = 0; q < rule.size(); ++q) {
      Point xhat{0, 0, 0};
      xhat[fc.axis] = high ? 1.0 : 0.0;
      xhat[par[0]] = rule.points[q][0];
      if (dim == 3) xhat[par[1]] = rule.points[q][1];
      const Eigen::Vector3d uval = u.value(F.apply(xhat)).col(0);
      const double w = rule.weights[q] * fc.measure * sign;
      const bool vec = sigma_space.elem.basis.front().is_vector();
      for (int l = 0; l < sigma_space.n_local(); ++l) {
        const Eigen::Matrix3d tau =
            push_value(F, MapKind::PIOLA, vec, eval_padded(sigma_space.elem.nodal[l], xhat));
        s[sigma_space.global_dof(cell, l)] += w * tau.col(fc.axis).dot(uval);
      }
    }
  }
  return s;
}

/// Exact stress 2 mu eps(u) + lambda_eff tr(eps(u)) I with first derivatives
/// (so the matrix field knows its own divergence).
inline MatrixField stress_from_displacement(const VectorField& u, const Material& material) {
  const int dim = u.dim;
  const double mu = material.mu;
  const double le = material.lambda_eff(dim);
  MatrixField s;
  s.dim = dim;
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) {
      ScalarField c;
      c.value = [u, mu, le, i, j, dim](const Point& x) {
        double v = mu * (u.comp[i].grad(x)(j) + u.comp[j].grad(x)(i));
        if (i == j) {
          double tr = 0;
          for (int k = 0; k < dim; ++k) tr += u.comp[k].grad(x)(k);
          v += le * tr;
        }
        return v;
      };
      c.grad = [u, mu, le, i, j, dim](const Point& x) {
        Eigen::Vector3d g = Eigen::Vector3d::Zero();
        for (int k = 0; k < dim; ++k) {
          double d = mu * (u.comp[i].hess(x)(j, k) + u.comp[j].hess(x)(i, k));
          if (i == j)
            for (int m = 0; m < dim; ++m) d += le * u.comp[m].hess(x)(m, k);
          g(k) = d;
        }
        return g;
      };
      s.comp.push_back(std::move(c));
    }
  return s;
}

/// Rotation multiplier of u: the skew part of grad u in the slot order of
/// the asym pairing, so that gamma . as(tau) = skew(grad u) : tau. In 2D a
/// scalar (d_y u_0 - d_x u_1)/2; in 3D the axial vector (half the curl).
inline FieldView rotation_from_displacement(const VectorField& u) {
  const int dim = u.dim;
  if (dim == 2) {
    ScalarField g;
    g.value = [u](const Point& x) { return 0.5 * (u.comp[0].grad(x)(1) - u.comp[1].grad(x)(0)); };
    return view(g, 2);
  }
  VectorField g;
  g.dim = 3;
  const std::array<std::array<int, 2>, 3> slot{{{2, 1}, {0, 2}, {1, 0}}};
  for (const auto [i, j] : slot) {
    ScalarField c;
    c.value = [u, i = i, j = j](const Point& x) {
      return 0.5 * (u.comp[i].grad(x)(j) - u.comp[j].grad(x)(i));
    };
    g.comp.push_back(std::move(c));
  }
  return view(g);
}

/// Body force f = div sigma, assembled from second derivatives of u.
inline VectorField force_from_displacement(const VectorField& u, const Material& material) {
  const int dim = u.dim;
  const double mu = material.mu;
  const double le = material.lambda_eff(dim);
  VectorField f;
  f.dim = dim;
  for (int i = 0; i < dim; ++i) {
    ScalarField c;
    c.value = [u, mu, le, i, dim](const Point& x) {
      double v = 0;
      for (int j = 0; j < dim; ++j) {
        const Eigen::Matrix3d hi = u.comp[i].hess(x);
        const Eigen::Matrix3d hj = u.comp[j].hess(x);
        v += mu * (hi(j, j) + hj(i, j)) + le * hj(j, i);
      }
      return v;
    };
    f.comp.push_back(std::move(c));
  }
  return f;
}

struct ManufacturedCase {
  int dim = 2;
  Material material;
  VectorField u;
  MatrixField sigma;
  FieldView gamma;
  VectorField f;
  bool interior_restriction = false;
  Point lo{0, 0, 0}, hi{1, 1, 1};
};

/// Largest first-equation weak residual over the nodal stress basis of the
/// default stress family on `mesh`:
///
///   r_j = int A sigma : phi_j + u . div phi_j + gamma . as phi_j
///         - oint (phi_j n_out) . u,
///
/// which vanishes identically for a consistent (sigma, u, gamma) triple.
/// The boundary term is nonzero only in interior-restriction mode.
inline double weak_residual(const ManufacturedCase& mc, const Mesh& mesh, int quad_points = 9) {
  const int dim = mesh.dim();
  const FESpace ss = build_space(
      mesh, dim == 2 ? Family::BDM1_ROW_STRESS : Family::BDM1_ROW_STRESS_3D);
  Eigen::VectorXd r = Eigen::VectorXd::Zero(ss.n_dofs);
  if (mc.interior_restriction) r = -boundary_load(ss, view(mc.u), quad_points);

  const QuadratureRule rule(dim, quad_points);
  const detail::TabulatedBasis ts = detail::tabulate(ss, rule);
  const double vol = mesh.cell_volume();
  for (int c = 0; c < mesh.n_cells(); ++c) {
    const AffineMap F = mesh.cell_map(c);
    for (std::size_t q = 0; q < rule.size(); ++q) {
      const Point x = F.apply(rule.points[q]);
      const double w = rule.weights[q] * vol;
      const Eigen::Matrix3d asig = mc.material.compliance(dim, mc.sigma.value(x));
      const Eigen::Vector3d uval = mc.u.value(x);
      const Eigen::Matrix3d gval = mc.gamma.value(x);
      for (int l = 0; l < ss.n_local(); ++l) {
        const Eigen::Vector3d as = asym_value(dim, ts.value[l][q]);
        const double rot = dim == 2 ? gval(0, 0) * as(0) : gval.col(0).dot(as);
        r[ss.global_dof(c, l)] +=
            w * ((asig.array() * ts.value[l][q].array()).sum() +
                 uval.dot(ts.div[l][q].col(0)) + rot);
      }
    }
  }
  return r.lpNorm<Eigen::Infinity>();
}

/// Build and validate a manufactured case from a displacement field.
/// Checks, in order: u vanishes on the boundary of [lo, hi] (unless
/// interior-restriction mode is requested), the compliance inverts the
/// constructed stress back to eps(u) at random interior points, and the
/// exact triple satisfies the first weak equation on a small mesh.
inline ManufacturedCase make_case(const VectorField& u, const Material& material,
                                  bool interior_restriction = false, Point lo = {0, 0, 0},
                                  Point hi = {1, 1, 1}) {
  material.validate();
  const int dim = u.dim;
  if (dim != 2 && dim != 3) throw std::invalid_argument("make_case: dim must be 2 or 3");

  if (!interior_restriction) {
    // Sample a grid on every face of the box.
    const int n = 7;
    double worst = 0;
    for (int a = 0; a < dim; ++a)
      for (const double plane : {lo[a], hi[a]})
        for (int i = 0; i <= n; ++i)
          for (int j = 0; j <= (dim == 3 ? n : 0); ++j) {
            Point x = lo;
            x[a] = plane;
            const int t0 = (a + 1) % dim, t1 = (a + 2) % dim;
            x[t0] = lo[t0] + (hi[t0] - lo[t0]) * i / n;
            if (dim == 3) x[t1] = lo[t1] + (hi[t1] - lo[t1]) * j / n;
            worst = std::max(worst, u.value(x).lpNorm<Eigen::Infinity>());
          }
    if (worst > 1e-12)
      throw std::invalid_argument(
          "make_case: displacement does not vanish on the boundary (max |u| = " +
          std::to_string(worst) + "); the problem is clamped");
  }

  ManufacturedCase mc;
  mc.dim = dim;
  mc.material = material;
  mc.u = u;
  mc.sigma = stress_from_displacement(u, material);
  mc.gamma = rotation_from_displacement(u);
  mc.f = force_from_displacement(u, material);
  mc.interior_restriction = interior_restriction;
  mc.lo = lo;
  mc.hi = hi;

  // A sigma must reproduce eps(u) pointwise: the compliance used downstream
  // inverts the constitutive map used here.
  std::mt19937 gen(29);
  std::uniform_real_distribution<double> unif(0.1, 0.9);
  for (int trial = 0; trial < 25; ++trial) {
    Point x{0, 0, 0};
    for (int a = 0; a < dim; ++a) x[a] = lo[a] + (hi[a] - lo[a]) * unif(gen);
    const Eigen::Matrix3d strain = material.compliance(dim, mc.sigma.value(x));
    const Eigen::Matrix3d J = mc.u.jacobian(x);
    const Eigen::Matrix3d eps = 0.5 * (J + J.transpose());
    if ((strain - eps).lpNorm<Eigen::Infinity>() > 1e-10)
      throw std::logic_error("make_case: compliance does not invert the constructed stress");
  }

  // The exact triple must satisfy the first weak equation against every
  // discrete stress test field (validates the rotation sign convention).
  std::array<int, 3> div2{2, 2, 2};
  const Mesh probe(dim, div2, lo, hi);
  const double res = weak_residual(mc, probe);
  if (!(res <= 1e-8))
    throw std::logic_error("make_case: weak residual " + std::to_string(res) +
                           " exceeds 1e-8; rotation or force convention is inconsistent");
  return mc;
}

/// Default smooth verification case: non-polynomial, vanishing on the unit
/// box boundary, exciting stress, displacement and rotation alike.
inline ManufacturedCase default_case(int dim, Material material = Material{1, 1}) {
  VectorField u;
  u.dim = dim;
  if (dim == 2) {
    u.comp.push_back(separable_field(2, {factor_sin_pi(), factor_sin_pi(), factor_constant(1)}));
    u.comp.push_back(separable_field(2, {factor_bubble(), factor_bubble(), factor_constant(1)}));
  } else {
    u.comp.push_back(separable_field(3, {factor_sin_pi(), factor_sin_pi(), factor_sin_pi()}));
    u.comp.push_back(separable_field(3, {factor_bubble(), factor_bubble(), factor_sin_pi()}));
    u.comp.push_back(separable_field(3, {factor_sin_pi(), factor_bubble(), factor_bubble()}));
  }
  return make_case(u, material);
}

}  // namespace weaksym
