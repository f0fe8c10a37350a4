// This file is part of weaksym, a library of rectangular mixed finite
// elements for linear elasticity with weakly imposed stress symmetry.
// Distributed under the BSD 3-Clause license. See LICENSE for details.

#include <weaksym/fespace.hpp>
#include <weaksym/fields.hpp>
#include <weaksym/interpolate.hpp>
#include <weaksym/piola.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <random>

using namespace weaksym;

namespace {

Poly lin2(int c0, int cx, int cy) {
  return Poly::constant(2, c0) + Poly::monomial(2, {1, 0, 0}) * Rational(cx) +
         Poly::monomial(2, {0, 1, 0}) * Rational(cy);
}
Poly lin3(int c0, int cx, int cy, int cz) {
  return Poly::constant(3, c0) + Poly::monomial(3, {1, 0, 0}) * Rational(cx) +
         Poly::monomial(3, {0, 1, 0}) * Rational(cy) +
         Poly::monomial(3, {0, 0, 1}) * Rational(cz);
}

FieldView mapped_view(const MappedField& mf, bool vector_shape, int dim) {
  FieldView v;
  v.dim = dim;
  v.vector_shape = vector_shape;
  v.value = [mf](const Point& x) { return mf.value(x); };
  return v;
}

/// Physical-dual check: every reference dof of the pushed nodal basis, when
/// realised as the physical functional on the mapped cell, still evaluates
/// to the Kronecker delta. This is the property that makes the global
/// scatter free of signs and scalings.
void check_physical_duality(const Mesh& mesh, const FESpace& sp, const std::vector<int>& dofs) {
  const bool vec = sp.elem.basis.front().is_vector();
  const AffineMap F = mesh.cell_map(0);
  for (const int l : dofs) {
    const MappedField mf{&sp.elem.nodal[l], F, sp.elem.map};
    const FieldView fv = mapped_view(mf, vec, mesh.dim());
    for (const int j : dofs) {
      const double v = physical_dof_value(mesh, 0, sp.elem.dofs[j], fv, 6);
      CHECK(std::abs(v - (j == l ? 1.0 : 0.0)) < 1e-12);
    }
  }
}

std::vector<int> all_indices(int n) {
  std::vector<int> idx(n);
  for (int i = 0; i < n; ++i) idx[i] = i;
  return idx;
}
std::vector<int> strided_indices(int n, int stride) {
  std::vector<int> idx;
  for (int i = 0; i < n; i += stride) idx.push_back(i);
  return idx;
}

}  // namespace

TEST_CASE("push-forward values and divergences", "[piola]") {
  AffineMap F;
  F.dim = 2;
  F.h = {0.5, 0.5, 1};

  SECTION("H(div) map scales the identity by 1/h on a square cell") {
    // (1/det B) I B^T = 4 * diag(1/2, 1/2) = 2 I.
    Eigen::Matrix3d ref = Eigen::Matrix3d::Zero();
    ref.topLeftCorner(2, 2).setIdentity();
    const Eigen::Matrix3d out = push_value(F, MapKind::PIOLA, false, ref);
    CHECK(out(0, 0) == Catch::Approx(2.0).margin(1e-15));
    CHECK(out(1, 1) == Catch::Approx(2.0).margin(1e-15));
    CHECK(std::abs(out(0, 1)) + std::abs(out(1, 0)) < 1e-15);
  }
  SECTION("anisotropic matrix push scales columns") {
    AffineMap G;
    G.dim = 2;
    G.h = {0.5, 1.0 / 3.0, 1};
    Eigen::Matrix3d ref = Eigen::Matrix3d::Zero();
    ref(0, 0) = 1;
    ref(0, 1) = 2;
    ref(1, 0) = 3;
    ref(1, 1) = 4;
    const Eigen::Matrix3d out = push_value(G, MapKind::PIOLA, false, ref);
    CHECK(out(0, 0) == Catch::Approx(3.0).margin(1e-14));
    CHECK(out(0, 1) == Catch::Approx(4.0).margin(1e-14));
    CHECK(out(1, 0) == Catch::Approx(9.0).margin(1e-14));
    CHECK(out(1, 1) == Catch::Approx(8.0).margin(1e-14));
    // Reference divergence (1, 2) maps to (6, 12).
    Eigen::Matrix3d dv = Eigen::Matrix3d::Zero();
    dv(0, 0) = 1;
    dv(1, 0) = 2;
    const Eigen::Matrix3d pd = push_divergence(G, MapKind::PIOLA, dv);
    CHECK(pd(0, 0) == Catch::Approx(6.0).margin(1e-13));
    CHECK(pd(1, 0) == Catch::Approx(12.0).margin(1e-13));
  }
  SECTION("vector Piola push") {
    AffineMap G;
    G.dim = 2;
    G.h = {0.5, 0.25, 1};
    Eigen::Matrix3d ref = Eigen::Matrix3d::Zero();
    ref(0, 0) = 1;
    ref(1, 0) = 1;
    const Eigen::Matrix3d out = push_value(G, MapKind::PIOLA, true, ref);
    CHECK(out(0, 0) == Catch::Approx(4.0).margin(1e-14));
    CHECK(out(1, 0) == Catch::Approx(2.0).margin(1e-14));
  }
  SECTION("value map passes through and identity map is neutral") {
    Eigen::Matrix3d ref = Eigen::Matrix3d::Zero();
    ref.topLeftCorner(2, 2).setRandom();
    CHECK((push_value(F, MapKind::VALUE, false, ref) - ref).norm() == 0);
    AffineMap id;
    id.dim = 2;
    CHECK((push_value(id, MapKind::PIOLA, false, ref) - ref).norm() < 1e-15);
    CHECK_THROWS_AS(push_divergence(F, MapKind::VALUE, ref), std::invalid_argument);
  }
}

TEST_CASE("face loads are recoverable from wedge data", "[piola][wedge]") {
  // On a face with normal e_a the wedge components of the rows of q carry
  // exactly the entries q_ij with j != a, which are the entries S(q) e_a
  // depends on. Reconstruct and compare against the direct formula.
  std::mt19937 gen(5);
  std::uniform_real_distribution<double> dist(-2, 2);
  for (int rep = 0; rep < 20; ++rep) {
    Eigen::Matrix3d q;
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) q(i, j) = dist(gen);
    for (int a = 0; a < 3; ++a) {
      // Invert the signed single-component wedge table column by column.
      Eigen::Matrix3d rec = Eigen::Matrix3d::Zero();
      const auto comps = wedge_components(a);
      for (int i = 0; i < 3; ++i)
        for (const int c : comps) {
          const double w = trace_value(q, false, TraceKind::WEDGE, a, i, c);
          int j = -1;
          double sign = 1;
          switch (a) {
            case 0: j = (c == 0) ? 2 : 1; sign = (c == 0) ? 1 : -1; break;
            case 1: j = (c == 1) ? 0 : 2; sign = (c == 1) ? 1 : -1; break;
            case 2: j = (c == 0) ? 0 : 1; sign = (c == 0) ? -1 : 1; break;
          }
          rec(i, j) = sign * w;
        }
      Eigen::Vector3d sn = Eigen::Vector3d::Zero();
      for (int j = 0; j < 3; ++j) {
        if (j == a) {
          for (int i = 0; i < 3; ++i)
            if (i != a) sn(a) += rec(i, i);
        } else {
          sn(j) = -rec(a, j);
        }
      }
      const Eigen::Vector3d direct = s_value(3, q) * Eigen::Vector3d::Unit(a);
      CHECK((sn - direct).norm() < 1e-14);
    }
  }
}

TEST_CASE("global spaces: sizes, sharing and determinism", "[fespace]") {
  SECTION("frozen dof counts") {
    const Mesh m22 = Mesh::unit(2, 2);
    CHECK(build_space(m22, Family::P0_VEC).n_dofs == 8);
    CHECK(build_space(m22, Family::RT0).n_dofs == 12);
    const Mesh m11 = Mesh::unit(2, 1);
    CHECK(build_space(m11, Family::BDM1_ROW_STRESS).n_dofs == 16);
    const Mesh m21(2, {2, 1, 1});
    CHECK(build_space(m21, Family::BDM1_ROW_STRESS).n_dofs == 28);
    const FESpace th = build_space(m22, Family::THETA_SERENDIPITY);
    CHECK(th.n_dofs == 42);
    CHECK(th.block_offset[2] == 18);  // 9 vertices x 2 components first

    const Mesh c1 = Mesh::unit(3, 1);
    const FESpace uk = build_space(c1, Family::THETA_UK);
    CHECK(uk.n_dofs == 108);
    CHECK(uk.per_entity[1] == 6);
    CHECK(uk.per_entity[2] == 6);
    CHECK(uk.block_offset[2] == 72);
    const Mesh c2 = Mesh::unit(3, 2);
    CHECK(build_space(c2, Family::BDM1_ROW_STRESS_3D).n_dofs == 324);
    CHECK(build_space(c2, Family::RT0_ROW_3D).n_dofs == 108);
  }
  SECTION("adjacent cells share the facet dofs with identical numbering") {
    const Mesh m(2, {2, 1, 1});
    const FESpace sp = build_space(m, Family::BDM1_ROW_STRESS);
    // Local facet (axis 0, side 1) of cell 0 is (axis 0, side 0) of cell 1;
    // the element orders dofs facet-major, four per facet.
    for (int k = 0; k < 4; ++k)
      CHECK(sp.global_dof(0, 4 + k) == sp.global_dof(1, k));
    for (int k = 0; k < 4; ++k)
      CHECK(sp.global_dof(0, k) != sp.global_dof(1, k));
  }
  SECTION("rebuilding gives the identical layout") {
    const Mesh m = Mesh::unit(2, 3);
    const FESpace a = build_space(m, Family::THETA_SIMPLIFIED);
    const FESpace b = build_space(m, Family::THETA_SIMPLIFIED);
    CHECK(a.cell_dofs == b.cell_dofs);
    CHECK(a.n_dofs == b.n_dofs);
  }
  SECTION("interior-moment elements are reference-level only") {
    const Mesh m = Mesh::unit(2, 1);
    CHECK_THROWS_AS(build_space(m, Family::SIGMA_HIGHER, 1), std::invalid_argument);
  }
}

TEST_CASE("pushed nodal bases stay dual to the physical functionals", "[fespace][piola]") {
  // Anisotropic single-cell meshes; exactness here is what licenses the
  // sign- and scale-free assembly scatter.
  const Mesh m2(2, {1, 1, 1}, {0, 0, 0}, {0.5, 1.0 / 3.0, 1});

  SECTION("2D families, all dofs") {
    for (const Family f : {Family::P0_VEC, Family::P0_ROT, Family::RT0, Family::SERENDIPITY2,
                           Family::THETA_SERENDIPITY, Family::THETA_SIMPLIFIED,
                           Family::SIGMA_SIMPLIFIED, Family::BDM1_ROW_STRESS}) {
      INFO(family_name(f));
      const FESpace sp = build_space(m2, f);
      check_physical_duality(m2, sp, all_indices(sp.n_local()));
    }
  }

  const Mesh m3(3, {1, 1, 1}, {0, 0, 0}, {0.5, 1.0 / 3.0, 0.25});

  SECTION("3D H(div) families, all dofs") {
    for (const Family f : {Family::RT0_ROW_3D, Family::BDM1_ROW_STRESS_3D}) {
      INFO(family_name(f));
      const FESpace sp = build_space(m3, f);
      check_physical_duality(m3, sp, all_indices(sp.n_local()));
    }
  }
  SECTION("3D value-mapped families, strided subset") {
    {
      const FESpace sp = build_space(m3, Family::SERENDIPITY2_3D);
      check_physical_duality(m3, sp, all_indices(sp.n_local()));
    }
    {
      const FESpace sp = build_space(m3, Family::UK);
      check_physical_duality(m3, sp, strided_indices(sp.n_local(), 5));
    }
    {
      const FESpace sp = build_space(m3, Family::THETA_UK);
      check_physical_duality(m3, sp, strided_indices(sp.n_local(), 7));
    }
  }
}

TEST_CASE("discrete field evaluation on a frozen example", "[fespace]") {
  // RT0 on the single cell [0,2] x [0,3]: the dof on the left edge has the
  // reference nodal field (1 - x, 0); its Piola push is ((1 - xhat)/3, 0)
  // with physical divergence -1/6, and its integral over the left edge is 1.
  const Mesh m(2, {1, 1, 1}, {0, 0, 0}, {2, 3, 1});
  const FESpace sp = build_space(m, Family::RT0);
  Eigen::VectorXd coef = Eigen::VectorXd::Zero(sp.n_dofs);
  coef[sp.global_dof(0, 0)] = 1;
  const Point xhat{0.25, 0.5, 0};
  const Eigen::Matrix3d v = sp.value(coef, 0, xhat);
  CHECK(v(0, 0) == Catch::Approx(0.25).margin(1e-14));
  CHECK(std::abs(v(1, 0)) < 1e-14);
  const Eigen::Matrix3d dv = sp.divergence(coef, 0, xhat);
  CHECK(dv(0, 0) == Catch::Approx(-1.0 / 6.0).margin(1e-14));
}

TEST_CASE("degree-of-freedom interpolants reproduce members of the space", "[interpolate]") {
  SECTION("stress rows reproduce full linear matrix fields in 2D") {
    const Mesh m(2, {2, 2, 1}, {0, 0, 0}, {1, 0.5, 1});
    const FESpace sp = build_space(m, Family::BDM1_ROW_STRESS);
    PolyField p = PolyField::matrix(2);
    p(0, 0) = lin2(1, 2, -1);
    p(0, 1) = lin2(0, 3, 1);
    p(1, 0) = lin2(-2, 1, 1);
    p(1, 1) = lin2(4, 0, -3);
    const MatrixField f = matrix_from_polyfield(p);
    double mismatch = 0;
    const Eigen::VectorXd coef = canonical_interpolant(sp, view(f), 5, &mismatch);
    CHECK(mismatch < 1e-12);
    for (int c = 0; c < m.n_cells(); ++c)
      for (const Point xhat : {Point{0.3, 0.7, 0}, Point{0.9, 0.1, 0}}) {
        const Point x = m.cell_map(c).apply(xhat);
        CHECK((sp.value(coef, c, xhat) - f.value(x)).norm() < 1e-12);
      }
  }
  SECTION("RT0 reproduces its axis-aligned linear fields") {
    const Mesh m(2, {3, 2, 1}, {0, 0, 0}, {1.5, 1, 1});
    const FESpace sp = build_space(m, Family::RT0);
    PolyField p = PolyField::vector(2);
    p(0) = lin2(1, 2, 0);
    p(1) = lin2(3, 0, -1);
    const VectorField f = vector_from_polyfield(p);
    const Eigen::VectorXd coef = canonical_interpolant(sp, view(f), 5);
    for (int c = 0; c < m.n_cells(); ++c) {
      const Point xhat{0.6, 0.25, 0};
      const Point x = m.cell_map(c).apply(xhat);
      CHECK((sp.value(coef, c, xhat) - view(f).value(x)).norm() < 1e-12);
    }
  }
  SECTION("3D stress rows reproduce linear matrix fields") {
    const Mesh m(3, {1, 2, 1}, {0, 0, 0}, {1, 1, 0.5});
    const FESpace sp = build_space(m, Family::BDM1_ROW_STRESS_3D);
    PolyField p = PolyField::matrix(3);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) p(i, j) = lin3(i - j, 1 + i, j, i * j - 1);
    const MatrixField f = matrix_from_polyfield(p);
    double mismatch = 0;
    const Eigen::VectorXd coef = canonical_interpolant(sp, view(f), 5, &mismatch);
    CHECK(mismatch < 1e-12);
    for (int c = 0; c < m.n_cells(); ++c) {
      const Point xhat{0.2, 0.8, 0.5};
      const Point x = m.cell_map(c).apply(xhat);
      CHECK((sp.value(coef, c, xhat) - f.value(x)).norm() < 1e-12);
    }
  }
  SECTION("3D rotation space reproduces linear matrix fields") {
    const Mesh m = Mesh::unit(3, 1);
    const FESpace sp = build_space(m, Family::THETA_UK);
    PolyField p = PolyField::matrix(3);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) p(i, j) = lin3(1, j - i, 2 - i, j);
    const MatrixField f = matrix_from_polyfield(p);
    const Eigen::VectorXd coef = canonical_interpolant(sp, view(f), 5);
    for (const Point xhat : {Point{0.3, 0.7, 0.2}, Point{0.9, 0.4, 0.6}}) {
      CHECK((sp.value(coef, 0, xhat) - f.value(xhat)).norm() < 1e-11);
    }
  }
}

TEST_CASE("cell-average projection", "[interpolate]") {
  const Mesh m = Mesh::unit(2, 1);
  const FESpace sp = build_space(m, Family::P0_VEC);

  SECTION("mean of the coordinate is one half") {
    VectorField f;
    f.dim = 2;
    f.comp = {poly_scalar_field(Poly::monomial(2, {1, 0, 0})), constant_scalar_field(0)};
    const Eigen::VectorXd coef = average_interpolant(sp, view(f));
    REQUIRE(sp.n_dofs == 2);
    CHECK(coef[0] == Catch::Approx(0.5).margin(1e-14));
    CHECK(std::abs(coef[1]) < 1e-14);
  }
  SECTION("the projection is the mean, not the midpoint value") {
    VectorField f;
    f.dim = 2;
    f.comp = {poly_scalar_field(Poly::monomial(2, {2, 0, 0})), constant_scalar_field(0)};
    const Eigen::VectorXd coef = average_interpolant(sp, view(f));
    CHECK(coef[0] == Catch::Approx(1.0 / 3.0).margin(1e-14));
    CHECK(std::abs(coef[0] - 0.25) > 0.05);
  }
  SECTION("rejects non-constant spaces") {
    const FESpace bdm = build_space(m, Family::BDM1_ROW_STRESS);
    VectorField f;
    f.dim = 2;
    f.comp = {constant_scalar_field(1), constant_scalar_field(1)};
    CHECK_THROWS_AS(average_interpolant(bdm, view(f)), std::invalid_argument);
  }
}

TEST_CASE("reduced interpolant zeroes vertex data and matches facet moments",
          "[interpolate]") {
  const Mesh m(2, {2, 2, 1}, {0, 0, 0}, {1, 2, 1});
  const FESpace sp = build_space(m, Family::THETA_SERENDIPITY);
  VectorField f;
  f.dim = 2;
  f.comp = {constant_scalar_field(3), constant_scalar_field(-2)};
  const Eigen::VectorXd coef = reduced_interpolant(sp, view(f));
  for (int g = 0; g < sp.block_offset[2]; ++g) CHECK(coef[g] == 0);
  for (int fct = 0; fct < m.n_facets(); ++fct) {
    std::array<double, 2> got{coef[sp.block_offset[2] + 2 * fct],
                              coef[sp.block_offset[2] + 2 * fct + 1]};
    std::sort(got.begin(), got.end());
    CHECK(got[0] == Catch::Approx(-2.0).margin(1e-13));
    CHECK(got[1] == Catch::Approx(3.0).margin(1e-13));
  }
}

TEST_CASE("commuting residuals", "[interpolate][commuting]") {
  SECTION("affine fields commute to machine precision") {
    const Mesh m2(2, {3, 2, 1}, {0, 0, 0}, {1, 0.8, 1});
    PolyField p = PolyField::matrix(2);
    p(0, 0) = lin2(1, 2, -1);
    p(0, 1) = lin2(0, 1, 1);
    p(1, 0) = lin2(2, -1, 0);
    p(1, 1) = lin2(-1, 1, 2);
    CHECK(commuting_residual(CommutingCheck::DIV_SIGMA, m2, view(matrix_from_polyfield(p))) <
          1e-12);
    PolyField v = PolyField::vector(2);
    v(0) = lin2(1, 3, -2);
    v(1) = lin2(0, 1, 1);
    CHECK(commuting_residual(CommutingCheck::DIV_R, m2, view(vector_from_polyfield(v))) < 1e-12);
    CHECK(commuting_residual(CommutingCheck::SURJECTIVITY, m2, view(vector_from_polyfield(v))) <
          1e-12);

    const Mesh m3(3, {2, 1, 2}, {0, 0, 0}, {1, 1, 0.6});
    PolyField q = PolyField::matrix(3);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) q(i, j) = lin3(i, j, i + j, 1 - i);
    CHECK(commuting_residual(CommutingCheck::DIV_SIGMA, m3, view(matrix_from_polyfield(q))) <
          1e-12);
    CHECK(commuting_residual(CommutingCheck::DIV_R, m3, view(matrix_from_polyfield(q))) < 1e-12);
    CHECK(commuting_residual(CommutingCheck::SURJECTIVITY, m3, view(matrix_from_polyfield(q))) <
          1e-12);
  }

  SECTION("smooth fields commute to quadrature accuracy on a 4x4 mesh") {
    const Mesh m = Mesh::unit(2, 4);
    VectorField f;
    f.dim = 2;
    f.comp = {separable_field(2, {factor_sin_pi(), factor_sin_pi(), factor_constant(1)}),
              poly_scalar_field(Poly::monomial(2, {2, 3, 0}))};
    const double r_div = commuting_residual(CommutingCheck::DIV_R, m, view(f));
    CHECK(r_div < 1e-9);
    CHECK(commuting_residual(CommutingCheck::SURJECTIVITY, m, view(f)) < 1e-9);

    // The residual is a genuine measurement: starving the quadrature makes
    // it visibly larger.
    const double r_coarse = commuting_residual(CommutingCheck::DIV_R, m, view(f), 2);
    CHECK(r_coarse > 10 * std::max(r_div, 1e-13));

    MatrixField s;
    s.dim = 2;
    s.comp = {separable_field(2, {factor_sin_pi(), factor_sin_pi(), factor_constant(1)}),
              poly_scalar_field(Poly::monomial(2, {2, 3, 0})),
              separable_field(2, {factor_bubble(), factor_sin_pi(), factor_constant(1)}),
              poly_scalar_field(Poly::monomial(2, {3, 1, 0}))};
    CHECK(commuting_residual(CommutingCheck::DIV_SIGMA, m, view(s)) < 1e-9);
  }

  SECTION("smooth fields commute in 3D on a 2x2x2 mesh") {
    const Mesh m = Mesh::unit(3, 2);
    MatrixField s;
    s.dim = 3;
    s.comp.resize(9);
    s.comp[0] = separable_field(3, {factor_sin_pi(), factor_sin_pi(), factor_sin_pi()});
    s.comp[1] = poly_scalar_field(Poly::monomial(3, {2, 1, 1}));
    s.comp[2] = separable_field(3, {factor_bubble(), factor_linear(1, 2), factor_sin_pi()});
    s.comp[3] = poly_scalar_field(Poly::monomial(3, {1, 2, 0}));
    s.comp[4] = separable_field(3, {factor_sin_pi(), factor_bubble(), factor_constant(1)});
    s.comp[5] = poly_scalar_field(Poly::monomial(3, {0, 1, 3}));
    s.comp[6] = separable_field(3, {factor_linear(0, 1), factor_sin_pi(), factor_bubble()});
    s.comp[7] = poly_scalar_field(Poly::monomial(3, {1, 1, 1}));
    s.comp[8] = separable_field(3, {factor_bubble(), factor_bubble(), factor_linear(2, -1)});
    CHECK(commuting_residual(CommutingCheck::DIV_SIGMA, m, view(s)) < 1e-9);
    CHECK(commuting_residual(CommutingCheck::DIV_R, m, view(s)) < 1e-9);
    CHECK(commuting_residual(CommutingCheck::SURJECTIVITY, m, view(s)) < 1e-9);
  }
}

TEST_CASE("analytic field derivatives agree with finite differences", "[fields]") {
  const ScalarField s =
      separable_field(3, {factor_sin_pi(), factor_bubble(), factor_linear(1, 2)});
  const std::vector<Point> samples = {{0.2, 0.3, 0.7}, {0.9, 0.5, 0.1}, {0.4, 0.8, 0.6}};
  CHECK(derivative_consistency(s, 3, samples) < 1e-6);
  const ScalarField p = poly_scalar_field(Poly::monomial(3, {2, 1, 3}));
  CHECK(derivative_consistency(p, 3, samples) < 1e-6);
}
