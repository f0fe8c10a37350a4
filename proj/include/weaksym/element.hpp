// This file is part of weaksym, a library of rectangular mixed finite
// elements for linear elasticity with weakly imposed stress symmetry.
// Distributed under the BSD 3-Clause license. See LICENSE for details.
//
// Catalog of reference elements on [0,1]^d. Stress-type elements map with
// the contravariant (Piola) transform and use physical-integral facet
// moments; displacement/rotation-type elements map by composition and use
// point values and measure-normalised averages. With the fixed +axis facet
// normals shared between mesh and reference cell, pushing a nodal basis
// forward keeps it nodal, so assembly never needs per-cell sign or scale
// corrections.

#pragma once

#include <weaksym/dof.hpp>
#include <weaksym/polyfield.hpp>
#include <weaksym/rational.hpp>

#include <Eigen/Dense>
#include <Eigen/SVD>

#include <optional>
#include <string>
#include <vector>

namespace weaksym {

enum class Family {
  // 2D
  P0_VEC,
  P0_ROT,
  BDM1_ROW_STRESS,
  RT0,
  SERENDIPITY2,
  THETA_SERENDIPITY,
  THETA_SIMPLIFIED,
  SIGMA_SIMPLIFIED,
  // 3D
  BDM1_ROW_STRESS_3D,
  RT0_ROW_3D,
  UK,
  THETA_UK,
  SERENDIPITY2_3D,
  // 2D higher order (reference-level)
  SIGMA_HIGHER,
  THETA_HIGHER,
};

inline const char* family_name(Family f) {
  switch (f) {
    case Family::P0_VEC: return "P0_VEC";
    case Family::P0_ROT: return "P0_ROT";
    case Family::BDM1_ROW_STRESS: return "BDM1_ROW_STRESS";
    case Family::RT0: return "RT0";
    case Family::SERENDIPITY2: return "SERENDIPITY2";
    case Family::THETA_SERENDIPITY: return "THETA_SERENDIPITY";
    case Family::THETA_SIMPLIFIED: return "THETA_SIMPLIFIED";
    case Family::SIGMA_SIMPLIFIED: return "SIGMA_SIMPLIFIED";
    case Family::BDM1_ROW_STRESS_3D: return "BDM1_ROW_STRESS_3D";
    case Family::RT0_ROW_3D: return "RT0_ROW_3D";
    case Family::UK: return "UK";
    case Family::THETA_UK: return "THETA_UK";
    case Family::SERENDIPITY2_3D: return "SERENDIPITY2_3D";
    case Family::SIGMA_HIGHER: return "SIGMA_HIGHER";
    case Family::THETA_HIGHER: return "THETA_HIGHER";
  }
  return "?";
}

/// How fields of the element transform from the reference cell.
enum class MapKind { VALUE, PIOLA };

struct ReferenceElement {
  Family family;
  int dim = 2;
  int order = 0;  // polynomial order parameter for the higher families
  std::string name;
  int rows = 1, cols = 1;
  MapKind map = MapKind::VALUE;
  std::vector<PolyField> basis;
  std::vector<DofFunctional> dofs;
  // Nodal basis coefficients (filled by nodal_basis): nodal field j is
  // sum_i coeff(i, j) * basis[i], with dof_i(nodal_j) = delta_ij.
  std::vector<PolyField> nodal;
  bool has_nodal = false;

  int space_dim() const { return static_cast<int>(basis.size()); }
  int n_dofs() const { return static_cast<int>(dofs.size()); }
};

/// Raised when an element's degrees of freedom fail to determine its shape
/// space; carries one explicit kernel field for diagnosis.
struct UnisolvencyError : std::runtime_error {
  explicit UnisolvencyError(const std::string& what, PolyField kernel_field_ = {})
      : std::runtime_error(what), kernel_field(std::move(kernel_field_)) {}
  PolyField kernel_field;
};

namespace detail {

/// Monomials x^a y^b z^c with a <= deg[0], b <= deg[1], c <= deg[2]
/// (per-axis caps), x exponent fastest.
inline std::vector<Poly> monomials_aniso(int dim, std::array<int, 3> deg) {
  std::vector<Poly> out;
  const int dz = dim == 3 ? deg[2] : 0;
  for (int c = 0; c <= dz; ++c)
    for (int b = 0; b <= deg[1]; ++b)
      for (int a = 0; a <= deg[0]; ++a) out.push_back(Poly::monomial(dim, {a, b, c}));
  return out;
}

/// Monomials of total degree <= k, ordered by degree then x-fastest.
inline std::vector<Poly> monomials_total(int dim, int k) {
  std::vector<Poly> out;
  for (int d = 0; d <= k; ++d) {
    const int dz = dim == 3 ? d : 0;
    for (int c = 0; c <= dz; ++c)
      for (int b = 0; b + c <= d; ++b) {
        const int a = d - b - c;
        out.push_back(Poly::monomial(dim, {a, b, c}));
      }
  }
  return out;
}

inline PolyField embed_vector_comp(int dim, int comp, const Poly& p) {
  PolyField f = PolyField::vector(dim);
  f(comp) = p;
  return f;
}

inline PolyField embed_matrix_row(int dim, int row, const PolyField& v) {
  PolyField f = PolyField::matrix(dim);
  for (int c = 0; c < dim; ++c) f(row, c) = v(c);
  return f;
}

inline Poly mono(int dim, int a, int b, int c = 0) { return Poly::monomial(dim, {a, b, c}); }

/// 2D scalar serendipity space P2 + {x^2 y, x y^2}.
inline std::vector<Poly> serendipity2_scalar_2d() {
  std::vector<Poly> out = monomials_total(2, 2);
  out.push_back(mono(2, 2, 1));
  out.push_back(mono(2, 1, 2));
  return out;
}

/// 3D scalar serendipity space: P2 plus the ten edge-compatible cubics and
/// quartics 1 x^2 y, x^2 z, x y^2, x z^2, y^2 z, y z^2, xyz, x^2 yz, x y^2 z,
/// x y z^2.
inline std::vector<Poly> serendipity2_scalar_3d() {
  std::vector<Poly> out = monomials_total(3, 2);
  for (auto [a, b, c] : {std::array{2, 1, 0}, {2, 0, 1}, {1, 2, 0}, {1, 0, 2}, {0, 2, 1},
                         {0, 1, 2}, {1, 1, 1}, {2, 1, 1}, {1, 2, 1}, {1, 1, 2}})
    out.push_back(mono(3, a, b, c));
  return out;
}

/// Per-row shape functions of the 2D stress element: P1 vectors plus the
/// curls of x^2 y and x y^2 (divergence-free quadratic tails).
inline std::vector<PolyField> bdm1_row_2d() {
  std::vector<PolyField> out;
  for (int comp = 0; comp < 2; ++comp)
    for (const Poly& p : monomials_total(2, 1)) out.push_back(embed_vector_comp(2, comp, p));
  for (const Poly& p : {mono(2, 2, 1), mono(2, 1, 2)}) {
    PolyField s = PolyField::scalar(2);
    s(0, 0) = p;
    out.push_back(diff(DiffOp::CURL, s));
  }
  return out;
}

/// Per-row shape functions of the 3D stress element: P1 vectors plus six
/// divergence-free curl tails.
inline std::vector<PolyField> bdm1_row_3d() {
  std::vector<PolyField> out;
  for (int comp = 0; comp < 3; ++comp)
    for (const Poly& p : monomials_total(3, 1)) out.push_back(embed_vector_comp(3, comp, p));
  const std::array<std::pair<int, Poly>, 6> tails = {{
      {2, mono(3, 2, 1, 0)},  // (0, 0, x^2 y)
      {2, mono(3, 1, 2, 0)},  // (0, 0, x y^2)
      {0, mono(3, 0, 2, 1)},  // (y^2 z, 0, 0)
      {0, mono(3, 0, 1, 2)},  // (y z^2, 0, 0)
      {1, mono(3, 2, 0, 1)},  // (0, x^2 z, 0)
      {1, mono(3, 1, 0, 2)},  // (0, x z^2, 0)
  }};
  for (const auto& [comp, p] : tails)
    out.push_back(diff(DiffOp::CURL, embed_vector_comp(3, comp, p)));
  return out;
}

/// The four tangential edge bubbles whose curls enrich the simplified
/// stress space.
inline std::vector<PolyField> simplified_tangential_bubbles() {
  const Poly x = mono(2, 1, 0), y = mono(2, 0, 1), one = Poly::constant(2, 1);
  std::vector<PolyField> out;
  out.push_back(embed_vector_comp(2, 0, -(x * (one - x) * (one - y))));
  out.push_back(embed_vector_comp(2, 1, -(y * (one - y) * (one - x))));
  out.push_back(embed_vector_comp(2, 0, x * (one - x) * y));
  out.push_back(embed_vector_comp(2, 1, x * y * (one - y)));
  return out;
}

/// Edge-normal bubbles of the simplified displacement-type space, one per
/// facet in facet order: each has vanishing vertex values and a nonzero
/// normal trace on exactly its own facet.
inline std::vector<PolyField> simplified_normal_bubbles() {
  const Poly x = mono(2, 1, 0), y = mono(2, 0, 1), one = Poly::constant(2, 1);
  std::vector<PolyField> out;
  out.push_back(embed_vector_comp(2, 0, (one - x) * y * (one - y)));  // facet x=0
  out.push_back(embed_vector_comp(2, 0, x * y * (one - y)));          // facet x=1
  out.push_back(embed_vector_comp(2, 1, x * (one - x) * (one - y)));  // facet y=0
  out.push_back(embed_vector_comp(2, 1, x * (one - x) * y));          // facet y=1
  return out;
}

/// Component spaces of the 3D displacement-type space U_K: trilinears plus
/// four component-specific quadratic/cubic tails.
inline std::vector<Poly> uk_component(int comp) {
  std::vector<Poly> out = monomials_aniso(3, {1, 1, 1});
  switch (comp) {
    case 0:
      for (auto [a, b, c] : {std::array{0, 2, 1}, {0, 1, 2}, {0, 2, 0}, {0, 0, 2}})
        out.push_back(mono(3, a, b, c));
      break;
    case 1:
      for (auto [a, b, c] : {std::array{2, 0, 1}, {1, 0, 2}, {2, 0, 0}, {0, 0, 2}})
        out.push_back(mono(3, a, b, c));
      break;
    case 2:
      for (auto [a, b, c] : {std::array{2, 1, 0}, {1, 2, 0}, {2, 0, 0}, {0, 2, 0}})
        out.push_back(mono(3, a, b, c));
      break;
  }
  return out;
}

inline std::vector<PolyField> uk_vector_basis() {
  std::vector<PolyField> out;
  for (int comp = 0; comp < 3; ++comp)
    for (const Poly& p : uk_component(comp)) out.push_back(embed_vector_comp(3, comp, p));
  return out;
}

inline Poly facet_param_power(int dim, int which, int pow) {
  // Weight s^pow in facet parameters; `which` picks the parameter in 3D.
  Poly w(dim - 1 >= 1 ? dim - 1 : 1);
  MultiIndex e{0, 0, 0};
  e[which] = pow;
  return Poly::monomial(dim - 1, e);
}

}  // namespace detail

/// Build a reference element. `dim` must match the family's ambient
/// dimension; `k` parametrises the higher-order families and must be 0
/// otherwise.
inline ReferenceElement make_element(Family family, int dim, int k = 0) {
  using namespace detail;
  ReferenceElement el;
  el.family = family;
  el.dim = dim;
  el.order = k;
  el.name = family_name(family);

  auto require_dim = [&](int d) {
    if (dim != d)
      throw std::invalid_argument(std::string(family_name(family)) + ": dim must be " +
                                  std::to_string(d));
  };
  auto require_k0 = [&] {
    if (k != 0)
      throw std::invalid_argument(std::string(family_name(family)) + ": order parameter unused");
  };

  const Poly w1_2d = Poly::constant(1, 1);       // unit weight on a 2D edge
  const Poly ws_2d = Poly::var(1, 0);            // edge parameter s
  const Poly w1_3d = Poly::constant(2, 1);       // unit weight on a 3D face

  switch (family) {
    case Family::P0_VEC: {
      require_k0();
      el.rows = dim;
      el.cols = 1;
      el.map = MapKind::VALUE;
      std::array<Rational, 3> mid{Rational(1, 2), Rational(1, 2),
                                  dim == 3 ? Rational(1, 2) : Rational(0)};
      for (int c = 0; c < dim; ++c) {
        el.basis.push_back(embed_vector_comp(dim, c, Poly::constant(dim, 1)));
        el.dofs.push_back(DofFunctional::point_value(EntityKind::CELL, 0, mid, c));
      }
      break;
    }
    case Family::P0_ROT: {
      require_k0();
      // Rotations: one scalar in 2D, a vector in 3D.
      el.rows = dim == 2 ? 1 : 3;
      el.cols = 1;
      el.map = MapKind::VALUE;
      std::array<Rational, 3> mid{Rational(1, 2), Rational(1, 2),
                                  dim == 3 ? Rational(1, 2) : Rational(0)};
      if (dim == 2) {
        PolyField f = PolyField::scalar(2);
        f(0, 0) = Poly::constant(2, 1);
        el.basis.push_back(f);
        el.dofs.push_back(DofFunctional::point_value(EntityKind::CELL, 0, mid, 0));
      } else {
        for (int c = 0; c < 3; ++c) {
          el.basis.push_back(embed_vector_comp(3, c, Poly::constant(3, 1)));
          el.dofs.push_back(DofFunctional::point_value(EntityKind::CELL, 0, mid, c));
        }
      }
      break;
    }
    case Family::BDM1_ROW_STRESS: {
      require_dim(2);
      require_k0();
      el.rows = el.cols = 2;
      el.map = MapKind::PIOLA;
      for (int r = 0; r < 2; ++r)
        for (const PolyField& v : bdm1_row_2d()) el.basis.push_back(embed_matrix_row(2, r, v));
      for (int f = 0; f < 4; ++f)
        for (int r = 0; r < 2; ++r)
          for (const Poly& w : {w1_2d, ws_2d})
            el.dofs.push_back(
                DofFunctional::moment(EntityKind::FACET, f, TraceKind::NORMAL, r, -1, w, false));
      break;
    }
    case Family::RT0: {
      require_dim(2);
      require_k0();
      el.rows = 2;
      el.cols = 1;
      el.map = MapKind::PIOLA;
      el.basis.push_back(embed_vector_comp(2, 0, Poly::constant(2, 1)));
      el.basis.push_back(embed_vector_comp(2, 0, mono(2, 1, 0)));
      el.basis.push_back(embed_vector_comp(2, 1, Poly::constant(2, 1)));
      el.basis.push_back(embed_vector_comp(2, 1, mono(2, 0, 1)));
      for (int f = 0; f < 4; ++f)
        el.dofs.push_back(
            DofFunctional::moment(EntityKind::FACET, f, TraceKind::NORMAL, -1, -1, w1_2d, false));
      break;
    }
    case Family::SERENDIPITY2: {
      require_dim(2);
      require_k0();
      el.rows = el.cols = 1;
      el.map = MapKind::VALUE;
      for (const Poly& p : serendipity2_scalar_2d()) {
        PolyField f = PolyField::scalar(2);
        f(0, 0) = p;
        el.basis.push_back(f);
      }
      for (int v = 0; v < 4; ++v)
        el.dofs.push_back(
            DofFunctional::point_value(EntityKind::VERTEX, v, reference_vertex(2, v), 0));
      for (int f = 0; f < 4; ++f)
        el.dofs.push_back(
            DofFunctional::moment(EntityKind::FACET, f, TraceKind::VALUE, 0, 0, w1_2d, true));
      break;
    }
    case Family::THETA_SERENDIPITY: {
      require_dim(2);
      require_k0();
      el.rows = 2;
      el.cols = 1;
      el.map = MapKind::VALUE;
      for (int c = 0; c < 2; ++c)
        for (const Poly& p : serendipity2_scalar_2d())
          el.basis.push_back(embed_vector_comp(2, c, p));
      for (int v = 0; v < 4; ++v)
        for (int c = 0; c < 2; ++c)
          el.dofs.push_back(
              DofFunctional::point_value(EntityKind::VERTEX, v, reference_vertex(2, v), c));
      for (int f = 0; f < 4; ++f)
        for (int c = 0; c < 2; ++c)
          el.dofs.push_back(
              DofFunctional::moment(EntityKind::FACET, f, TraceKind::VALUE, c, 0, w1_2d, true));
      break;
    }
    case Family::THETA_SIMPLIFIED: {
      require_dim(2);
      require_k0();
      el.rows = 2;
      el.cols = 1;
      el.map = MapKind::VALUE;
      for (int c = 0; c < 2; ++c)
        for (const Poly& p : monomials_aniso(2, {1, 1, 0}))
          el.basis.push_back(embed_vector_comp(2, c, p));
      for (PolyField& b : simplified_normal_bubbles()) el.basis.push_back(std::move(b));
      for (int v = 0; v < 4; ++v)
        for (int c = 0; c < 2; ++c)
          el.dofs.push_back(
              DofFunctional::point_value(EntityKind::VERTEX, v, reference_vertex(2, v), c));
      for (int f = 0; f < 4; ++f)
        el.dofs.push_back(
            DofFunctional::moment(EntityKind::FACET, f, TraceKind::NORMAL, -1, -1, w1_2d, true));
      break;
    }
    case Family::SIGMA_SIMPLIFIED: {
      require_dim(2);
      require_k0();
      el.rows = el.cols = 2;
      el.map = MapKind::PIOLA;
      // Rows in P_{1,0} x P_{0,1}, then curls of the tangential bubbles.
      for (int r = 0; r < 2; ++r) {
        el.basis.push_back(embed_matrix_row(2, r, embed_vector_comp(2, 0, Poly::constant(2, 1))));
        el.basis.push_back(embed_matrix_row(2, r, embed_vector_comp(2, 0, mono(2, 1, 0))));
        el.basis.push_back(embed_matrix_row(2, r, embed_vector_comp(2, 1, Poly::constant(2, 1))));
        el.basis.push_back(embed_matrix_row(2, r, embed_vector_comp(2, 1, mono(2, 0, 1))));
      }
      for (const PolyField& b : simplified_tangential_bubbles())
        el.basis.push_back(diff(DiffOp::CURL, b));
      // Per facet: normal-normal moment, then normal-tangential against 1, s.
      for (int f = 0; f < 4; ++f) {
        const int a = f / 2;
        const int t = 1 - a;
        el.dofs.push_back(
            DofFunctional::moment(EntityKind::FACET, f, TraceKind::NORMAL, a, -1, w1_2d, false));
        for (const Poly& w : {w1_2d, ws_2d})
          el.dofs.push_back(
              DofFunctional::moment(EntityKind::FACET, f, TraceKind::NORMAL, t, -1, w, false));
      }
      break;
    }
    case Family::BDM1_ROW_STRESS_3D: {
      require_dim(3);
      require_k0();
      el.rows = el.cols = 3;
      el.map = MapKind::PIOLA;
      for (int r = 0; r < 3; ++r)
        for (const PolyField& v : bdm1_row_3d()) el.basis.push_back(embed_matrix_row(3, r, v));
      for (int f = 0; f < 6; ++f)
        for (int r = 0; r < 3; ++r)
          for (int w = 0; w < 3; ++w) {
            const Poly weight =
                w == 0 ? Poly::constant(2, 1) : facet_param_power(3, w - 1, 1);
            el.dofs.push_back(DofFunctional::moment(EntityKind::FACET, f, TraceKind::NORMAL, r,
                                                    -1, weight, false));
          }
      break;
    }
    case Family::RT0_ROW_3D: {
      require_dim(3);
      require_k0();
      el.rows = el.cols = 3;
      el.map = MapKind::PIOLA;
      for (int r = 0; r < 3; ++r) {
        for (int c = 0; c < 3; ++c) {
          el.basis.push_back(embed_matrix_row(3, r, embed_vector_comp(3, c, Poly::constant(3, 1))));
          MultiIndex e{0, 0, 0};
          e[c] = 1;
          el.basis.push_back(
              embed_matrix_row(3, r, embed_vector_comp(3, c, Poly::monomial(3, e))));
        }
      }
      for (int f = 0; f < 6; ++f)
        for (int r = 0; r < 3; ++r)
          el.dofs.push_back(
              DofFunctional::moment(EntityKind::FACET, f, TraceKind::NORMAL, r, -1, w1_3d, false));
      break;
    }
    case Family::UK: {
      require_dim(3);
      require_k0();
      el.rows = 3;
      el.cols = 1;
      el.map = MapKind::VALUE;
      el.basis = uk_vector_basis();
      const Poly e1 = Poly::constant(1, 1);
      const Poly es = Poly::var(1, 0);
      for (int e = 0; e < 12; ++e)
        for (const Poly& w : {e1, es})
          el.dofs.push_back(
              DofFunctional::moment(EntityKind::EDGE3D, e, TraceKind::TANGENTIAL, -1, -1, w, true));
      for (int f = 0; f < 6; ++f)
        for (int c : wedge_components(f / 2))
          el.dofs.push_back(
              DofFunctional::moment(EntityKind::FACET, f, TraceKind::WEDGE, -1, c, w1_3d, true));
      break;
    }
    case Family::THETA_UK: {
      require_dim(3);
      require_k0();
      el.rows = el.cols = 3;
      el.map = MapKind::VALUE;
      for (int r = 0; r < 3; ++r)
        for (const PolyField& v : uk_vector_basis()) el.basis.push_back(embed_matrix_row(3, r, v));
      const Poly e1 = Poly::constant(1, 1);
      const Poly es = Poly::var(1, 0);
      for (int e = 0; e < 12; ++e)
        for (int r = 0; r < 3; ++r)
          for (const Poly& w : {e1, es})
            el.dofs.push_back(
                DofFunctional::moment(EntityKind::EDGE3D, e, TraceKind::TANGENTIAL, r, -1, w, true));
      for (int f = 0; f < 6; ++f)
        for (int r = 0; r < 3; ++r)
          for (int c : wedge_components(f / 2))
            el.dofs.push_back(
                DofFunctional::moment(EntityKind::FACET, f, TraceKind::WEDGE, r, c, w1_3d, true));
      break;
    }
    case Family::SERENDIPITY2_3D: {
      require_dim(3);
      require_k0();
      el.rows = el.cols = 1;
      el.map = MapKind::VALUE;
      for (const Poly& p : serendipity2_scalar_3d()) {
        PolyField f = PolyField::scalar(3);
        f(0, 0) = p;
        el.basis.push_back(f);
      }
      for (int v = 0; v < 8; ++v)
        el.dofs.push_back(
            DofFunctional::point_value(EntityKind::VERTEX, v, reference_vertex(3, v), 0));
      const Poly e1 = Poly::constant(1, 1);
      for (int e = 0; e < 12; ++e)
        el.dofs.push_back(
            DofFunctional::moment(EntityKind::EDGE3D, e, TraceKind::VALUE, 0, 0, e1, true));
      break;
    }
    case Family::SIGMA_HIGHER: {
      require_dim(2);
      if (k < 1) throw std::invalid_argument("SIGMA_HIGHER: k must be >= 1");
      el.rows = el.cols = 2;
      el.map = MapKind::PIOLA;
      for (int r = 0; r < 2; ++r) {
        for (const Poly& p : monomials_aniso(2, {k + 1, k, 0}))
          el.basis.push_back(embed_matrix_row(2, r, embed_vector_comp(2, 0, p)));
        for (const Poly& p : monomials_aniso(2, {k, k + 1, 0}))
          el.basis.push_back(embed_matrix_row(2, r, embed_vector_comp(2, 1, p)));
      }
      for (int f = 0; f < 4; ++f)
        for (int r = 0; r < 2; ++r)
          for (int pw = 0; pw <= k; ++pw)
            el.dofs.push_back(DofFunctional::moment(EntityKind::FACET, f, TraceKind::NORMAL, r, -1,
                                                    facet_param_power(2, 0, pw), false));
      // Interior moments against rows in P_{k-1,k} x P_{k,k-1}: the first
      // component is tested one degree lower in x (where its bubble factor
      // x(1-x) lives), and symmetrically for the second. The transposed
      // orientation fails unisolvency; see the element tests.
      for (int r = 0; r < 2; ++r) {
        for (const Poly& p : monomials_aniso(2, {k - 1, k, 0})) {
          PolyField w = PolyField::matrix(2);
          w(r, 0) = p;
          el.dofs.push_back(DofFunctional::interior_moment(w));
        }
        for (const Poly& p : monomials_aniso(2, {k, k - 1, 0})) {
          PolyField w = PolyField::matrix(2);
          w(r, 1) = p;
          el.dofs.push_back(DofFunctional::interior_moment(w));
        }
      }
      break;
    }
    case Family::THETA_HIGHER: {
      require_dim(2);
      if (k < 1) throw std::invalid_argument("THETA_HIGHER: k must be >= 1");
      el.rows = 2;
      el.cols = 1;
      el.map = MapKind::VALUE;
      for (int c = 0; c < 2; ++c)
        for (const Poly& p : monomials_aniso(2, {k + 1, k + 1, 0}))
          el.basis.push_back(embed_vector_comp(2, c, p));
      // Tensor-product Lagrange points determine P_{k+1,k+1} per component.
      for (int j = 0; j <= k + 1; ++j)
        for (int i = 0; i <= k + 1; ++i)
          for (int c = 0; c < 2; ++c)
            el.dofs.push_back(DofFunctional::point_value(
                EntityKind::CELL, 0, {Rational(i, k + 1), Rational(j, k + 1), 0}, c));
      break;
    }
  }
  return el;
}

/// Generalised Vandermonde matrix V_ij = dof_i(basis_j), exact.
inline RationalMatrix vandermonde(const ReferenceElement& el) {
  RationalMatrix v(el.n_dofs(), el.space_dim());
  for (int i = 0; i < el.n_dofs(); ++i)
    for (int j = 0; j < el.space_dim(); ++j) v(i, j) = eval_dof(el.dofs[i], el.basis[j]);
  return v;
}

/// Fill el.nodal with the basis dual to el.dofs. Throws UnisolvencyError
/// (with an explicit kernel field) when the Vandermonde matrix is singular
/// or the element is malformed.
inline void nodal_basis(ReferenceElement& el) {
  if (el.n_dofs() != el.space_dim())
    throw UnisolvencyError(el.name + ": " + std::to_string(el.n_dofs()) + " dofs for dimension " +
                           std::to_string(el.space_dim()));
  const RationalMatrix v = vandermonde(el);
  RationalMatrix probe = v;
  if (probe.eliminate() != static_cast<std::size_t>(el.space_dim())) {
    // Exhibit one field all of whose dofs vanish.
    const auto ker = v.kernel();
    PolyField field = el.basis.front() * Rational(0);
    if (!ker.empty())
      for (std::size_t j = 0; j < ker.front().size(); ++j) field += ker.front()[j] * el.basis[j];
    throw UnisolvencyError(el.name + ": degrees of freedom do not determine the space", field);
  }
  const RationalMatrix inv = v.inverse();
  el.nodal.clear();
  el.nodal.reserve(el.space_dim());
  for (int j = 0; j < el.space_dim(); ++j) {
    PolyField f = el.basis.front() * Rational(0);
    for (int m = 0; m < el.space_dim(); ++m) f += inv(m, j) * el.basis[m];
    el.nodal.push_back(std::move(f));
  }
  el.has_nodal = true;
}

/// Certification record for one element family.
struct ElementReport {
  std::string name;
  int dim = 0;
  int order = 0;
  int space_dim = 0;       // rank of the declared spanning set
  int n_basis = 0;
  int n_dofs = 0;
  double det = 0;          // Vandermonde determinant (exact value, rounded)
  double condition = 0;    // 2-norm condition number estimate
  bool unisolvent = false;
};

inline ElementReport certify_element(const ReferenceElement& el) {
  ElementReport r;
  r.name = el.name + (el.order > 0 ? "(k=" + std::to_string(el.order) + ")" : "");
  r.dim = el.dim;
  r.order = el.order;
  r.n_basis = el.space_dim();
  r.n_dofs = el.n_dofs();
  r.space_dim = static_cast<int>(span_rank(el.basis).rank);
  const RationalMatrix v = vandermonde(el);
  const Rational det = (r.n_basis == r.n_dofs) ? v.determinant() : Rational(0);
  r.det = to_double(det);
  r.unisolvent = r.space_dim == r.n_basis && r.n_basis == r.n_dofs && det != 0;
  Eigen::MatrixXd vd(v.rows(), v.cols());
  for (std::size_t i = 0; i < v.rows(); ++i)
    for (std::size_t j = 0; j < v.cols(); ++j) vd(i, j) = to_double(v(i, j));
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(vd);
  const auto& s = svd.singularValues();
  r.condition = s(s.size() - 1) > 0 ? s(0) / s(s.size() - 1) : std::numeric_limits<double>::infinity();
  return r;
}

/// All families available in a given ambient dimension, with their order
/// parameters; higher-order families are listed for 2D.
inline std::vector<std::pair<Family, int>> families_for_dim(int dim) {
  if (dim == 2)
    return {{Family::P0_VEC, 0},           {Family::P0_ROT, 0},
            {Family::BDM1_ROW_STRESS, 0},  {Family::RT0, 0},
            {Family::SERENDIPITY2, 0},     {Family::THETA_SERENDIPITY, 0},
            {Family::THETA_SIMPLIFIED, 0}, {Family::SIGMA_SIMPLIFIED, 0},
            {Family::SIGMA_HIGHER, 1},     {Family::SIGMA_HIGHER, 2},
            {Family::THETA_HIGHER, 1},     {Family::THETA_HIGHER, 2}};
  return {{Family::P0_VEC, 0},    {Family::P0_ROT, 0},     {Family::BDM1_ROW_STRESS_3D, 0},
          {Family::RT0_ROW_3D, 0}, {Family::UK, 0},         {Family::THETA_UK, 0},
          {Family::SERENDIPITY2_3D, 0}};
}

}  // namespace weaksym
