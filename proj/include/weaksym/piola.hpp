// This file is part of weaksym, a library of rectangular mixed finite
// elements for linear elasticity with weakly imposed stress symmetry.
// Distributed under the BSD 3-Clause license. See LICENSE for details.
//
// Push-forward of reference fields to a physical cell under the affine map
// F(xhat) = corner + B xhat with B = diag(h).
//
//  * MapKind::VALUE   u(x) = uhat(F^{-1}(x)); point values and
//    measure-normalised moments are preserved.
//  * MapKind::PIOLA   row-wise contravariant map; for a matrix field
//    M(x) = (1/det B) Mhat(F^{-1}(x)) B^T and for a vector field
//    v(x) = (1/det B) B vhat(F^{-1}(x)). Unnormalised physical integrals of
//    normal traces against facet-parameter weights equal the corresponding
//    reference moments exactly, so facet degrees of freedom transfer with no
//    sign or scale factors, and div M(x) = (1/det B) div_hat Mhat(F^{-1}(x)).

#pragma once

#include <weaksym/element.hpp>
#include <weaksym/fields.hpp>
#include <weaksym/mesh.hpp>

#include <Eigen/Dense>

namespace weaksym {

/// Padded value of a reference polynomial field: matrices fill the top-left
/// dim x dim block, vectors fill column 0, scalars slot (0, 0).
inline Eigen::Matrix3d eval_padded(const PolyField& f, const Point& xhat) {
  Eigen::Matrix3d m = Eigen::Matrix3d::Zero();
  if (f.is_scalar()) {
    m(0, 0) = f(0, 0).eval_double(xhat);
  } else if (f.is_vector()) {
    for (int c = 0; c < f.dim; ++c) m(c, 0) = f(c).eval_double(xhat);
  } else {
    for (int i = 0; i < f.dim; ++i)
      for (int j = 0; j < f.dim; ++j) m(i, j) = f(i, j).eval_double(xhat);
  }
  return m;
}

/// Apply the push-forward transformation to an already-evaluated reference
/// value (padded as in eval_padded). `is_vector` selects the vector rule for
/// Piola-mapped fields; value-mapped fields pass through unchanged.
inline Eigen::Matrix3d push_value(const AffineMap& F, MapKind kind, bool is_vector,
                                  const Eigen::Matrix3d& ref) {
  if (kind == MapKind::VALUE) return ref;
  const double det = F.det();
  Eigen::Matrix3d out = Eigen::Matrix3d::Zero();
  if (is_vector) {
    for (int i = 0; i < F.dim; ++i) out(i, 0) = F.h[i] * ref(i, 0) / det;
  } else {
    for (int i = 0; i < F.dim; ++i)
      for (int j = 0; j < F.dim; ++j) out(i, j) = ref(i, j) * F.h[j] / det;
  }
  return out;
}

/// Physical divergence of a pushed field from the reference divergence
/// (padded; rows for matrix fields, slot (0,0) for vector fields).
inline Eigen::Matrix3d push_divergence(const AffineMap& F, MapKind kind,
                                       const Eigen::Matrix3d& ref_div) {
  if (kind == MapKind::VALUE)
    throw std::invalid_argument("push_divergence: defined for Piola-mapped fields");
  return ref_div / F.det();
}

/// A reference polynomial field realised on one physical cell.
struct MappedField {
  const PolyField* ref = nullptr;
  AffineMap F;
  MapKind kind = MapKind::PIOLA;

  /// Value at a physical point.
  Eigen::Matrix3d value(const Point& x) const {
    return push_value(F, kind, ref->is_vector(), eval_padded(*ref, F.pull_back(x)));
  }
  /// Value at a reference point of this cell.
  Eigen::Matrix3d value_ref(const Point& xhat) const {
    return push_value(F, kind, ref->is_vector(), eval_padded(*ref, xhat));
  }
};

/// Scalar trace of a padded physical value, mirroring the exact reference
/// trace rules: `axis` is the facet normal (NORMAL / WEDGE) or the tangent
/// direction (TANGENTIAL); `is_vector` picks the vector reading of the pad.
inline double trace_value(const Eigen::Matrix3d& m, bool is_vector, TraceKind trace, int axis,
                          int row, int col) {
  const auto q = [&](int c) { return is_vector ? m(c, 0) : m(row, c); };
  switch (trace) {
    case TraceKind::VALUE:
      return is_vector ? m(row, 0) : m(row, std::max(col, 0));
    case TraceKind::NORMAL:
    case TraceKind::TANGENTIAL:
      return q(axis);
    case TraceKind::WEDGE:
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
      throw std::invalid_argument("trace_value: wedge component vanishes identically");
  }
  throw std::logic_error("trace_value: unreachable");
}

}  // namespace weaksym
