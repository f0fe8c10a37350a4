// This file is part of weaksym, a library of rectangular mixed finite
// elements for linear elasticity with weakly imposed stress symmetry.
// Distributed under the BSD 3-Clause license. See LICENSE for details.
//
// Isotropic constitutive law and the algebraic operators coupling stress,
// rotation and skew-symmetry. Value-level routines act on padded Eigen
// types; exact polynomial versions mirror them for identity checks.

#pragma once

#include <weaksym/polyfield.hpp>

#include <Eigen/Dense>

#include <stdexcept>

namespace weaksym {

/// asym(tau): the independent entries of the skew part, doubled.
/// 2D: the scalar tau_01 - tau_10 in slot 0.
/// 3D: (tau_21 - tau_12, tau_02 - tau_20, tau_10 - tau_01).
inline Eigen::Vector3d asym_value(int dim, const Eigen::Matrix3d& tau) {
  Eigen::Vector3d a = Eigen::Vector3d::Zero();
  if (dim == 2) {
    a(0) = tau(0, 1) - tau(1, 0);
  } else {
    a(0) = tau(2, 1) - tau(1, 2);
    a(1) = tau(0, 2) - tau(2, 0);
    a(2) = tau(1, 0) - tau(0, 1);
  }
  return a;
}

/// S(q): identity in 2D; tr(q) I - q^T in 3D. Satisfies
/// asym(curl q) = -div S(q) row-wise, the relation that lets rotation
/// elements be built from H(div) ones.
inline Eigen::Matrix3d s_value(int dim, const Eigen::Matrix3d& q) {
  if (dim == 2) return q;
  return q.trace() * Eigen::Matrix3d::Identity() - q.transpose();
}

/// Inverse of S: identity in 2D; (1/2) tr(q) I - q^T in 3D.
inline Eigen::Matrix3d s_inverse_value(int dim, const Eigen::Matrix3d& q) {
  if (dim == 2) return q;
  return 0.5 * q.trace() * Eigen::Matrix3d::Identity() - q.transpose();
}

/// Exact polynomial asym; scalar in 2D, vector in 3D.
inline PolyField asym_field(const PolyField& tau) {
  if (!tau.is_matrix()) throw std::invalid_argument("asym_field: matrix field expected");
  if (tau.dim == 2) {
    PolyField a = PolyField::scalar(2);
    a(0, 0) = tau(0, 1) - tau(1, 0);
    return a;
  }
  PolyField a = PolyField::vector(3);
  a(0) = tau(2, 1) - tau(1, 2);
  a(1) = tau(0, 2) - tau(2, 0);
  a(2) = tau(1, 0) - tau(0, 1);
  return a;
}

inline PolyField s_field(const PolyField& q) {
  if (!q.is_matrix()) throw std::invalid_argument("s_field: matrix field expected");
  if (q.dim == 2) return q;
  PolyField out = PolyField::matrix(3);
  Poly tr = q(0, 0) + q(1, 1) + q(2, 2);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      out(i, j) = q(j, i) * Rational(-1);
      if (i == j) out(i, j) += tr;
    }
  return out;
}

inline PolyField s_inverse_field(const PolyField& q) {
  if (!q.is_matrix()) throw std::invalid_argument("s_inverse_field: matrix field expected");
  if (q.dim == 2) return q;
  PolyField out = PolyField::matrix(3);
  Poly tr = (q(0, 0) + q(1, 1) + q(2, 2)) * Rational(1, 2);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      out(i, j) = q(j, i) * Rational(-1);
      if (i == j) out(i, j) += tr;
    }
  return out;
}

/// Choice of the trace coefficient in the compliance tensor.
///   PAPER      c = lambda / (2 mu + 2 lambda) in every dimension;
///   DIM_AWARE  c = lambda / (2 mu + d lambda), the physical inverse of the
///              d-dimensional Lame stiffness (coincides with PAPER in 2D).
enum class ComplianceKind { PAPER, DIM_AWARE };

/// Isotropic material: A sigma = (1/2mu) (sigma - c tr(sigma) I).
struct Material {
  double mu = 1;
  double lambda = 1;
  ComplianceKind kind = ComplianceKind::PAPER;

  void validate() const {
    if (!(mu > 0)) throw std::invalid_argument("Material: mu must be positive");
    if (lambda < 0) throw std::invalid_argument("Material: lambda must be nonnegative");
  }

  double trace_coefficient(int dim) const {
    validate();
    const double denom =
        kind == ComplianceKind::PAPER ? 2 * mu + 2 * lambda : 2 * mu + dim * lambda;
    return lambda / denom;
  }

  /// Trace coefficient of the stiffness inverting the compliance:
  /// sigma = 2 mu eps + lambda_eff tr(eps) I. Equals lambda except for
  /// PAPER in 3D, where it is 2 mu lambda / (2 mu - lambda).
  double lambda_eff(int dim) const {
    const double c = trace_coefficient(dim);
    const double denom = 1 - dim * c;
    if (!(std::abs(denom) > 1e-14))
      throw std::domain_error("Material: compliance is singular on traces (lambda = 2 mu "
                              "with the dimension-independent trace coefficient in 3D)");
    return 2 * mu * c / denom;
  }

  Eigen::Matrix3d compliance(int dim, const Eigen::Matrix3d& sigma) const {
    Eigen::Matrix3d tr_part = Eigen::Matrix3d::Zero();
    double tr = 0;
    for (int i = 0; i < dim; ++i) tr += sigma(i, i);
    for (int i = 0; i < dim; ++i) tr_part(i, i) = tr;
    return (sigma - trace_coefficient(dim) * tr_part) / (2 * mu);
  }

  Eigen::Matrix3d stiffness(int dim, const Eigen::Matrix3d& eps) const {
    const double le = lambda_eff(dim);
    Eigen::Matrix3d out = 2 * mu * eps;
    double tr = 0;
    for (int i = 0; i < dim; ++i) tr += eps(i, i);
    for (int i = 0; i < dim; ++i) out(i, i) += le * tr;
    return out;
  }
};

}  // namespace weaksym
