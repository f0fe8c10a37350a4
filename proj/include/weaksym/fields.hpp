// This file is part of weaksym, a library of rectangular mixed finite
// elements for linear elasticity with weakly imposed stress symmetry.
// Distributed under the BSD 3-Clause license. See LICENSE for details.
//
// Analytic (non-polynomial) fields with first and second derivatives, used
// as inputs to interpolants and as manufactured solutions. Vector and matrix
// fields are grids of scalar fields; values are padded into fixed-size
// Eigen types with zeros beyond the ambient dimension.

#pragma once

#include <weaksym/mesh.hpp>
#include <weaksym/polyfield.hpp>

#include <Eigen/Dense>

#include <array>
#include <cmath>
#include <functional>
#include <vector>

namespace weaksym {

/// One factor of a separable function of a single coordinate, with its
/// first two derivatives.
struct Factor {
  std::function<double(double)> f, df, ddf;
};

inline Factor factor_constant(double c) {
  return {[c](double) { return c; }, [](double) { return 0.0; }, [](double) { return 0.0; }};
}
inline Factor factor_linear(double a0, double a1) {
  return {[a0, a1](double t) { return a0 + a1 * t; }, [a1](double) { return a1; },
          [](double) { return 0.0; }};
}
inline Factor factor_sin_pi() {
  return {[](double t) { return std::sin(M_PI * t); },
          [](double t) { return M_PI * std::cos(M_PI * t); },
          [](double t) { return -M_PI * M_PI * std::sin(M_PI * t); }};
}
/// t (1 - t), the quadratic vanishing at both interval ends.
inline Factor factor_bubble() {
  return {[](double t) { return t * (1 - t); }, [](double t) { return 1 - 2 * t; },
          [](double) { return -2.0; }};
}

/// Scalar field with optional analytic gradient and Hessian.
struct ScalarField {
  std::function<double(const Point&)> value;
  std::function<Eigen::Vector3d(const Point&)> grad;
  std::function<Eigen::Matrix3d(const Point&)> hess;

  bool has_grad() const { return static_cast<bool>(grad); }
  bool has_hess() const { return static_cast<bool>(hess); }
};

inline ScalarField constant_scalar_field(double c) {
  ScalarField s;
  s.value = [c](const Point&) { return c; };
  s.grad = [](const Point&) { return Eigen::Vector3d::Zero().eval(); };
  s.hess = [](const Point&) { return Eigen::Matrix3d::Zero().eval(); };
  return s;
}

/// Product f0(x) f1(y) (f2(z)); derivatives assembled from the factors.
inline ScalarField separable_field(int dim, std::array<Factor, 3> fac) {
  if (dim == 2) fac[2] = factor_constant(1);
  ScalarField s;
  s.value = [fac, dim](const Point& x) {
    double v = 1;
    for (int a = 0; a < 3; ++a) v *= fac[a].f(a < dim ? x[a] : 0.0);
    return v;
  };
  s.grad = [fac, dim](const Point& x) {
    Eigen::Vector3d g = Eigen::Vector3d::Zero();
    for (int a = 0; a < dim; ++a) {
      double v = fac[a].df(x[a]);
      for (int b = 0; b < 3; ++b)
        if (b != a) v *= fac[b].f(b < dim ? x[b] : 0.0);
      g(a) = v;
    }
    return g;
  };
  s.hess = [fac, dim](const Point& x) {
    Eigen::Matrix3d h = Eigen::Matrix3d::Zero();
    for (int a = 0; a < dim; ++a)
      for (int b = 0; b < dim; ++b) {
        double v = 1;
        for (int c = 0; c < 3; ++c) {
          const double t = c < dim ? x[c] : 0.0;
          if (a == b && c == a)
            v *= fac[c].ddf(t);
          else if (c == a || c == b)
            v *= fac[c].df(t);
          else
            v *= fac[c].f(t);
        }
        h(a, b) = v;
      }
    return h;
  };
  return s;
}

/// Exact-arithmetic polynomial as an analytic field (coefficients converted
/// to double once).
inline ScalarField poly_scalar_field(const Poly& p) {
  const Poly dx = p.derivative(0), dy = p.derivative(1), dz = p.derivative(2);
  ScalarField s;
  s.value = [p](const Point& x) { return p.eval_double(x); };
  s.grad = [dx, dy, dz](const Point& x) {
    return Eigen::Vector3d(dx.eval_double(x), dy.eval_double(x), dz.eval_double(x));
  };
  s.hess = [p](const Point& x) {
    Eigen::Matrix3d h;
    for (int a = 0; a < 3; ++a)
      for (int b = 0; b < 3; ++b) h(a, b) = p.derivative(a).derivative(b).eval_double(x);
    return h;
  };
  return s;
}

struct VectorField {
  int dim = 2;
  std::vector<ScalarField> comp;  // size dim

  Eigen::Vector3d value(const Point& x) const {
    Eigen::Vector3d v = Eigen::Vector3d::Zero();
    for (int c = 0; c < dim; ++c) v(c) = comp[c].value(x);
    return v;
  }
  /// J_ij = d comp_i / d x_j.
  Eigen::Matrix3d jacobian(const Point& x) const {
    Eigen::Matrix3d j = Eigen::Matrix3d::Zero();
    for (int c = 0; c < dim; ++c) j.row(c) = comp[c].grad(x).transpose();
    return j;
  }
  double divergence(const Point& x) const {
    double d = 0;
    for (int c = 0; c < dim; ++c) d += comp[c].grad(x)(c);
    return d;
  }
};

struct MatrixField {
  int dim = 2;
  std::vector<ScalarField> comp;  // dim*dim, row-major

  const ScalarField& at(int i, int j) const { return comp[i * dim + j]; }

  Eigen::Matrix3d value(const Point& x) const {
    Eigen::Matrix3d m = Eigen::Matrix3d::Zero();
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) m(i, j) = at(i, j).value(x);
    return m;
  }
  /// Row-wise divergence (div m)_i = sum_j d m_ij / d x_j.
  Eigen::Vector3d divergence(const Point& x) const {
    Eigen::Vector3d d = Eigen::Vector3d::Zero();
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) d(i) += at(i, j).grad(x)(j);
    return d;
  }
};

inline VectorField vector_from_polyfield(const PolyField& f) {
  if (!f.is_vector()) throw std::invalid_argument("vector_from_polyfield: shape");
  VectorField v;
  v.dim = f.dim;
  for (int c = 0; c < f.dim; ++c) v.comp.push_back(poly_scalar_field(f(c)));
  return v;
}

inline MatrixField matrix_from_polyfield(const PolyField& f) {
  if (!f.is_matrix()) throw std::invalid_argument("matrix_from_polyfield: shape");
  MatrixField m;
  m.dim = f.dim;
  for (int i = 0; i < f.dim; ++i)
    for (int j = 0; j < f.dim; ++j) m.comp.push_back(poly_scalar_field(f(i, j)));
  return m;
}

/// Spot-check analytic derivatives against central differences; returns the
/// largest absolute mismatch over the sample points.
inline double derivative_consistency(const ScalarField& s, int dim,
                                     const std::vector<Point>& samples, double step = 1e-5) {
  double worst = 0;
  for (const Point& x : samples) {
    const Eigen::Vector3d g = s.grad(x);
    for (int a = 0; a < dim; ++a) {
      Point xp = x, xm = x;
      xp[a] += step;
      xm[a] -= step;
      const double fd = (s.value(xp) - s.value(xm)) / (2 * step);
      worst = std::max(worst, std::abs(fd - g(a)));
    }
  }
  return worst;
}

}  // namespace weaksym
