// This file is part of weaksym, a library of rectangular mixed finite
// elements for linear elasticity with weakly imposed stress symmetry.
// Distributed under the BSD 3-Clause license. See LICENSE for details.

#pragma once

#include <weaksym/polynomial.hpp>

#include <vector>

namespace weaksym {

/// Scalar-, vector- or matrix-valued polynomial field on the reference cell
/// [0,1]^dim. Vector fields are dim x 1, matrix fields dim x dim; components
/// are stored row-major. Matrix-valued differential operators act row-wise:
/// each row of a matrix field transforms like the corresponding vector field.
struct PolyField {
  int dim = 2;   // ambient space dimension (2 or 3)
  int rows = 1;
  int cols = 1;
  std::vector<Poly> comp;

  PolyField() = default;
  PolyField(int dim_, int rows_, int cols_)
      : dim(dim_), rows(rows_), cols(cols_), comp(rows_ * cols_, Poly(dim_)) {}

  static PolyField scalar(int dim) { return PolyField(dim, 1, 1); }
  static PolyField vector(int dim) { return PolyField(dim, dim, 1); }
  static PolyField matrix(int dim) { return PolyField(dim, dim, dim); }

  bool is_scalar() const { return rows == 1 && cols == 1; }
  bool is_vector() const { return rows == dim && cols == 1; }
  bool is_matrix() const { return rows == dim && cols == dim; }

  Poly& operator()(int i, int j = 0) { return comp[i * cols + j]; }
  const Poly& operator()(int i, int j = 0) const { return comp[i * cols + j]; }

  bool is_zero() const {
    for (const auto& p : comp)
      if (!p.is_zero()) return false;
    return true;
  }

  bool same_shape(const PolyField& o) const {
    return dim == o.dim && rows == o.rows && cols == o.cols;
  }

  PolyField& operator+=(const PolyField& o) {
    if (!same_shape(o)) throw std::invalid_argument("PolyField: shape mismatch");
    for (std::size_t k = 0; k < comp.size(); ++k) comp[k] += o.comp[k];
    return *this;
  }
  PolyField& operator-=(const PolyField& o) {
    if (!same_shape(o)) throw std::invalid_argument("PolyField: shape mismatch");
    for (std::size_t k = 0; k < comp.size(); ++k) comp[k] -= o.comp[k];
    return *this;
  }
  PolyField& operator*=(const Rational& s) {
    for (auto& p : comp) p *= s;
    return *this;
  }
  friend PolyField operator+(PolyField a, const PolyField& b) { return a += b; }
  friend PolyField operator-(PolyField a, const PolyField& b) { return a -= b; }
  friend PolyField operator*(PolyField a, const Rational& s) { return a *= s; }
  friend PolyField operator*(const Rational& s, PolyField a) { return a *= s; }

  bool operator==(const PolyField& o) const {
    return same_shape(o) && comp == o.comp;
  }

  int max_total_degree() const {
    int d = 0;
    for (const auto& p : comp) d = std::max(d, p.total_degree());
    return d;
  }
};

enum class DiffOp { GRAD, CURL, DIV };

namespace detail {

/// 2D curl of a scalar: q -> (dq/dy, -dq/dx).
inline PolyField curl2_scalar(const Poly& q) {
  PolyField out = PolyField::vector(2);
  out(0) = q.derivative(1);
  out(1) = -q.derivative(0);
  return out;
}

/// 3D curl of a vector: (d2 q3 - d3 q2, d3 q1 - d1 q3, d1 q2 - d2 q1).
inline void curl3_vector(const Poly& q1, const Poly& q2, const Poly& q3, Poly& o1, Poly& o2,
                         Poly& o3) {
  o1 = q3.derivative(1) - q2.derivative(2);
  o2 = q1.derivative(2) - q3.derivative(0);
  o3 = q2.derivative(0) - q1.derivative(1);
}

}  // namespace detail

/// Exact differential of a polynomial field.
///   GRAD: scalar -> vector (both dims).
///   CURL: 2D scalar -> vector, 2D vector -> matrix (row-wise),
///         3D vector -> vector, 3D matrix -> matrix (row-wise).
///   DIV:  vector -> scalar, matrix -> vector (row-wise).
inline PolyField diff(DiffOp op, const PolyField& f) {
  switch (op) {
    case DiffOp::GRAD: {
      if (!f.is_scalar()) throw std::invalid_argument("diff GRAD: scalar field expected");
      PolyField out = PolyField::vector(f.dim);
      for (int v = 0; v < f.dim; ++v) out(v) = f(0, 0).derivative(v);
      return out;
    }
    case DiffOp::CURL: {
      if (f.dim == 2) {
        if (f.is_scalar()) return detail::curl2_scalar(f(0, 0));
        if (f.is_vector()) {
          PolyField out = PolyField::matrix(2);
          for (int r = 0; r < 2; ++r) {
            PolyField row = detail::curl2_scalar(f(r));
            out(r, 0) = row(0);
            out(r, 1) = row(1);
          }
          return out;
        }
        throw std::invalid_argument("diff CURL 2D: scalar or vector field expected");
      }
      if (f.is_vector()) {
        PolyField out = PolyField::vector(3);
        detail::curl3_vector(f(0), f(1), f(2), out(0), out(1), out(2));
        return out;
      }
      if (f.is_matrix()) {
        PolyField out = PolyField::matrix(3);
        for (int r = 0; r < 3; ++r)
          detail::curl3_vector(f(r, 0), f(r, 1), f(r, 2), out(r, 0), out(r, 1), out(r, 2));
        return out;
      }
      throw std::invalid_argument("diff CURL 3D: vector or matrix field expected");
    }
    case DiffOp::DIV: {
      if (f.is_vector()) {
        PolyField out = PolyField::scalar(f.dim);
        for (int v = 0; v < f.dim; ++v) out(0, 0) += f(v).derivative(v);
        return out;
      }
      if (f.is_matrix()) {
        PolyField out = PolyField::vector(f.dim);
        for (int r = 0; r < f.dim; ++r)
          for (int v = 0; v < f.dim; ++v) out(r) += f(r, v).derivative(v);
        return out;
      }
      throw std::invalid_argument("diff DIV: vector or matrix field expected");
    }
  }
  throw std::logic_error("diff: unreachable");
}

struct SpanRank {
  std::size_t rank = 0;
  /// Coefficient vectors spanning the null space of the coefficient matrix:
  /// each entry lists one rational weight per input field.
  std::vector<std::vector<Rational>> kernel;
};

/// Exact rank of the span of a family of equally-shaped fields, together with
/// the linear dependencies among them.
inline SpanRank span_rank(const std::vector<PolyField>& fields) {
  SpanRank out;
  if (fields.empty()) return out;
  for (const auto& f : fields)
    if (!f.same_shape(fields.front())) throw std::invalid_argument("span_rank: shape mismatch");

  // Column space: every (component, monomial) pair occurring anywhere.
  std::map<std::pair<std::size_t, MultiIndex>, std::size_t> col_of;
  for (const auto& f : fields)
    for (std::size_t k = 0; k < f.comp.size(); ++k)
      for (const auto& [e, c] : f.comp[k].terms())
        col_of.emplace(std::make_pair(k, e), col_of.size());

  // The kernel is computed from the transpose so that null vectors are
  // weights on the input fields.
  RationalMatrix m(col_of.size(), fields.size());
  for (std::size_t j = 0; j < fields.size(); ++j)
    for (std::size_t k = 0; k < fields[j].comp.size(); ++k)
      for (const auto& [e, c] : fields[j].comp[k].terms())
        m(col_of.at({k, e}), j) = c;

  out.rank = m.rank();
  out.kernel = m.kernel();
  return out;
}

/// True when `f` lies in the span of `basis` (exact membership test).
inline bool in_span(const PolyField& f, const std::vector<PolyField>& basis) {
  std::vector<PolyField> all = basis;
  all.push_back(f);
  return span_rank(all).rank == span_rank(basis).rank;
}

}  // namespace weaksym
