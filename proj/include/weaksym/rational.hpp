// This file is part of weaksym, a library of rectangular mixed finite
// elements for linear elasticity with weakly imposed stress symmetry.
// Distributed under the BSD 3-Clause license. See LICENSE for details.

#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <vector>

namespace weaksym {

/// Exact rational scalar used for element construction, Vandermonde
/// factorisation and span/rank computations. Floating point enters only at
/// quadrature and assembly time.
using Rational = boost::multiprecision::cpp_rational;

inline double to_double(const Rational& r) { return r.convert_to<double>(); }

/// Dense matrix over the rationals with just enough linear algebra for
/// element certification: rank, determinant, kernel and inverse, all exact.
class RationalMatrix {
public:
  RationalMatrix() = default;
  RationalMatrix(std::size_t rows, std::size_t cols)
      : m_rows(rows), m_cols(cols), m_a(rows * cols) {}

  std::size_t rows() const { return m_rows; }
  std::size_t cols() const { return m_cols; }

  Rational& operator()(std::size_t i, std::size_t j) { return m_a[i * m_cols + j]; }
  const Rational& operator()(std::size_t i, std::size_t j) const { return m_a[i * m_cols + j]; }

  static RationalMatrix identity(std::size_t n) {
    RationalMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  /// Determinant by fraction-tracking Gaussian elimination. Square only.
  Rational determinant() const {
    if (m_rows != m_cols) throw std::invalid_argument("determinant: matrix not square");
    RationalMatrix a(*this);
    Rational det = 1;
    for (std::size_t k = 0; k < m_rows; ++k) {
      std::size_t piv = k;
      while (piv < m_rows && a(piv, k) == 0) ++piv;
      if (piv == m_rows) return Rational(0);
      if (piv != k) {
        for (std::size_t j = k; j < m_cols; ++j) std::swap(a(piv, j), a(k, j));
        det = -det;
      }
      det *= a(k, k);
      for (std::size_t i = k + 1; i < m_rows; ++i) {
        if (a(i, k) == 0) continue;
        const Rational f = a(i, k) / a(k, k);
        for (std::size_t j = k; j < m_cols; ++j) a(i, j) -= f * a(k, j);
      }
    }
    return det;
  }

  std::size_t rank() const {
    RationalMatrix a(*this);
    return a.eliminate();
  }

  /// Basis of the (right) null space, one vector per column of the result.
  std::vector<std::vector<Rational>> kernel() const {
    RationalMatrix a(*this);
    const std::size_t r = a.eliminate();
    // Columns of the reduced echelon form split into pivot and free columns.
    std::vector<std::size_t> pivot_col(r);
    std::vector<bool> is_pivot(m_cols, false);
    {
      std::size_t row = 0;
      for (std::size_t j = 0; j < m_cols && row < r; ++j) {
        if (a(row, j) != 0) {
          pivot_col[row] = j;
          is_pivot[j] = true;
          ++row;
        }
      }
    }
    std::vector<std::vector<Rational>> basis;
    for (std::size_t j = 0; j < m_cols; ++j) {
      if (is_pivot[j]) continue;
      std::vector<Rational> v(m_cols);
      v[j] = 1;
      // Echelon form is fully reduced (unit pivots, zeros above), so each
      // pivot variable reads off directly.
      for (std::size_t row = 0; row < r; ++row) v[pivot_col[row]] = -a(row, j);
      basis.push_back(std::move(v));
    }
    return basis;
  }

  /// Solve A x = b exactly; throws if the matrix is singular.
  std::vector<Rational> solve(const std::vector<Rational>& b) const {
    if (m_rows != m_cols || b.size() != m_rows)
      throw std::invalid_argument("solve: dimension mismatch");
    RationalMatrix a(m_rows, m_cols + 1);
    for (std::size_t i = 0; i < m_rows; ++i) {
      for (std::size_t j = 0; j < m_cols; ++j) a(i, j) = (*this)(i, j);
      a(i, m_cols) = b[i];
    }
    // Pivots restricted to the coefficient block so the right-hand side
    // cannot mask a rank deficiency.
    if (a.eliminate(m_cols) != m_rows) throw std::runtime_error("solve: singular matrix");
    std::vector<Rational> x(m_rows);
    for (std::size_t i = 0; i < m_rows; ++i) x[i] = a(i, m_cols);
    return x;
  }

  /// Exact inverse; throws if singular.
  RationalMatrix inverse() const {
    if (m_rows != m_cols) throw std::invalid_argument("inverse: matrix not square");
    RationalMatrix a(m_rows, 2 * m_cols);
    for (std::size_t i = 0; i < m_rows; ++i) {
      for (std::size_t j = 0; j < m_cols; ++j) a(i, j) = (*this)(i, j);
      a(i, m_cols + i) = 1;
    }
    if (a.eliminate(m_cols) != m_rows) throw std::runtime_error("inverse: singular matrix");
    RationalMatrix inv(m_rows, m_cols);
    for (std::size_t i = 0; i < m_rows; ++i)
      for (std::size_t j = 0; j < m_cols; ++j) inv(i, j) = a(i, m_cols + j);
    return inv;
  }

  /// In-place reduction to reduced row echelon form, choosing pivots among
  /// the first `pivot_cols` columns only (all columns by default). Returns
  /// the number of pivots found.
  std::size_t eliminate(std::size_t pivot_cols = SIZE_MAX) {
    std::size_t row = 0;
    const std::size_t limit = std::min(pivot_cols, m_cols);
    for (std::size_t col = 0; col < limit && row < m_rows; ++col) {
      std::size_t piv = row;
      while (piv < m_rows && (*this)(piv, col) == 0) ++piv;
      if (piv == m_rows) continue;
      if (piv != row)
        for (std::size_t j = 0; j < m_cols; ++j) std::swap((*this)(piv, j), (*this)(row, j));
      const Rational p = (*this)(row, col);
      for (std::size_t j = col; j < m_cols; ++j) (*this)(row, j) /= p;
      for (std::size_t i = 0; i < m_rows; ++i) {
        if (i == row || (*this)(i, col) == 0) continue;
        const Rational f = (*this)(i, col);
        for (std::size_t j = col; j < m_cols; ++j) (*this)(i, j) -= f * (*this)(row, j);
      }
      ++row;
    }
    return row;
  }

private:
  std::size_t m_rows = 0;
  std::size_t m_cols = 0;
  std::vector<Rational> m_a;
};

}  // namespace weaksym
