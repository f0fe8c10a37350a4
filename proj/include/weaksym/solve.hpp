// This file is part of weaksym, a library of rectangular mixed finite
// elements for linear elasticity with weakly imposed stress symmetry.
// Distributed under the BSD 3-Clause license. See LICENSE for details.
//
// Solution of the assembled symmetric indefinite saddle system: sparse LU
// below a size threshold, MINRES with diagonal row-norm scaling above it.
// Both paths are deterministic for a fixed degree-of-freedom ordering.

#pragma once

#include <weaksym/assemble.hpp>

#include <Eigen/Sparse>
#include <Eigen/SparseLU>
#include <unsupported/Eigen/IterativeSolvers>

#include <map>
#include <sstream>
#include <string>

namespace weaksym {

/// Raised on a rank-deficient system; carries a near-null vector and a
/// structural diagnosis (zero or duplicated columns point at a broken
/// element or dof map).
struct SingularSystemError : std::runtime_error {
  SingularSystemError(const std::string& what, Eigen::VectorXd near_null_)
      : std::runtime_error(what), near_null(std::move(near_null_)) {}
  Eigen::VectorXd near_null;
};

/// Relative algebraic residual ||K x - b|| / max(1, ||b||).
inline double relative_residual(const Eigen::SparseMatrix<double>& K, const Eigen::VectorXd& x,
                                const Eigen::VectorXd& b) {
  return (K * x - b).norm() / std::max(1.0, b.norm());
}

struct SolveOptions {
  double tol = 1e-10;
  int direct_threshold = 50000;  // unknowns; above this, MINRES is used
  bool force_iterative = false;
  int max_iterations = 200000;
};

struct Solution {
  Eigen::VectorXd sigma, u, gamma;
  Eigen::VectorXd full;
  bool used_direct = true;
  int iterations = 0;
  double residual = 0;
};

namespace detail {

/// Jacobi-style scaling by inverse row 1-norms. The saddle matrix has zero
/// diagonal blocks, so plain diagonal inversion is unusable; row norms are
/// strictly positive and symmetric scaling preserves self-adjointness well
/// enough for MINRES.
class RowNormPreconditioner {
  using Vector = Eigen::VectorXd;

public:
  using StorageIndex = Vector::StorageIndex;
  enum { ColsAtCompileTime = Eigen::Dynamic, MaxColsAtCompileTime = Eigen::Dynamic };

  RowNormPreconditioner() = default;
  template <typename MatType>
  explicit RowNormPreconditioner(const MatType& mat) {
    compute(mat);
  }

  Eigen::Index rows() const { return m_inv.size(); }
  Eigen::Index cols() const { return m_inv.size(); }

  template <typename MatType>
  RowNormPreconditioner& analyzePattern(const MatType&) {
    return *this;
  }
  template <typename MatType>
  RowNormPreconditioner& factorize(const MatType& mat) {
    Vector norm = Vector::Zero(mat.rows());
    for (int j = 0; j < mat.outerSize(); ++j)
      for (typename MatType::InnerIterator it(mat, j); it; ++it)
        norm[it.row()] += std::abs(it.value());
    const double floor = std::max(norm.maxCoeff(), 1.0) * 1e-14;
    m_inv = (norm.array() + floor).inverse();
    m_ready = true;
    return *this;
  }
  template <typename MatType>
  RowNormPreconditioner& compute(const MatType& mat) {
    return factorize(mat);
  }

  template <typename Rhs, typename Dest>
  void _solve_impl(const Rhs& b, Dest& x) const {
    x = m_inv.array() * b.array();
  }
  template <typename Rhs>
  inline const Eigen::Solve<RowNormPreconditioner, Rhs> solve(
      const Eigen::MatrixBase<Rhs>& b) const {
    eigen_assert(m_ready);
    return Eigen::Solve<RowNormPreconditioner, Rhs>(*this, b.derived());
  }
  Eigen::ComputationInfo info() const { return Eigen::Success; }

private:
  Vector m_inv;
  bool m_ready = false;
};

/// Structural singularity report: zero columns and duplicated columns.
inline std::string diagnose_columns(const Eigen::SparseMatrix<double>& K) {
  std::ostringstream msg;
  std::map<std::string, int> seen;
  int zero_cols = 0, duplicate_pairs = 0;
  for (int j = 0; j < K.outerSize(); ++j) {
    std::ostringstream sig;
    int entries = 0;
    for (Eigen::SparseMatrix<double>::InnerIterator it(K, j); it; ++it) {
      if (it.value() == 0) continue;
      sig << it.row() << ':' << it.value() << ';';
      ++entries;
    }
    if (entries == 0) {
      ++zero_cols;
      if (zero_cols == 1) msg << " zero column " << j << ";";
      continue;
    }
    const auto [pos, inserted] = seen.emplace(sig.str(), j);
    if (!inserted) {
      ++duplicate_pairs;
      if (duplicate_pairs == 1) msg << " duplicate columns " << pos->second << " and " << j << ";";
    }
  }
  if (zero_cols > 1) msg << " (" << zero_cols << " zero columns total)";
  if (duplicate_pairs > 1) msg << " (" << duplicate_pairs << " duplicate pairs total)";
  const std::string s = msg.str();
  return s.empty() ? std::string(" no zero or duplicate columns found") : s;
}

/// A vector x with ||Kx|| small relative to ||x||, computed by a few inverse
/// iterations on the regularized matrix; used only for error reporting.
inline Eigen::VectorXd near_null_vector(const Eigen::SparseMatrix<double>& K) {
  const int n = static_cast<int>(K.rows());
  double scale = 0;
  for (int j = 0; j < K.outerSize(); ++j)
    for (Eigen::SparseMatrix<double>::InnerIterator it(K, j); it; ++it)
      scale = std::max(scale, std::abs(it.value()));
  if (scale == 0) return Eigen::VectorXd::Ones(n).normalized();
  Eigen::SparseMatrix<double> reg = K;
  Eigen::SparseMatrix<double> eye(n, n);
  eye.setIdentity();
  reg += (scale * 1e-12) * eye;
  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu(reg);
  if (lu.info() != Eigen::Success) return Eigen::VectorXd::Zero(n);
  Eigen::VectorXd v = Eigen::VectorXd::Ones(n).normalized();
  for (int it = 0; it < 8; ++it) {
    v = lu.solve(v);
    const double nrm = v.norm();
    if (!(nrm > 0) || !std::isfinite(nrm)) return Eigen::VectorXd::Zero(n);
    v /= nrm;
  }
  return v;
}

}  // namespace detail

/// Solve K x = b for a matrix with the saddle block sizes and split the
/// solution. Throws SingularSystemError (with a near-null vector and a
/// structural column diagnosis) when the matrix is rank deficient.
inline Solution solve(const Eigen::SparseMatrix<double>& K, const Eigen::VectorXd& b,
                      int n_sigma, int n_u, int n_gamma, const SolveOptions& opt = {}) {
  if (K.rows() != n_sigma + n_u + n_gamma || K.rows() != b.size())
    throw std::invalid_argument("solve: block sizes do not match the system");
  if (!(opt.tol > 0)) throw std::invalid_argument("solve: tolerance must be positive");

  Solution sol;
  const bool direct = !opt.force_iterative && K.rows() <= opt.direct_threshold;
  if (direct) {
    Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
    lu.analyzePattern(K);
    lu.factorize(K);
    if (lu.info() != Eigen::Success)
      throw SingularSystemError(
          "solve: sparse factorization failed; structural diagnosis:" +
              detail::diagnose_columns(K),
          detail::near_null_vector(K));
    sol.full = lu.solve(b);
    sol.used_direct = true;
  } else {
    Eigen::MINRES<Eigen::SparseMatrix<double>, Eigen::Lower | Eigen::Upper,
                  detail::RowNormPreconditioner>
        minres;
    minres.setTolerance(opt.tol * 1e-2);
    minres.setMaxIterations(opt.max_iterations);
    minres.compute(K);
    sol.full = minres.solve(b);
    sol.used_direct = false;
    sol.iterations = static_cast<int>(minres.iterations());
  }
  sol.residual = relative_residual(K, sol.full, b);
  if (!std::isfinite(sol.residual) || sol.residual > opt.tol)
    throw SingularSystemError(
        "solve: residual " + std::to_string(sol.residual) +
            " exceeds tolerance; structural diagnosis:" + detail::diagnose_columns(K),
        detail::near_null_vector(K));
  sol.sigma = sol.full.head(n_sigma);
  sol.u = sol.full.segment(n_sigma, n_u);
  sol.gamma = sol.full.tail(n_gamma);
  return sol;
}

/// Assemble the full matrix and right-hand side of a saddle system and solve.
/// The optional sigma_load fills the first block of the right-hand side (it
/// is zero for clamped boundaries).
inline Solution solve(const SaddleSystem& sys, const SolveOptions& opt = {},
                      const Eigen::VectorXd* sigma_load = nullptr) {
  const Eigen::SparseMatrix<double> K = sys.full_matrix();
  const Eigen::VectorXd b = sys.full_rhs(sigma_load);
  return solve(K, b, sys.n_sigma(), sys.n_u(), sys.n_gamma(), opt);
}

}  // namespace weaksym
