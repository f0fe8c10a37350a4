// This file is part of weaksym, a library of rectangular mixed finite
// elements for linear elasticity with weakly imposed stress symmetry.
// Distributed under the BSD 3-Clause license. See LICENSE for details.
//
// Error norms against manufactured solutions, h-refinement convergence
// studies with observed rates, the refined divergence-error identity
// || div(sigma - sigma_h) || = || div sigma - P0 div sigma ||, and CSV
// emission of study reports.

#pragma once

#include <weaksym/manufactured.hpp>
#include <weaksym/solve.hpp>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>
#include <string>

namespace weaksym {

/// The four error norms of a discrete solution against the exact fields.
struct ErrorRecord {
  double sigma_l2 = 0;    ///< || sigma - sigma_h ||_L2 (Frobenius)
  double sigma_hdiv = 0;  ///< sqrt(sigma_l2^2 + || div sigma - div sigma_h ||^2)
  double u_l2 = 0;        ///< || u - u_h ||_L2
  double gamma_l2 = 0;    ///< || gamma - gamma_h ||_L2
};

/// Cellwise Gauss quadrature of the squared misfits between the exact fields
/// of `mc` and the discrete solution on the system's mesh. The divergence
/// misfit uses the exact div sigma = f.
inline ErrorRecord error_norms(const Solution& sol, const ManufacturedCase& mc,
                               const SaddleSystem& sys, int quad_points = 5) {
  const Mesh& mesh = *sys.mesh;
  const int dim = mesh.dim();
  if (dim != mc.dim) throw std::invalid_argument("error_norms: case/system dimension mismatch");
  if (sol.sigma.size() != sys.n_sigma() || sol.u.size() != sys.n_u() ||
      sol.gamma.size() != sys.n_gamma())
    throw std::invalid_argument("error_norms: solution does not match the system");

  const QuadratureRule rule(dim, quad_points);
  const detail::TabulatedBasis ts = detail::tabulate(sys.sigma, rule);
  const detail::TabulatedBasis tu = detail::tabulate(sys.u, rule);
  const detail::TabulatedBasis tg = detail::tabulate(sys.gamma, rule);
  const double vol = mesh.cell_volume();

  double e_sig = 0, e_div = 0, e_u = 0, e_gam = 0;
  for (int c = 0; c < mesh.n_cells(); ++c) {
    const AffineMap F = mesh.cell_map(c);
    for (std::size_t q = 0; q < rule.size(); ++q) {
      const Point x = F.apply(rule.points[q]);
      const double w = rule.weights[q] * vol;

      Eigen::Matrix3d sh = Eigen::Matrix3d::Zero();
      Eigen::Vector3d dh = Eigen::Vector3d::Zero();
      for (int l = 0; l < sys.sigma.n_local(); ++l) {
        const double coef = sol.sigma[sys.sigma.global_dof(c, l)];
        sh += coef * ts.value[l][q];
        dh += coef * ts.div[l][q].col(0);
      }
      Eigen::Vector3d uh = Eigen::Vector3d::Zero();
      for (int l = 0; l < sys.u.n_local(); ++l)
        uh += sol.u[sys.u.global_dof(c, l)] * tu.value[l][q].col(0);
      Eigen::Vector3d gh = Eigen::Vector3d::Zero();
      for (int l = 0; l < sys.gamma.n_local(); ++l)
        gh += sol.gamma[sys.gamma.global_dof(c, l)] * tg.value[l][q].col(0);

      e_sig += w * (mc.sigma.value(x) - sh).squaredNorm();
      e_div += w * (mc.f.value(x) - dh).squaredNorm();
      e_u += w * (mc.u.value(x) - uh).squaredNorm();
      e_gam += w * (mc.gamma.value(x).col(0) - gh).squaredNorm();
    }
  }
  ErrorRecord rec;
  rec.sigma_l2 = std::sqrt(e_sig);
  rec.sigma_hdiv = std::sqrt(e_sig + e_div);
  rec.u_l2 = std::sqrt(e_u);
  rec.gamma_l2 = std::sqrt(e_gam);
  return rec;
}

/// Both sides of the refined divergence identity, computed independently:
/// lhs = || div sigma - div sigma_h || from the discrete solution,
/// rhs = || div sigma - P0 div sigma || from the exact force alone.
struct RefinedIdentity {
  double lhs = 0;
  double rhs = 0;
  /// |lhs - rhs| / rhs; infinity when rhs = 0 < lhs.
  double relative = 0;
};

inline RefinedIdentity refined_identity_check(const Solution& sol, const ManufacturedCase& mc,
                                              const SaddleSystem& sys, int quad_points = 5) {
  const Mesh& mesh = *sys.mesh;
  const int dim = mesh.dim();
  const QuadratureRule rule(dim, quad_points);
  const detail::TabulatedBasis ts = detail::tabulate(sys.sigma, rule);
  const double vol = mesh.cell_volume();

  double acc_lhs = 0, acc_rhs = 0;
  for (int c = 0; c < mesh.n_cells(); ++c) {
    const AffineMap F = mesh.cell_map(c);
    // Cell mean of f for the projection side.
    Eigen::Vector3d mean = Eigen::Vector3d::Zero();
    for (std::size_t q = 0; q < rule.size(); ++q)
      mean += rule.weights[q] * mc.f.value(F.apply(rule.points[q]));
    for (std::size_t q = 0; q < rule.size(); ++q) {
      const Point x = F.apply(rule.points[q]);
      const double w = rule.weights[q] * vol;
      Eigen::Vector3d dh = Eigen::Vector3d::Zero();
      for (int l = 0; l < sys.sigma.n_local(); ++l)
        dh += sol.sigma[sys.sigma.global_dof(c, l)] * ts.div[l][q].col(0);
      acc_lhs += w * (mc.f.value(x) - dh).squaredNorm();
      acc_rhs += w * (mc.f.value(x) - mean).squaredNorm();
    }
  }
  RefinedIdentity rec;
  rec.lhs = std::sqrt(acc_lhs);
  rec.rhs = std::sqrt(acc_rhs);
  rec.relative = rec.rhs > 0 ? std::abs(rec.lhs - rec.rhs) / rec.rhs
                             : (rec.lhs > 0 ? std::numeric_limits<double>::infinity() : 0.0);
  return rec;
}

/// Discrete pairs exercised by convergence studies.
enum class StudyFamily { BDM_2D, SIMPLIFIED_2D, THREE_D };

inline int study_dim(StudyFamily f) { return f == StudyFamily::THREE_D ? 3 : 2; }

inline Family study_stress_family(StudyFamily f) {
  switch (f) {
    case StudyFamily::BDM_2D: return Family::BDM1_ROW_STRESS;
    case StudyFamily::SIMPLIFIED_2D: return Family::SIGMA_SIMPLIFIED;
    default: return Family::BDM1_ROW_STRESS_3D;
  }
}

/// One refinement level: mesh size, errors, observed rates against the
/// previous level (NaN on the coarsest), and the solve wall time.
struct ConvergenceRow {
  int cells_per_axis = 0;
  double h = 0;
  ErrorRecord err;
  ErrorRecord rate{std::numeric_limits<double>::quiet_NaN(),
                   std::numeric_limits<double>::quiet_NaN(),
                   std::numeric_limits<double>::quiet_NaN(),
                   std::numeric_limits<double>::quiet_NaN()};
  double solve_seconds = 0;
};

struct ConvergenceReport {
  StudyFamily family = StudyFamily::BDM_2D;
  std::vector<ConvergenceRow> rows;
};

namespace detail {
inline double observed_rate(double e_coarse, double e_fine, double h_coarse, double h_fine) {
  if (!(e_coarse > 0) || !(e_fine > 0)) return std::numeric_limits<double>::quiet_NaN();
  return std::log(e_coarse / e_fine) / std::log(h_coarse / h_fine);
}
}  // namespace detail

/// Run the full pipeline (mesh, assemble, solve, norms) on each level and
/// attach successive observed rates. `cells_per_axis` must be strictly
/// increasing (so h strictly decreases) with at least three levels.
inline ConvergenceReport convergence_study(const ManufacturedCase& mc, StudyFamily family,
                                           const std::vector<int>& cells_per_axis,
                                           const SolveOptions& opt = {}, int quad_points = 5) {
  if (study_dim(family) != mc.dim)
    throw std::invalid_argument("convergence_study: case/family dimension mismatch");
  if (cells_per_axis.size() < 3)
    throw std::invalid_argument("convergence_study: need at least three mesh levels");
  for (std::size_t i = 1; i < cells_per_axis.size(); ++i)
    if (cells_per_axis[i] <= cells_per_axis[i - 1])
      throw std::invalid_argument("convergence_study: mesh sizes must strictly decrease");

  const int dim = mc.dim;
  ConvergenceReport rep;
  rep.family = family;
  for (const int n : cells_per_axis) {
    ConvergenceRow row;
    row.cells_per_axis = n;
    double h = 0;
    for (int a = 0; a < dim; ++a) h = std::max(h, (mc.hi[a] - mc.lo[a]) / n);
    row.h = h;
    try {
      const Mesh mesh(dim, {n, n, n}, mc.lo, mc.hi);
      const SaddleSystem sys =
          assemble(mesh, mc.material, view(mc.f), study_stress_family(family), quad_points);
      Eigen::VectorXd s;
      if (mc.interior_restriction) s = boundary_load(sys.sigma, view(mc.u), quad_points);
      const auto t0 = std::chrono::steady_clock::now();
      const Solution sol = solve(sys, opt, mc.interior_restriction ? &s : nullptr);
      row.solve_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
      row.err = error_norms(sol, mc, sys, quad_points);
    } catch (const std::exception& e) {
      throw std::runtime_error("convergence_study: level n = " + std::to_string(n) +
                               " (h = " + std::to_string(h) + ") failed: " + e.what());
    }
    if (!rep.rows.empty()) {
      const ConvergenceRow& prev = rep.rows.back();
      row.rate.sigma_l2 = detail::observed_rate(prev.err.sigma_l2, row.err.sigma_l2, prev.h, row.h);
      row.rate.sigma_hdiv =
          detail::observed_rate(prev.err.sigma_hdiv, row.err.sigma_hdiv, prev.h, row.h);
      row.rate.u_l2 = detail::observed_rate(prev.err.u_l2, row.err.u_l2, prev.h, row.h);
      row.rate.gamma_l2 =
          detail::observed_rate(prev.err.gamma_l2, row.err.gamma_l2, prev.h, row.h);
    }
    rep.rows.push_back(std::move(row));
  }
  return rep;
}

namespace detail {
inline std::string csv_number(double v) {
  if (std::isnan(v)) return "";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}
}  // namespace detail

/// CSV rendering of a report, one line per level. Deterministic for a given
/// report; callers wanting byte-identical output across runs should zero the
/// solve_seconds column first.
inline std::string to_csv(const ConvergenceReport& rep) {
  std::ostringstream out;
  out << "h,err_sigma_l2,err_sigma_hdiv,err_u_l2,err_gamma_l2,"
         "rate_sigma_l2,rate_sigma_hdiv,rate_u_l2,rate_gamma_l2,solve_seconds\n";
  for (const ConvergenceRow& r : rep.rows) {
    out << detail::csv_number(r.h) << ',' << detail::csv_number(r.err.sigma_l2) << ','
        << detail::csv_number(r.err.sigma_hdiv) << ',' << detail::csv_number(r.err.u_l2) << ','
        << detail::csv_number(r.err.gamma_l2) << ',' << detail::csv_number(r.rate.sigma_l2) << ','
        << detail::csv_number(r.rate.sigma_hdiv) << ',' << detail::csv_number(r.rate.u_l2) << ','
        << detail::csv_number(r.rate.gamma_l2) << ',' << detail::csv_number(r.solve_seconds)
        << '\n';
  }
  return out.str();
}

}  // namespace weaksym
