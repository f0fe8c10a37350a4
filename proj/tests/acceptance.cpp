// This file is part of weaksym, a library of rectangular mixed finite
// elements for linear elasticity with weakly imposed stress symmetry.
// Distributed under the BSD 3-Clause license. See LICENSE for details.
//
// Acceptance suite: ten end-to-end checks covering element certification,
// exact sequences, the curl/divergence fundamental relation, commuting
// diagrams, convergence rates in 2D and 3D, the refined divergence
// identity, inf-sup stability under refinement, and Galerkin exactness.
// Prints one PASS/FAIL line per criterion; the exit status is the number
// of failed criteria. Tolerances are pinned next to each check.

#include <weaksym/convergence.hpp>
#include <weaksym/element.hpp>
#include <weaksym/infsup.hpp>
#include <weaksym/interpolate.hpp>
#include <weaksym/sequence.hpp>

#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

using namespace weaksym;

namespace {

// ----------------------------------------------------------------- 1

bool unisolvency(std::string& detail) {
  int certified = 0, total = 0;
  bool ok = true;
  for (const int dim : {2, 3})
    for (const auto& [family, k] : families_for_dim(dim)) {
      ++total;
      const ElementReport r = certify_element(make_element(family, dim, k));
      if (r.unisolvent && r.n_basis == r.n_dofs)
        ++certified;
      else {
        ok = false;
        detail += " " + r.name + " NOT unisolvent;";
      }
    }
  detail = std::to_string(certified) + "/" + std::to_string(total) +
           " element instances unisolvent (exact rational determinants)" + detail;
  return ok;
}

// ----------------------------------------------------------------- 2

bool exact_sequences(std::string& detail) {
  const auto [sp2, maps2] = sequence_2d();
  const SequenceReport r2 = check_sequence(sp2, maps2);
  const auto [sp3, maps3] = sequence_3d();
  const SequenceReport r3 = check_sequence(sp3, maps3);
  const bool dims_ok = r2.dims == std::vector<int>{1, 8, 8, 1} &&
                       r3.dims == std::vector<int>{1, 20, 36, 18, 1};
  const bool exact_ok = r2.exact() && r3.exact();

  // Mutations: dropping one generator must surface as a nonzero defect.
  auto [m2, mm2] = sequence_2d();
  m2[1].fields.erase(m2[1].fields.begin() + 6);
  const SequenceReport rm2 = check_sequence(m2, mm2);
  auto [m3, mm3] = sequence_3d();
  m3[1].fields.pop_back();
  const SequenceReport rm3 = check_sequence(m3, mm3);
  const auto has_defect = [](const SequenceReport& r) {
    for (const int d : r.defects)
      if (d != 0) return true;
    return false;
  };
  const bool mut_ok = !rm2.exact() && has_defect(rm2) && !rm3.exact() && has_defect(rm3);

  char buf[160];
  std::snprintf(buf, sizeof buf,
                "2D dims 1,8,8,1 and 3D dims 1,20,36,18,1 exact: %s; mutations detected: %s",
                dims_ok && exact_ok ? "yes" : "NO", mut_ok ? "yes" : "NO");
  detail = buf;
  return dims_ok && exact_ok && mut_ok;
}

// ----------------------------------------------------------------- 3

Poly random_poly(int dim, int max_deg, std::mt19937& gen) {
  std::uniform_int_distribution<int> coef(-9, 9);
  Poly p = Poly::constant(dim, coef(gen));
  for (int e0 = 0; e0 <= max_deg; ++e0)
    for (int e1 = 0; e0 + e1 <= max_deg; ++e1)
      for (int e2 = 0; e0 + e1 + e2 <= (dim == 3 ? max_deg : 0); ++e2) {
        if (e0 + e1 + e2 == 0) continue;
        p += Poly::monomial(dim, {e0, e1, dim == 3 ? e2 : 0}) * Rational(coef(gen));
      }
  return p;
}

bool fundamental_relation(std::string& detail) {
  std::mt19937 gen(424242);
  int checked = 0;
  for (int trial = 0; trial < 100; ++trial) {
    {  // 2D: q is a vector field, S = identity, as curl q = -div q.
      PolyField q = PolyField::vector(2);
      for (int i = 0; i < 2; ++i) q(i) = random_poly(2, 3, gen);
      const PolyField lhs = asym_field(diff(DiffOp::CURL, q));
      const PolyField rhs = diff(DiffOp::DIV, q) * Rational(-1);
      if (!(lhs == rhs)) {
        detail = "2D counterexample at trial " + std::to_string(trial);
        return false;
      }
    }
    {  // 3D: q is a matrix field, S(q) = tr(q) I - q^T.
      PolyField q = PolyField::matrix(3);
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) q(i, j) = random_poly(3, 3, gen);
      const PolyField lhs = asym_field(diff(DiffOp::CURL, q));
      const PolyField rhs = diff(DiffOp::DIV, s_field(q)) * Rational(-1);
      if (!(lhs == rhs)) {
        detail = "3D counterexample at trial " + std::to_string(trial);
        return false;
      }
    }
    ++checked;
  }
  detail = std::to_string(checked) +
           " random integer fields of degree <= 3 per dimension, coefficient-exact";
  return true;
}

// ----------------------------------------------------------------- 4

Poly q2poly(int dim, int a, int b, int c, int d) {
  Poly p = Poly::constant(dim, a);
  p += Poly::monomial(dim, {2, 0, 0}) * Rational(b);
  p += Poly::monomial(dim, {1, 1, 0}) * Rational(c);
  p += Poly::monomial(dim, {0, 2, 0}) * Rational(d);
  if (dim == 3) p += Poly::monomial(dim, {0, 1, 1}) * Rational(b - c);
  return p;
}

MatrixField smooth_matrix(int dim) {
  MatrixField f;
  f.dim = dim;
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) {
      std::array<Factor, 3> fac{factor_sin_pi(), factor_bubble(), factor_constant(1)};
      if ((i + j) % 2) fac = {factor_bubble(), factor_sin_pi(), factor_constant(1)};
      if (dim == 3) fac[2] = (i == j) ? factor_sin_pi() : factor_bubble();
      f.comp.push_back(separable_field(dim, fac));
    }
  return f;
}

VectorField smooth_vector(int dim) {
  VectorField f;
  f.dim = dim;
  f.comp.push_back(separable_field(dim, {factor_sin_pi(), factor_bubble(), factor_constant(1)}));
  f.comp.push_back(separable_field(dim, {factor_bubble(), factor_bubble(), factor_constant(1)}));
  if (dim == 3)
    f.comp.push_back(separable_field(dim, {factor_bubble(), factor_sin_pi(), factor_sin_pi()}));
  return f;
}

bool commuting_diagrams(std::string& detail) {
  const double tol = 1e-9;  // pinned
  double worst = 0;
  const auto track = [&](double r) { worst = std::max(worst, r); };

  for (const int dim : {2, 3}) {
    PolyField pm = PolyField::matrix(dim);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) pm(i, j) = q2poly(dim, i - j, 1 + i, j - 2 * i, 3 - j);
    const MatrixField fm = matrix_from_polyfield(pm);
    PolyField pv = PolyField::vector(dim);
    for (int i = 0; i < dim; ++i) pv(i) = q2poly(dim, 2 * i - 1, i, 1 - i, i + 2);
    const VectorField fv = vector_from_polyfield(pv);
    const MatrixField sm = smooth_matrix(dim);
    const VectorField sv = smooth_vector(dim);

    std::vector<Mesh> meshes;
    if (dim == 2) {
      meshes.emplace_back(2, std::array<int, 3>{2, 2, 1});
      meshes.emplace_back(2, std::array<int, 3>{4, 2, 1});
      meshes.emplace_back(2, std::array<int, 3>{4, 4, 1});
    } else {
      meshes.emplace_back(3, std::array<int, 3>{1, 1, 1});
      meshes.emplace_back(3, std::array<int, 3>{2, 1, 2});
      meshes.emplace_back(3, std::array<int, 3>{2, 2, 2});
    }
    for (const Mesh& mesh : meshes) {
      // Polynomial fields: quadrature order 5 integrates them exactly.
      track(commuting_residual(CommutingCheck::DIV_SIGMA, mesh, view(fm), 5));
      track(commuting_residual(CommutingCheck::DIV_R, mesh, dim == 2 ? view(fv) : view(fm), 5));
      track(commuting_residual(CommutingCheck::SURJECTIVITY, mesh,
                               dim == 2 ? view(fv) : view(fm), 5));
      // Trigonometric fields: order 12 drives quadrature error below 1e-12.
      track(commuting_residual(CommutingCheck::DIV_SIGMA, mesh, view(sm), 12));
      track(commuting_residual(CommutingCheck::DIV_R, mesh, dim == 2 ? view(sv) : view(sm), 12));
      track(commuting_residual(CommutingCheck::SURJECTIVITY, mesh,
                               dim == 2 ? view(sv) : view(sm), 12));
    }
  }
  char buf[120];
  std::snprintf(buf, sizeof buf, "largest residual %.3e (tolerance %.0e)", worst, tol);
  detail = buf;
  return worst <= tol;
}

// -------------------------------------------------------------- 5, 6, 7

bool run_study(StudyFamily family, const std::vector<int>& ns, double lo, double hi,
               bool all_pairs, double time_budget_s, std::string& detail) {
  const auto t0 = std::chrono::steady_clock::now();
  const ManufacturedCase mc = default_case(study_dim(family));
  const ConvergenceReport rep = convergence_study(mc, family, ns);
  const double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

  bool ok = true;
  std::string rates;
  const std::size_t first = all_pairs ? 1 : rep.rows.size() - 1;
  for (std::size_t i = first; i < rep.rows.size(); ++i) {
    for (const double r : {rep.rows[i].rate.sigma_hdiv, rep.rows[i].rate.u_l2,
                           rep.rows[i].rate.gamma_l2}) {
      ok = ok && r >= lo && r <= hi;
      char buf[16];
      std::snprintf(buf, sizeof buf, " %.3f", r);
      rates += buf;
    }
    if (i + 1 < rep.rows.size()) rates += " |";
  }
  char buf[200];
  std::snprintf(buf, sizeof buf,
                "rates (sigma_hdiv u gamma)%s in [%.2f, %.2f]: %s; %.1f s (budget %.0f s)",
                rates.c_str(), lo, hi, ok ? "yes" : "NO", elapsed, time_budget_s);
  detail = buf;
  return ok && elapsed < time_budget_s;
}

// ----------------------------------------------------------------- 8

bool refined_identity(std::string& detail) {
  const double tol = 1e-7;  // pinned relative tolerance
  double worst = 0;
  for (const int dim : {2, 3}) {
    const ManufacturedCase mc = default_case(dim);
    const Mesh mesh(dim, {dim == 2 ? 4 : 2, dim == 2 ? 4 : 2, 2});
    const SaddleSystem sys = assemble(mesh, mc.material, view(mc.f));
    const Solution sol = solve(sys);
    const RefinedIdentity rec = refined_identity_check(sol, mc, sys);
    worst = std::max(worst, rec.relative);
  }
  char buf[120];
  std::snprintf(buf, sizeof buf, "largest relative mismatch %.3e (tolerance %.0e)", worst, tol);
  detail = buf;
  return worst <= tol;
}

// ----------------------------------------------------------------- 9

bool infsup_stability(std::string& detail) {
  double lo = std::numeric_limits<double>::infinity(), hi = 0;
  std::string betas;
  for (int n = 2; n <= 8; ++n) {
    const double beta = infsup_beta(Mesh(2, {n, n, 1}));
    lo = std::min(lo, beta);
    hi = std::max(hi, beta);
    char buf[16];
    std::snprintf(buf, sizeof buf, " %.4f", beta);
    betas += buf;
  }
  char buf[200];
  std::snprintf(buf, sizeof buf, "beta over 2x2..8x8:%s; min/max %.4f (>= 0.80 required)",
                betas.c_str(), lo / hi);
  detail = buf;
  return lo >= 0.8 * hi;
}

// ----------------------------------------------------------------- 10

VectorField constant_displacement(int dim, const Eigen::Vector3d& v) {
  VectorField u;
  u.dim = dim;
  for (int c = 0; c < dim; ++c) u.comp.push_back(constant_scalar_field(v(c)));
  return u;
}

VectorField affine_displacement(int dim) {
  Eigen::Matrix3d G = Eigen::Matrix3d::Zero();
  if (dim == 2)
    G.topLeftCorner<2, 2>() << 0.9, 0.3, 0.7, -0.1;
  else
    G << 0.9, 0.3, -0.4, -0.1, 0.3, 0.7, -0.1, 0.2, 0.5;
  VectorField u;
  u.dim = dim;
  for (int i = 0; i < dim; ++i) {
    ScalarField c;
    c.value = [G, i, dim](const Point& x) {
      double v = 0.1 * (i + 1);
      for (int j = 0; j < dim; ++j) v += G(i, j) * x[j];
      return v;
    };
    c.grad = [G, i](const Point&) { return G.row(i).transpose().eval(); };
    c.hess = [](const Point&) { return Eigen::Matrix3d::Zero().eval(); };
    u.comp.push_back(std::move(c));
  }
  return u;
}

bool galerkin_exactness(std::string& detail) {
  const double tol = 1e-9;  // pinned
  double worst = 0;
  const auto track = [&](double v) { worst = std::max(worst, v); };

  for (const int dim : {2, 3}) {
    const Mesh mesh(dim, {2, 2, 2});
    {  // Constant displacement: sigma = 0, gamma = 0, u in the P0 space.
      const ManufacturedCase mc = make_case(constant_displacement(dim, {0.7, -0.4, 1.1}),
                                            Material{1, 1}, /*interior_restriction=*/true);
      const SaddleSystem sys = assemble(mesh, mc.material, view(mc.f));
      const Eigen::VectorXd s = boundary_load(sys.sigma, view(mc.u));
      const Solution sol = solve(sys, {}, &s);
      const ErrorRecord rec = error_norms(sol, mc, sys);
      track(rec.sigma_l2);
      track(rec.sigma_hdiv);
      track(rec.u_l2);
      track(rec.gamma_l2);
    }
    {  // Affine displacement: constant stress and rotation; the discrete
      // displacement must coincide with the cell averages of u.
      const ManufacturedCase mc =
          make_case(affine_displacement(dim), Material{1, 1}, /*interior_restriction=*/true);
      const SaddleSystem sys = assemble(mesh, mc.material, view(mc.f));
      const Eigen::VectorXd s = boundary_load(sys.sigma, view(mc.u));
      const Solution sol = solve(sys, {}, &s);
      const ErrorRecord rec = error_norms(sol, mc, sys);
      track(rec.sigma_l2);
      track(rec.sigma_hdiv);
      track(rec.gamma_l2);
      const Eigen::VectorXd proj = average_interpolant(sys.u, view(mc.u));
      track((sol.u - proj).lpNorm<Eigen::Infinity>());
    }
  }
  char buf[120];
  std::snprintf(buf, sizeof buf, "largest in-space reproduction error %.3e (tolerance %.0e)",
                worst, tol);
  detail = buf;
  return worst <= tol;
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<bool(std::string&)> run;
    double budget_s;  // <= 0: no runtime requirement
  };
  const std::vector<Criterion> criteria{
      {1, "element unisolvency", unisolvency, 5},
      {2, "exact sequences and mutation detection", exact_sequences, 5},
      {3, "fundamental relation as(curl q) = -div S(q)", fundamental_relation, 0},
      {4, "commuting diagrams and surjectivity", commuting_diagrams, 0},
      {5, "2D convergence, full stress family",
       [](std::string& d) {
         return run_study(StudyFamily::BDM_2D, {4, 8, 16, 32}, 0.85, 1.15, false, 60, d);
       },
       0},
      {6, "2D convergence, simplified stress family",
       [](std::string& d) {
         return run_study(StudyFamily::SIMPLIFIED_2D, {4, 8, 16, 32}, 0.85, 1.15, false, 60, d);
       },
       0},
      {7, "3D convergence",
       [](std::string& d) {
         return run_study(StudyFamily::THREE_D, {2, 4, 8}, 0.7, 1.3, true, 600, d);
       },
       0},
      {8, "refined divergence identity", refined_identity, 0},
      {9, "inf-sup stability under refinement", infsup_stability, 0},
      {10, "Galerkin exactness of in-space solutions", galerkin_exactness, 0},
  };

  int failures = 0;
  for (const Criterion& c : criteria) {
    std::string detail;
    bool ok = false;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      ok = c.run(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (ok && c.budget_s > 0 && dt >= c.budget_s) {
      ok = false;
      detail += " [over time budget]";
    }
    if (!ok) ++failures;
    std::printf("[%2d] %s  %-46s %s  [%.2f s]\n", c.id, ok ? "PASS" : "FAIL", c.name,
                detail.c_str(), dt);
    std::fflush(stdout);
  }
  return failures;
}
