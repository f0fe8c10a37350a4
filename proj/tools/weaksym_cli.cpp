// This file is part of weaksym, a library of rectangular mixed finite
// elements for linear elasticity with weakly imposed stress symmetry.
// Distributed under the BSD 3-Clause license. See LICENSE for details.
//
// Command-line front end. Four commands:
//   certify    per-family reference-element certification table
//   sequences  discrete complex dimensions and exactness defects
//   identities commuting-diagram residuals on small meshes
//   converge   manufactured-solution convergence study (CSV or pretty)
// A key=value config file (--config) seeds the options; explicit flags
// override it. Exit status: 0 all checks pass, 1 check failures (table on
// stderr), 2 configuration errors.

#include <weaksym/convergence.hpp>
#include <weaksym/element.hpp>
#include <weaksym/interpolate.hpp>
#include <weaksym/runconfig.hpp>
#include <weaksym/sequence.hpp>

#include <CLI11.hpp>

#include <cstdio>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

using namespace weaksym;

namespace {

std::string timestamp_line() {
  std::time_t now = std::time(nullptr);
  char buf[40];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&now));
  return std::string("# generated ") + buf + "\n";
}

/// Write the report atomically: to a sibling temp file, then rename over the
/// target. An empty path writes to stdout.
void emit(const std::string& path, const std::string& text) {
  if (path.empty()) {
    std::cout << text;
    return;
  }
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw std::invalid_argument("out: cannot open '" + tmp + "' for writing");
    out << text;
    if (!out.flush()) throw std::invalid_argument("out: write to '" + tmp + "' failed");
  }
  if (std::rename(tmp.c_str(), path.c_str()) != 0)
    throw std::invalid_argument("out: cannot rename onto '" + path + "'");
}

int finish(const RunConfig& cfg, const std::string& body,
           const std::vector<std::string>& failures) {
  std::string text;
  if (!cfg.no_timestamp) text = timestamp_line();
  text += body;
  emit(cfg.out, text);
  if (!failures.empty()) {
    std::cerr << "FAILED CHECKS (" << failures.size() << "):\n";
    for (const std::string& f : failures) std::cerr << "  " << f << '\n';
    return 1;
  }
  return 0;
}

// ---------------------------------------------------------------- certify

int run_certify(const RunConfig& cfg) {
  std::vector<ElementReport> reports;
  for (const auto& [family, k] : families_for_dim(cfg.dim))
    reports.push_back(certify_element(make_element(family, cfg.dim, k)));

  std::ostringstream body;
  if (cfg.format == "csv") {
    body << "family,dim,basis_dim,n_dofs,det,condition,unisolvent\n";
    for (const ElementReport& r : reports) {
      char line[256];
      std::snprintf(line, sizeof line, "%s,%d,%d,%d,%.12g,%.6g,%d\n", r.name.c_str(), r.dim,
                    r.n_basis, r.n_dofs, r.det, r.condition, r.unisolvent ? 1 : 0);
      body << line;
    }
  } else {
    char line[256];
    std::snprintf(line, sizeof line, "%-22s %3s %6s %6s %14s %10s  %s\n", "family", "dim",
                  "basis", "dofs", "det", "cond", "unisolvent");
    body << line;
    for (const ElementReport& r : reports) {
      std::snprintf(line, sizeof line, "%-22s %3d %6d %6d %14.6g %10.4g  %s\n", r.name.c_str(),
                    r.dim, r.n_basis, r.n_dofs, r.det, r.condition, r.unisolvent ? "yes" : "NO");
      body << line;
    }
  }

  std::vector<std::string> failures;
  for (const ElementReport& r : reports)
    if (!r.unisolvent) failures.push_back("certify: " + r.name + " is not unisolvent");
  return finish(cfg, body.str(), failures);
}

// -------------------------------------------------------------- sequences

std::string join_ints(const std::vector<int>& v, char sep) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) s += sep;
    s += std::to_string(v[i]);
  }
  return s;
}

int run_sequences(const RunConfig& cfg) {
  std::vector<std::pair<std::string, SequenceReport>> reports;
  if (cfg.dim == 2) {
    const auto [sp, maps] = sequence_2d();
    reports.emplace_back("2d", check_sequence(sp, maps));
    for (int k = 1; k <= 2; ++k) {
      const auto [spk, mapsk] = sequence_higher_2d(k);
      reports.emplace_back("2d-higher-k" + std::to_string(k), check_sequence(spk, mapsk));
    }
  } else {
    const auto [sp, maps] = sequence_3d();
    reports.emplace_back("3d", check_sequence(sp, maps));
  }

  std::ostringstream body;
  if (cfg.format == "csv") {
    body << "sequence,spaces,dims,defects,alternating_sum,exact\n";
    for (const auto& [name, rep] : reports) {
      std::string spaces;
      for (std::size_t i = 0; i < rep.names.size(); ++i) {
        if (i) spaces += ';';
        spaces += rep.names[i];
      }
      body << name << ',' << spaces << ',' << join_ints(rep.dims, ';') << ','
           << join_ints(rep.defects, ';') << ',' << rep.alternating_sum << ','
           << (rep.exact() ? 1 : 0) << '\n';
    }
  } else {
    for (const auto& [name, rep] : reports) {
      body << name << ":  ";
      for (std::size_t i = 0; i < rep.names.size(); ++i)
        body << (i ? " -> " : "") << rep.names[i] << '(' << rep.dims[i] << ')';
      body << "\n  defects " << join_ints(rep.defects, ' ') << ", alternating sum "
           << rep.alternating_sum << ", " << (rep.exact() ? "exact" : "NOT EXACT") << '\n';
    }
  }

  std::vector<std::string> failures;
  for (const auto& [name, rep] : reports)
    if (!rep.exact()) failures.push_back("sequences: " + name + " complex is not exact");
  return finish(cfg, body.str(), failures);
}

// -------------------------------------------------------------- identities

Poly q2(int dim, int a, int b, int c, int d) {
  // A fixed integer quadratic in the first `dim` variables.
  Poly p = Poly::constant(dim, a);
  p += Poly::monomial(dim, {2, 0, 0}) * Rational(b);
  p += Poly::monomial(dim, {1, 1, 0}) * Rational(c);
  p += Poly::monomial(dim, {0, 2, 0}) * Rational(d);
  if (dim == 3) p += Poly::monomial(dim, {0, 1, 1}) * Rational(b - c);
  return p;
}

int run_identities(const RunConfig& cfg) {
  const int dim = cfg.dim;
  const Mesh mesh = dim == 2 ? Mesh(2, {3, 2, 1}) : Mesh(3, {2, 2, 2});
  const double tol = 1e-9;

  PolyField pm = PolyField::matrix(dim);
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) pm(i, j) = q2(dim, i - j, 1 + i, j - 2 * i, 3 - j);
  const MatrixField fm = matrix_from_polyfield(pm);
  PolyField pv = PolyField::vector(dim);
  for (int i = 0; i < dim; ++i) pv(i) = q2(dim, 2 * i - 1, i, 1 - i, i + 2);
  const VectorField fv = vector_from_polyfield(pv);

  struct Row {
    std::string name;
    double residual;
  };
  std::vector<Row> rows;
  rows.push_back({"div-stress-projection", commuting_residual(CommutingCheck::DIV_SIGMA, mesh,
                                                              view(fm))});
  rows.push_back({"div-rotation-projection",
                  commuting_residual(CommutingCheck::DIV_R, mesh,
                                     dim == 2 ? view(fv) : view(fm))});
  rows.push_back({"facet-load-surjectivity",
                  commuting_residual(CommutingCheck::SURJECTIVITY, mesh,
                                     dim == 2 ? view(fv) : view(fm))});

  std::ostringstream body;
  if (cfg.format == "csv") {
    body << "check,dim,residual,tolerance,pass\n";
    for (const Row& r : rows) {
      char line[160];
      std::snprintf(line, sizeof line, "%s,%d,%.6e,%.0e,%d\n", r.name.c_str(), dim, r.residual,
                    tol, r.residual <= tol ? 1 : 0);
      body << line;
    }
  } else {
    for (const Row& r : rows) {
      char line[160];
      std::snprintf(line, sizeof line, "%-26s dim=%d  residual %.3e  (tol %.0e)  %s\n",
                    r.name.c_str(), dim, r.residual, tol, r.residual <= tol ? "pass" : "FAIL");
      body << line;
    }
  }

  std::vector<std::string> failures;
  for (const Row& r : rows)
    if (!(r.residual <= tol))
      failures.push_back("identities: " + r.name + " residual " + std::to_string(r.residual));
  return finish(cfg, body.str(), failures);
}

// --------------------------------------------------------------- converge

int run_converge(const RunConfig& cfg) {
  const StudyFamily family = cfg.family == "2d-bdm" ? StudyFamily::BDM_2D
                             : cfg.family == "2d-simplified" ? StudyFamily::SIMPLIFIED_2D
                                                             : StudyFamily::THREE_D;
  const int dim = study_dim(family);
  const ManufacturedCase mc = default_case(dim, cfg.material());
  std::vector<int> ns;
  for (int l = 0; l < cfg.levels; ++l) ns.push_back((dim == 2 ? 4 : 2) << l);

  ConvergenceReport rep = convergence_study(mc, family, ns);
  if (cfg.no_timestamp)
    for (ConvergenceRow& row : rep.rows) row.solve_seconds = 0;

  std::ostringstream body;
  if (cfg.format == "csv") {
    body << to_csv(rep);
  } else {
    body << "family " << cfg.family << ", mu " << cfg.mu << ", lambda " << cfg.lambda << ", "
         << cfg.compliance << " compliance\n";
    for (const ConvergenceRow& r : rep.rows) {
      char line[256];
      std::snprintf(line, sizeof line,
                    "h=1/%-4d sigma_hdiv %.4e (%5.3f)  u %.4e (%5.3f)  gamma %.4e (%5.3f)  "
                    "sigma_l2 %.4e (%5.3f)  %.3fs\n",
                    r.cells_per_axis, r.err.sigma_hdiv, r.rate.sigma_hdiv, r.err.u_l2,
                    r.rate.u_l2, r.err.gamma_l2, r.rate.gamma_l2, r.err.sigma_l2,
                    r.rate.sigma_l2, r.solve_seconds);
      body << line;
    }
  }

  // The first-order bands: asymptotic in 2D, pre-asymptotic in 3D, judged at
  // the finest level pair for the three estimated fields.
  const double lo = dim == 2 ? 0.85 : 0.7;
  const double hi = dim == 2 ? 1.15 : 1.3;
  const ConvergenceRow& last = rep.rows.back();
  std::vector<std::string> failures;
  const auto check_rate = [&](const char* what, double rate) {
    if (!(rate >= lo && rate <= hi)) {
      char msg[160];
      std::snprintf(msg, sizeof msg, "converge(%s): %s rate %.3f outside [%.2f, %.2f]",
                    cfg.family.c_str(), what, rate, lo, hi);
      failures.push_back(msg);
    }
  };
  check_rate("sigma_hdiv", last.rate.sigma_hdiv);
  check_rate("u_l2", last.rate.u_l2);
  check_rate("gamma_l2", last.rate.gamma_l2);
  return finish(cfg, body.str(), failures);
}

}  // namespace

int main(int argc, char** argv) {
  RunConfig cfg;

  // Seed from a config file if one is named, so flags can override it.
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    std::string path;
    if (arg == "--config" && i + 1 < argc)
      path = argv[i + 1];
    else if (arg.rfind("--config=", 0) == 0)
      path = arg.substr(9);
    if (!path.empty()) {
      std::ifstream in(path);
      if (!in) {
        std::cerr << "config error: cannot read '" << path << "'\n";
        return 2;
      }
      try {
        cfg = parse_config(in);
      } catch (const std::exception& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
      }
    }
  }

  CLI::App app{"weaksym: rectangular mixed elements for elasticity with weak symmetry"};
  app.require_subcommand(0, 1);
  std::string config_path;

  // The same option set is registered on the root app (for runs where the
  // config file names the command) and on every subcommand.
  const auto add_common = [&cfg, &config_path](CLI::App* cmd) {
    cmd->add_option("--config", config_path, "key=value config file (read before flags)");
    cmd->add_option("--dim", cfg.dim, "ambient dimension (2 or 3)");
    cmd->add_option("--family", cfg.family, "study family: 2d-bdm | 2d-simplified | 3d");
    cmd->add_option("--levels", cfg.levels, "number of refinement levels (converge)");
    cmd->add_option("--mu", cfg.mu, "shear modulus");
    cmd->add_option("--lambda", cfg.lambda, "first Lame parameter");
    cmd->add_option("--compliance", cfg.compliance, "trace coefficient: paper | dim-aware");
    cmd->add_option("--out", cfg.out, "output path (default: stdout)");
    cmd->add_option("--format", cfg.format, "output format: csv | pretty");
    cmd->add_flag("--no-timestamp", cfg.no_timestamp,
                  "omit the timestamp header and zero timings (byte-stable output)");
  };
  add_common(&app);
  for (const char* name : {"certify", "sequences", "identities", "converge"})
    add_common(app.add_subcommand(name, ""));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    // --help and friends exit 0 through CLI11; parse errors map to 2.
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  const CLI::App* chosen = nullptr;
  for (const CLI::App* sub : app.get_subcommands()) {
    cfg.command = sub->get_name();
    chosen = sub;
  }
  if (cfg.command.empty()) {
    std::cerr << "config error: no command given (certify | sequences | identities | converge)\n";
    return 2;
  }
  // The family implies the dimension for convergence studies; follow the
  // family unless --dim was given explicitly (then validate() arbitrates).
  const bool explicit_dim = app.count("--dim") > 0 || (chosen && chosen->count("--dim") > 0);
  if (cfg.command == "converge" && !explicit_dim) cfg.dim = cfg.family == "3d" ? 3 : 2;
  try {
    cfg.validate();
  } catch (const std::exception& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  }

  try {
    if (cfg.command == "certify") return run_certify(cfg);
    if (cfg.command == "sequences") return run_sequences(cfg);
    if (cfg.command == "identities") return run_identities(cfg);
    return run_converge(cfg);
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "FAILED: " << e.what() << '\n';
    return 1;
  }
}
