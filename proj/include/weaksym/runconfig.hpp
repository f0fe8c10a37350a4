// This file is part of weaksym, a library of rectangular mixed finite
// elements for linear elasticity with weakly imposed stress symmetry.
// Distributed under the BSD 3-Clause license. See LICENSE for details.
//
// Plain-text run configuration for the command-line front end: a flat
// key=value format that round-trips exactly through parse/serialize, used
// as the config-file layer beneath the command-line flags.

#pragma once

#include <weaksym/material.hpp>

#include <cstdio>
#include <istream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace weaksym {

/// One CLI invocation, fully described. Field semantics:
///   command     certify | sequences | identities | converge
///   dim         ambient dimension (2 or 3)
///   family      converge only: 2d-bdm | 2d-simplified | 3d
///   levels      converge only: number of uniform refinements (>= 3)
///   mu, lambda  material constants
///   compliance  paper | dim-aware trace coefficient
///   out         output path; empty = stdout
///   format      csv | pretty
///   no_timestamp  suppress the timestamp header line and zero the timing
///                 column so identical configs give byte-identical output
struct RunConfig {
  std::string command;
  int dim = 2;
  std::string family = "2d-bdm";
  int levels = 4;
  double mu = 1;
  double lambda = 1;
  std::string compliance = "paper";
  std::string out;
  std::string format = "csv";
  bool no_timestamp = false;

  bool operator==(const RunConfig&) const = default;

  /// Cross-field validation; throws std::invalid_argument with the offending
  /// key on failure.
  void validate() const {
    if (command != "certify" && command != "sequences" && command != "identities" &&
        command != "converge")
      throw std::invalid_argument("command: expected certify|sequences|identities|converge, got '" +
                                  command + "'");
    if (dim != 2 && dim != 3) throw std::invalid_argument("dim: must be 2 or 3");
    if (family != "2d-bdm" && family != "2d-simplified" && family != "3d")
      throw std::invalid_argument("family: expected 2d-bdm|2d-simplified|3d, got '" + family + "'");
    if (command == "converge") {
      const int fdim = family == "3d" ? 3 : 2;
      if (fdim != dim)
        throw std::invalid_argument("family: '" + family + "' conflicts with dim=" +
                                    std::to_string(dim));
      if (levels < 3) throw std::invalid_argument("levels: need at least 3");
    }
    if (!(mu > 0)) throw std::invalid_argument("mu: must be positive");
    if (lambda < 0) throw std::invalid_argument("lambda: must be nonnegative");
    if (compliance != "paper" && compliance != "dim-aware")
      throw std::invalid_argument("compliance: expected paper|dim-aware, got '" + compliance + "'");
    if (format != "csv" && format != "pretty")
      throw std::invalid_argument("format: expected csv|pretty, got '" + format + "'");
  }

  Material material() const {
    return Material{mu, lambda,
                    compliance == "paper" ? ComplianceKind::PAPER : ComplianceKind::DIM_AWARE};
  }
};

namespace detail {
inline std::string config_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}
}  // namespace detail

/// Textual form: one key=value per line, fixed key order.
inline std::string to_text(const RunConfig& c) {
  std::ostringstream out;
  out << "command=" << c.command << '\n'
      << "dim=" << c.dim << '\n'
      << "family=" << c.family << '\n'
      << "levels=" << c.levels << '\n'
      << "mu=" << detail::config_number(c.mu) << '\n'
      << "lambda=" << detail::config_number(c.lambda) << '\n'
      << "compliance=" << c.compliance << '\n'
      << "out=" << c.out << '\n'
      << "format=" << c.format << '\n'
      << "no_timestamp=" << (c.no_timestamp ? "true" : "false") << '\n';
  return out.str();
}

/// Parse the key=value form. Blank lines and lines starting with '#' are
/// skipped; unknown keys and malformed lines are errors. Keys not present
/// keep their defaults, so a config file may be partial.
inline RunConfig parse_config(std::istream& in) {
  RunConfig c;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(lineno) + ": expected key=value");
    const std::string key = line.substr(0, eq);
    const std::string val = line.substr(eq + 1);
    try {
      if (key == "command")
        c.command = val;
      else if (key == "dim")
        c.dim = std::stoi(val);
      else if (key == "family")
        c.family = val;
      else if (key == "levels")
        c.levels = std::stoi(val);
      else if (key == "mu")
        c.mu = std::stod(val);
      else if (key == "lambda")
        c.lambda = std::stod(val);
      else if (key == "compliance")
        c.compliance = val;
      else if (key == "out")
        c.out = val;
      else if (key == "format")
        c.format = val;
      else if (key == "no_timestamp") {
        if (val != "true" && val != "false")
          throw std::invalid_argument("expected true|false");
        c.no_timestamp = val == "true";
      } else
        throw std::invalid_argument("unknown key '" + key + "'");
    } catch (const std::invalid_argument& e) {
      throw std::invalid_argument("config line " + std::to_string(lineno) + ": " + e.what());
    } catch (const std::out_of_range&) {
      throw std::invalid_argument("config line " + std::to_string(lineno) + ": value out of range");
    }
  }
  return c;
}

inline RunConfig parse_config(const std::string& text) {
  std::istringstream in(text);
  return parse_config(in);
}

}  // namespace weaksym
