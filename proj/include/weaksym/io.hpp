// This file is part of weaksym, a library of rectangular mixed finite
// elements for linear elasticity with weakly imposed stress symmetry.
// Distributed under the BSD 3-Clause license. See LICENSE for details.
//
// Debug/inspection output: a JSON dump of a mesh (vertices, cells, facets)
// and a coordinate-format text dump of assembled sparse matrices. Schemas
// are documented in the README.

#pragma once

#include <weaksym/mesh.hpp>

#include <Eigen/Sparse>
#include <json.hpp>

#include <ostream>

namespace weaksym {

/// JSON description of a mesh:
///   dim, divisions, lo, hi   — the constructor arguments (dim entries each);
///   vertices                 — coordinate triples truncated to dim entries,
///                              in global vertex order (x fastest);
///   cells                    — per cell, the 2^dim vertex ids in local
///                              corner order ix + 2 iy + 4 iz;
///   facets                   — per facet: normal axis, lowest corner,
///                              measure, interior flag, and the incident
///                              cell ids on the -/+ normal sides (-1 when
///                              absent).
inline nlohmann::json mesh_to_json(const Mesh& mesh) {
  const int dim = mesh.dim();
  nlohmann::json j;
  j["dim"] = dim;
  for (int a = 0; a < dim; ++a) {
    j["divisions"].push_back(mesh.divisions()[a]);
    j["lo"].push_back(mesh.lo()[a]);
    j["hi"].push_back(mesh.hi()[a]);
  }
  for (int v = 0; v < mesh.n_vertices(); ++v) {
    const Point p = mesh.vertex(v);
    nlohmann::json coords;
    for (int a = 0; a < dim; ++a) coords.push_back(p[a]);
    j["vertices"].push_back(std::move(coords));
  }
  const int corners = 1 << dim;
  for (int c = 0; c < mesh.n_cells(); ++c) {
    nlohmann::json ids;
    for (int l = 0; l < corners; ++l) ids.push_back(mesh.cell_vertex(c, l));
    j["cells"].push_back(std::move(ids));
  }
  for (int f = 0; f < mesh.n_facets(); ++f) {
    const Facet& fc = mesh.facet(f);
    nlohmann::json jf;
    jf["axis"] = fc.axis;
    for (int a = 0; a < dim; ++a) jf["corner"].push_back(fc.corner[a]);
    jf["measure"] = fc.measure;
    jf["interior"] = fc.interior;
    jf["cell_minus"] = fc.cell_minus;
    jf["cell_plus"] = fc.cell_plus;
    j["facets"].push_back(std::move(jf));
  }
  return j;
}

/// Coordinate text dump: one "row col value" line per stored entry,
/// 0-based indices, column-major order, full double precision.
inline void write_matrix_coordinate(std::ostream& out,
                                    const Eigen::SparseMatrix<double>& m) {
  char buf[64];
  for (int k = 0; k < m.outerSize(); ++k)
    for (Eigen::SparseMatrix<double>::InnerIterator it(m, k); it; ++it) {
      std::snprintf(buf, sizeof buf, "%ld %ld %.17g\n", static_cast<long>(it.row()),
                    static_cast<long>(it.col()), it.value());
      out << buf;
    }
}

}  // namespace weaksym
