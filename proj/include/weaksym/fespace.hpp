// This file is part of weaksym, a library of rectangular mixed finite
// elements for linear elasticity with weakly imposed stress symmetry.
// Distributed under the BSD 3-Clause license. See LICENSE for details.
//
// Global finite element spaces on uniform tensor-product meshes. Degrees of
// freedom attached to shared mesh entities (vertices, 3D edges, facets) are
// identified across the incident cells; because facet normals, facet
// parametrisations and edge tangents are fixed global directions, the
// identification needs no sign or orientation bookkeeping, and the pushed
// nodal basis of each cell stays exactly dual to the physical functionals.
//
// Global numbering: vertex dofs, then 3D edge dofs, then facet dofs, then
// cell dofs; within each block, mesh entity index major and the element's
// per-entity dof order minor.

#pragma once

#include <weaksym/element.hpp>
#include <weaksym/mesh.hpp>
#include <weaksym/piola.hpp>

#include <Eigen/Dense>

#include <vector>

namespace weaksym {

struct FESpace {
  const Mesh* mesh = nullptr;
  ReferenceElement elem;
  std::vector<PolyField> nodal_div;  // divergences of the nodal basis (Piola families)

  /// Where local dof `l` of any cell lives.
  struct LocalSlot {
    EntityKind kind = EntityKind::CELL;
    int local_entity = 0;
    int slot = 0;
  };
  std::vector<LocalSlot> local;
  std::array<int, 4> per_entity{0, 0, 0, 0};  // dofs per vertex / edge / facet / cell
  std::array<int, 4> block_offset{0, 0, 0, 0};
  int n_dofs = 0;
  std::vector<int> cell_dofs;  // n_cells x n_local, row-major

  int n_local() const { return elem.n_dofs(); }
  int global_dof(int cell, int l) const { return cell_dofs[cell * n_local() + l]; }

  /// Physical value of a coefficient field on cell `c` at reference point
  /// xhat, padded as in eval_padded.
  Eigen::Matrix3d value(const Eigen::VectorXd& coef, int c, const Point& xhat) const {
    const AffineMap F = mesh->cell_map(c);
    Eigen::Matrix3d acc = Eigen::Matrix3d::Zero();
    for (int l = 0; l < n_local(); ++l) {
      const double w = coef[global_dof(c, l)];
      if (w != 0) acc += w * eval_padded(elem.nodal[l], xhat);
    }
    return push_value(F, elem.map, elem.basis.front().is_vector(), acc);
  }

  /// Physical row-wise divergence on cell `c` at reference point xhat
  /// (Piola-mapped spaces only), padded.
  Eigen::Matrix3d divergence(const Eigen::VectorXd& coef, int c, const Point& xhat) const {
    if (elem.map != MapKind::PIOLA)
      throw std::logic_error("FESpace::divergence: Piola-mapped spaces only");
    const AffineMap F = mesh->cell_map(c);
    Eigen::Matrix3d acc = Eigen::Matrix3d::Zero();
    for (int l = 0; l < n_local(); ++l) {
      const double w = coef[global_dof(c, l)];
      if (w != 0) acc += w * eval_padded(nodal_div[l], xhat);
    }
    return push_divergence(F, elem.map, acc);
  }
};

/// Build the global space for a family on a mesh. The element must have its
/// dofs attached to vertices, 3D edges, facets or cell interiors in the
/// uniform per-entity pattern the mesh families satisfy by construction.
inline FESpace build_space(const Mesh& mesh, Family family, int order = 0) {
  FESpace sp;
  sp.mesh = &mesh;
  sp.elem = make_element(family, mesh.dim(), order);
  nodal_basis(sp.elem);
  if (sp.elem.map == MapKind::PIOLA) {
    sp.nodal_div.reserve(sp.elem.nodal.size());
    for (const auto& f : sp.elem.nodal) sp.nodal_div.push_back(diff(DiffOp::DIV, f));
  }

  const int dim = mesh.dim();
  const auto kind_id = [](EntityKind k) {
    switch (k) {
      case EntityKind::VERTEX: return 0;
      case EntityKind::EDGE3D: return 1;
      case EntityKind::FACET: return 2;
      case EntityKind::CELL: return 3;
    }
    return 3;
  };
  const std::array<int, 4> ref_entities = {1 << dim, dim == 3 ? 12 : 0, 2 * dim, 1};

  // Slot assignment: running count per (kind, reference entity).
  std::array<std::vector<int>, 4> seen;
  for (int k = 0; k < 4; ++k) seen[k].assign(std::max(ref_entities[k], 1), 0);
  for (const DofFunctional& d : sp.elem.dofs) {
    const int k = kind_id(d.entity);
    const int e = d.entity == EntityKind::CELL ? 0 : d.entity_index;
    if (e < 0 || e >= static_cast<int>(seen[k].size()))
      throw std::invalid_argument("build_space: dof attached to a nonexistent entity");
    if (d.has_cell_weight)
      throw std::invalid_argument("build_space: interior-moment elements are reference-level "
                                  "constructions and are not meshed");
    sp.local.push_back({d.entity, e, seen[k][e]++});
  }
  for (int k = 0; k < 4; ++k) {
    for (int e = 0; e < ref_entities[k]; ++e)
      if (seen[k][e] != seen[k][0])
        throw std::invalid_argument("build_space: dof count differs between same-kind entities");
    sp.per_entity[k] = ref_entities[k] > 0 ? seen[k][0] : 0;
  }

  const std::array<int, 4> mesh_entities = {mesh.n_vertices(), dim == 3 ? mesh.n_edges() : 0,
                                            mesh.n_facets(), mesh.n_cells()};
  sp.block_offset[0] = 0;
  for (int k = 1; k < 4; ++k)
    sp.block_offset[k] = sp.block_offset[k - 1] + mesh_entities[k - 1] * sp.per_entity[k - 1];
  sp.n_dofs = sp.block_offset[3] + mesh_entities[3] * sp.per_entity[3];

  sp.cell_dofs.resize(static_cast<std::size_t>(mesh.n_cells()) * sp.n_local());
  for (int c = 0; c < mesh.n_cells(); ++c)
    for (int l = 0; l < sp.n_local(); ++l) {
      const auto& ls = sp.local[l];
      int entity = 0;
      switch (ls.kind) {
        case EntityKind::VERTEX: entity = mesh.cell_vertex(c, ls.local_entity); break;
        case EntityKind::EDGE3D: entity = mesh.cell_edge(c, ls.local_entity); break;
        case EntityKind::FACET: entity = mesh.cell_facet(c, ls.local_entity); break;
        case EntityKind::CELL: entity = c; break;
      }
      sp.cell_dofs[c * sp.n_local() + l] =
          sp.block_offset[kind_id(ls.kind)] + entity * sp.per_entity[kind_id(ls.kind)] + ls.slot;
    }
  return sp;
}

}  // namespace weaksym
