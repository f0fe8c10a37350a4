// This file is part of weaksym, a library of rectangular mixed finite
// elements for linear elasticity with weakly imposed stress symmetry.
// Distributed under the BSD 3-Clause license. See LICENSE for details.

#pragma once

#include <weaksym/element.hpp>
#include <weaksym/polyfield.hpp>

#include <numeric>
#include <string>
#include <vector>

namespace weaksym {

/// One node of a differential complex: a named space given by a basis.
struct SequenceSpace {
  std::string name;
  std::vector<PolyField> fields;
};

enum class SeqMap { INCLUSION, GRAD, CURL, DIV };

inline const char* seq_map_name(SeqMap m) {
  switch (m) {
    case SeqMap::INCLUSION: return "incl";
    case SeqMap::GRAD: return "grad";
    case SeqMap::CURL: return "curl";
    case SeqMap::DIV: return "div";
  }
  return "?";
}

inline PolyField apply_seq_map(SeqMap m, const PolyField& f) {
  switch (m) {
    case SeqMap::INCLUSION: return f;
    case SeqMap::GRAD: return diff(DiffOp::GRAD, f);
    case SeqMap::CURL: return diff(DiffOp::CURL, f);
    case SeqMap::DIV: return diff(DiffOp::DIV, f);
  }
  throw std::logic_error("apply_seq_map: unreachable");
}

/// Exactness audit of a complex 0 -> X_0 -> X_1 -> ... -> X_m -> 0.
/// ranks[i] is the rank of the i-th map; membership[i] says whether its
/// image lies inside X_{i+1}; defects[i] = dim ker(outgoing at X_i) -
/// rank(incoming at X_i), with the leading and trailing zero maps implied.
struct SequenceReport {
  std::vector<std::string> names;
  std::vector<int> dims;
  std::vector<int> ranks;
  std::vector<bool> membership;
  std::vector<int> defects;
  int alternating_sum = 0;

  bool exact() const {
    for (bool ok : membership)
      if (!ok) return false;
    for (int d : defects)
      if (d != 0) return false;
    return true;
  }
};

inline SequenceReport check_sequence(const std::vector<SequenceSpace>& spaces,
                                     const std::vector<SeqMap>& maps) {
  if (spaces.size() < 2 || maps.size() != spaces.size() - 1)
    throw std::invalid_argument("check_sequence: need n spaces and n-1 maps");
  SequenceReport rep;
  for (const auto& s : spaces) {
    rep.names.push_back(s.name);
    const std::size_t dim = span_rank(s.fields).rank;
    if (dim != s.fields.size())
      throw std::invalid_argument("check_sequence: declared basis of " + s.name +
                                  " is linearly dependent");
    rep.dims.push_back(static_cast<int>(dim));
  }
  int sign = 1;
  for (int d : rep.dims) {
    rep.alternating_sum += sign * d;
    sign = -sign;
  }

  for (std::size_t i = 0; i < maps.size(); ++i) {
    std::vector<PolyField> images;
    images.reserve(spaces[i].fields.size());
    for (const PolyField& f : spaces[i].fields) images.push_back(apply_seq_map(maps[i], f));
    rep.ranks.push_back(static_cast<int>(span_rank(images).rank));

    bool member = true;
    for (const PolyField& g : images) member = member && in_span(g, spaces[i + 1].fields);
    rep.membership.push_back(member);
  }

  for (std::size_t i = 0; i < spaces.size(); ++i) {
    const int incoming = i == 0 ? 0 : rep.ranks[i - 1];
    // Kernel of the outgoing map; the trailing map to 0 kills everything.
    const int ker = i < maps.size() ? rep.dims[i] - rep.ranks[i] : rep.dims[i];
    rep.defects.push_back(ker - incoming);
  }
  return rep;
}

namespace detail {

inline std::vector<PolyField> constants_space(int dim) {
  PolyField f = PolyField::scalar(dim);
  f(0, 0) = Poly::constant(dim, 1);
  return {f};
}

inline std::vector<PolyField> scalar_fields(int dim, const std::vector<Poly>& polys) {
  std::vector<PolyField> out;
  for (const Poly& p : polys) {
    PolyField f = PolyField::scalar(dim);
    f(0, 0) = p;
    out.push_back(f);
  }
  return out;
}

}  // namespace detail

/// The 2D complex: constants -> scalar serendipity space -> (curl) stress
/// row space -> (div) constants field. Dimensions 1, 8, 8, 1.
inline std::pair<std::vector<SequenceSpace>, std::vector<SeqMap>> sequence_2d() {
  std::vector<SequenceSpace> spaces;
  spaces.push_back({"R", detail::constants_space(2)});
  spaces.push_back({"S_K", detail::scalar_fields(2, detail::serendipity2_scalar_2d())});
  spaces.push_back({"BDM1_row", detail::bdm1_row_2d()});
  spaces.push_back({"P0", detail::constants_space(2)});
  return {spaces, {SeqMap::INCLUSION, SeqMap::CURL, SeqMap::DIV}};
}

/// The 3D complex: constants -> scalar serendipity -> (grad) U_K -> (curl)
/// stress row space -> (div) constants. Dimensions 1, 20, 36, 18, 1.
inline std::pair<std::vector<SequenceSpace>, std::vector<SeqMap>> sequence_3d() {
  std::vector<SequenceSpace> spaces;
  spaces.push_back({"R", detail::constants_space(3)});
  spaces.push_back({"S_K", detail::scalar_fields(3, detail::serendipity2_scalar_3d())});
  spaces.push_back({"U_K", detail::uk_vector_basis()});
  spaces.push_back({"BDM1_row", detail::bdm1_row_3d()});
  spaces.push_back({"P0", detail::constants_space(3)});
  return {spaces, {SeqMap::INCLUSION, SeqMap::GRAD, SeqMap::CURL, SeqMap::DIV}};
}

/// Higher-order 2D complex for order k: constants -> Q_{k+1} -> (curl)
/// anisotropic stress row space -> (div) Q_k. Dimensions
/// 1, (k+2)^2, 2(k+1)(k+2), (k+1)^2, whose alternating sum vanishes.
inline std::pair<std::vector<SequenceSpace>, std::vector<SeqMap>> sequence_higher_2d(int k) {
  if (k < 1) throw std::invalid_argument("sequence_higher_2d: k must be >= 1");
  std::vector<SequenceSpace> spaces;
  spaces.push_back({"R", detail::constants_space(2)});
  spaces.push_back(
      {"Q_(k+1)", detail::scalar_fields(2, detail::monomials_aniso(2, {k + 1, k + 1, 0}))});
  std::vector<PolyField> row;
  for (const Poly& p : detail::monomials_aniso(2, {k + 1, k, 0}))
    row.push_back(detail::embed_vector_comp(2, 0, p));
  for (const Poly& p : detail::monomials_aniso(2, {k, k + 1, 0}))
    row.push_back(detail::embed_vector_comp(2, 1, p));
  spaces.push_back({"Sigma_row", std::move(row)});
  spaces.push_back({"Q_k", detail::scalar_fields(2, detail::monomials_aniso(2, {k, k, 0}))});
  return {spaces, {SeqMap::INCLUSION, SeqMap::CURL, SeqMap::DIV}};
}

}  // namespace weaksym
