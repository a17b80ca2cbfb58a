#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "idempotoric/cone.hpp"
#include "idempotoric/error.hpp"
#include "idempotoric/lattice.hpp"
#include "idempotoric/matrix.hpp"
#include "idempotoric/order.hpp"

namespace idempotoric {

/// An affine monoid M inside the lattice it generates. Generators are in
/// coordinates of the Hermite basis of that lattice, so the ambient rank is
/// the rank of the monoid's group.
struct WeightMonoid {
  std::size_t ambient_rank = 0;
  std::vector<IntegerVector> generators;
  std::vector<std::string> labels;
  IntegerMatrix lattice_basis;  // rows: basis of the generated lattice, original coordinates
};

inline WeightMonoid monoid_from_generators(std::size_t input_dim,
                                           const std::vector<IntegerVector>& raw,
                                           std::vector<std::string> labels = {}) {
  if (!labels.empty() && labels.size() != raw.size())
    throw ValidationError("expected " + std::to_string(raw.size()) + " labels, got " +
                          std::to_string(labels.size()));
  auto lattice = Sublattice::spanned_by(raw, input_dim);
  WeightMonoid w;
  w.ambient_rank = lattice.rank();
  w.lattice_basis = lattice.basis();
  for (const auto& g : raw) {
    auto coords = lattice.coordinates(g);
    check_invariant(coords.has_value(), "generator outside its own lattice");
    w.generators.push_back(std::move(*coords));
  }
  if (labels.empty())
    for (std::size_t i = 0; i < raw.size(); ++i) labels.push_back("g" + std::to_string(i + 1));
  w.labels = std::move(labels);
  return w;
}

/// Generators in Hermite coordinates with zero vectors and repeats removed,
/// sorted. Two generating sets with equal canonical forms generate the same
/// monoid.
inline std::vector<IntegerVector> canonical_form(const WeightMonoid& w) {
  std::vector<IntegerVector> out;
  for (const auto& g : w.generators)
    if (!is_zero(g)) out.push_back(g);
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

struct Idempotent {
  IndexSet index_set;  // generators sent to 1 by the corresponding character
  std::size_t face_dim = 0;

  bool operator==(const Idempotent&) const = default;
};

struct IdempotentPoset {
  std::vector<Idempotent> elements;  // sorted by (face_dim, index_set)
  std::vector<Edge> hasse_edges;     // (lower, upper)
  std::size_t smallest = 0;
  std::size_t largest = 0;

  std::optional<std::size_t> find(const IndexSet& s) const {
    for (std::size_t i = 0; i < elements.size(); ++i)
      if (elements[i].index_set == s) return i;
    return std::nullopt;
  }
  bool leq(std::size_t a, std::size_t b) const {
    return is_subset(elements[a].index_set, elements[b].index_set);
  }
};

inline IdempotentPoset poset_from_faces(const FacePoset& faces) {
  IdempotentPoset p;
  for (const auto& f : faces.faces) p.elements.push_back({f.generator_indices, f.dim});
  p.hasse_edges = faces.hasse_edges;
  p.smallest = faces.bottom;
  p.largest = faces.top;
  return p;
}

inline Cone cone_of(const WeightMonoid& w) {
  return cone_from_generators(w.ambient_rank, w.generators);
}

inline IdempotentPoset idempotents(const WeightMonoid& w) {
  return poset_from_faces(enumerate_faces(cone_of(w)));
}

/// Product of idempotents: the meet of their index sets.
inline const Idempotent& idempotent_product(const IdempotentPoset& p, const Idempotent& e,
                                            const Idempotent& f) {
  auto idx = p.find(intersection(e.index_set, f.index_set));
  check_invariant(idx.has_value(), "idempotent set not closed under product");
  return p.elements[*idx];
}

/// The product of all idempotents; checked against the stored bottom.
inline const Idempotent& smallest_idempotent(const IdempotentPoset& p) {
  check_invariant(!p.elements.empty(), "empty idempotent poset");
  const Idempotent* acc = &p.elements[p.largest];
  for (const auto& e : p.elements) acc = &idempotent_product(p, *acc, e);
  check_invariant(*acc == p.elements[p.smallest],
                  "product of all idempotents differs from the bottom element");
  return *acc;
}

inline const Idempotent& largest_idempotent(const IdempotentPoset& p) {
  for (std::size_t i = 0; i < p.elements.size(); ++i)
    check_invariant(p.leq(i, p.largest), "largest idempotent is not an upper bound");
  return p.elements[p.largest];
}

/// Common length of all maximal chains; throws if they differ.
inline std::size_t maximal_chain_length(const IdempotentPoset& p) {
  auto lengths = chain_lengths(p.elements.size(), p.hasse_edges, p.smallest, p.largest);
  check_invariant(lengths.size() == 1, "idempotent poset is not graded");
  return *lengths.begin();
}

/// The natural map (equal index sets) is an order isomorphism.
inline bool same_idempotent_order(const IdempotentPoset& a, const IdempotentPoset& b) {
  if (a.elements.size() != b.elements.size()) return false;
  std::vector<std::size_t> image(a.elements.size());
  for (std::size_t i = 0; i < a.elements.size(); ++i) {
    auto j = b.find(a.elements[i].index_set);
    if (!j) return false;
    image[i] = *j;
  }
  for (std::size_t i = 0; i < image.size(); ++i)
    for (std::size_t k = 0; k < image.size(); ++k)
      if (a.leq(i, k) != b.leq(image[i], image[k])) return false;
  return true;
}

struct ToricEnvelopeReport {
  std::size_t envelope_dim = 0;
  Sublattice unit_lattice;  // saturated span of the lineality generators, in monoid coordinates
  std::size_t quotient_rank = 0;
  IntegerMatrix quotient_map;  // ambient_rank x quotient_rank; x -> x * quotient_map
  std::vector<IntegerVector> projected_generators;
  IdempotentPoset envelope_idempotent_poset;
};

/// Projects the monoid onto Lambda / Lambda_0, where Lambda_0 is the saturated
/// span of the generators in the lineality space. The projected cone is
/// pointed and has the same face lattice.
inline ToricEnvelopeReport toric_envelope(const WeightMonoid& w) {
  const Cone cone = cone_of(w);
  const auto poset = poset_from_faces(enumerate_faces(cone));

  std::vector<IntegerVector> units;
  for (std::size_t i = 0; i < w.generators.size(); ++i)
    if (cone.in_lineality(i)) units.push_back(w.generators[i]);

  ToricEnvelopeReport r;
  r.unit_lattice = saturate(Sublattice::spanned_by(units, w.ambient_rank));
  const std::size_t unit_rank = r.unit_lattice.rank();
  check_invariant(unit_rank == cone.lineality_rank(),
                  "unit generators do not span the lineality space");
  r.quotient_rank = w.ambient_rank - unit_rank;

  // u * B * v = [I | 0] for a saturated basis B, so x * v has its first
  // `unit_rank` coordinates on Lambda_0 and the rest on the quotient.
  const auto smith = smith_normal_form(r.unit_lattice.basis());
  for (std::size_t i = 0; i < unit_rank; ++i)
    check_invariant(smith.s(i, i) == 1, "unit lattice is not saturated");
  r.quotient_map = IntegerMatrix(w.ambient_rank, r.quotient_rank);
  for (std::size_t row = 0; row < w.ambient_rank; ++row)
    for (std::size_t c = 0; c < r.quotient_rank; ++c)
      r.quotient_map(row, c) = smith.v(row, unit_rank + c);
  for (const auto& g : w.generators) r.projected_generators.push_back(g * r.quotient_map);

  const auto projected = monoid_from_generators(r.quotient_rank, r.projected_generators, w.labels);
  const Cone projected_cone = cone_of(projected);
  check_invariant(projected_cone.lineality_rank() == 0, "projected cone is not pointed");
  r.envelope_idempotent_poset = poset_from_faces(enumerate_faces(projected_cone));
  check_invariant(same_idempotent_order(poset, r.envelope_idempotent_poset),
                  "envelope idempotents are not order-isomorphic to the monoid's");
  r.envelope_dim = r.quotient_rank;
  check_invariant(r.envelope_dim == maximal_chain_length(poset),
                  "envelope dimension differs from the maximal chain length");
  return r;
}

}  // namespace idempotoric
