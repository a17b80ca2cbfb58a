#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <tuple>
#include <vector>

#include "idempotoric/error.hpp"
#include "idempotoric/fourier_motzkin.hpp"
#include "idempotoric/integer.hpp"
#include "idempotoric/lattice.hpp"
#include "idempotoric/matrix.hpp"
#include "idempotoric/order.hpp"

namespace idempotoric {

namespace detail {

struct DoubleDescription {
  std::vector<IntegerVector> lineality;  // basis of the lineality space
  std::vector<IntegerVector> rays;       // one representative per extreme ray
};

/// Generators of { x in Q^dim : a . x >= 0 for every a in `inequalities` },
/// built by adding one inequality at a time to the whole space. All
/// arithmetic stays in the integers: new vectors are positive integer
/// combinations reduced to primitive form.
inline DoubleDescription double_description(std::size_t dim,
                                            std::span<const IntegerVector> inequalities) {
  DoubleDescription dd;
  for (std::size_t i = 0; i < dim; ++i) {
    IntegerVector e(dim);
    e[i] = 1;
    dd.lineality.push_back(std::move(e));
  }
  std::vector<IntegerVector> processed;

  for (const auto& a : inequalities) {
    if (a.size() != dim) throw ValidationError("inequality has wrong dimension");
    if (is_zero(a)) continue;

    auto hit = std::find_if(dd.lineality.begin(), dd.lineality.end(),
                            [&](const IntegerVector& l) { return dot(a, l) != 0; });
    if (hit != dd.lineality.end()) {
      // The cut is transversal to the lineality space: l becomes a ray and
      // everything else is moved into the hyperplane a . x = 0 along l.
      IntegerVector l = std::move(*hit);
      dd.lineality.erase(hit);
      Integer al = dot(a, l);
      if (al < 0) {
        for (auto& x : l) x = -x;
        al = -al;
      }
      auto shear = [&](IntegerVector& v) {
        const Integer av = dot(a, v);
        for (std::size_t k = 0; k < dim; ++k) v[k] = al * v[k] - av * l[k];
        v = primitive(std::move(v));
      };
      for (auto& v : dd.lineality) shear(v);
      for (auto& v : dd.rays) shear(v);
      dd.rays.push_back(std::move(l));
      processed.push_back(a);
      continue;
    }

    const std::size_t n = dd.rays.size();
    std::vector<Integer> value(n);
    std::vector<std::vector<bool>> tight(n, std::vector<bool>(processed.size()));
    for (std::size_t r = 0; r < n; ++r) {
      value[r] = dot(a, dd.rays[r]);
      for (std::size_t i = 0; i < processed.size(); ++i)
        tight[r][i] = dot(processed[i], dd.rays[r]) == 0;
    }
    auto adjacent = [&](std::size_t p, std::size_t q) {
      std::vector<bool> common(processed.size());
      for (std::size_t i = 0; i < common.size(); ++i) common[i] = tight[p][i] && tight[q][i];
      for (std::size_t r = 0; r < n; ++r) {
        if (r == p || r == q) continue;
        bool contains = true;
        for (std::size_t i = 0; i < common.size() && contains; ++i)
          if (common[i] && !tight[r][i]) contains = false;
        if (contains) return false;
      }
      return true;
    };

    std::vector<IntegerVector> next;
    for (std::size_t r = 0; r < n; ++r)
      if (value[r] >= 0) next.push_back(dd.rays[r]);
    for (std::size_t p = 0; p < n; ++p) {
      if (value[p] <= 0) continue;
      for (std::size_t q = 0; q < n; ++q) {
        if (value[q] >= 0 || !adjacent(p, q)) continue;
        IntegerVector v(dim);
        for (std::size_t k = 0; k < dim; ++k)
          v[k] = value[p] * dd.rays[q][k] - value[q] * dd.rays[p][k];
        next.push_back(primitive(std::move(v)));
      }
    }
    dd.rays = std::move(next);
    processed.push_back(a);
  }
  return dd;
}

/// Orthogonal projection of v onto the complement of span(basis), scaled to
/// a primitive integer vector.
inline IntegerVector project_out(const IntegerVector& v,
                                 std::span<const IntegerVector> basis) {
  std::vector<RationalVector> ortho;
  auto rdot = [](const RationalVector& x, const RationalVector& y) {
    Rational s = 0;
    for (std::size_t i = 0; i < x.size(); ++i) s += x[i] * y[i];
    return s;
  };
  auto reduce = [&](RationalVector x) {
    for (const auto& q : ortho) {
      Rational c = rdot(x, q) / rdot(q, q);
      for (std::size_t i = 0; i < x.size(); ++i) x[i] -= c * q[i];
    }
    return x;
  };
  for (const auto& b : basis) {
    auto q = reduce(RationalVector(b.begin(), b.end()));
    if (std::any_of(q.begin(), q.end(), [](const Rational& x) { return x != 0; }))
      ortho.push_back(std::move(q));
  }
  return primitive_integer_multiple(reduce(RationalVector(v.begin(), v.end())));
}

inline std::vector<IntegerVector> sorted_unique(std::vector<IntegerVector> vs) {
  std::sort(vs.begin(), vs.end());
  vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
  return vs;
}

}  // namespace detail

/// A rational polyhedral cone together with the generators it was built from
/// (original order, repeats and zero vectors kept).
struct Cone {
  std::size_t ambient_dim = 0;
  std::vector<IntegerVector> generators;
  std::vector<IntegerVector> extreme_rays;  // primitive, orthogonal to the lineality space
  std::vector<IntegerVector> facets;        // w . x >= 0 on the cone
  IntegerMatrix lineality_basis;            // saturated Hermite basis
  std::size_t dim = 0;

  std::size_t lineality_rank() const { return lineality_basis.rows(); }

  /// Generator i lies in the lineality space iff every facet vanishes on it.
  bool in_lineality(std::size_t i) const {
    return std::all_of(facets.begin(), facets.end(), [&](const IntegerVector& w) {
      return dot(w, generators[i]) == 0;
    });
  }
};

inline Cone cone_from_generators(std::size_t ambient_dim, std::vector<IntegerVector> gens) {
  for (std::size_t i = 0; i < gens.size(); ++i)
    if (gens[i].size() != ambient_dim)
      throw ValidationError("generator " + std::to_string(i) + " has length " +
                            std::to_string(gens[i].size()) + ", expected " +
                            std::to_string(ambient_dim));
  Cone c;
  c.ambient_dim = ambient_dim;
  c.generators = std::move(gens);
  c.dim = rank_of_vectors(c.generators, ambient_dim);

  // Dual cone: its lineality is span(gens)^perp, its rays are facet normals.
  auto dual = detail::double_description(ambient_dim, c.generators);
  std::vector<IntegerVector> facets;
  for (const auto& ray : dual.rays) facets.push_back(detail::project_out(ray, dual.lineality));
  c.facets = detail::sorted_unique(std::move(facets));

  std::vector<IntegerVector> primal_ineqs = c.facets;
  for (const auto& u : dual.lineality) {
    primal_ineqs.push_back(u);
    IntegerVector neg = u;
    for (auto& x : neg) x = -x;
    primal_ineqs.push_back(std::move(neg));
  }
  auto primal = detail::double_description(ambient_dim, primal_ineqs);
  c.lineality_basis =
      saturate(Sublattice::spanned_by(primal.lineality, ambient_dim)).basis();
  const auto lin_rows = c.lineality_basis.row_vectors();
  std::vector<IntegerVector> rays;
  for (const auto& ray : primal.rays) rays.push_back(detail::project_out(ray, lin_rows));
  c.extreme_rays = detail::sorted_unique(std::move(rays));
  return c;
}

struct FaceTest {
  bool is_face = false;
  std::optional<IntegerVector> witness;
};

/// Decides whether `indices` is exactly the generator set of some face: is
/// there w with w . g_i = 0 for i in the set and w . g_j >= 1 otherwise?
/// Equalities are removed by parametrizing w over the integer kernel; the
/// remaining inequalities go to Fourier-Motzkin.
inline FaceTest is_face(const Cone& c, const IndexSet& indices) {
  const std::size_t r = c.generators.size();
  std::vector<bool> inside(r, false);
  for (std::size_t i : indices) {
    if (i >= r) throw ValidationError("generator index " + std::to_string(i) + " out of range");
    inside[i] = true;
  }
  std::vector<IntegerVector> on_face;
  for (std::size_t i = 0; i < r; ++i)
    if (inside[i]) on_face.push_back(c.generators[i]);
  const IntegerMatrix kernel =
      kernel_lattice(IntegerMatrix::from_rows(on_face, c.ambient_dim).transposed()).basis();
  const std::size_t k = kernel.rows();

  std::vector<LinearInequality> system;
  for (std::size_t j = 0; j < r; ++j) {
    if (inside[j]) continue;
    LinearInequality ineq{RationalVector(k), Rational(1)};
    for (std::size_t t = 0; t < k; ++t) ineq.coeffs[t] = dot(kernel.row_span(t), c.generators[j]);
    system.push_back(std::move(ineq));
  }
  auto y = solve_inequalities(system, k);
  if (!y) return {};

  RationalVector w(c.ambient_dim, Rational(0));
  for (std::size_t t = 0; t < k; ++t)
    for (std::size_t d = 0; d < c.ambient_dim; ++d) w[d] += (*y)[t] * kernel(t, d);
  IntegerVector witness = primitive_integer_multiple(w);
  for (std::size_t i = 0; i < r; ++i) {
    Integer v = dot(witness, c.generators[i]);
    check_invariant(inside[i] ? v == 0 : v > 0, "face witness has the wrong sign pattern");
  }
  return {true, std::move(witness)};
}

struct Face {
  IndexSet generator_indices;
  std::size_t dim = 0;
  IntegerVector witness;  // zero on the face's generators, positive on the rest
};

struct FacePoset {
  std::vector<Face> faces;  // sorted by (dim, generator_indices)
  std::vector<Edge> hasse_edges;
  std::size_t bottom = 0;
  std::size_t top = 0;

  bool leq(std::size_t a, std::size_t b) const {
    return is_subset(faces[a].generator_indices, faces[b].generator_indices);
  }
  std::optional<std::size_t> find(const IndexSet& indices) const {
    for (std::size_t i = 0; i < faces.size(); ++i)
      if (faces[i].generator_indices == indices) return i;
    return std::nullopt;
  }
};

/// All faces, generated from the whole cone by repeatedly intersecting with
/// facet hyperplanes; deduplicated by generator-index set.
inline FacePoset enumerate_faces(const Cone& c) {
  const std::size_t r = c.generators.size();
  std::vector<IndexSet> facet_zeros;
  for (const auto& w : c.facets) {
    IndexSet z;
    for (std::size_t i = 0; i < r; ++i)
      if (dot(w, c.generators[i]) == 0) z.push_back(i);
    facet_zeros.push_back(std::move(z));
  }

  std::vector<IndexSet> found{full_index_set(r)};
  std::map<IndexSet, bool> seen{{found.front(), true}};
  for (std::size_t next = 0; next < found.size(); ++next)
    for (const auto& z : facet_zeros) {
      IndexSet meet = intersection(found[next], z);
      if (seen.emplace(meet, true).second) found.push_back(std::move(meet));
    }

  FacePoset p;
  for (auto& indices : found) {
    Face f;
    std::vector<IntegerVector> gens;
    for (std::size_t i : indices) gens.push_back(c.generators[i]);
    f.dim = rank_of_vectors(gens, c.ambient_dim);
    f.witness = IntegerVector(c.ambient_dim);
    for (std::size_t k = 0; k < c.facets.size(); ++k)
      if (is_subset(indices, facet_zeros[k]))
        for (std::size_t d = 0; d < c.ambient_dim; ++d) f.witness[d] += c.facets[k][d];
    f.witness = primitive(std::move(f.witness));
    f.generator_indices = std::move(indices);
    p.faces.push_back(std::move(f));
  }
  std::sort(p.faces.begin(), p.faces.end(), [](const Face& a, const Face& b) {
    return std::tie(a.dim, a.generator_indices) < std::tie(b.dim, b.generator_indices);
  });

  std::vector<IndexSet> keys;
  for (const auto& f : p.faces) keys.push_back(f.generator_indices);
  p.hasse_edges = covering_pairs(keys);
  p.top = *p.find(full_index_set(r));
  p.bottom = 0;
  for (std::size_t i = 0; i < p.faces.size(); ++i)
    if (keys[i].size() < keys[p.bottom].size()) p.bottom = i;
  for (std::size_t i = 0; i < p.faces.size(); ++i)
    check_invariant(p.leq(p.bottom, i), "face poset has no unique bottom element");
  return p;
}

inline const Face& face_meet(const FacePoset& p, const Face& f, const Face& g) {
  auto idx = p.find(intersection(f.generator_indices, g.generator_indices));
  check_invariant(idx.has_value(), "face intersection missing from the face poset");
  return p.faces[*idx];
}

}  // namespace idempotoric
