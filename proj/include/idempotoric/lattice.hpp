#pragma once

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "idempotoric/error.hpp"
#include "idempotoric/integer.hpp"
#include "idempotoric/matrix.hpp"

namespace idempotoric {

struct HermiteForm {
  IntegerMatrix h;  // u * m, row-style Hermite normal form
  IntegerMatrix u;  // unimodular, rows(m) x rows(m)
  std::size_t rank = 0;
  std::vector<std::size_t> pivot_cols;  // pivot column of each of the first `rank` rows
};

/// Row-style Hermite normal form: u*m = h with h in echelon form, positive
/// pivots, entries above each pivot reduced into [0, pivot), zero rows last.
/// The nonzero rows of h are the unique canonical basis of the row lattice.
inline HermiteForm hermite_normal_form(const IntegerMatrix& m) {
  HermiteForm out{m, IntegerMatrix::identity(m.rows()), 0, {}};
  IntegerMatrix& h = out.h;
  IntegerMatrix& u = out.u;
  std::size_t r = 0;
  for (std::size_t c = 0; c < h.cols() && r < h.rows(); ++c) {
    for (std::size_t j = r + 1; j < h.rows(); ++j) {
      if (h(j, c) == 0) continue;
      if (h(r, c) == 0) {
        h.swap_rows(r, j);
        u.swap_rows(r, j);
        continue;
      }
      const Integer a = h(r, c), b = h(j, c);
      auto [g, x, y] = extended_gcd(a, b);
      const Integer bg = b / g, ag = a / g;
      // [[x, y], [-b/g, a/g]] has determinant 1.
      h.combine_rows(r, j, x, y, -bg, ag);
      u.combine_rows(r, j, x, y, -bg, ag);
    }
    if (h(r, c) == 0) continue;
    if (h(r, c) < 0) {
      h.negate_row(r);
      u.negate_row(r);
    }
    for (std::size_t i = 0; i < r; ++i) {
      Integer q = floor_div(h(i, c), h(r, c));
      h.add_row_multiple(i, r, -q);
      u.add_row_multiple(i, r, -q);
    }
    out.pivot_cols.push_back(c);
    ++r;
  }
  out.rank = r;
  return out;
}

struct SmithForm {
  IntegerMatrix s;  // u * m * v, diagonal, d1 | d2 | ..., nonnegative
  IntegerMatrix u;
  IntegerMatrix v;
};

inline SmithForm smith_normal_form(const IntegerMatrix& m) {
  SmithForm out{m, IntegerMatrix::identity(m.rows()), IntegerMatrix::identity(m.cols())};
  IntegerMatrix& s = out.s;
  IntegerMatrix& u = out.u;
  IntegerMatrix& v = out.v;
  const std::size_t n = std::min(s.rows(), s.cols());
  for (std::size_t t = 0; t < n; ++t) {
    for (;;) {
      // Move the smallest nonzero entry of the trailing block to (t, t).
      std::optional<std::pair<std::size_t, std::size_t>> best;
      for (std::size_t i = t; i < s.rows(); ++i)
        for (std::size_t j = t; j < s.cols(); ++j)
          if (s(i, j) != 0 && (!best || abs(s(i, j)) < abs(s(best->first, best->second))))
            best = {i, j};
      if (!best) return out;
      s.swap_rows(t, best->first);
      u.swap_rows(t, best->first);
      s.swap_cols(t, best->second);
      v.swap_cols(t, best->second);

      bool cleared = true;
      for (std::size_t i = t + 1; i < s.rows(); ++i) {
        Integer q = s(i, t) / s(t, t);
        s.add_row_multiple(i, t, -q);
        u.add_row_multiple(i, t, -q);
        if (s(i, t) != 0) cleared = false;
      }
      for (std::size_t j = t + 1; j < s.cols(); ++j) {
        Integer q = s(t, j) / s(t, t);
        s.add_col_multiple(j, t, -q);
        v.add_col_multiple(j, t, -q);
        if (s(t, j) != 0) cleared = false;
      }
      if (!cleared) continue;

      // Divisibility: fold an offending row into row t and retry.
      std::optional<std::size_t> offending;
      for (std::size_t i = t + 1; i < s.rows() && !offending; ++i)
        for (std::size_t j = t + 1; j < s.cols(); ++j)
          if (s(i, j) % s(t, t) != 0) {
            offending = i;
            break;
          }
      if (!offending) break;
      s.add_row_multiple(t, *offending, 1);
      u.add_row_multiple(t, *offending, 1);
    }
    if (s(t, t) < 0) {
      s.negate_row(t);
      u.negate_row(t);
    }
  }
  return out;
}

/// A subgroup of Z^ambient_rank, stored by its canonical Hermite basis.
class Sublattice {
 public:
  explicit Sublattice(std::size_t ambient_rank = 0) : basis_(0, ambient_rank) {}

  /// The lattice spanned by the rows of `generators`.
  static Sublattice spanned_by(const IntegerMatrix& generators) {
    auto hf = hermite_normal_form(generators);
    Sublattice out(generators.cols());
    out.basis_ = hf.h.row_block(0, hf.rank);
    out.pivots_ = std::move(hf.pivot_cols);
    return out;
  }
  static Sublattice spanned_by(std::span<const IntegerVector> generators,
                               std::size_t ambient_rank) {
    return spanned_by(IntegerMatrix::from_rows(generators, ambient_rank));
  }

  std::size_t ambient_rank() const { return basis_.cols(); }
  std::size_t rank() const { return basis_.rows(); }
  const IntegerMatrix& basis() const { return basis_; }
  const std::vector<std::size_t>& pivot_cols() const { return pivots_; }

  bool operator==(const Sublattice& other) const { return basis_ == other.basis_; }

  /// Integer coefficients c with c * basis = v, if v lies in the lattice.
  std::optional<IntegerVector> coordinates(std::span<const Integer> v) const {
    if (v.size() != ambient_rank())
      throw ValidationError("vector of length " + std::to_string(v.size()) +
                            " tested against a lattice in Z^" +
                            std::to_string(ambient_rank()));
    IntegerVector rest(v.begin(), v.end());
    IntegerVector coeffs(rank());
    for (std::size_t i = 0; i < rank(); ++i) {
      const std::size_t c = pivots_[i];
      for (std::size_t k = 0; k < c; ++k)
        if (rest[k] != 0) return std::nullopt;
      if (rest[c] % basis_(i, c) != 0) return std::nullopt;
      coeffs[i] = rest[c] / basis_(i, c);
      for (std::size_t k = c; k < rest.size(); ++k) rest[k] -= coeffs[i] * basis_(i, k);
    }
    if (!is_zero(rest)) return std::nullopt;
    return coeffs;
  }

 private:
  IntegerMatrix basis_;
  std::vector<std::size_t> pivots_;
};

/// { z : z * m = 0 }, a sublattice of Z^rows(m).
inline Sublattice kernel_lattice(const IntegerMatrix& m) {
  auto hf = hermite_normal_form(m);
  return Sublattice::spanned_by(hf.u.row_block(hf.rank, m.rows()));
}

/// (sub tensor Q) intersected with Z^n: the double orthogonal complement.
inline Sublattice saturate(const Sublattice& sub) {
  Sublattice perp = kernel_lattice(sub.basis().transposed());
  return kernel_lattice(perp.basis().transposed());
}

inline bool lattice_member(const Sublattice& sub, std::span<const Integer> v) {
  return sub.coordinates(v).has_value();
}

/// All nonzero lattice vectors with every coordinate in [-bound, bound],
/// in lexicographic order. Walks the Hermite basis: each pivot coordinate
/// pins one coefficient, and non-pivot coordinates are fixed as soon as the
/// coefficients of all earlier rows are known.
inline std::vector<IntegerVector> vectors_in_box(const Sublattice& sub, const Integer& bound) {
  const auto& b = sub.basis();
  const auto& pivots = sub.pivot_cols();
  const std::size_t n = sub.ambient_rank(), k = sub.rank();
  std::vector<IntegerVector> out;
  IntegerVector z(n);

  auto within = [&](std::size_t from, std::size_t to) {
    for (std::size_t c = from; c < to; ++c)
      if (abs(z[c]) > bound) return false;
    return true;
  };
  auto visit = [&](auto&& self, std::size_t i) -> void {
    if (i == k) {
      if (within(k == 0 ? 0 : pivots[k - 1], n) && !is_zero(z)) out.push_back(z);
      return;
    }
    const std::size_t c = pivots[i];
    const Integer& h = b(i, c);
    // partial + y*h in [-bound, bound]
    Integer lo = -floor_div(bound + z[c], h);
    Integer hi = floor_div(bound - z[c], h);
    for (Integer y = lo; y <= hi; ++y) {
      for (std::size_t t = c; t < n; ++t) z[t] += y * b(i, t);
      const std::size_t next = i + 1 < k ? pivots[i + 1] : n;
      if (within(c, next)) self(self, i + 1);
      for (std::size_t t = c; t < n; ++t) z[t] -= y * b(i, t);
    }
  };
  if (k == 0 || within(0, pivots[0])) visit(visit, 0);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace idempotoric
