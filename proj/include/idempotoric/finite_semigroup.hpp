#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "idempotoric/error.hpp"

namespace idempotoric {

using Element = std::size_t;
using ElementSet = std::vector<Element>;  // sorted
using CayleyTable = std::vector<std::vector<Element>>;

/// A finite semigroup on {0, ..., size-1} given by its Cayley table,
/// table[x][y] = x * y. Only constructible through validate().
class FiniteSemigroup {
 public:
  static FiniteSemigroup validate(CayleyTable table) {
    const std::size_t n = table.size();
    if (n == 0) throw ValidationError("multiplication table is empty");
    for (std::size_t x = 0; x < n; ++x) {
      if (table[x].size() != n)
        throw ValidationError("row " + std::to_string(x) + " has " +
                              std::to_string(table[x].size()) + " entries, expected " +
                              std::to_string(n));
      for (std::size_t y = 0; y < n; ++y)
        if (table[x][y] >= n)
          throw ValidationError("entry " + std::to_string(x) + "*" + std::to_string(y) + " = " +
                                std::to_string(table[x][y]) + " is out of range");
    }
    for (Element a = 0; a < n; ++a)
      for (Element b = 0; b < n; ++b)
        for (Element c = 0; c < n; ++c) {
          const Element left = table[table[a][b]][c], right = table[a][table[b][c]];
          if (left != right)
            throw ValidationError("not associative at (a, b, c) = (" + std::to_string(a) + ", " +
                                  std::to_string(b) + ", " + std::to_string(c) + "): (ab)c = " +
                                  std::to_string(left) + " but a(bc) = " + std::to_string(right));
        }
    FiniteSemigroup s;
    s.table_ = std::move(table);
    s.commutative_ = true;
    for (Element a = 0; a < n; ++a)
      for (Element b = a + 1; b < n; ++b)
        if (s.table_[a][b] != s.table_[b][a]) s.commutative_ = false;
    return s;
  }

  std::size_t size() const { return table_.size(); }
  Element operator()(Element x, Element y) const { return table_[x][y]; }
  bool commutative() const { return commutative_; }
  const CayleyTable& table() const { return table_; }

 private:
  FiniteSemigroup() = default;
  CayleyTable table_;
  bool commutative_ = false;
};

inline bool is_idempotent(const FiniteSemigroup& s, Element x) { return s(x, x) == x; }

/// e <= f iff ef = fe = e.
inline bool idempotent_leq(const FiniteSemigroup& s, Element e, Element f) {
  return s(e, f) == e && s(f, e) == e;
}

inline ElementSet idempotent_elements(const FiniteSemigroup& s) {
  ElementSet out;
  for (Element x = 0; x < s.size(); ++x)
    if (is_idempotent(s, x)) out.push_back(x);
  check_invariant(!out.empty(), "finite semigroup without idempotents");
  return out;
}

/// Product of all idempotents of a commutative semigroup; checked to lie
/// below every idempotent.
inline Element smallest_idempotent_commutative(const FiniteSemigroup& s) {
  if (!s.commutative()) throw ValidationError("smallest idempotent by product needs a commutative table");
  const auto idem = idempotent_elements(s);
  Element e0 = idem.front();
  for (Element e : idem) e0 = s(e0, e);
  check_invariant(is_idempotent(s, e0), "product of idempotents is not idempotent");
  for (Element e : idem) check_invariant(s(e0, e) == e0, "product of idempotents is not the minimum");
  return e0;
}

struct IndexPeriod {
  Element element = 0;
  std::size_t index = 1;   // smallest i with x^i = x^{i+p}
  std::size_t period = 1;  // smallest such p
};

inline IndexPeriod index_period(const FiniteSemigroup& s, Element x) {
  std::map<Element, std::size_t> first_seen;  // x^k -> k
  Element power = x;
  for (std::size_t k = 1;; ++k) {
    auto [it, inserted] = first_seen.try_emplace(power, k);
    if (!inserted) return {x, it->second, k - it->second};
    power = s(power, x);
  }
}

inline Element power_of(const FiniteSemigroup& s, Element x, std::size_t k) {
  Element out = x;
  for (std::size_t i = 1; i < k; ++i) out = s(out, x);
  return out;
}

/// The unique idempotent among x, x^2, ...: x^k with k the multiple of the
/// period inside [index, index + period - 1].
inline Element idempotent_power(const FiniteSemigroup& s, Element x) {
  const auto ip = index_period(s, x);
  const std::size_t k = (ip.index + ip.period - 1) / ip.period * ip.period;
  const Element e = power_of(s, x, k);
  check_invariant(is_idempotent(s, e), "power selected by index and period is not idempotent");
  return e;
}

struct GreensClasses {
  std::vector<ElementSet> L, R, J, H;  // each partition sorted by least element
};

namespace detail {

inline std::vector<ElementSet> partition_by(std::size_t n, const std::vector<std::vector<bool>>& key) {
  std::map<std::vector<bool>, ElementSet> groups;
  for (Element x = 0; x < n; ++x) groups[key[x]].push_back(x);
  std::vector<ElementSet> out;
  for (auto& [k, members] : groups) out.push_back(std::move(members));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace detail

/// Green's relations from the principal ideals S^1 x, x S^1 and S^1 x S^1.
inline GreensClasses greens_classes(const FiniteSemigroup& s) {
  const std::size_t n = s.size();
  std::vector<std::vector<bool>> left(n, std::vector<bool>(n)), right = left, both = left, lr = left;
  for (Element x = 0; x < n; ++x) {
    left[x][x] = right[x][x] = both[x][x] = true;
    for (Element a = 0; a < n; ++a) {
      left[x][s(a, x)] = true;
      right[x][s(x, a)] = true;
      both[x][s(a, x)] = both[x][s(x, a)] = true;
      for (Element b = 0; b < n; ++b) both[x][s(s(a, x), b)] = true;
    }
    lr[x] = left[x];
    lr[x].insert(lr[x].end(), right[x].begin(), right[x].end());
  }
  return {detail::partition_by(n, left), detail::partition_by(n, right),
          detail::partition_by(n, both), detail::partition_by(n, lr)};
}

/// The four Peirce pieces of S at an idempotent e.
struct PeirceSets {
  ElementSet fixed;        // eSe   = {x : ex = xe = x}
  ElementSet left_fixed;   // eS_e  = {x : ex = x, xe = e}
  ElementSet right_fixed;  // _eSe  = {x : ex = e, xe = x}
  ElementSet absorbed;     // _eS_e = {x : ex = xe = e}
};

namespace detail {

inline bool closed_under_product(const FiniteSemigroup& s, const ElementSet& set) {
  for (Element x : set)
    for (Element y : set)
      if (!std::binary_search(set.begin(), set.end(), s(x, y))) return false;
  return true;
}

}  // namespace detail

inline PeirceSets peirce_sets(const FiniteSemigroup& s, Element e) {
  if (e >= s.size() || !is_idempotent(s, e))
    throw ValidationError("element " + std::to_string(e) + " is not an idempotent");
  PeirceSets p;
  for (Element x = 0; x < s.size(); ++x) {
    const Element ex = s(e, x), xe = s(x, e);
    if (ex == x && xe == x) p.fixed.push_back(x);
    if (ex == x && xe == e) p.left_fixed.push_back(x);
    if (ex == e && xe == x) p.right_fixed.push_back(x);
    if (ex == e && xe == e) p.absorbed.push_back(x);
  }
  for (const auto* piece : {&p.fixed, &p.left_fixed, &p.right_fixed, &p.absorbed})
    check_invariant(detail::closed_under_product(s, *piece), "Peirce piece not closed under product");
  for (Element x : p.left_fixed) {
    check_invariant(is_idempotent(s, x), "eS_e contains a non-idempotent");
    for (Element y : p.left_fixed) check_invariant(s(x, y) == y, "eS_e product is not the second projection");
  }
  for (Element x : p.right_fixed) {
    check_invariant(is_idempotent(s, x), "_eSe contains a non-idempotent");
    for (Element y : p.right_fixed) check_invariant(s(x, y) == x, "_eSe product is not the first projection");
  }
  return p;
}

/// Whether `set` is a group under the product of s.
inline bool is_subgroup(const FiniteSemigroup& s, const ElementSet& set) {
  if (set.empty() || !detail::closed_under_product(s, set)) return false;
  std::optional<Element> unit;
  for (Element u : set)
    if (std::all_of(set.begin(), set.end(), [&](Element g) { return s(u, g) == g && s(g, u) == g; }))
      unit = u;
  if (!unit) return false;
  return std::all_of(set.begin(), set.end(), [&](Element g) {
    return std::any_of(set.begin(), set.end(),
                       [&](Element h) { return s(g, h) == *unit && s(h, g) == *unit; });
  });
}

/// e is central and eS is a group. Checked to coincide with e being the
/// least idempotent.
inline bool check_smallest_criterion(const FiniteSemigroup& s, Element e) {
  if (e >= s.size() || !is_idempotent(s, e))
    throw ValidationError("element " + std::to_string(e) + " is not an idempotent");
  bool central = true;
  ElementSet eS;
  for (Element x = 0; x < s.size(); ++x) {
    if (s(e, x) != s(x, e)) central = false;
    eS.push_back(s(e, x));
  }
  std::sort(eS.begin(), eS.end());
  eS.erase(std::unique(eS.begin(), eS.end()), eS.end());
  const bool criterion = central && is_subgroup(s, eS);
  const auto idem = idempotent_elements(s);
  const bool minimum =
      std::all_of(idem.begin(), idem.end(), [&](Element f) { return idempotent_leq(s, e, f); });
  check_invariant(criterion == minimum,
                  "central-group criterion disagrees with minimality for idempotent " + std::to_string(e));
  return criterion;
}

// ---------------------------------------------------------------------------
// Catalogue

inline FiniteSemigroup multiplicative_mod(std::size_t n) {
  CayleyTable t(n, std::vector<Element>(n));
  for (Element x = 0; x < n; ++x)
    for (Element y = 0; y < n; ++y) t[x][y] = x * y % n;
  return FiniteSemigroup::validate(std::move(t));
}

inline FiniteSemigroup cyclic_group(std::size_t n) {
  CayleyTable t(n, std::vector<Element>(n));
  for (Element x = 0; x < n; ++x)
    for (Element y = 0; y < n; ++y) t[x][y] = (x + y) % n;
  return FiniteSemigroup::validate(std::move(t));
}

inline FiniteSemigroup left_zero(std::size_t n) {
  CayleyTable t(n, std::vector<Element>(n));
  for (Element x = 0; x < n; ++x)
    for (Element y = 0; y < n; ++y) t[x][y] = x;
  return FiniteSemigroup::validate(std::move(t));
}

inline FiniteSemigroup right_zero(std::size_t n) {
  CayleyTable t(n, std::vector<Element>(n));
  for (Element x = 0; x < n; ++x)
    for (Element y = 0; y < n; ++y) t[x][y] = y;
  return FiniteSemigroup::validate(std::move(t));
}

/// <x | x^index = x^(index+period)>; element k stands for x^(k+1).
inline FiniteSemigroup monogenic(std::size_t index, std::size_t period) {
  if (index < 1 || period < 1) throw ValidationError("index and period must be positive");
  const std::size_t n = index + period - 1;
  auto reduce = [&](std::size_t k) {
    while (k > n) k -= period;
    return k;
  };
  CayleyTable t(n, std::vector<Element>(n));
  for (Element x = 0; x < n; ++x)
    for (Element y = 0; y < n; ++y) t[x][y] = reduce(x + 1 + y + 1) - 1;
  return FiniteSemigroup::validate(std::move(t));
}

/// (a, b) is encoded as a * b.size() + b.
inline FiniteSemigroup direct_product(const FiniteSemigroup& a, const FiniteSemigroup& b) {
  const std::size_t m = b.size(), n = a.size() * m;
  CayleyTable t(n, std::vector<Element>(n));
  for (Element x = 0; x < n; ++x)
    for (Element y = 0; y < n; ++y) t[x][y] = a(x / m, y / m) * m + b(x % m, y % m);
  return FiniteSemigroup::validate(std::move(t));
}

namespace detail {

inline CayleyTable relabel(const CayleyTable& t, const std::vector<Element>& perm) {
  const std::size_t n = t.size();
  CayleyTable out(n, std::vector<Element>(n));
  for (Element x = 0; x < n; ++x)
    for (Element y = 0; y < n; ++y) out[perm[x]][perm[y]] = perm[t[x][y]];
  return out;
}

inline bool is_orbit_minimum(const CayleyTable& t) {
  std::vector<Element> perm(t.size());
  std::iota(perm.begin(), perm.end(), 0);
  while (std::next_permutation(perm.begin(), perm.end()))
    if (relabel(t, perm) < t) return false;
  return true;
}

}  // namespace detail

/// One representative (the lexicographically least table) of every
/// isomorphism class of semigroups of order n.
inline std::vector<FiniteSemigroup> semigroups_of_order(std::size_t n) {
  constexpr Element unset = static_cast<Element>(-1);
  CayleyTable t(n, std::vector<Element>(n, unset));
  std::vector<FiniteSemigroup> out;

  auto consistent = [&] {
    for (Element a = 0; a < n; ++a)
      for (Element b = 0; b < n; ++b) {
        const Element ab = t[a][b];
        if (ab == unset) continue;
        for (Element c = 0; c < n; ++c) {
          const Element bc = t[b][c];
          if (bc == unset) continue;
          const Element left = t[ab][c], right = t[a][bc];
          if (left != unset && right != unset && left != right) return false;
        }
      }
    return true;
  };
  auto fill = [&](auto&& self, std::size_t cell) -> void {
    if (cell == n * n) {
      if (detail::is_orbit_minimum(t)) out.push_back(FiniteSemigroup::validate(t));
      return;
    }
    auto& slot = t[cell / n][cell % n];
    for (Element v = 0; v < n; ++v) {
      slot = v;
      if (consistent()) self(self, cell + 1);
    }
    slot = unset;
  };
  if (n > 0) fill(fill, 0);
  return out;
}

struct CatalogueEntry {
  std::string name;
  FiniteSemigroup semigroup;
};

/// Every semigroup of order <= small_order up to isomorphism, followed by a
/// fixed list of larger tables.
inline std::vector<CatalogueEntry> catalogue(std::size_t small_order = 4) {
  std::vector<CatalogueEntry> out;
  for (std::size_t n = 1; n <= small_order; ++n) {
    auto all = semigroups_of_order(n);
    for (std::size_t i = 0; i < all.size(); ++i)
      out.push_back({"order" + std::to_string(n) + "#" + std::to_string(i + 1), std::move(all[i])});
  }
  for (std::size_t n = 1; n <= 30; ++n) out.push_back({"Z/" + std::to_string(n) + " mult", multiplicative_mod(n)});
  for (std::size_t n = 2; n <= 5; ++n) {
    out.push_back({"left zero " + std::to_string(n), left_zero(n)});
    out.push_back({"right zero " + std::to_string(n), right_zero(n)});
  }
  for (std::size_t n = 1; n <= 8; ++n) out.push_back({"C" + std::to_string(n), cyclic_group(n)});
  for (std::size_t i = 1; i <= 4; ++i)
    for (std::size_t p = 1; p <= 4; ++p)
      out.push_back({"monogenic(" + std::to_string(i) + "," + std::to_string(p) + ")", monogenic(i, p)});
  out.push_back({"Z/6 mult x left zero 2", direct_product(multiplicative_mod(6), left_zero(2))});
  out.push_back({"Z/4 mult x monogenic(2,3)", direct_product(multiplicative_mod(4), monogenic(2, 3))});
  out.push_back({"Z/3 mult x Z/5 mult", direct_product(multiplicative_mod(3), multiplicative_mod(5))});
  out.push_back({"right zero 2 x C3", direct_product(right_zero(2), cyclic_group(3))});
  out.push_back({"C2 x monogenic(3,2)", direct_product(cyclic_group(2), monogenic(3, 2))});
  return out;
}

}  // namespace idempotoric
