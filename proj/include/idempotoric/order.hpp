#pragma once

#include <algorithm>
#include <cstddef>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace idempotoric {

/// Sorted, duplicate-free set of generator indices.
using IndexSet = std::vector<std::size_t>;

inline bool is_subset(const IndexSet& a, const IndexSet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

inline IndexSet intersection(const IndexSet& a, const IndexSet& b) {
  IndexSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

inline IndexSet full_index_set(std::size_t n) {
  IndexSet out(n);
  for (std::size_t i = 0; i < n; ++i) out[i] = i;
  return out;
}

inline std::string format_index_set(const IndexSet& s, std::size_t offset = 0) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i)
    out += (i ? "," : "") + std::to_string(s[i] + offset);
  return out + "}";
}

using Edge = std::pair<std::size_t, std::size_t>;

/// Covering pairs (lower, upper) of the inclusion order on `sets`, sorted.
inline std::vector<Edge> covering_pairs(std::span<const IndexSet> sets) {
  const std::size_t n = sets.size();
  auto strictly_below = [&](std::size_t a, std::size_t b) {
    return sets[a] != sets[b] && is_subset(sets[a], sets[b]);
  };
  std::vector<Edge> out;
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) {
      if (!strictly_below(a, b)) continue;
      bool covered = true;
      for (std::size_t c = 0; c < n && covered; ++c)
        if (strictly_below(a, c) && strictly_below(c, b)) covered = false;
      if (covered) out.emplace_back(a, b);
    }
  std::sort(out.begin(), out.end());
  return out;
}

/// Lengths (edge counts) of all maximal chains from `bottom` to `top` in the
/// Hasse diagram given by `edges`.
inline std::set<std::size_t> chain_lengths(std::size_t count, std::span<const Edge> edges,
                                           std::size_t bottom, std::size_t top) {
  // Memoized over elements: lengths of saturated chains from bottom to x.
  std::vector<std::set<std::size_t>> memo(count);
  std::vector<bool> done(count, false);
  auto visit = [&](auto&& self, std::size_t x) -> const std::set<std::size_t>& {
    if (done[x]) return memo[x];
    if (x == bottom) memo[x].insert(0);
    for (const auto& [lo, hi] : edges)
      if (hi == x)
        for (std::size_t len : self(self, lo)) memo[x].insert(len + 1);
    done[x] = true;
    return memo[x];
  };
  return visit(visit, top);
}

}  // namespace idempotoric
