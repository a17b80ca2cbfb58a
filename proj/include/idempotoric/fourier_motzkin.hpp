#pragma once

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "idempotoric/error.hpp"
#include "idempotoric/integer.hpp"
#include "idempotoric/matrix.hpp"

namespace idempotoric {

/// coeffs . y >= rhs
struct LinearInequality {
  RationalVector coeffs;
  Rational rhs;
};

inline bool satisfies(const LinearInequality& ineq, const RationalVector& y) {
  Rational lhs = 0;
  for (std::size_t i = 0; i < y.size(); ++i) lhs += ineq.coeffs[i] * y[i];
  return lhs >= ineq.rhs;
}

namespace detail {

struct TrackedInequality {
  RationalVector coeffs;
  Rational rhs;
  std::vector<bool> ancestors;  // which input rows this row was derived from
};

inline std::size_t ancestor_count(const std::vector<bool>& a) {
  return static_cast<std::size_t>(std::count(a.begin(), a.end(), true));
}

/// Scales a row so its first nonzero coefficient has absolute value 1 and
/// drops exact duplicates, keeping the shortest history. Weaker parallel rows
/// are kept: Chernikov's rule relies on the short-history rows surviving.
/// Rows with all-zero coefficients are dropped (0 >= rhs holds) or reported
/// as infeasible.
inline bool normalize_and_prune(std::vector<TrackedInequality>& rows) {
  std::map<std::pair<RationalVector, Rational>, TrackedInequality> unique;
  for (auto& row : rows) {
    auto lead = std::find_if(row.coeffs.begin(), row.coeffs.end(),
                             [](const Rational& x) { return x != 0; });
    if (lead == row.coeffs.end()) {
      if (row.rhs > 0) return false;
      continue;
    }
    Rational scale = *lead < 0 ? Rational(-*lead) : *lead;
    for (auto& x : row.coeffs) x /= scale;
    row.rhs /= scale;
    auto key = std::make_pair(row.coeffs, row.rhs);
    auto [it, inserted] = unique.try_emplace(std::move(key), row);
    if (!inserted && ancestor_count(row.ancestors) < ancestor_count(it->second.ancestors))
      it->second = row;
  }
  rows.clear();
  for (auto& [key, row] : unique) rows.push_back(std::move(row));
  return true;
}

}  // namespace detail

/// Decides feasibility of { y in Q^num_vars : A y >= b } by Fourier-Motzkin
/// elimination (Chernikov's history rule prunes redundant rows) and returns a
/// feasible point found by back-substitution, or nullopt if infeasible.
inline std::optional<RationalVector> solve_inequalities(
    const std::vector<LinearInequality>& system, std::size_t num_vars) {
  using detail::TrackedInequality;
  std::vector<TrackedInequality> current;
  current.reserve(system.size());
  for (std::size_t i = 0; i < system.size(); ++i) {
    if (system[i].coeffs.size() != num_vars)
      throw ValidationError("inequality " + std::to_string(i) + " has " +
                            std::to_string(system[i].coeffs.size()) +
                            " coefficients, expected " + std::to_string(num_vars));
    std::vector<bool> anc(system.size(), false);
    anc[i] = true;
    current.push_back({system[i].coeffs, system[i].rhs, std::move(anc)});
  }
  if (!detail::normalize_and_prune(current)) return std::nullopt;

  // stages[k] holds the system in variables k..n-1, before eliminating k.
  std::vector<std::vector<TrackedInequality>> stages;
  stages.reserve(num_vars);
  for (std::size_t k = 0; k < num_vars; ++k) {
    stages.push_back(current);
    std::vector<TrackedInequality> pos, neg, next;
    for (auto& row : current) {
      if (row.coeffs[k] > 0)
        pos.push_back(std::move(row));
      else if (row.coeffs[k] < 0)
        neg.push_back(std::move(row));
      else
        next.push_back(std::move(row));
    }
    for (const auto& p : pos)
      for (const auto& q : neg) {
        std::vector<bool> anc(system.size());
        for (std::size_t i = 0; i < anc.size(); ++i) anc[i] = p.ancestors[i] || q.ancestors[i];
        if (detail::ancestor_count(anc) > k + 2) continue;
        const Rational mp = -q.coeffs[k], mq = p.coeffs[k];
        TrackedInequality row{RationalVector(num_vars), mp * p.rhs + mq * q.rhs, std::move(anc)};
        for (std::size_t j = 0; j < num_vars; ++j)
          row.coeffs[j] = mp * p.coeffs[j] + mq * q.coeffs[j];
        row.coeffs[k] = 0;
        next.push_back(std::move(row));
      }
    if (!detail::normalize_and_prune(next)) return std::nullopt;
    current = std::move(next);
  }
  // After the last elimination every surviving row is 0 >= rhs with rhs <= 0.

  RationalVector y(num_vars, Rational(0));
  for (std::size_t k = num_vars; k-- > 0;) {
    std::optional<Rational> lo, hi;
    for (const auto& row : stages[k]) {
      const Rational& ck = row.coeffs[k];
      if (ck == 0) continue;
      Rational bound = row.rhs;
      for (std::size_t j = k + 1; j < num_vars; ++j) bound -= row.coeffs[j] * y[j];
      bound /= ck;
      if (ck > 0) {
        if (!lo || bound > *lo) lo = bound;
      } else {
        if (!hi || bound < *hi) hi = bound;
      }
    }
    check_invariant(!lo || !hi || *lo <= *hi,
                    "Fourier-Motzkin back-substitution found an empty interval");
    y[k] = lo ? *lo : (hi ? *hi : Rational(0));
  }
  for (const auto& ineq : system)
    check_invariant(satisfies(ineq, y), "Fourier-Motzkin witness violates the input system");
  return y;
}

}  // namespace idempotoric
