#pragma once

#include <boost/multiprecision/miller_rabin.hpp>

#include <algorithm>
#include <cstddef>
#include <map>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "idempotoric/cone.hpp"
#include "idempotoric/error.hpp"
#include "idempotoric/integer.hpp"
#include "idempotoric/lattice.hpp"
#include "idempotoric/matrix.hpp"
#include "idempotoric/monoid.hpp"
#include "idempotoric/order.hpp"

namespace idempotoric {

// ---------------------------------------------------------------------------
// Integer factorization

namespace detail {

inline Integer pollard_brent(const Integer& n, std::mt19937_64& rng) {
  if (n % 2 == 0) return 2;
  std::uniform_int_distribution<unsigned long long> pick(1, 1ULL << 62);
  for (;;) {
    Integer y = Integer(pick(rng)) % n, c = Integer(pick(rng)) % n, g = 1, r = 1, q = 1;
    Integer x, ys;
    const unsigned batch = 64;
    while (g == 1) {
      x = y;
      for (Integer i = 0; i < r; ++i) y = (y * y + c) % n;
      Integer k = 0;
      while (k < r && g == 1) {
        ys = y;
        for (unsigned i = 0; i < batch && Integer(i) < r - k; ++i) {
          y = (y * y + c) % n;
          q = q * abs(Integer(x - y)) % n;
        }
        g = gcd(q, n);
        k += batch;
      }
      r *= 2;
    }
    if (g == n) {
      do {
        ys = (ys * ys + c) % n;
        g = gcd(abs(Integer(x - ys)), n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

inline void factor_into(Integer n, std::map<Integer, long long>& out, std::mt19937_64& rng) {
  if (n == 1) return;
  if (boost::multiprecision::miller_rabin_test(n, 32, rng)) {
    ++out[n];
    return;
  }
  Integer d = pollard_brent(n, rng);
  factor_into(d, out, rng);
  factor_into(n / d, out, rng);
}

}  // namespace detail

/// Prime factorization of n >= 1 as prime -> exponent.
inline std::map<Integer, long long> factor_integer(Integer n) {
  if (n < 1) throw ValidationError("factor_integer needs a positive integer");
  std::map<Integer, long long> out;
  for (unsigned p = 2; p < 1000 && Integer(p) * p <= n; ++p)
    while (n % p == 0) {
      ++out[Integer(p)];
      n /= p;
    }
  std::mt19937_64 rng(0x5eed);
  detail::factor_into(n, out, rng);
  return out;
}

// ---------------------------------------------------------------------------
// Spectrum -> weight monoid

/// The nonzero spectrum of a diagonalizable matrix; repeats are merged and
/// counted, first-occurrence order is kept.
struct EigenInput {
  std::vector<Rational> eigenvalues;
  std::vector<std::size_t> multiplicities;

  static EigenInput from_values(std::span<const Rational> values) {
    EigenInput in;
    for (const auto& v : values) {
      if (v == 0)
        throw ValidationError(
            "eigenvalue 0 is not accepted: the nilpotent part on the generalized "
            "0-eigenspace does not change the toric monoid, so pass only the nonzero "
            "spectrum");
      auto it = std::find(in.eigenvalues.begin(), in.eigenvalues.end(), v);
      if (it == in.eigenvalues.end()) {
        in.eigenvalues.push_back(v);
        in.multiplicities.push_back(1);
      } else {
        ++in.multiplicities[static_cast<std::size_t>(it - in.eigenvalues.begin())];
      }
    }
    return in;
  }

  std::size_t size() const { return eigenvalues.size(); }
};

inline std::string eigen_label(std::size_t i) { return "t" + std::to_string(i + 1); }

/// e_I with 1-based indices, e.g. "e_{1,3}".
inline std::string idempotent_label(const IndexSet& s) {
  return "e_" + format_index_set(s, 1);
}

struct ExponentTable {
  std::vector<Integer> primes;  // sorted
  IntegerMatrix exponents;      // row i: exponent of each prime in |lambda_i|
  std::vector<int> signs;
};

inline ExponentTable factor(const EigenInput& in) {
  std::vector<std::map<Integer, long long>> rows;
  std::map<Integer, bool> seen;
  for (const auto& v : in.eigenvalues) {
    if (v == 0) throw ValidationError("eigenvalue 0 is not accepted; pass only the nonzero spectrum");
    std::map<Integer, long long> row;
    const Integer num = abs(Integer(boost::multiprecision::numerator(v)));
    for (const auto& [p, k] : factor_integer(num)) row[p] += k;
    for (const auto& [p, k] : factor_integer(boost::multiprecision::denominator(v))) row[p] -= k;
    for (const auto& [p, k] : row) seen[p] = true;
    rows.push_back(std::move(row));
  }
  ExponentTable t;
  for (const auto& [p, unused] : seen) t.primes.push_back(p);
  t.exponents = IntegerMatrix(in.size(), t.primes.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < t.primes.size(); ++j) {
      auto it = rows[i].find(t.primes[j]);
      if (it != rows[i].end()) t.exponents(i, j) = it->second;
    }
    t.signs.push_back(in.eigenvalues[i] < 0 ? -1 : 1);
  }
  return t;
}

inline Rational power(const Rational& base, const Integer& exponent) {
  Rational out = 1;
  const Rational b = exponent < 0 ? Rational(1) / base : base;
  for (Integer k = abs(exponent); k > 0; --k) out *= b;
  return out;
}

/// sign_i * prod p^V[i][p]
inline std::vector<Rational> reconstruct(const ExponentTable& t) {
  std::vector<Rational> out;
  for (std::size_t i = 0; i < t.exponents.rows(); ++i) {
    Rational v = t.signs[i];
    for (std::size_t j = 0; j < t.primes.size(); ++j)
      v *= power(Rational(t.primes[j]), t.exponents(i, j));
    out.push_back(v);
  }
  return out;
}

/// Squaring kills the only torsion ({+1, -1}) of a finitely generated
/// subgroup of Q*, so the exponent rows alone present the character lattice
/// and weight monoid.
inline WeightMonoid character_data(const ExponentTable& t) {
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < t.exponents.rows(); ++i) labels.push_back(eigen_label(i));
  return monoid_from_generators(t.primes.size(), t.exponents.row_vectors(), std::move(labels));
}

// ---------------------------------------------------------------------------
// Relations

/// prod_{i in A} t_i^{a_i} = prod_{j in B} t_j^{b_j} with disjoint supports.
struct PrimitiveRelation {
  std::map<std::size_t, Integer> lhs;
  std::map<std::size_t, Integer> rhs;

  bool operator==(const PrimitiveRelation&) const = default;

  /// Splits z into positive part (lhs) and negative part (rhs).
  static PrimitiveRelation from_kernel_vector(std::span<const Integer> z) {
    PrimitiveRelation r;
    for (std::size_t i = 0; i < z.size(); ++i) {
      if (z[i] > 0) r.lhs[i] = z[i];
      if (z[i] < 0) r.rhs[i] = -z[i];
    }
    return r;
  }

  IntegerVector as_vector(std::size_t r) const {
    IntegerVector z(r);
    for (const auto& [i, a] : lhs) z[i] = a;
    for (const auto& [j, b] : rhs) z[j] = -b;
    return z;
  }

  std::string to_string() const {
    auto side = [](const std::map<std::size_t, Integer>& m) {
      if (m.empty()) return std::string("1");
      std::string s;
      for (const auto& [i, a] : m) {
        if (!s.empty()) s += ' ';
        s += eigen_label(i);
        if (a != 1) s += "^" + a.str();
      }
      return s;
    };
    return side(lhs) + " = " + side(rhs);
  }
};

/// Checks the relation on the squared eigenvalues with exact rationals.
inline bool relation_holds(const PrimitiveRelation& rel, std::span<const Rational> eigenvalues) {
  Rational left = 1, right = 1;
  for (const auto& [i, a] : rel.lhs) left *= power(eigenvalues[i] * eigenvalues[i], a);
  for (const auto& [j, b] : rel.rhs) right *= power(eigenvalues[j] * eigenvalues[j], b);
  return left == right;
}

/// Relations from the Hermite basis of the exponent kernel plus every kernel
/// vector with entries in [-coeff_bound, coeff_bound]. Each relation is
/// oriented so its first nonzero exponent sits on the left, deduplicated and
/// sorted by (total degree, exponent vector).
inline std::vector<PrimitiveRelation> primitive_relations(const ExponentTable& t,
                                                          std::size_t coeff_bound) {
  if (coeff_bound < 1) throw ValidationError("relation coefficient bound must be at least 1");
  const auto kernel = kernel_lattice(t.exponents);
  std::vector<IntegerVector> zs = kernel.basis().row_vectors();
  for (auto& z : vectors_in_box(kernel, coeff_bound)) zs.push_back(std::move(z));
  for (auto& z : zs) {
    auto lead = std::find_if(z.begin(), z.end(), [](const Integer& x) { return x != 0; });
    if (lead != z.end() && *lead < 0)
      for (auto& x : z) x = -x;
  }
  auto degree = [](const IntegerVector& z) {
    Integer s = 0;
    for (const auto& x : z) s += abs(x);
    return s;
  };
  std::sort(zs.begin(), zs.end(), [&](const IntegerVector& a, const IntegerVector& b) {
    auto da = degree(a), db = degree(b);
    if (da != db) return da < db;
    return a > b;
  });
  zs.erase(std::unique(zs.begin(), zs.end()), zs.end());

  const auto values = reconstruct(t);
  std::vector<PrimitiveRelation> out;
  for (const auto& z : zs) {
    auto rel = PrimitiveRelation::from_kernel_vector(z);
    check_invariant(relation_holds(rel, values), "kernel relation fails on the eigenvalues: " +
                                                     rel.to_string());
    out.push_back(std::move(rel));
  }
  return out;
}

/// A {1,0}-valued homomorphism with preimage of 1 equal to `indices` respects
/// a relation exactly when both sides are sent to the same value, i.e.
/// (A subset of I) iff (B subset of I).
inline bool check_relation_criterion(const IndexSet& indices,
                                     std::span<const PrimitiveRelation> relations) {
  auto covered = [&](const std::map<std::size_t, Integer>& side) {
    return std::all_of(side.begin(), side.end(), [&](const auto& entry) {
      return std::binary_search(indices.begin(), indices.end(), entry.first);
    });
  };
  return std::all_of(relations.begin(), relations.end(), [&](const PrimitiveRelation& rel) {
    return covered(rel.lhs) == covered(rel.rhs);
  });
}

// ---------------------------------------------------------------------------
// Idempotents of the closure of the powers of diag(lambda_1, ..., lambda_r)

inline IdempotentPoset idempotent_set(const EigenInput& in) {
  return idempotents(character_data(factor(in)));
}

/// Indices whose exponent row lies in the lineality space, tested by rank
/// against the lineality basis rather than through the facets.
inline IndexSet smallest_idempotent_indices(const EigenInput& in) {
  const auto w = character_data(factor(in));
  const auto cone = cone_of(w);
  const auto lin = cone.lineality_basis.row_vectors();
  const std::size_t lin_rank = lin.size();
  IndexSet out;
  for (std::size_t i = 0; i < w.generators.size(); ++i) {
    auto rows = lin;
    rows.push_back(w.generators[i]);
    if (rank_of_vectors(rows, w.ambient_rank) == lin_rank) out.push_back(i);
  }
  return out;
}

inline EigenInput raise_to_power(const EigenInput& in, std::size_t n) {
  std::vector<Rational> powered;
  for (std::size_t i = 0; i < in.size(); ++i) {
    const Rational v = power(in.eigenvalues[i], Integer(n));
    for (std::size_t m = 0; m < in.multiplicities[i]; ++m) powered.push_back(v);
  }
  return EigenInput::from_values(powered);
}

/// Compares canonical forms of the weight monoids of x and x^n.
inline bool power_invariance(const EigenInput& in, std::size_t n) {
  if (n < 1) throw ValidationError("power must be positive");
  return canonical_form(character_data(factor(in))) ==
         canonical_form(character_data(factor(raise_to_power(in, n))));
}

}  // namespace idempotoric
