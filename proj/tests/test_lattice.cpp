#include <gtest/gtest.h>

#include <algorithm>

#include "idempotoric/lattice.hpp"
#include "test_support.hpp"

namespace idempotoric {
namespace {

using testing::Generator;
using testing::vec;

bool is_row_hermite(const HermiteForm& hf) {
  const auto& h = hf.h;
  for (std::size_t i = 0; i < hf.rank; ++i) {
    const std::size_t c = hf.pivot_cols[i];
    if (i > 0 && c <= hf.pivot_cols[i - 1]) return false;
    if (h(i, c) <= 0) return false;
    for (std::size_t k = 0; k < c; ++k)
      if (h(i, k) != 0) return false;
    for (std::size_t a = 0; a < i; ++a)
      if (h(a, c) < 0 || h(a, c) >= h(i, c)) return false;
  }
  for (std::size_t i = hf.rank; i < h.rows(); ++i)
    if (!is_zero(h.row_span(i))) return false;
  return true;
}

TEST(HermiteNormalForm, WorkedExample) {
  IntegerMatrix m{{2, 4}, {1, 1}};
  auto hf = hermite_normal_form(m);
  EXPECT_EQ(hf.h, (IntegerMatrix{{1, 1}, {0, 2}}));
  EXPECT_EQ(hf.u * m, hf.h);
  EXPECT_EQ(abs(determinant(hf.u)), 1);
}

TEST(HermiteNormalForm, IdentityAndZero) {
  auto id = hermite_normal_form(IntegerMatrix::identity(2));
  EXPECT_EQ(id.h, IntegerMatrix::identity(2));
  EXPECT_EQ(id.u, IntegerMatrix::identity(2));

  auto zero = hermite_normal_form(IntegerMatrix{{0, 0}});
  EXPECT_EQ(zero.h, (IntegerMatrix{{0, 0}}));
  EXPECT_EQ(zero.rank, 0u);
}

TEST(HermiteNormalForm, RandomMatricesAreUnimodularlyReduced) {
  Generator gen(11);
  for (int trial = 0; trial < 300; ++trial) {
    auto m = gen.matrix(gen.index(0, 6), gen.index(0, 6), -9, 9);
    auto hf = hermite_normal_form(m);
    ASSERT_EQ(hf.u * m, hf.h);
    ASSERT_EQ(abs(determinant(hf.u)), 1);
    ASSERT_TRUE(is_row_hermite(hf)) << m;
    ASSERT_EQ(hf.rank, rank(m));
  }
}

TEST(HermiteNormalForm, CanonicalForEqualLattices) {
  Generator gen(12);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t cols = gen.index(1, 5);
    auto m = gen.matrix(gen.index(1, 5), cols, -6, 6);
    // Same lattice: unimodular row mix plus an extra integer combination.
    auto mixed = m;
    for (int step = 0; step < 8 && mixed.rows() > 1; ++step) {
      std::size_t a = gen.index(0, mixed.rows() - 1), b = gen.index(0, mixed.rows() - 1);
      if (a != b) mixed.add_row_multiple(a, b, gen.uniform(-3, 3));
    }
    auto rows = mixed.row_vectors();
    IntegerVector extra(cols);
    for (const auto& r : rows) {
      auto k = gen.uniform(-2, 2);
      for (std::size_t c = 0; c < cols; ++c) extra[c] += k * r[c];
    }
    rows.push_back(extra);
    std::shuffle(rows.begin(), rows.end(), gen.engine());
    ASSERT_EQ(Sublattice::spanned_by(m), Sublattice::spanned_by(rows, cols));
  }
}

TEST(SmithNormalForm, Examples) {
  auto s = smith_normal_form(IntegerMatrix{{2, 0}, {0, 3}});
  EXPECT_EQ(s.s, (IntegerMatrix{{1, 0}, {0, 6}}));
  EXPECT_EQ(smith_normal_form(IntegerMatrix::identity(3)).s, IntegerMatrix::identity(3));
  EXPECT_EQ(smith_normal_form(IntegerMatrix{{2}}).s, (IntegerMatrix{{2}}));
}

TEST(SmithNormalForm, RandomMatricesAreDiagonalWithDivisibilityChain) {
  Generator gen(13);
  for (int trial = 0; trial < 300; ++trial) {
    auto m = gen.matrix(gen.index(0, 5), gen.index(0, 5), -12, 12);
    auto sf = smith_normal_form(m);
    ASSERT_EQ(sf.u * m * sf.v, sf.s);
    ASSERT_EQ(abs(determinant(sf.u)), 1);
    ASSERT_EQ(abs(determinant(sf.v)), 1);
    for (std::size_t i = 0; i < sf.s.rows(); ++i)
      for (std::size_t j = 0; j < sf.s.cols(); ++j)
        if (i != j) {
          ASSERT_EQ(sf.s(i, j), 0);
        }
    const std::size_t n = std::min(sf.s.rows(), sf.s.cols());
    for (std::size_t i = 0; i < n; ++i) {
      ASSERT_GE(sf.s(i, i), 0);
      if (i + 1 == n) continue;
      if (sf.s(i, i) != 0) {
        ASSERT_EQ(sf.s(i + 1, i + 1) % sf.s(i, i), 0);
      } else {
        ASSERT_EQ(sf.s(i + 1, i + 1), 0);
      }
    }
  }
}

TEST(KernelLattice, Examples) {
  auto k = kernel_lattice(IntegerMatrix{{1, 0}, {0, 1}, {1, 1}});
  EXPECT_EQ(k.ambient_rank(), 3u);
  EXPECT_EQ(k.basis(), (IntegerMatrix{{1, 1, -1}}));
  EXPECT_EQ(kernel_lattice(IntegerMatrix::identity(3)).rank(), 0u);
  auto whole = kernel_lattice(IntegerMatrix{{0, 0}});
  EXPECT_EQ(whole.basis(), (IntegerMatrix{{1}}));
}

TEST(KernelLattice, RankNullityAndAnnihilation) {
  Generator gen(14);
  for (int trial = 0; trial < 300; ++trial) {
    auto m = gen.matrix(gen.index(0, 6), gen.index(0, 4), -5, 5);
    auto k = kernel_lattice(m);
    ASSERT_EQ(k.rank() + rank(m), m.rows());
    auto product = k.basis() * m;
    for (std::size_t i = 0; i < product.rows(); ++i) ASSERT_TRUE(is_zero(product.row_span(i)));
    // The kernel is saturated: z*m = 0 and z = n*y forces y*m = 0.
    ASSERT_EQ(saturate(k), k);
  }
}

TEST(Saturate, Examples) {
  auto s = saturate(Sublattice::spanned_by(IntegerMatrix{{2, 0}}));
  EXPECT_EQ(s.basis(), (IntegerMatrix{{1, 0}}));
  auto diag = Sublattice::spanned_by(IntegerMatrix{{1, 1}});
  EXPECT_EQ(saturate(diag), diag);
  EXPECT_EQ(smith_normal_form(diag.basis()).s, (IntegerMatrix{{1, 0}}));
  Sublattice zero(2);
  EXPECT_EQ(saturate(zero), zero);
}

TEST(Saturate, PropertiesOnRandomLattices) {
  Generator gen(15);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = gen.index(1, 5);
    auto sub = Sublattice::spanned_by(gen.matrix(gen.index(0, 4), n, -8, 8));
    auto sat = saturate(sub);
    ASSERT_EQ(sat.rank(), sub.rank());
    ASSERT_EQ(saturate(sat), sat);
    for (std::size_t i = 0; i < sub.rank(); ++i)
      ASSERT_TRUE(lattice_member(sat, sub.basis().row_span(i)));
    // Torsion-free quotient: every invariant factor of the saturated basis is 1.
    auto sf = smith_normal_form(sat.basis());
    for (std::size_t i = 0; i < sat.rank(); ++i) ASSERT_EQ(sf.s(i, i), 1);
  }
}

TEST(LatticeMember, Examples) {
  auto l = Sublattice::spanned_by(IntegerMatrix{{2, 0}});
  EXPECT_TRUE(lattice_member(l, vec({4, 0})));
  EXPECT_FALSE(lattice_member(l, vec({1, 0})));
  EXPECT_TRUE(lattice_member(Sublattice(2), vec({0, 0})));
  EXPECT_THROW(lattice_member(l, vec({1, 0, 0})), ValidationError);
}

TEST(LatticeMember, CoordinatesReconstructMembers) {
  Generator gen(16);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = gen.index(1, 4);
    auto rows = gen.vectors(gen.index(1, 4), n, -5, 5);
    auto sub = Sublattice::spanned_by(rows, n);
    IntegerVector v(n);
    for (const auto& r : rows) {
      auto k = gen.uniform(-3, 3);
      for (std::size_t c = 0; c < n; ++c) v[c] += k * r[c];
    }
    auto coords = sub.coordinates(v);
    ASSERT_TRUE(coords.has_value());
    ASSERT_EQ(std::span<const Integer>(*coords) * sub.basis(), v);
  }
}

TEST(VectorsInBox, MatchesBruteForceScan) {
  Generator gen(17);
  for (int trial = 0; trial < 150; ++trial) {
    const std::size_t n = gen.index(1, 4);
    auto m = gen.matrix(n, gen.index(0, 3), -3, 3);
    auto k = kernel_lattice(m);
    const long long bound = gen.uniform(1, 3);
    std::vector<IntegerVector> expected;
    IntegerVector z(n, Integer(-bound));
    for (;;) {
      if (!is_zero(z) && lattice_member(k, z)) expected.push_back(z);
      std::size_t i = n;
      while (i > 0 && z[i - 1] == bound) z[--i] = -bound;
      if (i == 0) break;
      ++z[i - 1];
    }
    ASSERT_EQ(vectors_in_box(k, bound), expected);
  }
}

}  // namespace
}  // namespace idempotoric
