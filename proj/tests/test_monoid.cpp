#include <gtest/gtest.h>

#include <set>

#include "idempotoric/monoid.hpp"
#include "test_support.hpp"

namespace idempotoric {
namespace {

using testing::Generator;
using testing::vec;
using testing::vecs;

std::set<IndexSet> index_sets(const IdempotentPoset& p) {
  std::set<IndexSet> out;
  for (const auto& e : p.elements) out.insert(e.index_set);
  return out;
}

WeightMonoid quadrant() { return monoid_from_generators(2, vecs({{1, 0}, {0, 1}, {1, 1}})); }

TEST(MonoidFromGenerators, Recoordinatizes) {
  auto w = monoid_from_generators(2, vecs({{2, 0}, {0, 2}, {2, 2}}));
  EXPECT_EQ(w.lattice_basis, (IntegerMatrix{{2, 0}, {0, 2}}));
  EXPECT_EQ(w.ambient_rank, 2u);
  EXPECT_EQ(w.generators, vecs({{1, 0}, {0, 1}, {1, 1}}));

  auto unchanged = monoid_from_generators(2, vecs({{1, 0}, {0, 1}}));
  EXPECT_EQ(unchanged.generators, vecs({{1, 0}, {0, 1}}));

  auto trivial = monoid_from_generators(1, vecs({{0}}));
  EXPECT_EQ(trivial.ambient_rank, 0u);
  ASSERT_EQ(trivial.generators.size(), 1u);
  EXPECT_TRUE(trivial.generators[0].empty());
}

TEST(MonoidFromGenerators, LabelsDefaultAndValidate) {
  auto w = quadrant();
  EXPECT_EQ(w.labels, (std::vector<std::string>{"g1", "g2", "g3"}));
  EXPECT_THROW(monoid_from_generators(1, vecs({{1}}), {"a", "b"}), ValidationError);
}

TEST(Idempotents, Quadrant) {
  auto p = idempotents(quadrant());
  EXPECT_EQ(index_sets(p), (std::set<IndexSet>{{}, {0}, {1}, {0, 1, 2}}));
  EXPECT_EQ(maximal_chain_length(p), 2u);
  EXPECT_EQ(p.hasse_edges.size(), 4u);
  // Sorted by (face_dim, index_set).
  EXPECT_EQ(p.elements.front().index_set, IndexSet{});
  EXPECT_EQ(p.elements.back().index_set, (IndexSet{0, 1, 2}));
}

TEST(Idempotents, GroupAndTrivialCases) {
  auto group = idempotents(monoid_from_generators(1, vecs({{1}, {-1}})));
  EXPECT_EQ(index_sets(group), (std::set<IndexSet>{{0, 1}}));
  EXPECT_EQ(maximal_chain_length(group), 0u);
  EXPECT_EQ(smallest_idempotent(group), largest_idempotent(group));

  auto trivial = idempotents(monoid_from_generators(0, {}));
  EXPECT_EQ(trivial.elements.size(), 1u);
  EXPECT_EQ(smallest_idempotent(trivial), largest_idempotent(trivial));
}

TEST(IdempotentProduct, QuadrantLaws) {
  auto p = idempotents(quadrant());
  const auto& e1 = p.elements[*p.find({0})];
  const auto& e2 = p.elements[*p.find({1})];
  EXPECT_EQ(idempotent_product(p, e1, e2).index_set, IndexSet{});
  for (const auto& e : p.elements) {
    EXPECT_EQ(idempotent_product(p, e, largest_idempotent(p)), e);
    EXPECT_EQ(idempotent_product(p, e, e), e);
  }
  EXPECT_EQ(smallest_idempotent(p).index_set, IndexSet{});
  EXPECT_EQ(largest_idempotent(p).index_set, (IndexSet{0, 1, 2}));
}

TEST(MaximalChainLength, HypersurfaceCone) {
  auto p = idempotents(monoid_from_generators(2, vecs({{1, 0}, {0, 1}, {2, -2}})));
  EXPECT_EQ(p.elements.size(), 4u);
  EXPECT_EQ(maximal_chain_length(p), 2u);
}

TEST(MaximalChainLength, RejectsNonGradedPoset) {
  IdempotentPoset p;
  p.elements = {{{}, 0}, {{0}, 1}, {{0, 1}, 2}, {{0, 1, 2}, 3}, {{2}, 1}};
  p.hasse_edges = {{0, 1}, {1, 2}, {2, 3}, {0, 4}, {4, 3}};
  p.smallest = 0;
  p.largest = 3;
  EXPECT_THROW(maximal_chain_length(p), InvariantViolation);
}

TEST(ToricEnvelope, Examples) {
  auto group = toric_envelope(monoid_from_generators(1, vecs({{1}, {-1}})));
  EXPECT_EQ(group.unit_lattice.basis(), (IntegerMatrix{{1}}));
  EXPECT_EQ(group.quotient_rank, 0u);
  EXPECT_EQ(group.envelope_idempotent_poset.elements.size(), 1u);

  auto q = toric_envelope(quadrant());
  EXPECT_EQ(q.unit_lattice.rank(), 0u);
  EXPECT_EQ(q.envelope_dim, 2u);
  EXPECT_EQ(q.envelope_idempotent_poset.elements.size(), 4u);

  auto strip = toric_envelope(monoid_from_generators(2, vecs({{1, 0}, {-1, 0}, {0, 1}})));
  EXPECT_EQ(strip.unit_lattice.basis(), (IntegerMatrix{{1, 0}}));
  EXPECT_EQ(strip.quotient_rank, 1u);
  ASSERT_EQ(strip.projected_generators.size(), 3u);
  EXPECT_EQ(strip.projected_generators[0], vec({0}));
  EXPECT_EQ(strip.projected_generators[1], vec({0}));
  EXPECT_EQ(abs(strip.projected_generators[2][0]), 1);
  EXPECT_EQ(strip.envelope_idempotent_poset.elements.size(), 2u);
}

TEST(ToricEnvelope, FiniteIndexUnitsSaturate) {
  // 2 and -4 generate 2Z inside the lineality line; the saturation is Z.
  auto w = monoid_from_generators(2, vecs({{2, 0}, {-4, 0}, {1, 1}}));
  auto env = toric_envelope(w);
  EXPECT_EQ(env.unit_lattice, saturate(env.unit_lattice));
  EXPECT_EQ(env.unit_lattice.rank(), 1u);
  EXPECT_EQ(env.envelope_dim, 1u);
}

TEST(CanonicalForm, IgnoresZerosRepeatsAndOrder) {
  auto a = monoid_from_generators(2, vecs({{0, 1}, {1, 0}, {0, 0}, {1, 0}}));
  auto b = monoid_from_generators(2, vecs({{1, 0}, {0, 1}}));
  EXPECT_EQ(canonical_form(a), canonical_form(b));
  auto scaled = monoid_from_generators(2, vecs({{3, 0}, {0, 3}}));
  EXPECT_EQ(canonical_form(scaled), canonical_form(b));
}

TEST(MonoidProperties, RandomMonoids) {
  Generator gen(31);
  for (int trial = 0; trial < 120; ++trial) {
    const std::size_t dim = gen.index(0, 4);
    auto raw = gen.vectors(gen.index(0, 6), dim, -3, 3);
    if (gen.uniform(0, 3) == 0 && !raw.empty()) raw[gen.index(0, raw.size() - 1)] = IntegerVector(dim);
    auto w = monoid_from_generators(dim, raw);
    auto cone = cone_of(w);
    auto p = idempotents(w);

    // Intersection of all faces is the lineality face.
    IndexSet all = full_index_set(w.generators.size());
    for (const auto& e : p.elements) all = intersection(all, e.index_set);
    ASSERT_EQ(all, smallest_idempotent(p).index_set);
    ASSERT_EQ(largest_idempotent(p).index_set, full_index_set(w.generators.size()));

    const auto chain = maximal_chain_length(p);
    ASSERT_EQ(chain, w.ambient_rank - cone.lineality_rank());
    auto env = toric_envelope(w);
    ASSERT_EQ(env.envelope_dim, chain);
    ASSERT_TRUE(same_idempotent_order(p, env.envelope_idempotent_poset));

    for (std::size_t i = 0; i < w.generators.size(); ++i) {
      if (!is_zero(w.generators[i])) continue;
      for (const auto& e : p.elements)
        ASSERT_TRUE(std::binary_search(e.index_set.begin(), e.index_set.end(), i));
    }

    // Each face gives a homomorphism to {1, 0}: relations z+ = z- respect it.
    auto relations = vectors_in_box(
        kernel_lattice(IntegerMatrix::from_rows(w.generators, w.ambient_rank)), 3);
    for (const auto& e : p.elements) {
      std::vector<bool> in(w.generators.size(), false);
      for (auto i : e.index_set) in[i] = true;
      for (const auto& z : relations) {
        bool pos_in = true, neg_in = true;
        for (std::size_t i = 0; i < z.size(); ++i) {
          if (z[i] > 0 && !in[i]) pos_in = false;
          if (z[i] < 0 && !in[i]) neg_in = false;
        }
        ASSERT_EQ(pos_in, neg_in);
      }
    }
  }
}

}  // namespace
}  // namespace idempotoric
