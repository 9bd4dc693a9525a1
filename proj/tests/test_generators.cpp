#include <gtest/gtest.h>

#include "coarse_lab/generators.hpp"
#include "support/oracles.hpp"

using namespace coarse_lab;

TEST(Cycles, ThreeCycles) {
  const auto x = cycles_family({3, 4, 5});
  ASSERT_EQ(x.component_count(), 3u);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(girth(x.component(i)), i + 3);
    EXPECT_EQ(regular_degree(x.component(i)), 2u);
  }
}

TEST(Cycles, SingleC10) {
  const auto x = cycles_family({10});
  EXPECT_EQ(x.diameters()[0], 5u);
}

TEST(Cycles, RejectsBadLengths) {
  EXPECT_THROW(cycles_family({4, 4}), InputDomainError);
  EXPECT_THROW(cycles_family({2, 5}), InputDomainError);
  EXPECT_THROW(cycles_family({}), InputDomainError);
}

class Sl2Oracle : public ::testing::TestWithParam<std::uint32_t> {};

TEST_P(Sl2Oracle, MatchesMatrixEnumeration) {
  const auto p = GetParam();
  const auto expected = oracle::sl2_cayley(p);
  const Graph g = sl2_cayley_graph(p);
  ASSERT_EQ(g.vertex_count(), expected.n);
  EXPECT_EQ(g.vertex_count(), p * (p * p - 1));
  EXPECT_EQ(regular_degree(g), 4u);
  EXPECT_TRUE(is_connected(g));
  // Both enumerate SL_2 lexicographically in (a, b, c, d), so the edge sets
  // agree literally.
  std::set<std::pair<std::size_t, std::size_t>> edges;
  for (const auto& [u, v] : g.edges()) edges.insert({u, v});
  EXPECT_EQ(edges, expected.edges);
}

INSTANTIATE_TEST_SUITE_P(Primes, Sl2Oracle, ::testing::Values(3u, 5u, 7u));

TEST(Sl2, GirthAndDiameterPinnedByOracle) {
  // Pinned by tests/oracles/sl2_oracle.py (networkx girth and diameter).
  const std::vector<std::pair<std::uint32_t, std::pair<std::size_t, std::size_t>>> pinned{
      {3, {3, 4}}, {5, {5, 6}}, {7, {6, 7}}};
  for (const auto& [p, gd] : pinned) {
    const auto g = sl2_cayley_graph(p);
    EXPECT_EQ(girth(g), gd.first) << "p=" << p;
    EXPECT_EQ(diameter(g), gd.second) << "p=" << p;
    EXPECT_EQ(diameter(g), oracle::diameter(g)) << "p=" << p;
  }
  EXPECT_EQ(oracle::girth_by_walks(sl2_cayley_graph(3)), 3u);
}

TEST(Sl2, RejectsComposite) {
  EXPECT_THROW(sl2_family({4}), InputDomainError);
  EXPECT_THROW(sl2_family({2}), InputDomainError);
  EXPECT_THROW(sl2_family({5, 3}), InputDomainError);
}

TEST(RandomRegular, Degree4Girth4) {
  for (std::uint64_t seed : {0ull, 1ull, 99ull}) {
    const auto x = random_regular_large_girth(4, {20}, [](std::size_t) { return 4; }, seed);
    const Graph& g = x.component(0);
    EXPECT_EQ(g.vertex_count(), 20u);
    EXPECT_EQ(regular_degree(g), 4u);
    EXPECT_TRUE(is_connected(g));
    EXPECT_GE(girth(g), 4u);
  }
}

TEST(RandomRegular, ForcedCycle) {
  const auto x = random_regular_large_girth(2, {7}, [](std::size_t) { return 7; }, 5);
  EXPECT_EQ(girth(x.component(0)), 7u);
  EXPECT_EQ(regular_degree(x.component(0)), 2u);
}

TEST(RandomRegular, OddProductRejected) {
  EXPECT_THROW(random_regular_large_girth(3, {5}, [](std::size_t) { return 3; }, 0), InputDomainError);
}

TEST(RandomRegular, DeterministicAndGrowingGirth) {
  auto bound = [](std::size_t i) { return 3 + i; };
  const auto a = random_regular_large_girth(3, {10, 20, 40}, bound, 42);
  const auto b = random_regular_large_girth(3, {10, 20, 40}, bound, 42);
  EXPECT_EQ(a, b);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_GE(girth(a.component(i)), bound(i));
}

TEST(RandomRegular, BudgetExhaustionNamesIndex) {
  // No cubic graph on 6 vertices has girth 5.
  try {
    (void)random_regular_large_girth(3, {6}, [](std::size_t) { return 5; }, 0, 50);
    FAIL() << "expected exhaustion";
  } catch (const ResourceExhaustedError& e) {
    EXPECT_NE(std::string(e.what()).find("index 0"), std::string::npos);
  }
}

TEST(Wang, TwoByTwoLayout) {
  const auto y = wang_space(cycles_family({3, 4}), 2);
  ASSERT_EQ(y.space.component_count(), 4u);
  const std::vector<std::pair<std::size_t, std::size_t>> layout{{1, 1}, {1, 2}, {2, 1}, {2, 2}};
  EXPECT_EQ(y.layout, layout);
  const std::vector<std::size_t> sizes{3, 3, 4, 4};
  for (std::size_t c = 0; c < 4; ++c) EXPECT_EQ(y.space.component(c).vertex_count(), sizes[c]);
  // s_{i,j} = i + j + max diam
  EXPECT_EQ(std::vector<std::size_t>(y.space.spacing().begin(), y.space.spacing().end()),
            (std::vector<std::size_t>{3, 4, 5, 6}));
}

TEST(Wang, SingleColumnMatchesBase) {
  const auto base = cycles_family({3, 5, 8});
  const auto y = wang_space(base, 1);
  ASSERT_EQ(y.space.component_count(), base.component_count());
  for (std::size_t i = 0; i < base.component_count(); ++i) EXPECT_EQ(y.space.component(i), base.component(i));
}

TEST(Wang, RectangleQuery) {
  const auto y = wang_space(cycles_family({3, 4}), 3);
  EXPECT_EQ(y.rectangle(1, 2), (std::vector<std::size_t>{0, 1}));
  EXPECT_EQ(y.rectangle(2, 1), (std::vector<std::size_t>{0, 3}));
}

TEST(Wang, ColumnsIdenticalAndDistancesDiverge) {
  const auto y = wang_space(sl2_family({3, 5}), 4);
  for (std::size_t i = 1; i <= 2; ++i)
    for (std::size_t j = 1; j <= 4; ++j)
      EXPECT_EQ(y.space.component(y.component_index(i, j)).edges(), y.base.component(i - 1).edges());
  const auto& x = y.space;
  for (std::size_t a = 0; a < x.component_count(); ++a)
    for (std::size_t b = 0; b < x.component_count(); ++b)
      if (a != b && b + 1 < x.component_count() && b + 1 != a) {
        const auto [i1, j1] = y.layout[b];
        const auto [i2, j2] = y.layout[b + 1];
        if (i1 + j1 < i2 + j2) EXPECT_LT(x.cross_distance(a, b), x.cross_distance(a, b + 1));
      }
}

TEST(Wang, EmptyBaseRejected) {
  EXPECT_THROW(wang_space(SpaceOfGraphs(std::vector<Graph>{}), 2), InputDomainError);
  EXPECT_THROW(wang_space(cycles_family({3}), 0), InputDomainError);
}

TEST(Generate, FamilySpecDispatch) {
  FamilySpec spec;
  spec.kind = FamilyKind::Cycles;
  spec.parameters["lengths"] = {5, 6, 7};
  EXPECT_EQ(generate(spec, 0), cycles_family({5, 6, 7}));
  spec.kind = FamilyKind::Sl2;
  EXPECT_THROW(generate(spec, 0), InputDomainError);
  spec.parameters["primes"] = {3};
  EXPECT_EQ(generate(spec, 0).component(0).vertex_count(), 24u);
}
