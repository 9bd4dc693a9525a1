#include <gtest/gtest.h>

#include <set>

#include "coarse_lab/coarse_cover.hpp"
#include "support/families.hpp"
#include "support/oracles.hpp"

using namespace coarse_lab;
using fixtures::cycles_action;
using fixtures::sl2_action;

namespace {

std::vector<PointPair> brute_cross_pairs(const SpaceOfGraphs& x, Extended radius) {
  std::vector<PointPair> out;
  for (std::size_t a = 0; a < x.point_count(); ++a)
    for (std::size_t b = 0; b < x.point_count(); ++b) {
      const auto p = x.point_at(a);
      const auto q = x.point_at(b);
      if (p.component != q.component && x.distance(p, q) <= radius) out.push_back({p, q});
    }
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t brute_entourage_size(const SpaceOfGraphs& x, Extended radius) {
  std::size_t count = 0;
  for (std::size_t a = 0; a < x.point_count(); ++a)
    for (std::size_t b = 0; b < x.point_count(); ++b)
      if (x.distance(x.point_at(a), x.point_at(b)) <= radius) ++count;
  return count;
}

}  // namespace

TEST(Entourage, RadiusZeroIsDiagonal) {
  const auto x = cycles_family({3, 4});
  const auto e = entourage(x, 0);
  ASSERT_EQ(e.pairs.size(), 7u);
  for (const auto& [p, q] : e.pairs) EXPECT_EQ(p, q);
}

TEST(Entourage, CrossPairsAtSpacing) {
  const auto x = cycles_family({3, 4});
  const auto e = entourage(x, 6);
  std::set<PointPair> pairs(e.pairs.begin(), e.pairs.end());
  for (Vertex u = 0; u < 3; ++u)
    for (Vertex v = 0; v < 4; ++v) {
      EXPECT_TRUE(pairs.contains({{0, u}, {1, v}}));
      EXPECT_TRUE(pairs.contains({{1, v}, {0, u}}));
    }
  EXPECT_EQ(e.pairs.size(), brute_entourage_size(x, 6));
  EXPECT_FALSE(std::ranges::any_of(entourage(x, 5).pairs, [](const PointPair& pq) {
    return pq.first.component != pq.second.component;
  }));
}

TEST(Entourage, C4RadiusOne) {
  const auto x = cycles_family({4});
  EXPECT_EQ(entourage(x, 1).pairs.size(), 4u + 8u);
}

TEST(Entourage, SymmetricWithDiagonal) {
  const auto x = sl2_family({3});
  const auto e = entourage(x, 2);
  std::set<PointPair> pairs(e.pairs.begin(), e.pairs.end());
  for (const auto& [p, q] : e.pairs) EXPECT_TRUE(pairs.contains({q, p}));
  for (Vertex v = 0; v < 24; ++v) EXPECT_TRUE(pairs.contains({{0, v}, {0, v}}));
  EXPECT_EQ(e.pairs.size(), brute_entourage_size(x, 2));
}

TEST(Diagonal, Examples) {
  const auto action = cycles_action(5, 7);
  EXPECT_EQ(diagonal_of(action, FreeWord{}).size(), action.space().point_count());
  for (const auto& [p, q] : diagonal_of(action, FreeWord{1})) {
    EXPECT_EQ(action.space().distance(p, q), 1u);
    EXPECT_EQ(q.vertex, *oracle::apply_word(action.labelling(), p.component, p.vertex, FreeWord{1}));
  }
  EXPECT_TRUE(diagonal_of(fixtures::dead_end_action(5, 6), FreeWord::power(1, 9)).empty());
}

TEST(Cover, CyclesRadiusThree) {
  const auto action = cycles_action();
  const auto r = cover_at_infinity(action, 3, 1);
  ASSERT_TRUE(r.pass()) << r.failures.front();
  for (const auto& w : r.words_used) {
    EXPECT_LE(w.length(), 3u);
    EXPECT_EQ(w, FreeWord::power(1, w.letters().front() > 0 ? static_cast<std::int64_t>(w.length())
                                                            : -static_cast<std::int64_t>(w.length())));
  }
  EXPECT_EQ(r.covered + r.diagonal + r.exceptional.size(), r.total_pairs);
  EXPECT_EQ(r.total_pairs, brute_entourage_size(action.space(), 3));
}

TEST(Cover, Sl2RadiusTwo) {
  const auto action = sl2_action();
  const auto r = cover_at_infinity(action, 2, 1);
  ASSERT_TRUE(r.pass());
  for (const auto& w : r.words_used) EXPECT_LE(w.length(), 2u);
  EXPECT_TRUE(r.exceptional.empty());
}

TEST(Cover, CoveredPairsReplay) {
  // Every non-diagonal within-component pair at distance <= R is hit by some
  // used word, checked by the letter-by-letter oracle.
  const auto action = sl2_action({3});
  const auto r = cover_at_infinity(action, 3, 1);
  ASSERT_TRUE(r.pass());
  const auto& g = action.space().component(0);
  for (Vertex u = 0; u < g.vertex_count(); ++u) {
    const auto dist = bfs_distances(g, u);
    for (Vertex v = 0; v < g.vertex_count(); ++v) {
      if (u == v || dist[v] > 3) continue;
      bool hit = false;
      for (const auto& w : r.words_used)
        if (w.length() <= dist[v] && oracle::apply_word(action.labelling(), 0, u, w) == v) hit = true;
      EXPECT_TRUE(hit) << u << "->" << v;
    }
  }
}

TEST(Cover, CrossPairsLandInExceptionalSet) {
  const auto action = cycles_action(3, 5);
  // spacing 2, 4, 5: cross distances 6, 7, 9
  const auto r = cover_at_infinity(action, 8, 1);
  EXPECT_TRUE(r.pass());
  EXPECT_EQ(r.exceptional, brute_cross_pairs(action.space(), 8));
  EXPECT_EQ(r.cross_component, 2u * (3 * 4 + 3 * 5));
}

TEST(Cover, UncoveredBelowCutoffIsTolerated) {
  // The dead-end labelling leaves the pair (n-1) -> 0 uncoverable by a short
  // word in every component.
  const auto action = fixtures::dead_end_action(5, 7);
  const auto strict = cover_at_infinity(action, 1, 1);
  EXPECT_FALSE(strict.pass());
  const auto lax = cover_at_infinity(action, 1, 4);
  EXPECT_TRUE(lax.pass());
  EXPECT_FALSE(lax.exceptional.empty());
  EXPECT_THROW((void)cover_at_infinity(action, 0, 1), InputDomainError);
}

TEST(OrbitPairs, MatchesWordEnumeration) {
  for (const auto& action : {cycles_action(5, 8), sl2_action({3})}) {
    for (std::size_t comp = 0; comp < action.space().component_count(); ++comp) {
      std::vector<PointPair> previous;
      for (std::size_t L = 0; L <= 4; ++L) {
        std::set<PointPair> expected;
        const auto c = static_cast<std::uint32_t>(comp);
        for (const auto& w : enumerate_reduced_words(action.k(), L))
          for (Vertex v = 0; v < action.space().component(comp).vertex_count(); ++v)
            if (const auto img = oracle::apply_word(action.labelling(), c, v, w)) expected.insert({{c, v}, {c, *img}});
        const auto got = orbit_pairs(action, comp, L);
        EXPECT_EQ(std::set<PointPair>(got.begin(), got.end()), expected) << "L=" << L;
        EXPECT_TRUE(std::includes(got.begin(), got.end(), previous.begin(), previous.end()));
        previous = got;
      }
    }
  }
}

TEST(OrbitPairs, DiameterReachesEverything) {
  const auto action = sl2_action({3});
  const auto n = action.space().component(0).vertex_count();
  EXPECT_EQ(orbit_pairs(action, 0, action.space().diameters()[0]).size(), n * n);
  EXPECT_EQ(orbit_pairs(action, 0, 0).size(), n);
  EXPECT_EQ(orbit_pairs(action, 0, 1).size(), n + 2 * action.space().component(0).edge_count());
}
