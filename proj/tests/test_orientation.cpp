#include <gtest/gtest.h>

#include <chrono>
#include <map>
#include <random>
#include <tuple>

#include "coarse_lab/generators.hpp"
#include "coarse_lab/orientation.hpp"
#include "support/oracles.hpp"

using namespace coarse_lab;

namespace {

std::shared_ptr<const SpaceOfGraphs> share(SpaceOfGraphs x) { return std::make_shared<const SpaceOfGraphs>(std::move(x)); }

// Independent tally: every edge labelled once, per (vertex, label) out <= 1
// and in <= 1.
::testing::AssertionResult tally_ok(const EdgeLabelling& l) {
  std::map<std::tuple<std::uint32_t, Vertex, std::uint32_t>, int> out, in;
  std::set<std::tuple<std::uint32_t, Vertex, Vertex>> labelled;
  for (const auto& e : l.edges) {
    if (e.gen < 1 || e.gen > l.k) return ::testing::AssertionFailure() << "label " << e.gen;
    if (++out[{e.component, e.tail, e.gen}] > 1)
      return ::testing::AssertionFailure() << "two outgoing a" << e.gen << " at " << e.tail;
    if (++in[{e.component, e.head, e.gen}] > 1)
      return ::testing::AssertionFailure() << "two incoming a" << e.gen << " at " << e.head;
    if (!labelled.insert({e.component, std::min(e.tail, e.head), std::max(e.tail, e.head)}).second)
      return ::testing::AssertionFailure() << "edge labelled twice";
  }
  std::size_t total = 0;
  for (const auto& g : l.space->components()) total += g.edge_count();
  if (labelled.size() != total) return ::testing::AssertionFailure() << "unlabelled edges";
  return ::testing::AssertionSuccess();
}

::testing::AssertionResult partition_ok(const Graph& g, const std::vector<std::vector<Graph::Edge>>& classes) {
  std::vector<Graph::Edge> all;
  for (const auto& cls : classes) {
    std::map<Vertex, int> incidence;
    for (const auto& [u, v] : cls) {
      if (++incidence[u] > 2 || ++incidence[v] > 2) return ::testing::AssertionFailure() << "incidence > 2";
      all.emplace_back(u, v);
    }
  }
  std::sort(all.begin(), all.end());
  if (all != g.edges()) return ::testing::AssertionFailure() << "classes do not partition E";
  return ::testing::AssertionSuccess();
}

// Connected components of g as separate graphs, vertices renumbered in
// increasing order.
std::vector<Graph> split_components(const Graph& g) {
  const std::size_t n = g.vertex_count();
  std::vector<int> comp(n, -1);
  std::vector<Vertex> local(n);
  std::vector<std::size_t> sizes;
  for (Vertex s = 0; s < n; ++s) {
    if (comp[s] >= 0) continue;
    const int c = static_cast<int>(sizes.size());
    sizes.push_back(0);
    std::vector<Vertex> stack{s};
    comp[s] = c;
    while (!stack.empty()) {
      const Vertex v = stack.back();
      stack.pop_back();
      for (Vertex w : g.neighbours(v))
        if (comp[w] < 0) {
          comp[w] = c;
          stack.push_back(w);
        }
    }
  }
  for (Vertex v = 0; v < n; ++v) local[v] = static_cast<Vertex>(sizes[static_cast<std::size_t>(comp[v])]++);
  std::vector<std::vector<Graph::Edge>> edges(sizes.size());
  for (const auto& [u, v] : g.edges()) edges[static_cast<std::size_t>(comp[u])].emplace_back(local[u], local[v]);
  std::vector<Graph> out;
  for (std::size_t c = 0; c < sizes.size(); ++c) out.emplace_back(sizes[c], std::move(edges[c]));
  return out;
}

}  // namespace

TEST(Petersen, CycleSingleClass) {
  const auto classes = petersen_partition(cycle_graph(6), 1);
  ASSERT_EQ(classes.size(), 1u);
  EXPECT_EQ(classes[0].size(), 6u);
  EXPECT_TRUE(partition_ok(cycle_graph(6), classes));
}

TEST(Petersen, K5TwoClasses) {
  const auto classes = petersen_partition(complete_graph(5), 2);
  ASSERT_EQ(classes.size(), 2u);
  EXPECT_TRUE(partition_ok(complete_graph(5), classes));
  // K_5 is 4-regular, so each class is 2-regular: 5 edges each.
  EXPECT_EQ(classes[0].size(), 5u);
  EXPECT_EQ(classes[1].size(), 5u);
}

TEST(Petersen, PathSingleClass) {
  const auto classes = petersen_partition(path_graph(3), 1);
  ASSERT_EQ(classes.size(), 1u);
  EXPECT_TRUE(partition_ok(path_graph(3), classes));
}

TEST(Petersen, DegreeBoundEnforced) { EXPECT_THROW(petersen_partition(complete_graph(4), 1), InputDomainError); }

TEST(Orient, CyclesAreRotations) {
  const auto l = orient_labelling(share(cycles_family({5, 6, 7})));
  EXPECT_EQ(l.k, 1u);
  EXPECT_TRUE(tally_ok(l));
  // every vertex has exactly one outgoing and one incoming a_1 edge
  std::map<std::pair<std::uint32_t, Vertex>, int> out;
  for (const auto& e : l.edges) ++out[{e.component, e.tail}];
  EXPECT_EQ(out.size(), 18u);
}

TEST(Orient, Sl2ExactlyOneInOutPerLabel) {
  const auto l = orient_labelling(share(sl2_family({3, 5})));
  EXPECT_EQ(l.k, 2u);
  EXPECT_TRUE(tally_ok(l));
  std::map<std::tuple<std::uint32_t, Vertex, std::uint32_t>, int> out, in;
  for (const auto& e : l.edges) {
    ++out[{e.component, e.tail, e.gen}];
    ++in[{e.component, e.head, e.gen}];
  }
  EXPECT_EQ(out.size(), 2u * (24 + 120));
  EXPECT_EQ(in.size(), 2u * (24 + 120));
}

TEST(Orient, OddDegreeVertex) {
  // Every vertex of K_4 has odd degree 3.
  const auto l = orient_labelling(share(SpaceOfGraphs({complete_graph(4)})), 2);
  EXPECT_TRUE(tally_ok(l));
  EXPECT_TRUE(validate_labelling(l).pass);
}

TEST(Orient, MinimalK) {
  EXPECT_EQ(minimal_generator_count(SpaceOfGraphs({path_graph(2)})), 1u);
  EXPECT_EQ(minimal_generator_count(SpaceOfGraphs({complete_graph(4)})), 2u);
  EXPECT_EQ(minimal_generator_count(SpaceOfGraphs({complete_graph(6)})), 3u);
}

TEST(Orient, RandomGraphsAllInvariants) {
  std::mt19937_64 rng(123);
  for (int trial = 0; trial < 100; ++trial) {
    const std::uint32_t k = 1 + static_cast<std::uint32_t>(trial % 3);
    const auto n = std::uniform_int_distribution<std::size_t>(2, 128)(rng);
    const auto g = oracle::random_bounded_graph(n, 2 * k, 0.3, rng);
    const auto start = std::chrono::steady_clock::now();
    const auto classes = petersen_partition(g, k);
    ASSERT_EQ(classes.size(), k);
    ASSERT_TRUE(partition_ok(g, classes)) << "trial " << trial;
    const auto l = orient_labelling(share(SpaceOfGraphs(split_components(g))), k);
    ASSERT_TRUE(tally_ok(l)) << "trial " << trial;
    ASSERT_TRUE(validate_labelling(l).pass) << "trial " << trial;
    const auto elapsed = std::chrono::steady_clock::now() - start;
    EXPECT_LT(std::chrono::duration<double>(elapsed).count(), 1.0);
  }
}

TEST(Orient, Deterministic) {
  const auto x = share(sl2_family({3, 5}));
  const auto a = orient_labelling(x);
  const auto b = orient_labelling(x);
  EXPECT_EQ(a.edges, b.edges);
}

TEST(Validate, TwoOutgoingSameLabel) {
  EdgeLabelling l;
  l.space = share(SpaceOfGraphs({path_graph(3)}));
  l.k = 1;
  l.edges = {{0, 1, 0, 1}, {0, 1, 2, 1}};
  const auto r = validate_labelling(l);
  ASSERT_FALSE(r.pass);
  EXPECT_EQ(r.violation->vertex, 1u);
  EXPECT_EQ(r.violation->gen, 1u);
}

TEST(Validate, EmptyGraphPasses) {
  EdgeLabelling l;
  l.space = share(SpaceOfGraphs({Graph(1, {})}));
  l.k = 1;
  EXPECT_TRUE(validate_labelling(l).pass);
}

TEST(Validate, MissingAndForeignEdges) {
  EdgeLabelling l;
  l.space = share(SpaceOfGraphs({path_graph(3)}));
  l.k = 1;
  l.edges = {{0, 0, 1, 1}};
  EXPECT_FALSE(validate_labelling(l).pass);
  l.edges = {{0, 0, 1, 1}, {0, 1, 2, 1}, {0, 0, 2, 1}};
  EXPECT_FALSE(validate_labelling(l).pass);
  l.edges = {{0, 0, 1, 1}, {0, 1, 2, 2}};
  EXPECT_FALSE(validate_labelling(l).pass);
}
