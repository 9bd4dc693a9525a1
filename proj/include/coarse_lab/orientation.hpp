#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <iterator>
#include <memory>
#include <optional>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "coarse_lab/errors.hpp"
#include "coarse_lab/graph.hpp"

namespace coarse_lab {

/// One undirected edge of component `component`, oriented tail -> head and
/// labelled by the generator a_gen (1-based).
struct LabelledEdge {
  std::uint32_t component = 0;
  Vertex tail = 0;
  Vertex head = 0;
  std::uint32_t gen = 0;

  friend auto operator<=>(const LabelledEdge&, const LabelledEdge&) = default;
};

/// Almost k-orientation of a space of graphs: every vertex has at most one
/// outgoing and at most one incoming edge per label.
struct EdgeLabelling {
  std::shared_ptr<const SpaceOfGraphs> space;
  std::uint32_t k = 0;
  std::vector<LabelledEdge> edges;  // sorted by (component, tail, head)
};

/// Smallest k with 2k >= max degree over all components (at least 1).
inline std::uint32_t minimal_generator_count(const SpaceOfGraphs& x) {
  std::size_t d = 0;
  for (const auto& g : x.components()) d = std::max(d, max_degree(g));
  return static_cast<std::uint32_t>(std::max<std::size_t>(1, (d + 1) / 2));
}

namespace detail {

struct Arc {
  Vertex tail;
  Vertex head;
};

// Orients every edge of g so that each vertex has in- and out-degree at most
// ceil(deg/2). Odd-degree vertices are joined to an auxiliary vertex, which
// makes all degrees even; closed trails are then walked from the lowest
// vertex with unused edges, always leaving along the lowest unused neighbour,
// and each edge is oriented in the walking direction. Auxiliary edges are
// dropped at the end.
inline std::vector<Arc> balanced_orientation(const Graph& g) {
  const std::size_t n = g.vertex_count();
  const Vertex aux = static_cast<Vertex>(n);
  std::vector<Graph::Edge> all = g.edges();
  const std::size_t real_edges = all.size();
  for (Vertex v = 0; v < n; ++v) {
    if (g.degree(v) % 2 == 1) all.emplace_back(v, aux);
  }
  std::vector<std::vector<std::pair<Vertex, std::size_t>>> adj(n + 1);
  for (std::size_t e = 0; e < all.size(); ++e) {
    adj[all[e].first].emplace_back(all[e].second, e);
    adj[all[e].second].emplace_back(all[e].first, e);
  }
  for (auto& a : adj) std::sort(a.begin(), a.end());

  std::vector<bool> used(all.size(), false);
  std::vector<std::size_t> cursor(n + 1, 0);
  std::vector<Arc> oriented(all.size());
  auto next_unused = [&](Vertex v) -> std::optional<std::pair<Vertex, std::size_t>> {
    auto& c = cursor[v];
    while (c < adj[v].size() && used[adj[v][c].second]) ++c;
    if (c == adj[v].size()) return std::nullopt;
    return adj[v][c];
  };
  for (Vertex start = 0; start <= n; ++start) {
    while (next_unused(start)) {
      Vertex cur = start;
      while (auto step = next_unused(cur)) {
        const auto [w, e] = *step;
        used[e] = true;
        oriented[e] = {cur, w};
        cur = w;
      }
    }
  }
  oriented.resize(real_edges);
  return oriented;
}

// Properly colours the bipartite multigraph (tails on the left, heads on the
// right) with `colours` colours, given that no vertex on either side has more
// than `colours` incident arcs. Conflicts are resolved by swapping the two
// colours along an alternating path (the constructive proof of König's
// edge-colouring theorem).
inline std::vector<std::uint32_t> bipartite_edge_colouring(std::size_t vertex_count,
                                                           const std::vector<Arc>& arcs,
                                                           std::uint32_t colours) {
  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  // slot[side][v * colours + c] = arc carrying colour c at v.
  std::array<std::vector<std::size_t>, 2> slot;
  slot[0].assign(vertex_count * colours, kNone);
  slot[1].assign(vertex_count * colours, kNone);
  std::vector<std::uint32_t> colour(arcs.size(), 0);

  auto end_of = [&](std::size_t arc, int side) { return side == 0 ? arcs[arc].tail : arcs[arc].head; };
  auto at = [&](int side, Vertex v, std::uint32_t c) -> std::size_t& {
    return slot[side][static_cast<std::size_t>(v) * colours + c];
  };
  auto lowest_free = [&](int side, Vertex v) {
    for (std::uint32_t c = 0; c < colours; ++c) {
      if (at(side, v, c) == kNone) return c;
    }
    throw InputDomainError("vertex " + std::to_string(v) + " exceeds the colour bound");
  };

  for (std::size_t e = 0; e < arcs.size(); ++e) {
    const Vertex u = arcs[e].tail;
    const Vertex v = arcs[e].head;
    const std::uint32_t alpha = lowest_free(0, u);
    const std::uint32_t beta = lowest_free(1, v);
    if (at(1, v, alpha) != kNone) {
      // Path from v alternating alpha, beta; it cannot reach u.
      std::vector<std::size_t> path;
      int side = 1;
      Vertex cur = v;
      std::uint32_t c = alpha;
      while (at(side, cur, c) != kNone) {
        const std::size_t a = at(side, cur, c);
        path.push_back(a);
        side = 1 - side;
        cur = end_of(a, side);
        c = (c == alpha) ? beta : alpha;
      }
      for (std::size_t a : path) {
        at(0, arcs[a].tail, colour[a]) = kNone;
        at(1, arcs[a].head, colour[a]) = kNone;
      }
      for (std::size_t a : path) {
        colour[a] = (colour[a] == alpha) ? beta : alpha;
        at(0, arcs[a].tail, colour[a]) = a;
        at(1, arcs[a].head, colour[a]) = a;
      }
    }
    colour[e] = alpha;
    at(0, u, alpha) = e;
    at(1, v, alpha) = e;
  }
  return colour;
}

struct LabelledArc {
  Vertex tail;
  Vertex head;
  std::uint32_t gen;
};

inline std::vector<LabelledArc> orient_component(const Graph& g, std::uint32_t k) {
  if (k == 0) throw InputDomainError("k must be at least 1");
  if (max_degree(g) > 2 * static_cast<std::size_t>(k)) {
    throw InputDomainError("max degree " + std::to_string(max_degree(g)) + " exceeds 2k = " +
                           std::to_string(2 * k));
  }
  const auto arcs = balanced_orientation(g);
  const auto colour = bipartite_edge_colouring(g.vertex_count(), arcs, k);
  std::vector<LabelledArc> out;
  out.reserve(arcs.size());
  for (std::size_t e = 0; e < arcs.size(); ++e) {
    out.push_back({arcs[e].tail, arcs[e].head, colour[e] + 1});
  }
  return out;
}

}  // namespace detail

/// Splits E(G) into k classes in which every vertex meets at most two edges.
/// Requires max_degree(G) <= 2k. Class j holds the edges labelled a_{j+1} by
/// orient_labelling.
inline std::vector<std::vector<Graph::Edge>> petersen_partition(const Graph& g, std::uint32_t k) {
  std::vector<std::vector<Graph::Edge>> classes(k);
  for (const auto& a : detail::orient_component(g, k)) {
    classes[a.gen - 1].emplace_back(std::min(a.tail, a.head), std::max(a.tail, a.head));
  }
  for (auto& c : classes) std::sort(c.begin(), c.end());
  return classes;
}

/// Almost k-orientation of every component. Deterministic: ties are broken by
/// lowest vertex index and lexicographic edge order.
inline EdgeLabelling orient_labelling(std::shared_ptr<const SpaceOfGraphs> x, std::uint32_t k) {
  EdgeLabelling out{x, k, {}};
  for (std::uint32_t c = 0; c < x->component_count(); ++c) {
    for (const auto& a : detail::orient_component(x->component(c), k)) {
      out.edges.push_back({c, a.tail, a.head, a.gen});
    }
  }
  std::sort(out.edges.begin(), out.edges.end());
  return out;
}

inline EdgeLabelling orient_labelling(std::shared_ptr<const SpaceOfGraphs> x) {
  const auto k = minimal_generator_count(*x);
  return orient_labelling(std::move(x), k);
}

struct LabellingViolation {
  std::uint32_t component = 0;
  Vertex vertex = 0;
  std::uint32_t gen = 0;
  std::string reason;
};

struct LabellingReport {
  bool pass = true;
  std::optional<LabellingViolation> violation;
};

/// Replays every invariant of an EdgeLabelling: each undirected edge of the
/// space carries exactly one (direction, label), labels lie in 1..k, 2k bounds
/// the degrees, and per label each vertex has at most one outgoing and one
/// incoming edge. Reports the first violation found.
inline LabellingReport validate_labelling(const EdgeLabelling& l) {
  auto fail = [](std::uint32_t c, Vertex v, std::uint32_t gen, std::string why) {
    return LabellingReport{false, LabellingViolation{c, v, gen, std::move(why)}};
  };
  if (!l.space) return fail(0, 0, 0, "labelling has no space");
  const SpaceOfGraphs& x = *l.space;
  for (std::uint32_t c = 0; c < x.component_count(); ++c) {
    if (max_degree(x.component(c)) > 2 * static_cast<std::size_t>(l.k)) {
      return fail(c, 0, 0, "max degree exceeds 2k");
    }
  }
  std::vector<std::vector<Graph::Edge>> seen(x.component_count());
  // (component, vertex, gen, out?) tallies
  std::vector<std::tuple<std::uint32_t, Vertex, std::uint32_t, int>> incidences;
  for (const auto& e : l.edges) {
    if (e.component >= x.component_count()) return fail(e.component, e.tail, e.gen, "no such component");
    const Graph& g = x.component(e.component);
    if (!g.has_edge(e.tail, e.head)) return fail(e.component, e.tail, e.gen, "not an edge of the graph");
    if (e.gen < 1 || e.gen > l.k) return fail(e.component, e.tail, e.gen, "label outside 1..k");
    seen[e.component].emplace_back(std::min(e.tail, e.head), std::max(e.tail, e.head));
    incidences.emplace_back(e.component, e.tail, e.gen, 0);
    incidences.emplace_back(e.component, e.head, e.gen, 1);
  }
  for (std::uint32_t c = 0; c < x.component_count(); ++c) {
    auto& s = seen[c];
    std::sort(s.begin(), s.end());
    if (auto dup = std::adjacent_find(s.begin(), s.end()); dup != s.end()) {
      return fail(c, dup->first, 0, "edge labelled more than once");
    }
    if (s != x.component(c).edges()) {
      const auto& all = x.component(c).edges();
      std::vector<Graph::Edge> missing;
      std::set_difference(all.begin(), all.end(), s.begin(), s.end(), std::back_inserter(missing));
      return fail(c, missing.empty() ? 0 : missing.front().first, 0, "edge left unlabelled");
    }
  }
  std::sort(incidences.begin(), incidences.end());
  if (auto dup = std::adjacent_find(incidences.begin(), incidences.end());
      dup != incidences.end()) {
    const auto& [c, v, gen, dir] = *dup;
    return fail(c, v, gen, dir == 0 ? "two outgoing edges with the same label"
                                    : "two incoming edges with the same label");
  }
  return {};
}

}  // namespace coarse_lab
