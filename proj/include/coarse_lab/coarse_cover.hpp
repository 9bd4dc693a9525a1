#pragma once

#include <algorithm>
#include <cstddef>
#include <deque>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "coarse_lab/errors.hpp"
#include "coarse_lab/free_word.hpp"
#include "coarse_lab/graph.hpp"
#include "coarse_lab/partial_action.hpp"

namespace coarse_lab {

using PointPair = std::pair<Point, Point>;

/// Δ_R: all ordered pairs at distance at most R, sorted.
struct Entourage {
  Extended radius = 0;
  std::vector<PointPair> pairs;
};

inline Entourage entourage(const SpaceOfGraphs& x, Extended radius) {
  Entourage e;
  e.radius = radius;
  const auto comps = static_cast<std::uint32_t>(x.component_count());
  for (std::uint32_t c = 0; c < comps; ++c) {
    const Graph& g = x.component(c);
    for (Vertex u = 0; u < g.vertex_count(); ++u) {
      for (std::uint32_t c2 = 0; c2 < comps; ++c2) {
        if (c2 == c) {
          const auto dist = bfs_distances(g, u);
          for (Vertex v = 0; v < g.vertex_count(); ++v) {
            if (dist[v] <= radius) e.pairs.push_back({{c, u}, {c, v}});
          }
        } else if (x.cross_distance(c, c2) <= radius) {
          for (Vertex v = 0; v < x.component(c2).vertex_count(); ++v) e.pairs.push_back({{c, u}, {c2, v}});
        }
      }
    }
  }
  return e;
}

/// Δ_{θ_w} = {(x, θ_w(x)) : x ∈ dom θ_w}.
inline std::vector<PointPair> diagonal_of(const ThetaAction& action, const FreeWord& w) {
  return action.theta(w).pairs();
}

namespace detail {

// letter_of[c][u] = (neighbour, letter) for every labelled edge at u, where
// the letter moves u to the neighbour.
inline std::vector<std::vector<std::vector<std::pair<Vertex, Letter>>>> labelled_adjacency(const ThetaAction& action) {
  const SpaceOfGraphs& x = action.space();
  std::vector<std::vector<std::vector<std::pair<Vertex, Letter>>>> adj(x.component_count());
  for (std::size_t c = 0; c < x.component_count(); ++c) adj[c].resize(x.component(c).vertex_count());
  for (const auto& e : action.labelling().edges) {
    adj[e.component][e.tail].emplace_back(e.head, static_cast<Letter>(e.gen));
    adj[e.component][e.head].emplace_back(e.tail, -static_cast<Letter>(e.gen));
  }
  return adj;
}

}  // namespace detail

struct CoverReport {
  Extended radius = 0;
  std::size_t i0 = 1;  // 1-based first component that must be covered
  std::set<FreeWord> words_used;
  std::size_t total_pairs = 0;  // |Δ_R|
  std::size_t diagonal = 0;
  std::size_t covered = 0;
  std::vector<PointPair> exceptional;  // F_R
  std::size_t cross_component = 0;     // members of F_R between components
  std::vector<std::string> failures;
  bool pass() const noexcept { return failures.empty(); }
};

/// Decomposes Δ_R into the diagonal, pairs (x, θ_w(x)) with |w| <= R, and the
/// exceptional set F_R. For each within-component pair at distance r <= R
/// the lexicographically least geodesic (labelled edges only) is spelled as
/// a word, reduced, and replayed through θ. Cross-component pairs and
/// uncovered pairs go to F_R; an uncovered pair in a component >= i0 (1-based)
/// is a failure.
inline CoverReport cover_at_infinity(const ThetaAction& action, Extended radius, std::size_t i0) {
  if (radius < 1) throw InputDomainError("R must be at least 1");
  const SpaceOfGraphs& x = action.space();
  const auto adj = detail::labelled_adjacency(action);
  CoverReport r;
  r.radius = radius;
  r.i0 = i0;

  for (std::uint32_t c = 0; c < x.component_count(); ++c) {
    const Graph& g = x.component(c);
    const bool required = c + 1 >= i0;
    for (Vertex u = 0; u < g.vertex_count(); ++u) {
      const auto dist = bfs_distances(g, u);
      // best[v]: least word w (shortlex) with θ_w(u) = v along a geodesic.
      std::vector<std::optional<FreeWord>> best(g.vertex_count());
      best[u] = FreeWord{};
      std::vector<Vertex> order(g.vertex_count());
      for (Vertex v = 0; v < g.vertex_count(); ++v) order[v] = v;
      std::stable_sort(order.begin(), order.end(), [&](Vertex a, Vertex b) { return dist[a] < dist[b]; });
      for (Vertex v : order) {
        if (dist[v] == 0 || dist[v] > radius) continue;
        for (const auto& [p, letter] : adj[c][v]) {
          // Stepping p -> v uses the inverse of the letter that moves v to p.
          if (dist[p] + 1 != dist[v] || !best[p]) continue;
          std::vector<Letter> letters{-letter};
          letters.insert(letters.end(), best[p]->letters().begin(), best[p]->letters().end());
          auto candidate = FreeWord::reduce(letters);
          if (!best[v] || candidate < *best[v]) best[v] = std::move(candidate);
        }
      }
      for (Vertex v = 0; v < g.vertex_count(); ++v) {
        if (dist[v] > radius) continue;
        ++r.total_pairs;
        if (v == u) {
          ++r.diagonal;
          continue;
        }
        const Point from{c, u};
        const Point to{c, v};
        bool ok = false;
        if (best[v]) {
          const auto image = action.theta(*best[v])(from);
          ok = image && *image == to && best[v]->length() <= dist[v];
        }
        if (ok) {
          ++r.covered;
          r.words_used.insert(*best[v]);
        } else {
          r.exceptional.push_back({from, to});
          if (required) {
            r.failures.push_back("pair (" + std::to_string(c) + "," + std::to_string(u) + ") -> (" +
                                 std::to_string(c) + "," + std::to_string(v) + ") not covered by a word of length <= " +
                                 std::to_string(dist[v]));
          }
        }
      }
    }
  }
  for (std::uint32_t c = 0; c < x.component_count(); ++c) {
    for (std::uint32_t c2 = 0; c2 < x.component_count(); ++c2) {
      if (c == c2 || x.cross_distance(c, c2) > radius) continue;
      for (Vertex u = 0; u < x.component(c).vertex_count(); ++u) {
        for (Vertex v = 0; v < x.component(c2).vertex_count(); ++v) {
          r.exceptional.push_back({{c, u}, {c2, v}});
          ++r.cross_component;
          ++r.total_pairs;
        }
      }
    }
  }
  std::sort(r.exceptional.begin(), r.exceptional.end());
  return r;
}

/// {(x, θ_w(x)) : |w| <= L, x ∈ X_i ∩ dom θ_w} for the 0-based component i,
/// computed as depth-L reachability along labelled edges (a backtracking
/// walk ends where its reduction does).
inline std::vector<PointPair> orbit_pairs(const ThetaAction& action, std::size_t component, std::size_t max_length) {
  const SpaceOfGraphs& x = action.space();
  if (component >= x.component_count()) throw InputDomainError("component out of range");
  const auto adj = detail::labelled_adjacency(action);
  const auto c = static_cast<std::uint32_t>(component);
  const std::size_t n = x.component(component).vertex_count();
  std::vector<PointPair> out;
  for (Vertex u = 0; u < n; ++u) {
    std::vector<std::size_t> depth(n, static_cast<std::size_t>(-1));
    std::deque<Vertex> queue{u};
    depth[u] = 0;
    while (!queue.empty()) {
      const Vertex v = queue.front();
      queue.pop_front();
      if (depth[v] == max_length) continue;
      for (const auto& [w, letter] : adj[component][v]) {
        if (depth[w] == static_cast<std::size_t>(-1)) {
          depth[w] = depth[v] + 1;
          queue.push_back(w);
        }
      }
    }
    for (Vertex v = 0; v < n; ++v) {
      if (depth[v] != static_cast<std::size_t>(-1)) out.push_back({{c, u}, {c, v}});
    }
  }
  return out;
}

}  // namespace coarse_lab
