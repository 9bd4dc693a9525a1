#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "coarse_lab/errors.hpp"

namespace coarse_lab {

using Vertex = std::uint32_t;

/// Extended non-negative integer: finite values plus a distinguished infinity
/// (unreachable vertices, girth of a forest).
using Extended = std::uint64_t;
inline constexpr Extended kInfinite = std::numeric_limits<Extended>::max();

/// Finite simple undirected graph. Edges are stored normalised (u < v) and
/// sorted; adjacency lists are sorted by neighbour index.
class Graph {
public:
  using Edge = std::pair<Vertex, Vertex>;

  Graph() = default;

  Graph(std::size_t vertex_count, std::vector<Edge> edges)
      : vertex_count_(vertex_count), adjacency_(vertex_count) {
    for (auto& [u, v] : edges) {
      if (u >= vertex_count || v >= vertex_count) {
        throw InputDomainError("edge (" + std::to_string(u) + "," + std::to_string(v) +
                               ") has an endpoint outside 0.." +
                               std::to_string(vertex_count == 0 ? 0 : vertex_count - 1));
      }
      if (u == v) {
        throw InputDomainError("self-loop at vertex " + std::to_string(u));
      }
      if (u > v) std::swap(u, v);
    }
    std::sort(edges.begin(), edges.end());
    if (auto dup = std::adjacent_find(edges.begin(), edges.end()); dup != edges.end()) {
      throw InputDomainError("parallel edge (" + std::to_string(dup->first) + "," +
                             std::to_string(dup->second) + ")");
    }
    edges_ = std::move(edges);
    for (const auto& [u, v] : edges_) {
      adjacency_[u].push_back(v);
      adjacency_[v].push_back(u);
    }
    for (auto& nbrs : adjacency_) std::sort(nbrs.begin(), nbrs.end());
  }

  std::size_t vertex_count() const noexcept { return vertex_count_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  std::span<const Vertex> neighbours(Vertex v) const { return adjacency_.at(v); }
  std::size_t degree(Vertex v) const { return adjacency_.at(v).size(); }

  bool has_edge(Vertex u, Vertex v) const {
    if (u >= vertex_count_ || v >= vertex_count_) return false;
    const auto& nbrs = adjacency_[u];
    return std::binary_search(nbrs.begin(), nbrs.end(), v);
  }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.vertex_count_ == b.vertex_count_ && a.edges_ == b.edges_;
  }

private:
  std::size_t vertex_count_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<Vertex>> adjacency_;
};

/// Breadth-first distances from `source`; unreachable vertices get kInfinite.
inline std::vector<Extended> bfs_distances(const Graph& g, Vertex source) {
  std::vector<Extended> dist(g.vertex_count(), kInfinite);
  if (source >= g.vertex_count()) {
    throw InputDomainError("BFS source " + std::to_string(source) + " out of range");
  }
  std::deque<Vertex> queue{source};
  dist[source] = 0;
  while (!queue.empty()) {
    const Vertex u = queue.front();
    queue.pop_front();
    for (Vertex w : g.neighbours(u)) {
      if (dist[w] == kInfinite) {
        dist[w] = dist[u] + 1;
        queue.push_back(w);
      }
    }
  }
  return dist;
}

inline bool is_connected(const Graph& g) {
  if (g.vertex_count() == 0) return true;
  const auto dist = bfs_distances(g, 0);
  return std::none_of(dist.begin(), dist.end(), [](Extended d) { return d == kInfinite; });
}

inline std::size_t max_degree(const Graph& g) {
  std::size_t best = 0;
  for (Vertex v = 0; v < g.vertex_count(); ++v) best = std::max(best, g.degree(v));
  return best;
}

/// The common degree if every vertex has the same degree.
inline std::optional<std::size_t> regular_degree(const Graph& g) {
  if (g.vertex_count() == 0) return std::nullopt;
  const std::size_t d = g.degree(0);
  for (Vertex v = 1; v < g.vertex_count(); ++v) {
    if (g.degree(v) != d) return std::nullopt;
  }
  return d;
}

/// Length of a shortest cycle, kInfinite for forests.
///
/// One BFS per root: a non-tree edge (u, w) met while scanning from u closes a
/// closed walk of length dist[u] + dist[w] + 1 through the root, which contains
/// a cycle no longer than that. The minimum over all roots is attained by a
/// root lying on a shortest cycle.
inline Extended girth(const Graph& g) {
  Extended best = kInfinite;
  const std::size_t n = g.vertex_count();
  std::vector<Extended> dist(n);
  std::vector<Vertex> parent(n);
  std::deque<Vertex> queue;
  for (Vertex root = 0; root < n; ++root) {
    std::fill(dist.begin(), dist.end(), kInfinite);
    dist[root] = 0;
    parent[root] = root;
    queue.assign({root});
    while (!queue.empty()) {
      const Vertex u = queue.front();
      queue.pop_front();
      if (best != kInfinite && 2 * dist[u] + 1 >= best) break;
      for (Vertex w : g.neighbours(u)) {
        if (dist[w] == kInfinite) {
          dist[w] = dist[u] + 1;
          parent[w] = u;
          queue.push_back(w);
        } else if (parent[u] != w) {
          best = std::min(best, dist[u] + dist[w] + 1);
        }
      }
    }
  }
  return best;
}

/// Maximum BFS eccentricity; the graph must be connected.
inline std::size_t diameter(const Graph& g) {
  std::size_t best = 0;
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    for (Extended d : bfs_distances(g, v)) {
      if (d == kInfinite) throw StructuralError("diameter of a disconnected graph");
      best = std::max<std::size_t>(best, d);
    }
  }
  return best;
}

/// A vertex of a space of graphs, addressed by 0-based component and vertex.
struct Point {
  std::uint32_t component = 0;
  Vertex vertex = 0;

  friend auto operator<=>(const Point&, const Point&) = default;
};

/// Coarse disjoint union of finite connected graphs. Within a component the
/// metric is the graph metric; points of distinct components i != j are at
/// distance spacing[i] + spacing[j]. The default spacing (1-based i) is
/// s_i = i + max_{k <= i} diam(X_k), which is non-decreasing, dominates every
/// diameter, and tends to infinity.
class SpaceOfGraphs {
public:
  SpaceOfGraphs() = default;

  explicit SpaceOfGraphs(std::vector<Graph> components)
      : components_(std::move(components)) {
    init_components();
    std::size_t running = 0;
    spacing_.reserve(components_.size());
    for (std::size_t i = 0; i < components_.size(); ++i) {
      running = std::max(running, diameters_[i]);
      spacing_.push_back(i + 1 + running);
    }
  }

  /// Explicit spacing, used by layouts that are not a plain sequence. Every
  /// entry must be positive and at least the diameter of its component.
  static SpaceOfGraphs with_spacing(std::vector<Graph> components,
                                    std::vector<std::size_t> spacing) {
    if (spacing.size() != components.size()) {
      throw InputDomainError("spacing length does not match component count");
    }
    SpaceOfGraphs x;
    x.components_ = std::move(components);
    x.init_components();
    for (std::size_t i = 0; i < spacing.size(); ++i) {
      if (spacing[i] == 0 || spacing[i] < x.diameters_[i]) {
        throw InputDomainError("spacing of component " + std::to_string(i) +
                               " is below its diameter");
      }
    }
    x.spacing_ = std::move(spacing);
    return x;
  }

  std::size_t component_count() const noexcept { return components_.size(); }
  const Graph& component(std::size_t i) const { return components_.at(i); }
  const std::vector<Graph>& components() const noexcept { return components_; }
  std::span<const std::size_t> spacing() const noexcept { return spacing_; }
  std::span<const std::size_t> diameters() const noexcept { return diameters_; }
  std::size_t point_count() const noexcept { return offsets_.empty() ? 0 : offsets_.back(); }

  bool contains(Point p) const noexcept {
    return p.component < components_.size() && p.vertex < components_[p.component].vertex_count();
  }

  void require(Point p) const {
    if (!contains(p)) {
      throw InputDomainError("invalid point (" + std::to_string(p.component) + "," +
                             std::to_string(p.vertex) + ")");
    }
  }

  /// Dense index of a point in component-major order.
  std::size_t index_of(Point p) const {
    require(p);
    return offsets_[p.component] + p.vertex;
  }

  Point point_at(std::size_t index) const {
    if (index >= point_count()) throw InputDomainError("point index out of range");
    const auto it = std::upper_bound(offsets_.begin(), offsets_.end(), index);
    const auto c = static_cast<std::uint32_t>(it - offsets_.begin() - 1);
    return {c, static_cast<Vertex>(index - offsets_[c])};
  }

  std::size_t offset(std::size_t component) const { return offsets_.at(component); }

  /// Distance between two points; cross-component pairs use the spacing.
  Extended distance(Point p, Point q) const {
    require(p);
    require(q);
    if (p.component != q.component) return spacing_[p.component] + spacing_[q.component];
    if (p.vertex == q.vertex) return 0;
    return bfs_distances(components_[p.component], p.vertex)[q.vertex];
  }

  /// Distance between distinct components i and j.
  Extended cross_distance(std::size_t i, std::size_t j) const {
    return spacing_.at(i) + spacing_.at(j);
  }

  friend bool operator==(const SpaceOfGraphs& a, const SpaceOfGraphs& b) {
    return a.components_ == b.components_ && a.spacing_ == b.spacing_;
  }

private:
  void init_components() {
    offsets_.assign(1, 0);
    diameters_.clear();
    for (std::size_t i = 0; i < components_.size(); ++i) {
      const Graph& g = components_[i];
      if (g.vertex_count() == 0 || !is_connected(g)) {
        throw StructuralError("component " + std::to_string(i) + " is empty or disconnected");
      }
      diameters_.push_back(diameter(g));
      offsets_.push_back(offsets_.back() + g.vertex_count());
    }
  }

  std::vector<Graph> components_;
  std::vector<std::size_t> spacing_;
  std::vector<std::size_t> diameters_;
  std::vector<std::size_t> offsets_{0};
};

inline Extended distance(const SpaceOfGraphs& x, Point p, Point q) { return x.distance(p, q); }

// Small named graphs used by tests and the CLI.

inline Graph cycle_graph(std::size_t n) {
  if (n < 3) throw InputDomainError("cycle length must be at least 3");
  std::vector<Graph::Edge> edges;
  for (Vertex v = 0; v < n; ++v) edges.emplace_back(v, static_cast<Vertex>((v + 1) % n));
  return Graph(n, std::move(edges));
}

inline Graph path_graph(std::size_t n) {
  std::vector<Graph::Edge> edges;
  for (Vertex v = 0; v + 1 < n; ++v) edges.emplace_back(v, v + 1);
  return Graph(n, std::move(edges));
}

inline Graph complete_graph(std::size_t n) {
  std::vector<Graph::Edge> edges;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) edges.emplace_back(u, v);
  return Graph(n, std::move(edges));
}

inline Graph petersen_graph() {
  std::vector<Graph::Edge> edges;
  for (Vertex i = 0; i < 5; ++i) {
    edges.emplace_back(i, (i + 1) % 5);          // outer cycle
    edges.emplace_back(i, i + 5);                // spokes
    edges.emplace_back(i + 5, (i + 2) % 5 + 5);  // inner pentagram
  }
  return Graph(10, std::move(edges));
}

}  // namespace coarse_lab
