#pragma once

// Brute-force reference implementations used as test oracles. None of these
// call into the library algorithms they are compared against.

#include <algorithm>
#include <array>
#include <cstdint>
#include <limits>
#include <map>
#include <optional>
#include <random>
#include <set>
#include <utility>
#include <vector>

#include "coarse_lab/free_word.hpp"
#include "coarse_lab/graph.hpp"
#include "coarse_lab/orientation.hpp"

namespace oracle {

using coarse_lab::Graph;
using coarse_lab::Vertex;

inline constexpr std::uint64_t kInf = std::numeric_limits<std::uint64_t>::max() / 4;

/// All-pairs shortest paths by Floyd-Warshall on the edge list.
inline std::vector<std::vector<std::uint64_t>> floyd_warshall(const Graph& g) {
  const std::size_t n = g.vertex_count();
  std::vector<std::vector<std::uint64_t>> d(n, std::vector<std::uint64_t>(n, kInf));
  for (std::size_t v = 0; v < n; ++v) d[v][v] = 0;
  for (const auto& [u, v] : g.edges()) d[u][v] = d[v][u] = 1;
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (d[i][k] + d[k][j] < d[i][j]) d[i][j] = d[i][k] + d[k][j];
  return d;
}

inline std::uint64_t diameter(const Graph& g) {
  std::uint64_t best = 0;
  for (const auto& row : floyd_warshall(g))
    for (auto x : row) best = std::max(best, x);
  return best;
}

/// True iff g has a cyclically reduced closed walk of length exactly len
/// (no backtracking, including across the start), by depth-first search.
inline bool has_nonbacktracking_closed_walk(const Graph& g, std::size_t len) {
  const std::size_t n = g.vertex_count();
  std::vector<std::vector<Vertex>> adj(n);
  for (const auto& [u, v] : g.edges()) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  for (Vertex start = 0; start < n; ++start) {
    auto dfs = [&](auto&& self, Vertex v, Vertex prev, Vertex first_step, std::size_t depth) -> bool {
      if (depth == len) return v == start && first_step != prev;
      for (Vertex w : adj[v]) {
        if (depth > 0 && w == prev) continue;
        if (self(self, w, v, depth == 0 ? w : first_step, depth + 1)) return true;
      }
      return false;
    };
    if (dfs(dfs, start, start, start, 0)) return true;
  }
  return false;
}

/// Girth as the least length of a cyclically reduced closed walk.
inline std::uint64_t girth_by_walks(const Graph& g) {
  for (std::size_t len = 3; len <= g.vertex_count(); ++len) {
    if (has_nonbacktracking_closed_walk(g, len)) return len;
  }
  return kInf;
}

/// SL_2(F_p) by listing all (a,b,c,d) with ad - bc = 1, and its Cayley graph
/// for right multiplication by A^{±1}, B^{±1} with A = [[1,1],[0,1]],
/// B = [[1,0],[1,1]]. Vertex ids are positions in the enumeration.
struct Cayley {
  std::size_t n = 0;
  std::set<std::pair<std::size_t, std::size_t>> edges;
  std::vector<std::size_t> degree;
};

inline Cayley sl2_cayley(std::uint32_t p) {
  using M = std::array<std::int64_t, 4>;
  std::vector<M> elems;
  std::map<M, std::size_t> id;
  for (std::int64_t a = 0; a < p; ++a)
    for (std::int64_t b = 0; b < p; ++b)
      for (std::int64_t c = 0; c < p; ++c)
        for (std::int64_t d = 0; d < p; ++d)
          if (((a * d - b * c) % p + p) % p == 1) {
            id[{a, b, c, d}] = elems.size();
            elems.push_back({a, b, c, d});
          }
  auto mul = [p](const M& x, const M& y) {
    auto m = [p](std::int64_t v) { return ((v % p) + p) % p; };
    return M{m(x[0] * y[0] + x[1] * y[2]), m(x[0] * y[1] + x[1] * y[3]), m(x[2] * y[0] + x[3] * y[2]),
             m(x[2] * y[1] + x[3] * y[3])};
  };
  const std::int64_t q = p;
  const std::array<M, 4> gens{M{1, 1, 0, 1}, M{1, q - 1, 0, 1}, M{1, 0, 1, 1}, M{1, 0, q - 1, 1}};
  Cayley out;
  out.n = elems.size();
  out.degree.assign(out.n, 0);
  for (std::size_t v = 0; v < out.n; ++v) {
    for (const auto& s : gens) {
      const auto w = id.at(mul(elems[v], s));
      out.edges.insert({std::min(v, w), std::max(v, w)});
    }
  }
  for (const auto& [u, v] : out.edges) {
    ++out.degree[u];
    ++out.degree[v];
  }
  return out;
}

/// θ_w evaluated letter by letter on the raw labelled edge list: a_j moves
/// tail to head, a_j^-1 head to tail; the rightmost letter acts first.
inline std::optional<Vertex> apply_word(const coarse_lab::EdgeLabelling& l, std::uint32_t component, Vertex v,
                                        const coarse_lab::FreeWord& w) {
  const auto& letters = w.letters();
  for (auto it = letters.rbegin(); it != letters.rend(); ++it) {
    const auto gen = static_cast<std::uint32_t>(*it > 0 ? *it : -*it);
    std::optional<Vertex> next;
    for (const auto& e : l.edges) {
      if (e.component != component || e.gen != gen) continue;
      if (*it > 0 && e.tail == v) next = e.head;
      if (*it < 0 && e.head == v) next = e.tail;
    }
    if (!next) return std::nullopt;
    v = *next;
  }
  return v;
}

/// Random simple graph on n vertices with max degree <= max_deg.
inline Graph random_bounded_graph(std::size_t n, std::size_t max_deg, double density, std::mt19937_64& rng) {
  std::vector<std::size_t> deg(n, 0);
  std::vector<Graph::Edge> edges;
  std::bernoulli_distribution keep(density);
  std::vector<std::pair<Vertex, Vertex>> all;
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v) all.emplace_back(u, v);
  std::shuffle(all.begin(), all.end(), rng);
  for (const auto& [u, v] : all) {
    if (deg[u] < max_deg && deg[v] < max_deg && keep(rng)) {
      edges.emplace_back(u, v);
      ++deg[u];
      ++deg[v];
    }
  }
  return Graph(n, std::move(edges));
}

}  // namespace oracle
