#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "coarse_lab/errors.hpp"
#include "coarse_lab/graph.hpp"

namespace coarse_lab {

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

/// Box space of Z along the subgroups nZ: one cycle per length.
inline SpaceOfGraphs cycles_family(const std::vector<std::size_t>& lengths) {
  if (lengths.empty()) throw InputDomainError("cycles family needs at least one length");
  std::vector<Graph> comps;
  for (std::size_t i = 0; i < lengths.size(); ++i) {
    if (lengths[i] < 3) throw InputDomainError("cycle length " + std::to_string(lengths[i]) + " < 3");
    if (i > 0 && lengths[i] <= lengths[i - 1]) {
      throw InputDomainError("cycle lengths must be strictly increasing");
    }
    comps.push_back(cycle_graph(lengths[i]));
  }
  return SpaceOfGraphs(std::move(comps));
}

/// 2x2 matrix over F_p stored row-major as (a, b, c, d).
using Mat2 = std::array<std::uint32_t, 4>;

inline Mat2 mat2_mul(const Mat2& x, const Mat2& y, std::uint32_t p) {
  auto m = [p](std::uint64_t s) { return static_cast<std::uint32_t>(s % p); };
  return {m(std::uint64_t{x[0]} * y[0] + std::uint64_t{x[1]} * y[2]),
          m(std::uint64_t{x[0]} * y[1] + std::uint64_t{x[1]} * y[3]),
          m(std::uint64_t{x[2]} * y[0] + std::uint64_t{x[3]} * y[2]),
          m(std::uint64_t{x[2]} * y[1] + std::uint64_t{x[3]} * y[3])};
}

/// Elements of SL_2(F_p) in lexicographic (a, b, c, d) order.
inline std::vector<Mat2> sl2_elements(std::uint32_t p) {
  std::vector<Mat2> out;
  for (std::uint32_t a = 0; a < p; ++a)
    for (std::uint32_t b = 0; b < p; ++b)
      for (std::uint32_t c = 0; c < p; ++c)
        for (std::uint32_t d = 0; d < p; ++d) {
          if ((std::uint64_t{a} * d + std::uint64_t{p - 1} * ((std::uint64_t{b} * c) % p)) % p == 1) {
            out.push_back({a, b, c, d});
          }
        }
  return out;
}

/// Right Cayley graph of SL_2(F_p) for {A^±1, B^±1}, A = [[1,1],[0,1]],
/// B = [[1,0],[1,1]]: vertex g is joined to gA and gB.
inline Graph sl2_cayley_graph(std::uint32_t p) {
  if (p < 3 || !is_prime(p)) throw InputDomainError(std::to_string(p) + " is not an odd prime");
  const auto elems = sl2_elements(p);
  auto index_of = [&](const Mat2& m) {
    return static_cast<Vertex>(std::lower_bound(elems.begin(), elems.end(), m) - elems.begin());
  };
  const Mat2 a{1, 1, 0, 1};
  const Mat2 b{1, 0, 1, 1};
  std::vector<Graph::Edge> edges;
  for (Vertex v = 0; v < elems.size(); ++v) {
    edges.emplace_back(v, index_of(mat2_mul(elems[v], a, p)));
    edges.emplace_back(v, index_of(mat2_mul(elems[v], b, p)));
  }
  return Graph(elems.size(), std::move(edges));
}

inline SpaceOfGraphs sl2_family(const std::vector<std::uint32_t>& primes) {
  if (primes.empty()) throw InputDomainError("sl2 family needs at least one prime");
  std::vector<Graph> comps;
  for (std::size_t i = 0; i < primes.size(); ++i) {
    if (i > 0 && primes[i] <= primes[i - 1]) throw InputDomainError("primes must be strictly increasing");
    comps.push_back(sl2_cayley_graph(primes[i]));
  }
  return SpaceOfGraphs(std::move(comps));
}

/// Lower bound on the girth of component i (0-based).
using GirthBound = std::function<std::size_t(std::size_t)>;

inline constexpr std::size_t kDefaultRetryBudget = 10'000;

namespace detail {

// True if u and v are at distance < bound in the partial graph `adj`.
inline bool within(const std::vector<std::vector<Vertex>>& adj, Vertex u, Vertex v, std::size_t bound) {
  if (u == v) return true;
  std::vector<Vertex> frontier{u};
  std::vector<bool> seen(adj.size(), false);
  seen[u] = true;
  for (std::size_t depth = 1; depth < bound && !frontier.empty(); ++depth) {
    std::vector<Vertex> next;
    for (Vertex x : frontier) {
      for (Vertex y : adj[x]) {
        if (y == v) return true;
        if (!seen[y]) {
          seen[y] = true;
          next.push_back(y);
        }
      }
    }
    frontier = std::move(next);
  }
  return false;
}

// One configuration-model proposal: half-edges are paired one at a time, the
// partner drawn uniformly among the remaining half-edges that keep the graph
// simple and do not close a cycle shorter than min_girth. Returns nullopt
// when the pairing gets stuck.
inline std::optional<Graph> propose_regular(std::size_t n, std::size_t degree, std::size_t min_girth,
                                            std::mt19937_64& rng) {
  std::vector<Vertex> points;
  points.reserve(n * degree);
  for (Vertex v = 0; v < n; ++v) points.insert(points.end(), degree, v);
  std::vector<std::vector<Vertex>> adj(n);
  std::vector<Graph::Edge> edges;
  std::vector<std::size_t> candidates;
  while (!points.empty()) {
    std::uniform_int_distribution<std::size_t> pick_first(0, points.size() - 1);
    const std::size_t i = pick_first(rng);
    const Vertex u = points[i];
    std::swap(points[i], points.back());
    points.pop_back();
    candidates.clear();
    for (std::size_t j = 0; j < points.size(); ++j) {
      const Vertex v = points[j];
      if (v == u || std::find(adj[u].begin(), adj[u].end(), v) != adj[u].end()) continue;
      if (min_girth > 2 && within(adj, u, v, min_girth - 1)) continue;
      candidates.push_back(j);
    }
    if (candidates.empty()) return std::nullopt;
    std::uniform_int_distribution<std::size_t> pick(0, candidates.size() - 1);
    const std::size_t j = candidates[pick(rng)];
    const Vertex v = points[j];
    std::swap(points[j], points.back());
    points.pop_back();
    adj[u].push_back(v);
    adj[v].push_back(u);
    edges.emplace_back(u, v);
  }
  return Graph(n, std::move(edges));
}

}  // namespace detail

/// Random connected degree-regular simple graphs with girth(X_i) >=
/// girth_min(i). Each component is sampled from its own stream seeded by
/// (seed, i), so the result depends only on the arguments.
inline SpaceOfGraphs random_regular_large_girth(std::size_t degree, const std::vector<std::size_t>& sizes,
                                                const GirthBound& girth_min, std::uint64_t seed,
                                                std::size_t retry_budget = kDefaultRetryBudget) {
  if (sizes.empty()) throw InputDomainError("random family needs at least one size");
  if (degree == 0) throw InputDomainError("degree must be positive");
  std::vector<Graph> comps;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    const std::size_t n = sizes[i];
    if (i > 0 && n <= sizes[i - 1]) throw InputDomainError("sizes must be strictly increasing");
    if ((degree * n) % 2 != 0) {
      throw InputDomainError("degree * size is odd at index " + std::to_string(i));
    }
    if (n <= degree) throw InputDomainError("size must exceed the degree at index " + std::to_string(i));
    const std::size_t g_min = girth_min(i);
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(i)};
    std::mt19937_64 rng(seq);
    std::optional<Graph> found;
    for (std::size_t attempt = 0; attempt < retry_budget && !found; ++attempt) {
      auto g = detail::propose_regular(n, degree, g_min, rng);
      if (g && is_connected(*g) && girth(*g) >= g_min) found = std::move(g);
    }
    if (!found) {
      throw ResourceExhaustedError("no " + std::to_string(degree) + "-regular graph on " + std::to_string(n) +
                                   " vertices with girth >= " + std::to_string(g_min) + " within " +
                                   std::to_string(retry_budget) + " attempts (index " + std::to_string(i) + ")");
    }
    comps.push_back(std::move(*found));
  }
  return SpaceOfGraphs(std::move(comps));
}

/// Doubled space Y = ⊔ Y_{i,j} with Y_{i,j} = X_i. Components are laid out
/// row by row: (1,1), (1,2), ..., (1,J), (2,1), ... Indices in `layout` are
/// 1-based (i, j).
struct WangSpace {
  SpaceOfGraphs base;
  std::size_t columns = 0;
  std::vector<std::pair<std::size_t, std::size_t>> layout;
  SpaceOfGraphs space;

  std::size_t component_index(std::size_t i, std::size_t j) const {
    if (i < 1 || i > base.component_count() || j < 1 || j > columns) {
      throw InputDomainError("(" + std::to_string(i) + "," + std::to_string(j) + ") outside the layout");
    }
    return (i - 1) * columns + (j - 1);
  }

  /// Components of the rectangle R_{i,j} = ⊔_{i' <= i, j' <= j} Y_{i',j'}.
  std::vector<std::size_t> rectangle(std::size_t i, std::size_t j) const {
    std::vector<std::size_t> out;
    for (std::size_t c = 0; c < layout.size(); ++c) {
      if (layout[c].first <= i && layout[c].second <= j) out.push_back(c);
    }
    return out;
  }
};

/// Spacing s_{i,j} = i + j + max_{k <= i} diam(X_k).
inline std::vector<std::size_t> wang_spacing(const std::vector<std::pair<std::size_t, std::size_t>>& layout,
                                             std::span<const std::size_t> base_diameters) {
  std::vector<std::size_t> prefix_max;
  std::size_t running = 0;
  for (auto d : base_diameters) prefix_max.push_back(running = std::max(running, d));
  std::vector<std::size_t> spacing;
  for (const auto& [i, j] : layout) spacing.push_back(i + j + prefix_max.at(i - 1));
  return spacing;
}

inline WangSpace wang_space(const SpaceOfGraphs& base, std::size_t columns) {
  if (base.component_count() == 0) throw InputDomainError("wang space needs a nonempty base");
  if (columns < 1) throw InputDomainError("wang space needs at least one column");
  WangSpace y;
  y.base = base;
  y.columns = columns;
  std::vector<Graph> comps;
  for (std::size_t i = 1; i <= base.component_count(); ++i) {
    for (std::size_t j = 1; j <= columns; ++j) {
      y.layout.emplace_back(i, j);
      comps.push_back(base.component(i - 1));
    }
  }
  y.space = SpaceOfGraphs::with_spacing(std::move(comps), wang_spacing(y.layout, base.diameters()));
  return y;
}

/// Family selector used by the CLI.
enum class FamilyKind { Cycles, Sl2, RandomRegular, Wang };

struct FamilySpec {
  FamilyKind kind = FamilyKind::Cycles;
  std::map<std::string, std::vector<std::int64_t>> parameters;

  const std::vector<std::int64_t>& list(const std::string& name) const {
    auto it = parameters.find(name);
    if (it == parameters.end() || it->second.empty()) {
      throw InputDomainError("missing parameter '" + name + "'");
    }
    return it->second;
  }

  std::int64_t scalar(const std::string& name) const {
    const auto& v = list(name);
    if (v.size() != 1) throw InputDomainError("parameter '" + name + "' must be a single integer");
    return v.front();
  }

  std::int64_t scalar_or(const std::string& name, std::int64_t fallback) const {
    return parameters.contains(name) ? scalar(name) : fallback;
  }
};

namespace detail {
template <class T>
std::vector<T> non_negative(const std::vector<std::int64_t>& v, const std::string& name) {
  std::vector<T> out;
  for (auto x : v) {
    if (x < 0) throw InputDomainError("parameter '" + name + "' must be non-negative");
    out.push_back(static_cast<T>(x));
  }
  return out;
}
}  // namespace detail

/// Builds the space for a non-Wang family.
///   cycles: lengths
///   sl2:    primes
///   random: degree, sizes, girth_min, optional girth_step (bound grows by
///           girth_step per index), optional retries
inline SpaceOfGraphs generate(const FamilySpec& spec, std::uint64_t seed) {
  switch (spec.kind) {
    case FamilyKind::Cycles:
      return cycles_family(detail::non_negative<std::size_t>(spec.list("lengths"), "lengths"));
    case FamilyKind::Sl2:
      return sl2_family(detail::non_negative<std::uint32_t>(spec.list("primes"), "primes"));
    case FamilyKind::RandomRegular: {
      const auto degree = detail::non_negative<std::size_t>({spec.scalar("degree")}, "degree").front();
      const auto sizes = detail::non_negative<std::size_t>(spec.list("sizes"), "sizes");
      const auto g0 = static_cast<std::size_t>(std::max<std::int64_t>(0, spec.scalar_or("girth_min", 3)));
      const auto step = static_cast<std::size_t>(std::max<std::int64_t>(0, spec.scalar_or("girth_step", 0)));
      const auto retries = static_cast<std::size_t>(
          std::max<std::int64_t>(1, spec.scalar_or("retries", static_cast<std::int64_t>(kDefaultRetryBudget))));
      return random_regular_large_girth(
          degree, sizes, [g0, step](std::size_t i) { return g0 + step * i; }, seed, retries);
    }
    case FamilyKind::Wang:
      break;
  }
  throw InputDomainError("wang spaces are built from a base family; use wang_space");
}

}  // namespace coarse_lab
