#pragma once

#include <memory>
#include <vector>

#include "coarse_lab/generators.hpp"
#include "coarse_lab/orientation.hpp"
#include "coarse_lab/partial_action.hpp"

namespace fixtures {

using namespace coarse_lab;

inline std::shared_ptr<const SpaceOfGraphs> share(SpaceOfGraphs x) {
  return std::make_shared<const SpaceOfGraphs>(std::move(x));
}

inline std::vector<std::size_t> range(std::size_t lo, std::size_t hi) {
  std::vector<std::size_t> out;
  for (auto n = lo; n <= hi; ++n) out.push_back(n);
  return out;
}

inline ThetaAction cycles_action(std::size_t lo = 5, std::size_t hi = 14) {
  return ThetaAction(orient_labelling(share(cycles_family(range(lo, hi)))));
}

inline ThetaAction sl2_action(std::vector<std::uint32_t> primes = {3, 5}) {
  return ThetaAction(orient_labelling(share(sl2_family(primes))));
}

/// Cycles where the edge {0,1} of every component carries a_1 in both
/// directions and no other edge is labelled: θ_{a_1 a_1} fixes 0 and 1 in
/// every component.
inline ThetaAction swapped_edge_action(std::size_t lo = 5, std::size_t hi = 12) {
  EdgeLabelling l;
  l.space = share(cycles_family(range(lo, hi)));
  l.k = 1;
  for (std::uint32_t c = 0; c < l.space->component_count(); ++c) {
    l.edges.push_back({c, 0, 1, 1});
    l.edges.push_back({c, 1, 0, 1});
  }
  std::sort(l.edges.begin(), l.edges.end());
  return ThetaAction::unchecked(std::move(l));
}

/// Cycles with a_1 along the path 0 -> 1 -> ... -> n-1 and the closing edge
/// left unlabelled, so θ_{a_1^m} is empty on C_n once m >= n.
inline ThetaAction dead_end_action(std::size_t lo = 5, std::size_t hi = 10) {
  EdgeLabelling l;
  l.space = share(cycles_family(range(lo, hi)));
  l.k = 1;
  for (std::uint32_t c = 0; c < l.space->component_count(); ++c) {
    const auto n = static_cast<Vertex>(l.space->component(c).vertex_count());
    for (Vertex v = 0; v + 1 < n; ++v) l.edges.push_back({c, v, v + 1, 1});
  }
  return ThetaAction::unchecked(std::move(l));
}

}  // namespace fixtures
