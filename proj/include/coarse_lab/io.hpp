#pragma once

#include <cstdint>
#include <fstream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "coarse_lab/errors.hpp"
#include "coarse_lab/generators.hpp"
#include "coarse_lab/graph.hpp"
#include "coarse_lab/orientation.hpp"
#include "coarse_lab/partial_bijection.hpp"

namespace coarse_lab::io {

using nlohmann::json;

/// Graph-sequence file: {"components":[{"n":N,"edges":[[u,v],...]},...]}
/// plus, for doubled spaces, "layout":[[i,j],...] (1-based). Spacing is never
/// stored; it is recomputed on load.
struct GraphFile {
  SpaceOfGraphs space;
  std::optional<WangSpace> wang;
};

inline json graph_to_json(const Graph& g) {
  json edges = json::array();
  for (const auto& [u, v] : g.edges()) edges.push_back({u, v});
  return {{"n", g.vertex_count()}, {"edges", std::move(edges)}};
}

inline json space_to_json(const SpaceOfGraphs& x) {
  json comps = json::array();
  for (const auto& g : x.components()) comps.push_back(graph_to_json(g));
  return {{"components", std::move(comps)}};
}

inline json wang_to_json(const WangSpace& y) {
  json j = space_to_json(y.space);
  json layout = json::array();
  for (const auto& [i, jj] : y.layout) layout.push_back({i, jj});
  j["layout"] = std::move(layout);
  return j;
}

namespace detail {
template <class T>
T field(const json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(where + ": missing \"" + key + "\"");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ParseError(where + "." + key + ": " + e.what());
  }
}
}  // namespace detail

inline GraphFile space_from_json(const json& j) {
  const auto comps = detail::field<json>(j, "components", "$");
  if (!comps.is_array()) throw ParseError("$.components: expected an array");
  std::vector<Graph> graphs;
  for (std::size_t c = 0; c < comps.size(); ++c) {
    const std::string where = "$.components[" + std::to_string(c) + "]";
    const auto n = detail::field<std::size_t>(comps[c], "n", where);
    const auto edge_list = detail::field<std::vector<std::vector<std::int64_t>>>(comps[c], "edges", where);
    std::vector<Graph::Edge> edges;
    for (std::size_t e = 0; e < edge_list.size(); ++e) {
      const auto& pair = edge_list[e];
      if (pair.size() != 2 || pair[0] < 0 || pair[1] < 0) {
        throw ParseError(where + ".edges[" + std::to_string(e) + "]: expected [u,v] with u,v >= 0");
      }
      edges.emplace_back(static_cast<Vertex>(pair[0]), static_cast<Vertex>(pair[1]));
    }
    try {
      graphs.emplace_back(n, std::move(edges));
    } catch (const InputDomainError& e) {
      throw ParseError(where + ": " + e.what());
    }
  }
  GraphFile out;
  if (!j.contains("layout")) {
    out.space = SpaceOfGraphs(std::move(graphs));
    return out;
  }
  const auto layout_raw = detail::field<std::vector<std::vector<std::size_t>>>(j, "layout", "$");
  if (layout_raw.size() != graphs.size()) throw ParseError("$.layout: length differs from components");
  WangSpace y;
  std::size_t rows = 0;
  for (std::size_t c = 0; c < layout_raw.size(); ++c) {
    if (layout_raw[c].size() != 2 || layout_raw[c][0] < 1 || layout_raw[c][1] < 1) {
      throw ParseError("$.layout[" + std::to_string(c) + "]: expected [i,j] with i,j >= 1");
    }
    y.layout.emplace_back(layout_raw[c][0], layout_raw[c][1]);
    rows = std::max(rows, layout_raw[c][0]);
    y.columns = std::max(y.columns, layout_raw[c][1]);
  }
  if (layout_raw.size() != rows * y.columns) throw ParseError("$.layout: not a full rectangle");
  std::vector<Graph> base(rows);
  for (std::size_t c = 0; c < y.layout.size(); ++c) {
    const auto [i, jj] = y.layout[c];
    if (c != (i - 1) * y.columns + (jj - 1)) throw ParseError("$.layout: components not in row-major order");
    if (jj == 1) base[i - 1] = graphs[c];
    if (!(graphs[c] == base[i - 1])) {
      throw ParseError("$.components[" + std::to_string(c) + "]: differs from column 1 of its row");
    }
  }
  y.base = SpaceOfGraphs(std::move(base));
  y.space = SpaceOfGraphs::with_spacing(std::move(graphs), wang_spacing(y.layout, y.base.diameters()));
  out.space = y.space;
  out.wang = std::move(y);
  return out;
}

/// Labelling file: {"k":K,"edges":[{"c":i,"tail":u,"head":v,"gen":j},...]}.
inline json labelling_to_json(const EdgeLabelling& l) {
  json edges = json::array();
  for (const auto& e : l.edges) {
    edges.push_back({{"c", e.component}, {"tail", e.tail}, {"head", e.head}, {"gen", e.gen}});
  }
  return {{"k", l.k}, {"edges", std::move(edges)}};
}

inline EdgeLabelling labelling_from_json(const json& j, std::shared_ptr<const SpaceOfGraphs> space) {
  EdgeLabelling l;
  l.space = std::move(space);
  l.k = detail::field<std::uint32_t>(j, "k", "$");
  const auto edges = detail::field<json>(j, "edges", "$");
  if (!edges.is_array()) throw ParseError("$.edges: expected an array");
  for (std::size_t e = 0; e < edges.size(); ++e) {
    const std::string where = "$.edges[" + std::to_string(e) + "]";
    l.edges.push_back({detail::field<std::uint32_t>(edges[e], "c", where),
                       detail::field<Vertex>(edges[e], "tail", where),
                       detail::field<Vertex>(edges[e], "head", where),
                       detail::field<std::uint32_t>(edges[e], "gen", where)});
  }
  std::sort(l.edges.begin(), l.edges.end());
  return l;
}

/// Debug form of a partial translation: [[[c,v],[c,v]],...].
inline json translation_to_json(const PartialTranslation& s) {
  json pairs = json::array();
  for (const auto& [x, y] : s.pairs()) pairs.push_back({{x.component, x.vertex}, {y.component, y.vertex}});
  return pairs;
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path + ": cannot open");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline json parse_json(const std::string& text, const std::string& path) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(path + ": byte " + std::to_string(e.byte) + ": " + e.what());
  }
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ParseError(path + ": cannot open for writing");
  out << text;
}

/// 64-bit FNV-1a digest, hex encoded; identifies input files in reports.
inline std::string digest(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char ch : bytes) {
    h ^= ch;
    h *= 0x100000001b3ULL;
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i, h >>= 4) out[static_cast<std::size_t>(i)] = kHex[h & 0xf];
  return "fnv1a64:" + out;
}

}  // namespace coarse_lab::io
