#pragma once

#include <Eigen/Dense>

#include <cmath>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "coarse_lab/errors.hpp"
#include "coarse_lab/generators.hpp"
#include "coarse_lab/graph.hpp"
#include "coarse_lab/spectral.hpp"

namespace coarse_lab {

/// Closed-form description of a block operator. Ghostness is a statement
/// about infinitely many blocks, so only tagged operators get a verdict.
enum class BlockTag { GhostP, WangQ, Custom };

inline const char* to_string(BlockTag t) {
  switch (t) {
    case BlockTag::GhostP: return "GHOST_P";
    case BlockTag::WangQ: return "WANG_Q";
    case BlockTag::Custom: return "CUSTOM";
  }
  return "?";
}

/// Block-diagonal operator on a space of graphs, one dense block per
/// component. For WANG_Q, `layout[b]` is the 1-based (i, j) of block b and
/// `base_sizes[i-1]` = |X_i|.
struct BlockOperator {
  BlockTag tag = BlockTag::Custom;
  std::vector<Eigen::MatrixXd> blocks;
  std::vector<std::pair<std::size_t, std::size_t>> layout;
  std::vector<std::size_t> base_sizes;
};

namespace detail {
inline Eigen::MatrixXd constant_projection(std::size_t n) {
  const auto m = static_cast<Eigen::Index>(n);
  return Eigen::MatrixXd::Constant(m, m, 1.0 / static_cast<double>(n));
}

inline void require_connected_regular(const SpaceOfGraphs& x) {
  for (std::size_t i = 0; i < x.component_count(); ++i) {
    const auto d = regular_degree(x.component(i));
    if (!d || *d == 0) throw StructuralError("component " + std::to_string(i) + " is not regular");
  }
}
}  // namespace detail

/// p = ∏ p_i with p_i the projection onto constants of X_i: every entry of
/// block i equals 1/|X_i|.
inline BlockOperator ghost_projection(const SpaceOfGraphs& x) {
  detail::require_connected_regular(x);
  BlockOperator op;
  op.tag = BlockTag::GhostP;
  for (const auto& g : x.components()) {
    op.blocks.push_back(detail::constant_projection(g.vertex_count()));
    op.base_sizes.push_back(g.vertex_count());
  }
  return op;
}

/// q = ∏_{i,j} p_i on the doubled space: block (i, j) is the ghost block of
/// X_i for every column j.
inline BlockOperator wang_projection(const WangSpace& y) {
  detail::require_connected_regular(y.base);
  BlockOperator op;
  op.tag = BlockTag::WangQ;
  op.layout = y.layout;
  for (const auto& g : y.base.components()) op.base_sizes.push_back(g.vertex_count());
  for (const auto& [i, j] : y.layout) op.blocks.push_back(detail::constant_projection(op.base_sizes[i - 1]));
  return op;
}

enum class GhostVerdict { Ghost, NotGhost, UndecidedAtTruncation };

inline const char* to_string(GhostVerdict v) {
  switch (v) {
    case GhostVerdict::Ghost: return "GHOST";
    case GhostVerdict::NotGhost: return "NOT_GHOST";
    case GhostVerdict::UndecidedAtTruncation: return "UNDECIDED_AT_TRUNCATION";
  }
  return "?";
}

struct GhostWitness {
  std::size_t block = 0;
  std::size_t x = 0;
  std::size_t y = 0;
  double value = 0.0;
  // WANG_Q only: the row i* whose entries persist along the unbounded j axis.
  std::optional<std::size_t> column_i;
  std::string unbounded_direction;
};

struct GhostReport {
  double epsilon = 0.0;
  BlockTag tag = BlockTag::Custom;
  std::vector<std::size_t> offending_blocks;
  GhostVerdict verdict = GhostVerdict::UndecidedAtTruncation;
  std::optional<GhostWitness> witness;
  std::vector<double> per_block_max;
};

/// Classifies T at threshold epsilon.
///  GHOST_P: offending = {i : 1/|X_i| >= eps}, finite because sizes grow, so
///           GHOST (UNDECIDED if the truncation's sizes do not increase).
///  WANG_Q:  every column j repeats the entry 1/|X_1|, so for eps <= 1/|X_1|
///           entries >= eps occur outside every finite rectangle: NOT_GHOST
///           with the i = 1 row as witness.
///  CUSTOM:  truncation data only.
inline GhostReport classify_ghost(const BlockOperator& t, double epsilon) {
  if (!(epsilon > 0.0) || !std::isfinite(epsilon)) throw InputDomainError("epsilon must be positive");
  GhostReport r;
  r.epsilon = epsilon;
  r.tag = t.tag;
  for (const auto& b : t.blocks) r.per_block_max.push_back(b.size() ? b.cwiseAbs().maxCoeff() : 0.0);

  auto offends_closed_form = [epsilon](std::size_t n) {
    return static_cast<double>(n) * epsilon <= 1.0;  // 1/n >= eps
  };

  switch (t.tag) {
    case BlockTag::GhostP: {
      bool increasing = true;
      for (std::size_t i = 0; i < t.base_sizes.size(); ++i) {
        if (offends_closed_form(t.base_sizes[i])) r.offending_blocks.push_back(i);
        if (i > 0 && t.base_sizes[i] <= t.base_sizes[i - 1]) increasing = false;
      }
      r.verdict = increasing ? GhostVerdict::Ghost : GhostVerdict::UndecidedAtTruncation;
      if (!r.offending_blocks.empty()) {
        const auto b = r.offending_blocks.back();
        r.witness = GhostWitness{b, 0, 0, 1.0 / static_cast<double>(t.base_sizes[b]), std::nullopt, ""};
      }
      break;
    }
    case BlockTag::WangQ: {
      std::optional<std::size_t> last_in_row_one;
      for (std::size_t b = 0; b < t.layout.size(); ++b) {
        const auto [i, j] = t.layout[b];
        if (offends_closed_form(t.base_sizes.at(i - 1))) r.offending_blocks.push_back(b);
        if (i == 1) last_in_row_one = b;
      }
      if (!last_in_row_one) throw InputDomainError("WANG_Q operator without an i = 1 row");
      r.verdict = GhostVerdict::NotGhost;
      r.witness = GhostWitness{*last_in_row_one, 0, 0, 1.0 / static_cast<double>(t.base_sizes.front()),
                               std::size_t{1}, "j"};
      break;
    }
    case BlockTag::Custom: {
      for (std::size_t b = 0; b < r.per_block_max.size(); ++b) {
        if (r.per_block_max[b] >= epsilon) r.offending_blocks.push_back(b);
      }
      r.verdict = GhostVerdict::UndecidedAtTruncation;
      break;
    }
  }
  return r;
}

}  // namespace coarse_lab
