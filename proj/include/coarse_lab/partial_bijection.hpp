#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "coarse_lab/errors.hpp"
#include "coarse_lab/graph.hpp"

namespace coarse_lab {

/// Finite partial bijection on an ordered set, stored as the list of
/// (x, s(x)) pairs sorted by x. The representation is canonical, so ==
/// is extensional equality. The empty map is the zero of the monoid.
///
/// Elements of the symmetric inverse monoid compose as functions: (s * t)(x)
/// = s(t(x)) on the largest domain where it makes sense, i.e.
/// t^{-1}(ran t ∩ dom s).
template <class T>
class PartialBijection {
public:
  using Pair = std::pair<T, T>;

  PartialBijection() = default;

  /// Validates that the pairs describe an injective partial function.
  explicit PartialBijection(std::vector<Pair> pairs) : pairs_(std::move(pairs)) {
    std::sort(pairs_.begin(), pairs_.end());
    pairs_.erase(std::unique(pairs_.begin(), pairs_.end()), pairs_.end());
    for (std::size_t i = 1; i < pairs_.size(); ++i) {
      if (pairs_[i].first == pairs_[i - 1].first) {
        throw InputDomainError("partial bijection maps one point to two images");
      }
    }
    std::vector<T> images;
    images.reserve(pairs_.size());
    for (const auto& p : pairs_) images.push_back(p.second);
    std::sort(images.begin(), images.end());
    if (std::adjacent_find(images.begin(), images.end()) != images.end()) {
      throw InputDomainError("partial bijection is not injective");
    }
  }

  /// Restriction of the identity to the given points.
  static PartialBijection identity_on(std::vector<T> points) {
    std::vector<Pair> pairs;
    pairs.reserve(points.size());
    for (auto& p : points) pairs.emplace_back(p, p);
    return PartialBijection(std::move(pairs));
  }

  const std::vector<Pair>& pairs() const noexcept { return pairs_; }
  std::size_t size() const noexcept { return pairs_.size(); }
  bool empty() const noexcept { return pairs_.empty(); }

  std::optional<T> operator()(const T& x) const {
    auto it = find(x);
    if (it == pairs_.end()) return std::nullopt;
    return it->second;
  }

  bool in_domain(const T& x) const { return find(x) != pairs_.end(); }

  std::vector<T> domain() const {
    std::vector<T> out;
    out.reserve(pairs_.size());
    for (const auto& p : pairs_) out.push_back(p.first);
    return out;
  }

  std::vector<T> range() const {
    std::vector<T> out;
    out.reserve(pairs_.size());
    for (const auto& p : pairs_) out.push_back(p.second);
    std::sort(out.begin(), out.end());
    return out;
  }

  PartialBijection inverse() const {
    PartialBijection out;
    out.pairs_.reserve(pairs_.size());
    for (const auto& [x, y] : pairs_) out.pairs_.emplace_back(y, x);
    std::sort(out.pairs_.begin(), out.pairs_.end());
    return out;
  }

  /// True iff this is a restriction of the identity.
  bool is_idempotent() const noexcept {
    return std::all_of(pairs_.begin(), pairs_.end(),
                       [](const Pair& p) { return p.first == p.second; });
  }

  /// Natural partial order: this is a restriction of `other`.
  bool leq(const PartialBijection& other) const {
    if (pairs_.size() > other.pairs_.size()) return false;
    return std::includes(other.pairs_.begin(), other.pairs_.end(), pairs_.begin(), pairs_.end());
  }

  /// Keep the pairs whose source satisfies `keep`.
  template <class Pred>
  PartialBijection restrict_domain(Pred keep) const {
    PartialBijection out;
    for (const auto& p : pairs_) {
      if (keep(p.first)) out.pairs_.push_back(p);
    }
    return out;
  }

  /// s * t, t applied first.
  friend PartialBijection operator*(const PartialBijection& s, const PartialBijection& t) {
    PartialBijection out;
    for (const auto& [x, y] : t.pairs_) {
      if (auto z = s(y)) out.pairs_.emplace_back(x, *z);
    }
    // t's pairs are sorted by source, so the result is too.
    return out;
  }

  friend bool operator==(const PartialBijection&, const PartialBijection&) = default;

private:
  typename std::vector<Pair>::const_iterator find(const T& x) const {
    auto it = std::lower_bound(pairs_.begin(), pairs_.end(), x,
                               [](const Pair& p, const T& v) { return p.first < v; });
    if (it != pairs_.end() && it->first == x) return it;
    return pairs_.end();
  }

  std::vector<Pair> pairs_;
};

template <class T>
PartialBijection<T> compose(const PartialBijection<T>& s, const PartialBijection<T>& t) {
  return s * t;
}

template <class T>
PartialBijection<T> invert(const PartialBijection<T>& s) {
  return s.inverse();
}

template <class T>
bool is_idempotent(const PartialBijection<T>& s) {
  return s.is_idempotent();
}

template <class T>
bool leq(const PartialBijection<T>& s, const PartialBijection<T>& t) {
  return s.leq(t);
}

/// Partial translation of a space of graphs.
using PartialTranslation = PartialBijection<Point>;

/// sup of d(x, s(x)) over the domain; 0 for the empty translation. Finite
/// exactly when s belongs to I_b(X).
inline Extended translation_length(const SpaceOfGraphs& x, const PartialTranslation& s) {
  Extended best = 0;
  for (const auto& [src, dst] : s.pairs()) {
    x.require(src);
    x.require(dst);
    if (src == dst) continue;
    if (src.component != dst.component) {
      best = std::max(best, x.cross_distance(src.component, dst.component));
    } else {
      best = std::max(best, bfs_distances(x.component(src.component), src.vertex)[dst.vertex]);
    }
  }
  return best;
}

}  // namespace coarse_lab
