#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <shared_mutex>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "coarse_lab/errors.hpp"
#include "coarse_lab/free_word.hpp"
#include "coarse_lab/graph.hpp"
#include "coarse_lab/orientation.hpp"
#include "coarse_lab/partial_bijection.hpp"

namespace coarse_lab {

/// Partial action θ: F_k -> I_b(X) induced by an edge labelling. θ_{a_j}
/// moves a vertex along its unique outgoing a_j edge and θ_{a_j^-1} is the
/// inverse; for a word w = l_1 ... l_m, θ_w = θ_{l_1} ∘ ... ∘ θ_{l_m}, so the
/// rightmost letter acts first. θ_w never mixes components.
///
/// theta() memoises by word. Concurrent calls are safe and return equal
/// values; entries are never evicted, so returned references stay valid for
/// the lifetime of the action.
class ThetaAction {
public:
  static constexpr std::int64_t kUndefined = -1;

  /// Requires a labelling that passes validate_labelling.
  explicit ThetaAction(EdgeLabelling labelling) : labelling_(std::move(labelling)) {
    const auto report = validate_labelling(labelling_);
    if (!report.pass) {
      const auto& v = *report.violation;
      throw InputDomainError("invalid labelling at component " + std::to_string(v.component) + ", vertex " +
                             std::to_string(v.vertex) + ": " + v.reason);
    }
    build_generators();
  }

  /// Accepts labellings that skip edges or label an edge in both directions
  /// (used to build counterexamples). Each label must still be a partial
  /// bijection and every labelled pair must be an edge.
  static ThetaAction unchecked(EdgeLabelling labelling) { return ThetaAction(std::move(labelling), Unchecked{}); }

  ThetaAction(const ThetaAction& other) : labelling_(other.labelling_), successor_(other.successor_) {}
  ThetaAction(ThetaAction&& other) noexcept
      : labelling_(std::move(other.labelling_)), successor_(std::move(other.successor_)) {}

  const EdgeLabelling& labelling() const noexcept { return labelling_; }
  const SpaceOfGraphs& space() const noexcept { return *labelling_.space; }
  std::uint32_t k() const noexcept { return labelling_.k; }

  /// Image of every point (dense index) under θ_w, kUndefined outside dom θ_w.
  std::vector<std::int64_t> images(const FreeWord& w) const {
    check_alphabet(w);
    const std::size_t n = space().point_count();
    std::vector<std::int64_t> img(n);
    for (std::size_t x = 0; x < n; ++x) img[x] = static_cast<std::int64_t>(x);
    const auto& letters = w.letters();
    for (auto it = letters.rbegin(); it != letters.rend(); ++it) {
      const auto& step = letter_map(*it);
      for (auto& y : img) {
        if (y != kUndefined) y = step[static_cast<std::size_t>(y)];
      }
    }
    return img;
  }

  const PartialTranslation& theta(const FreeWord& w) const {
    {
      std::shared_lock lock(cache_mutex_);
      if (auto it = cache_.find(w); it != cache_.end()) return it->second;
    }
    const auto img = images(w);
    std::vector<PartialTranslation::Pair> pairs;
    for (std::size_t x = 0; x < img.size(); ++x) {
      if (img[x] != kUndefined) pairs.emplace_back(space().point_at(x), space().point_at(static_cast<std::size_t>(img[x])));
    }
    PartialTranslation t(std::move(pairs));
    std::unique_lock lock(cache_mutex_);
    return cache_.try_emplace(w, std::move(t)).first->second;
  }

  /// |dom θ_w ∩ X_i| for every component.
  std::vector<std::size_t> domain_sizes(const FreeWord& w) const {
    std::vector<std::size_t> sizes(space().component_count(), 0);
    for (const auto& [x, y] : theta(w).pairs()) ++sizes[x.component];
    return sizes;
  }

private:
  struct Unchecked {};

  ThetaAction(EdgeLabelling labelling, Unchecked) : labelling_(std::move(labelling)) {
    if (!labelling_.space) throw InputDomainError("labelling has no space");
    for (const auto& e : labelling_.edges) {
      if (e.component >= space().component_count() || !space().component(e.component).has_edge(e.tail, e.head)) {
        throw InputDomainError("labelled pair is not an edge");
      }
      if (e.gen < 1 || e.gen > labelling_.k) throw InputDomainError("label outside 1..k");
    }
    build_generators();
  }

  void build_generators() {
    const std::size_t n = space().point_count();
    successor_.assign(2 * static_cast<std::size_t>(labelling_.k), std::vector<std::int64_t>(n, kUndefined));
    for (const auto& e : labelling_.edges) {
      const auto tail = static_cast<std::int64_t>(space().index_of({e.component, e.tail}));
      const auto head = static_cast<std::int64_t>(space().index_of({e.component, e.head}));
      auto& fwd = successor_[2 * (e.gen - 1)];
      auto& bwd = successor_[2 * (e.gen - 1) + 1];
      if (fwd[tail] != kUndefined || bwd[head] != kUndefined) {
        throw InputDomainError("label a" + std::to_string(e.gen) + " is not a partial bijection at component " +
                               std::to_string(e.component));
      }
      fwd[tail] = head;
      bwd[head] = tail;
    }
  }

  const std::vector<std::int64_t>& letter_map(Letter l) const {
    return successor_[2 * (generator_of(l) - 1) + (l < 0 ? 1 : 0)];
  }

  void check_alphabet(const FreeWord& w) const {
    if (w.max_generator() > labelling_.k) {
      throw InputDomainError("word " + w.to_string() + " uses a generator beyond k = " + std::to_string(labelling_.k));
    }
  }

  EdgeLabelling labelling_;
  std::vector<std::vector<std::int64_t>> successor_;  // [2(j-1)] = a_j, [2(j-1)+1] = a_j^-1
  mutable std::shared_mutex cache_mutex_;
  mutable std::unordered_map<FreeWord, PartialTranslation> cache_;
};

inline const PartialTranslation& theta(const ThetaAction& action, const FreeWord& w) { return action.theta(w); }

/// Girth of every component of the action's space.
inline std::vector<Extended> component_girths(const SpaceOfGraphs& x) {
  std::vector<Extended> out;
  for (const auto& g : x.components()) out.push_back(girth(g));
  return out;
}

// ---------------------------------------------------------------------------
// Dual prehomomorphism

struct PrehomViolation {
  FreeWord g;
  FreeWord h;
  Point point;
  std::string detail;
};

struct DualPrehomReport {
  std::size_t max_length = 0;
  std::size_t pairs_checked = 0;
  std::vector<PrehomViolation> violations;
  bool pass() const noexcept { return violations.empty(); }
};

/// Checks θ_g θ_h <= θ_{gh} for all reduced |g|, |h| <= max_length.
inline DualPrehomReport check_dual_prehom(const ThetaAction& action, std::size_t max_length) {
  if (max_length < 1) throw InputDomainError("max word length must be at least 1");
  DualPrehomReport r;
  r.max_length = max_length;
  const auto words = enumerate_reduced_words(action.k(), max_length);
  for (const auto& g : words) {
    for (const auto& h : words) {
      ++r.pairs_checked;
      const auto product = action.theta(g) * action.theta(h);
      const auto& target = action.theta(g * h);
      if (product.leq(target)) continue;
      for (const auto& [x, y] : product.pairs()) {
        const auto t = target(x);
        if (!t || *t != y) {
          r.violations.push_back({g, h, x, t ? "θ_gh moves the point elsewhere" : "θ_gh undefined at the point"});
          break;
        }
      }
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// Freeness and 3-colouring

/// {x in X_i : θ_w(x) = x} for a nonempty reduced w.
inline std::vector<Point> fixed_points(const ThetaAction& action, const FreeWord& w, std::size_t component) {
  if (w.empty()) throw PreconditionError("fixed_points needs a nonempty word");
  if (component >= action.space().component_count()) throw InputDomainError("component out of range");
  std::vector<Point> out;
  for (const auto& [x, y] : action.theta(w).pairs()) {
    if (x.component == component && x == y) out.push_back(x);
  }
  return out;
}

/// Colouring of the functional graph x -- θ_w(x) on components >= i_start.
/// colours[p - offset(i_start)] is the colour of dense point p.
struct ThreeColouring {
  std::size_t first_component = 0;
  std::size_t first_point = 0;
  std::vector<std::uint8_t> colours;

  std::uint8_t colour_of(const SpaceOfGraphs& x, Point p) const { return colours.at(x.index_of(p) - first_point); }
};

/// Every vertex of the functional graph of θ_w has in- and out-degree at most
/// one, so its connected pieces are paths and cycles. Paths are walked from
/// their source and cycles from their lowest point, colouring alternately 0, 1
/// and closing odd cycles with colour 2. θ_w then maps each colour class into
/// the union of the other two.
inline ThreeColouring three_coloring(const ThetaAction& action, const FreeWord& w, std::size_t i_start) {
  if (w.empty()) throw PreconditionError("three_coloring needs a nonempty word");
  const SpaceOfGraphs& x = action.space();
  ThreeColouring out;
  out.first_component = i_start;
  if (i_start >= x.component_count()) return out;
  out.first_point = x.offset(i_start);
  const std::size_t n = x.point_count() - out.first_point;
  const auto img_all = action.images(w);
  std::vector<std::int64_t> next(n, ThetaAction::kUndefined);
  std::vector<bool> has_pred(n, false);
  for (std::size_t p = 0; p < n; ++p) {
    const auto y = img_all[out.first_point + p];
    if (y == ThetaAction::kUndefined) continue;
    const auto local = static_cast<std::size_t>(y) - out.first_point;
    if (local == p) {
      const Point fp = x.point_at(out.first_point + p);
      throw PreconditionError("θ_" + w.to_string() + " fixes point (" + std::to_string(fp.component) + "," +
                              std::to_string(fp.vertex) + ")");
    }
    next[p] = static_cast<std::int64_t>(local);
    has_pred[local] = true;
  }
  constexpr std::uint8_t kUnset = 255;
  out.colours.assign(n, kUnset);
  auto walk = [&](std::size_t start) {
    std::uint8_t c = 0;
    std::size_t p = start;
    std::size_t last = start;
    while (out.colours[p] == kUnset) {
      out.colours[p] = c;
      c = static_cast<std::uint8_t>(1 - c);
      last = p;
      if (next[p] == ThetaAction::kUndefined) return;
      p = static_cast<std::size_t>(next[p]);
    }
    // Closed a cycle back at `start`; an odd cycle gives last and start equal colours.
    if (out.colours[last] == out.colours[p]) out.colours[last] = 2;
  };
  for (std::size_t p = 0; p < n; ++p) {
    if (!has_pred[p]) walk(p);
  }
  for (std::size_t p = 0; p < n; ++p) {
    if (out.colours[p] == kUnset) walk(p);
  }
  return out;
}

/// True iff colour(x) != colour(θ_w(x)) for every x in the coloured range.
inline bool verify_three_coloring(const ThetaAction& action, const FreeWord& w, const ThreeColouring& c) {
  const auto img = action.images(w);
  for (std::size_t p = 0; p < c.colours.size(); ++p) {
    if (c.colours[p] > 2) return false;
    const auto y = img[c.first_point + p];
    if (y == ThetaAction::kUndefined) continue;
    if (c.colours[static_cast<std::size_t>(y) - c.first_point] == c.colours[p]) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Persistence and the labelling map Φ

enum class Persistence { Persistent, Finite, Undecided };

inline const char* to_string(Persistence p) {
  switch (p) {
    case Persistence::Persistent: return "PERSISTENT";
    case Persistence::Finite: return "FINITE";
    case Persistence::Undecided: return "UNDECIDED";
  }
  return "?";
}

struct PersistenceVerdict {
  FreeWord word;
  Persistence verdict = Persistence::Undecided;
  std::vector<std::size_t> domain_sizes;  // per component of the truncation
  std::size_t horizon = 0;                // components in the truncation
};

/// Components [first, horizon) forming the top half of a truncation of
/// `horizon` components: the last floor(horizon / 2) of them.
inline std::pair<std::size_t, std::size_t> top_half(std::size_t horizon) { return {horizon - horizon / 2, horizon}; }

/// horizon = 0 means "all components".
inline std::size_t effective_horizon(const SpaceOfGraphs& x, std::size_t horizon) {
  return horizon == 0 ? x.component_count() : std::min(horizon, x.component_count());
}

/// Truncation proxy for "θ_w has infinite support". PERSISTENT: nonempty
/// domain in every component of the top half of the truncation. FINITE:
/// empty domain in all of them. UNDECIDED otherwise, and whenever the top
/// half is empty (a single-component truncation).
inline PersistenceVerdict classify_persistence(const ThetaAction& action, const FreeWord& w, std::size_t horizon = 0) {
  PersistenceVerdict v;
  v.word = w;
  v.horizon = effective_horizon(action.space(), horizon);
  auto sizes = action.domain_sizes(w);
  sizes.resize(v.horizon);
  v.domain_sizes = sizes;
  const auto [lo, hi] = top_half(v.horizon);
  if (lo == hi) return v;
  const auto nonempty = std::count_if(sizes.begin() + static_cast<std::ptrdiff_t>(lo),
                                      sizes.begin() + static_cast<std::ptrdiff_t>(hi),
                                      [](std::size_t s) { return s > 0; });
  if (static_cast<std::size_t>(nonempty) == hi - lo) {
    v.verdict = Persistence::Persistent;
  } else if (nonempty == 0) {
    v.verdict = Persistence::Finite;
  }
  return v;
}

/// Φ(θ_w): w when θ_w is persistent, nullopt (the zero) when finite.
inline std::optional<FreeWord> phi(const ThetaAction& action, const FreeWord& w, std::size_t horizon = 0) {
  const auto v = classify_persistence(action, w, horizon);
  switch (v.verdict) {
    case Persistence::Persistent: return w;
    case Persistence::Finite: return std::nullopt;
    case Persistence::Undecided: break;
  }
  throw TruncationInsufficientError("persistence of θ_" + w.to_string() + " is undecided at horizon " +
                                    std::to_string(v.horizon));
}

/// Restriction of s to the top half of the truncation (its persistent part).
inline PartialTranslation persistent_part(const ThetaAction& action, const PartialTranslation& s,
                                          std::size_t horizon = 0) {
  const auto [lo, hi] = top_half(effective_horizon(action.space(), horizon));
  return s.restrict_domain([lo = lo, hi = hi](const Point& p) { return p.component >= lo && p.component < hi; });
}

/// Φ for an element s of the generated monoid known to lie below θ_above
/// (for a product θ_{w_1} ... θ_{w_m}, above = w_1 ... w_m reduced). Φ(s) is
/// σ of the maximal element over s: `above` if s survives on the persistent
/// part, the zero otherwise. Uniqueness of that maximal element is what
/// check_monoid_structure clause (2) witnesses.
inline std::optional<FreeWord> phi_of(const ThetaAction& action, const PartialTranslation& s, const FreeWord& above,
                                      std::size_t horizon = 0) {
  if (!s.leq(action.theta(above))) {
    throw PreconditionError("element is not below θ_" + above.to_string());
  }
  if (persistent_part(action, s, horizon).empty()) return std::nullopt;
  return phi(action, above, horizon);
}

struct PhiReport {
  std::size_t words_checked = 0;
  std::size_t products_checked = 0;
  std::vector<std::string> failures;
  bool pass() const noexcept { return failures.empty(); }
};

/// Φ(θ_w) = w for persistent |w| <= L, Φ(θ_g θ_h) ∈ {gh, 0}, and Φ(s) = e
/// only if s is idempotent on the persistent part.
inline PhiReport check_phi(const ThetaAction& action, std::size_t max_length, std::size_t horizon = 0) {
  PhiReport r;
  const auto words = enumerate_reduced_words(action.k(), max_length);
  for (const auto& w : words) {
    if (classify_persistence(action, w, horizon).verdict != Persistence::Persistent) continue;
    ++r.words_checked;
    const auto image = phi(action, w, horizon);
    if (!image || *image != w) r.failures.push_back("Φ(θ_" + w.to_string() + ") != " + w.to_string());
  }
  const auto half = enumerate_reduced_words(action.k(), std::max<std::size_t>(1, max_length / 2));
  for (const auto& g : half) {
    for (const auto& h : half) {
      ++r.products_checked;
      const auto s = action.theta(g) * action.theta(h);
      std::optional<FreeWord> image;
      try {
        image = phi_of(action, s, g * h, horizon);
      } catch (const std::exception& e) {
        r.failures.push_back("Φ(θ_" + g.to_string() + " θ_" + h.to_string() + "): " + e.what());
        continue;
      }
      if (image && *image != g * h) {
        r.failures.push_back("Φ(θ_" + g.to_string() + " θ_" + h.to_string() + ") = " + image->to_string());
      }
      if (image && image->empty() && !persistent_part(action, s, horizon).is_idempotent()) {
        r.failures.push_back("Φ = e on a non-idempotent product θ_" + g.to_string() + " θ_" + h.to_string());
      }
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// Structure of the generated monoid at truncation

struct ClauseResult {
  bool pass = true;
  std::size_t checked = 0;
  std::size_t skipped = 0;  // vacuous instances (nothing left beyond the threshold)
  std::vector<std::string> witnesses;
};

struct StructureReport {
  std::size_t max_length = 0;
  std::size_t horizon = 0;
  ClauseResult not_idempotent;     // (1)
  ClauseResult unique_maximal;     // (2)
  ClauseResult zero_e_unitary;     // (3)
  bool pass() const noexcept { return not_idempotent.pass && unique_maximal.pass && zero_e_unitary.pass; }
};

namespace detail {
inline std::string point_string(Point p) {
  return "(" + std::to_string(p.component) + "," + std::to_string(p.vertex) + ")";
}
}  // namespace detail

/// Finite shadows of the structure lemma for the monoid generated by θ:
///  (1) a persistent θ_w, w != e, restricted to components of girth > |w| is
///      not idempotent;
///  (2) for products s = θ_{w_1} ... θ_{w_m} (m <= 3, |w_i| <= L):
///      s <= θ_{w_1 ... w_m}, and the persistent θ_g (|g| <= mL) lying above
///      s are exactly θ_{w_1...w_m}. Candidate g is compared on components of
///      girth > |g| + |w_1...w_m|, where two distinct words cannot agree;
///  (3) no persistent θ_w, w != e, lies above a nonempty idempotent on
///      components of girth > |w|.
/// Products are the instances θ_g θ_g^-1 θ_g for every |g| <= L plus `samples`
/// random products drawn with `seed`.
inline StructureReport check_monoid_structure(const ThetaAction& action, std::size_t max_length,
                                              std::size_t horizon = 0, std::size_t samples = 200,
                                              std::uint64_t seed = 1) {
  if (max_length < 1) throw InputDomainError("max word length must be at least 1");
  StructureReport r;
  r.max_length = max_length;
  r.horizon = effective_horizon(action.space(), horizon);
  const auto girths = component_girths(action.space());
  const auto words = enumerate_reduced_words(action.k(), max_length);
  auto beyond = [&](std::size_t length) {
    return [&girths, length](const Point& p) { return girths[p.component] == kInfinite || girths[p.component] > length; };
  };
  auto persistent = [&](const FreeWord& w) {
    return classify_persistence(action, w, horizon).verdict == Persistence::Persistent;
  };

  for (const auto& w : words) {
    if (w.empty() || !persistent(w)) continue;
    const auto restricted = action.theta(w).restrict_domain(beyond(w.length()));
    if (restricted.empty()) {
      ++r.not_idempotent.skipped;
      ++r.zero_e_unitary.skipped;
      continue;
    }
    ++r.not_idempotent.checked;
    if (restricted.is_idempotent()) {
      r.not_idempotent.pass = false;
      r.not_idempotent.witnesses.push_back("θ_" + w.to_string() + " is idempotent beyond girth " +
                                           std::to_string(w.length()) + " at " +
                                           detail::point_string(restricted.pairs().front().first));
    }
    ++r.zero_e_unitary.checked;
    for (const auto& [x, y] : restricted.pairs()) {
      if (x == y) {
        r.zero_e_unitary.pass = false;
        r.zero_e_unitary.witnesses.push_back("θ_" + w.to_string() + " lies above the idempotent at " +
                                             detail::point_string(x));
        break;
      }
    }
  }

  std::vector<std::vector<FreeWord>> products;
  for (const auto& g : words) products.push_back({g, g.inverse(), g});
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick_word(0, words.size() - 1);
  std::uniform_int_distribution<std::size_t> pick_m(1, 3);
  for (std::size_t s = 0; s < samples; ++s) {
    std::vector<FreeWord> factors(pick_m(rng));
    for (auto& f : factors) f = words[pick_word(rng)];
    products.push_back(std::move(factors));
  }

  const auto candidates = enumerate_reduced_words(action.k(), 3 * max_length);
  for (const auto& factors : products) {
    PartialTranslation s = action.theta(FreeWord{});
    FreeWord reduced;
    for (const auto& f : factors) {
      s = s * action.theta(f);
      reduced = reduced * f;
    }
    std::string label;
    for (const auto& f : factors) label += "θ_" + (f.empty() ? std::string("e") : "(" + f.to_string() + ")");
    if (s.empty()) {
      ++r.unique_maximal.skipped;
      continue;
    }
    if (!s.leq(action.theta(reduced))) {
      r.unique_maximal.pass = false;
      r.unique_maximal.witnesses.push_back(label + " is not below θ_" + reduced.to_string());
      continue;
    }
    // Only components where s is defined matter; beyond their largest girth
    // no candidate can be compared.
    Extended widest = 0;
    for (const auto& [x, y] : s.pairs()) widest = std::max(widest, girths[x.component]);
    std::size_t bound = factors.size() * max_length;
    if (widest != kInfinite) {
      bound = widest > reduced.length() + 1 ? std::min<std::size_t>(bound, widest - 1 - reduced.length()) : 0;
    }
    std::vector<FreeWord> above;
    bool any_restricted = false;
    for (const auto& g : candidates) {
      if (g.length() > bound) break;
      const auto restricted = s.restrict_domain(beyond(g.length() + reduced.length()));
      if (restricted.empty()) continue;
      if (g == reduced) any_restricted = true;
      if (restricted.leq(action.theta(g)) && persistent(g)) above.push_back(g);
    }
    if (!any_restricted) {
      ++r.unique_maximal.skipped;
      continue;
    }
    ++r.unique_maximal.checked;
    if (above.size() != 1 || above.front() != reduced) {
      r.unique_maximal.pass = false;
      std::string found;
      for (const auto& g : above) found += (found.empty() ? "" : ", ") + g.to_string();
      r.unique_maximal.witnesses.push_back(label + ": maximal candidates {" + found + "}, expected " +
                                           reduced.to_string());
    }
  }
  return r;
}

}  // namespace coarse_lab
