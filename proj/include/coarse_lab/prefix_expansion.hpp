#pragma once

#include <algorithm>
#include <set>
#include <utility>

#include "coarse_lab/errors.hpp"
#include "coarse_lab/free_word.hpp"

namespace coarse_lab {

/// Element (X, g) of the prefix expansion of the free group: X is a finite
/// set of reduced words containing both the identity and g.
class PrefixElement {
public:
  /// The unit ({e}, e).
  PrefixElement() : words_{FreeWord{}} {}

  PrefixElement(std::set<FreeWord> words, FreeWord g)
      : words_(std::move(words)), g_(std::move(g)) {
    if (!words_.contains(FreeWord{}) || !words_.contains(g_)) {
      throw InputDomainError("prefix element word set must contain e and g");
    }
  }

  /// The maximal element ({e, g}, g).
  static PrefixElement maximal(const FreeWord& g) { return {{FreeWord{}, g}, g}; }

  const std::set<FreeWord>& words() const noexcept { return words_; }
  const FreeWord& group_part() const noexcept { return g_; }
  bool is_idempotent() const noexcept { return g_.empty(); }

  friend bool operator==(const PrefixElement&, const PrefixElement&) = default;

private:
  std::set<FreeWord> words_;
  FreeWord g_;
};

/// (X, g)(Y, h) = (X ∪ gY, gh).
inline PrefixElement prefix_multiply(const PrefixElement& a, const PrefixElement& b) {
  std::set<FreeWord> words = a.words();
  for (const auto& y : b.words()) words.insert(a.group_part() * y);
  return {std::move(words), a.group_part() * b.group_part()};
}

/// (X, g)^{-1} = (g^{-1} X, g^{-1}).
inline PrefixElement prefix_inverse(const PrefixElement& a) {
  const FreeWord g_inv = a.group_part().inverse();
  std::set<FreeWord> words;
  for (const auto& x : a.words()) words.insert(g_inv * x);
  return {std::move(words), g_inv};
}

/// Natural order: (X, g) <= (Y, h) iff g = h and Y ⊆ X.
inline bool prefix_leq(const PrefixElement& a, const PrefixElement& b) {
  return a.group_part() == b.group_part() &&
         std::includes(a.words().begin(), a.words().end(), b.words().begin(), b.words().end());
}

/// Projection onto the maximal group image F_k.
inline FreeWord prefix_sigma(const PrefixElement& a) { return a.group_part(); }

}  // namespace coarse_lab
