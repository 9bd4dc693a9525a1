#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <string>
#include <vector>

#include "coarse_lab/errors.hpp"

namespace coarse_lab {

/// A letter of the free group on generators a_1..a_k: +j stands for a_j and
/// -j for its inverse. Zero is not a letter.
using Letter = std::int32_t;

inline constexpr std::uint32_t generator_of(Letter l) noexcept {
  return static_cast<std::uint32_t>(l < 0 ? -l : l);
}

// Total order on letters: a_1 < a_1^-1 < a_2 < a_2^-1 < ...
inline constexpr std::uint32_t letter_rank(Letter l) noexcept {
  return 2 * (generator_of(l) - 1) + (l < 0 ? 1 : 0);
}

/// Reduced word of the free group F_k. Construction from raw letters checks
/// reducedness; use reduce() to normalise an arbitrary letter sequence.
class FreeWord {
public:
  FreeWord() = default;

  FreeWord(std::initializer_list<Letter> letters) : FreeWord(std::vector<Letter>(letters)) {}

  explicit FreeWord(std::vector<Letter> letters) : letters_(std::move(letters)) {
    for (std::size_t i = 0; i < letters_.size(); ++i) {
      if (letters_[i] == 0) throw InputDomainError("letter 0 is not a generator");
      if (i > 0 && letters_[i] == -letters_[i - 1]) {
        throw PreconditionError("word is not reduced at position " + std::to_string(i));
      }
    }
  }

  static FreeWord reduce(const std::vector<Letter>& letters) {
    std::vector<Letter> out;
    out.reserve(letters.size());
    for (Letter l : letters) {
      if (l == 0) throw InputDomainError("letter 0 is not a generator");
      if (!out.empty() && out.back() == -l) {
        out.pop_back();
      } else {
        out.push_back(l);
      }
    }
    FreeWord w;
    w.letters_ = std::move(out);
    return w;
  }

  static FreeWord power(Letter generator, std::int64_t exponent) {
    std::vector<Letter> letters(static_cast<std::size_t>(exponent < 0 ? -exponent : exponent),
                                exponent < 0 ? -generator : generator);
    return FreeWord(std::move(letters));
  }

  const std::vector<Letter>& letters() const noexcept { return letters_; }
  std::size_t length() const noexcept { return letters_.size(); }
  bool empty() const noexcept { return letters_.empty(); }

  /// Largest generator index used (0 for the identity).
  std::uint32_t max_generator() const noexcept {
    std::uint32_t m = 0;
    for (Letter l : letters_) m = std::max(m, generator_of(l));
    return m;
  }

  FreeWord inverse() const {
    FreeWord w;
    w.letters_.assign(letters_.rbegin(), letters_.rend());
    for (Letter& l : w.letters_) l = -l;
    return w;
  }

  friend FreeWord operator*(const FreeWord& a, const FreeWord& b) {
    std::vector<Letter> letters = a.letters_;
    letters.insert(letters.end(), b.letters_.begin(), b.letters_.end());
    return reduce(letters);
  }

  friend bool operator==(const FreeWord&, const FreeWord&) = default;

  /// Shortlex order, letters compared by letter_rank.
  friend std::strong_ordering operator<=>(const FreeWord& a, const FreeWord& b) {
    if (auto c = a.length() <=> b.length(); c != 0) return c;
    for (std::size_t i = 0; i < a.length(); ++i) {
      if (auto c = letter_rank(a.letters_[i]) <=> letter_rank(b.letters_[i]); c != 0) return c;
    }
    return std::strong_ordering::equal;
  }

  /// "e" for the identity, otherwise e.g. "a1 a2^-1 a1".
  std::string to_string() const {
    if (letters_.empty()) return "e";
    std::string s;
    for (std::size_t i = 0; i < letters_.size(); ++i) {
      if (i > 0) s += ' ';
      s += 'a' + std::to_string(generator_of(letters_[i]));
      if (letters_[i] < 0) s += "^-1";
    }
    return s;
  }

private:
  std::vector<Letter> letters_;
};

/// All reduced words over k generators of length at most max_length, in
/// shortlex order. There are 1 + sum_{n=1}^{L} 2k (2k-1)^{n-1} of them.
inline std::vector<FreeWord> enumerate_reduced_words(std::uint32_t k, std::size_t max_length) {
  std::vector<Letter> alphabet;
  for (std::uint32_t j = 1; j <= k; ++j) {
    alphabet.push_back(static_cast<Letter>(j));
    alphabet.push_back(-static_cast<Letter>(j));
  }
  std::vector<FreeWord> out{FreeWord{}};
  std::size_t level_begin = 0;
  for (std::size_t len = 1; len <= max_length; ++len) {
    const std::size_t level_end = out.size();
    for (std::size_t i = level_begin; i < level_end; ++i) {
      for (Letter l : alphabet) {
        const auto& base = out[i].letters();
        if (!base.empty() && base.back() == -l) continue;
        std::vector<Letter> next = base;
        next.push_back(l);
        out.emplace_back(std::move(next));
      }
    }
    level_begin = level_end;
  }
  return out;
}

}  // namespace coarse_lab

template <>
struct std::hash<coarse_lab::FreeWord> {
  std::size_t operator()(const coarse_lab::FreeWord& w) const noexcept {
    std::size_t h = 0xcbf29ce484222325ULL;
    for (auto l : w.letters()) {
      h ^= static_cast<std::size_t>(static_cast<std::uint32_t>(l));
      h *= 0x100000001b3ULL;
    }
    return h;
  }
};
