/*
 * Copyright 2026 The contrafix Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#pragma once

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace contrafix {

/// One letter of the alphabet {a, b}; `a` sorts before `b`.
enum class Char : char { a = 'a', b = 'b' };

constexpr Char other(Char c) noexcept { return c == Char::a ? Char::b : Char::a; }

constexpr char to_char(Char c) noexcept { return static_cast<char>(c); }

/**
 * A finite word over {a, b}.
 *
 * Words are plain values ordered lexicographically (a < b, a proper prefix
 * before its extensions). The textual token for the empty word is "_".
 */
class Word {
 public:
  Word() = default;

  /// Builds a word from raw letters; every character must be 'a' or 'b'.
  explicit Word(std::string letters) : letters_(std::move(letters)) {
    for (char ch : letters_) {
      if (ch != 'a' && ch != 'b') {
        throw std::invalid_argument("word letters must be 'a' or 'b', got '" + letters_ + "'");
      }
    }
  }

  explicit Word(const char* letters) : Word(std::string(letters)) {}

  static Word repeat(Char c, std::size_t n) { return Word(std::string(n, to_char(c)), trusted{}); }

  /// Parses a CLI or file token, where "_" stands for the empty word.
  static Word parse(std::string_view token) {
    if (token == "_") return Word{};
    return Word(std::string(token));
  }

  std::string token() const { return letters_.empty() ? std::string("_") : letters_; }

  const std::string& letters() const noexcept { return letters_; }
  std::size_t length() const noexcept { return letters_.size(); }
  bool empty() const noexcept { return letters_.empty(); }

  /// 0-indexed letter access.
  Char operator[](std::size_t i) const noexcept { return static_cast<Char>(letters_[i]); }
  Char back() const noexcept { return static_cast<Char>(letters_.back()); }

  Word prefix(std::size_t n) const { return Word(letters_.substr(0, n), trusted{}); }
  Word drop_last() const { return Word(letters_.substr(0, letters_.size() - 1), trusted{}); }

  Word operator+(const Word& rhs) const { return Word(letters_ + rhs.letters_, trusted{}); }
  Word operator+(Char c) const { return Word(letters_ + to_char(c), trusted{}); }
  friend Word operator+(Char c, const Word& w) { return Word(to_char(c) + w.letters_, trusted{}); }

  friend bool operator==(const Word&, const Word&) = default;
  friend std::strong_ordering operator<=>(const Word& lhs, const Word& rhs) {
    return lhs.letters_.compare(rhs.letters_) <=> 0;
  }

 private:
  struct trusted {};
  Word(std::string letters, trusted) : letters_(std::move(letters)) {}

  std::string letters_;
};

inline std::ostream& operator<<(std::ostream& os, const Word& w) { return os << w.token(); }

inline Word concat(const Word& u, const Word& v) { return u + v; }

inline bool is_prefix(const Word& u, const Word& v) {
  return u.length() <= v.length() && v.letters().compare(0, u.length(), u.letters()) == 0;
}

/// The prefix of w^∞ of length `len`.
inline Word periodic_prefix(const Word& w, std::size_t len) {
  if (w.empty()) throw std::invalid_argument("no infinite power of empty word");
  std::string out(len, 'a');
  for (std::size_t i = 0; i < len; ++i) out[i] = w.letters()[i % w.length()];
  return Word(std::move(out));
}

/// Letter i (0-indexed) of w^∞.
inline Char periodic_at(const Word& w, std::size_t i) noexcept { return w[i % w.length()]; }

/**
 * Border array of `w`: entry i is the length of the longest proper border of
 * the prefix of length i + 1.
 */
inline std::vector<std::size_t> border_array(const Word& w) {
  const std::string& s = w.letters();
  std::vector<std::size_t> border(s.size(), 0);
  std::size_t k = 0;
  for (std::size_t i = 1; i < s.size(); ++i) {
    while (k > 0 && s[i] != s[k]) k = border[k - 1];
    if (s[i] == s[k]) ++k;
    border[i] = k;
  }
  return border;
}

/// Smallest p >= 1 with w[i] == w[i + p] wherever both are defined.
inline std::size_t minimal_period(const Word& w) {
  if (w.empty()) throw std::invalid_argument("minimal period of the empty word is undefined");
  return w.length() - border_array(w).back();
}

/// w is forbidden iff it is a prefix of some u^∞ with l(w) > l(u)^2; the
/// shortest such u has length minimal_period(w).
inline bool is_available(const Word& w) {
  if (w.empty()) return true;
  const std::size_t p = minimal_period(w);
  return w.length() <= p * p;
}

/// Nonempty and not a proper power.
inline bool is_minimal(const Word& w) {
  if (w.empty()) return false;
  const std::size_t p = minimal_period(w);
  return !(p < w.length() && w.length() % p == 0);
}

/// The shortest u with u^∞ = w^∞.
inline Word primitive_root(const Word& w) {
  if (w.empty()) throw std::invalid_argument("the empty word has no primitive root");
  const std::size_t p = minimal_period(w);
  return w.length() % p == 0 ? w.prefix(p) : w;
}

/// 1-indexed position of the first letter where u differs from w^∞.
inline std::optional<std::size_t> first_deviation(const Word& u, const Word& w) {
  if (w.empty()) throw std::invalid_argument("no infinite power of empty word");
  for (std::size_t i = 0; i < u.length(); ++i) {
    if (u[i] != periodic_at(w, i)) return i + 1;
  }
  return std::nullopt;
}

/**
 * The available word of length l(w)^2 + n that follows w^∞ up to its last
 * letter and then leaves it.
 */
inline Word available_extension(const Word& w, std::uint64_t n) {
  if (!is_minimal(w)) throw std::invalid_argument("available_extension needs a minimal word, got " + w.token());
  if (n < 1) throw std::invalid_argument("available_extension index must be positive");
  const std::size_t base = w.length() * w.length() + static_cast<std::size_t>(n) - 1;
  return periodic_prefix(w, base) + other(periodic_at(w, base));
}

/// Returns (u, s) with s the last letter of w and s·w = u·s.
inline std::pair<Word, Char> rotate_for_char(const Word& w) {
  if (w.empty()) throw std::invalid_argument("cannot rotate the empty word");
  const Char s = w.back();
  return {s + w.drop_last(), s};
}

/// All words of length exactly n in lexicographic order.
inline std::vector<Word> words_of_length(std::size_t n) {
  std::vector<Word> out;
  out.reserve(std::size_t{1} << n);
  for (std::size_t bits = 0; bits < (std::size_t{1} << n); ++bits) {
    std::string s(n, 'a');
    for (std::size_t i = 0; i < n; ++i) {
      if (bits >> (n - 1 - i) & 1U) s[i] = 'b';
    }
    out.emplace_back(std::move(s));
  }
  return out;
}

/**
 * The forbidden words of length n in lexicographic order. A forbidden word
 * is the prefix of x^∞ for exactly one primitive x with l(x)² < n, so these
 * are few even when 2^n is huge.
 */
inline std::vector<Word> forbidden_words_of_length(std::size_t n) {
  std::vector<Word> out;
  for (std::size_t q = 1; q * q < n; ++q) {
    for (const Word& x : words_of_length(q)) {
      if (is_minimal(x)) out.push_back(periodic_prefix(x, n));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Reads a word as a binary number, a = 0 and b = 1; needs l(w) < 64.
inline std::uint64_t binary_value(const Word& w) {
  if (w.length() >= 64) throw std::overflow_error("word too long for a 64-bit index");
  std::uint64_t v = 0;
  for (char ch : w.letters()) v = (v << 1) | (ch == 'b' ? 1U : 0U);
  return v;
}

/// Inverse of `binary_value` at a fixed length.
inline Word from_binary_value(std::uint64_t v, std::size_t n) {
  std::string s(n, 'a');
  for (std::size_t i = 0; i < n; ++i) {
    if (v >> (n - 1 - i) & 1U) s[i] = 'b';
  }
  return Word(std::move(s));
}

/// All words of length at most n, shortest first.
inline std::vector<Word> words_up_to(std::size_t n) {
  std::vector<Word> out;
  for (std::size_t len = 0; len <= n; ++len) {
    auto layer = words_of_length(len);
    out.insert(out.end(), layer.begin(), layer.end());
  }
  return out;
}

}  // namespace contrafix
