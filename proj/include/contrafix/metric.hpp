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
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_dec_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include "contrafix/ordering.hpp"

namespace contrafix {

using Rational = boost::multiprecision::cpp_rational;

/**
 * A distance λ^k kept as its exponent, or zero. Ordered as distances:
 * Zero is smallest and a larger exponent is a smaller distance.
 */
class ExactDistance {
 public:
  static constexpr ExactDistance zero() noexcept { return ExactDistance(); }
  static constexpr ExactDistance diam(std::uint64_t exponent) noexcept { return ExactDistance(exponent); }

  constexpr bool is_zero() const noexcept { return !exponent_.has_value(); }

  std::uint64_t exponent() const {
    if (!exponent_) throw std::logic_error("zero distance has no exponent");
    return *exponent_;
  }

  std::string to_string() const { return exponent_ ? "λ^" + std::to_string(*exponent_) : std::string("0"); }

  friend constexpr bool operator==(const ExactDistance&, const ExactDistance&) = default;
  friend constexpr std::strong_ordering operator<=>(const ExactDistance& x, const ExactDistance& y) noexcept {
    if (x.is_zero() || y.is_zero()) return y.is_zero() <=> x.is_zero();
    return *y.exponent_ <=> *x.exponent_;
  }

 private:
  constexpr ExactDistance() = default;
  constexpr explicit ExactDistance(std::uint64_t e) : exponent_(e) {}

  std::optional<std::uint64_t> exponent_;
};

/// The contraction ratio λ = numerator/denominator ∈ (0, 1).
class Lambda {
 public:
  Lambda(std::uint64_t numerator, std::uint64_t denominator) : num_(numerator), den_(denominator) {
    if (numerator == 0 || numerator >= denominator) throw std::invalid_argument("lambda must lie strictly between 0 and 1");
  }

  /// Parses "p/q".
  static Lambda parse(std::string_view text) {
    const auto slash = text.find('/');
    if (slash == std::string_view::npos) throw std::invalid_argument("lambda must be written p/q");
    auto number = [&](std::string_view s) {
      if (s.empty() || s.find_first_not_of("0123456789") != std::string_view::npos) {
        throw std::invalid_argument("bad lambda: " + std::string(text));
      }
      return std::stoull(std::string(s));
    };
    return Lambda(number(text.substr(0, slash)), number(text.substr(slash + 1)));
  }

  std::uint64_t numerator() const noexcept { return num_; }
  std::uint64_t denominator() const noexcept { return den_; }

  Rational value() const { return Rational(num_, den_); }

  /// The exact value of a distance (λ^k, or 0).
  Rational evaluate(const ExactDistance& d) const {
    if (d.is_zero()) return Rational(0);
    using boost::multiprecision::cpp_int;
    return Rational(boost::multiprecision::pow(cpp_int(num_), static_cast<unsigned>(d.exponent())),
                    boost::multiprecision::pow(cpp_int(den_), static_cast<unsigned>(d.exponent())));
  }

 private:
  std::uint64_t num_;
  std::uint64_t den_;
};

/// Decimal rendering of an exact rational, trailing zeros trimmed, at least one
/// digit after the point ("1.0", "0.25", "1.5e-12").
inline std::string to_decimal(const Rational& value) {
  using Float = boost::multiprecision::cpp_dec_float_50;
  const Float f = Float(boost::multiprecision::numerator(value)) / Float(boost::multiprecision::denominator(value));
  const bool scientific = value != 0 && f < Float("1e-6");
  std::string s = f.str(17, scientific ? std::ios_base::scientific : std::ios_base::fixed);
  std::string exponent;
  if (const auto e = s.find('e'); e != std::string::npos) {
    exponent = s.substr(e);
    s.erase(e);
  }
  if (s.find('.') != std::string::npos) {
    while (s.back() == '0') s.pop_back();
    if (s.back() == '.') s.push_back('0');
  }
  return s + exponent;
}

/// The ⊂-minimal set containing both x and y, found by descending the tree.
inline SetDescriptor min_common_set(const Word& x, const Word& y) {
  if (x == y) throw std::invalid_argument("distance is zero, no set needed");
  SetDescriptor node = SetDescriptor::whole();
  for (;;) {
    SplitResult parts = children(node);
    if (member(parts.left, x) && member(parts.left, y)) {
      node = std::move(parts.left);
    } else if (member(parts.right, x) && member(parts.right, y)) {
      node = std::move(parts.right);
    } else {
      return node;
    }
  }
}

/// The same set as `min_common_set`, read off the two containment chains.
inline SetDescriptor min_common_set_by_chains(const Word& x, const Word& y) {
  if (x == y) throw std::invalid_argument("distance is zero, no set needed");
  const auto cx = sets_containing(x);
  const auto cy = sets_containing(y);
  std::size_t i = 0;
  while (i < cx.size() && i < cy.size() && cx[i] == cy[i]) ++i;
  return cx[i - 1];
}

inline ExactDistance diam_of(const SetDescriptor& set) { return ExactDistance::diam(rank(set)); }

inline ExactDistance distance(const Word& x, const Word& y) {
  if (x == y) return ExactDistance::zero();
  return ExactDistance::diam(rank(min_common_set(x, y)));
}

/// Largest pairwise distance within a finite set of words.
inline ExactDistance diameter(std::span<const Word> points) {
  ExactDistance best = ExactDistance::zero();
  for (std::size_t i = 0; i < points.size(); ++i) {
    for (std::size_t j = i + 1; j < points.size(); ++j) best = std::max(best, distance(points[i], points[j]));
  }
  return best;
}

/// Sets of rank above N covering everything except finitely many words.
struct CoverWitness {
  std::vector<Rank> indices;
  std::vector<Word> leftover;
};

/**
 * Splits W(∅) repeatedly until every piece has rank above N. The lost words
 * of each split are collected; those no longer than `word_bound` are
 * reported as the leftover.
 */
inline CoverWitness cover(Rank n, std::size_t word_bound) {
  CoverWitness out;
  std::vector<SetDescriptor> frontier{SetDescriptor::whole()};
  while (!frontier.empty()) {
    SetDescriptor piece = std::move(frontier.back());
    frontier.pop_back();
    const Rank r = rank(piece);
    if (r > n) {
      out.indices.push_back(r);
      continue;
    }
    SplitResult parts = children(piece);
    for (Word& w : parts.lost) {
      if (w.length() <= word_bound) out.leftover.push_back(std::move(w));
    }
    frontier.push_back(std::move(parts.left));
    frontier.push_back(std::move(parts.right));
  }
  std::sort(out.indices.begin(), out.indices.end());
  std::sort(out.leftover.begin(), out.leftover.end(), [](const Word& a, const Word& b) {
    return a.length() != b.length() ? a.length() < b.length() : a < b;
  });
  return out;
}

/// Deepest set of the family containing every extension of x.
inline SetDescriptor smallest_set_containing_cone(const Word& x) {
  const auto chain = tree_path(x);
  for (auto it = chain.rbegin(); it != chain.rend(); ++it) {
    if (contains_cone(*it, x)) return *it;
  }
  return chain.front();
}

struct ContractWitness {
  Char letter;
  SetDescriptor target;
};

/**
 * A letter c and a set V ranked after U with c·U ⊆ V. For W and A-type sets
 * V is the cone over c·σ(U); for B-type sets it is the cone over c·u with u
 * being σ(U) without its last letter. Among the two letters, the one giving
 * an available word is used (a when both do).
 */
inline ContractWitness contract_witness(const SetDescriptor& set) {
  const Word base = set.kind() == SetKind::B ? sigma(set).drop_last() : sigma(set);
  for (Char c : {Char::a, Char::b}) {
    Word image = c + base;
    if (is_available(image)) return {c, SetDescriptor::W(std::move(image))};
  }
  throw std::logic_error("neither one-letter extension is available for " + set.to_string());
}

struct PushResult {
  SetDescriptor target;
  /// True when the target misses finitely many points of c·U.
  bool cofinite = false;
};

/**
 * A set V holding the image c·U, following the case analysis for chains:
 *   - A(t, p, r) with c the last letter of t: c·U lies on the rotated ray, so
 *     V = A(rot t, p, r + 1 mod p);
 *   - B(t, k) with c the last letter of t: c·U = ∪ over n ∈ I_k + 1 of cones
 *     over rotated extensions, so V = B(rot t, l) for the smallest I_l ⊇ I_k + 1;
 *   - otherwise c·U sits inside the cone over c·stem(U), and V is the deepest
 *     family set containing that cone.
 * Each construction contains the whole image, so `cofinite` is never set.
 */
inline PushResult push_set(Char c, const SetDescriptor& set) {
  if (const auto* a = std::get_if<ASet>(&set.value()); a && a->root.back() == c) {
    auto [rotated, letter] = rotate_for_char(a->root);
    (void)letter;
    return {SetDescriptor::A(std::move(rotated), a->modulus, (a->residue + 1) % a->modulus), false};
  }
  if (const auto* b = std::get_if<BSet>(&set.value()); b && b->root.back() == c) {
    auto [rotated, letter] = rotate_for_char(b->root);
    (void)letter;
    const Progression shifted = progression(b->index);
    const std::uint64_t target = smallest_index_including({shifted.first + 1, shifted.step});
    return {SetDescriptor::B(std::move(rotated), target), false};
  }
  return {smallest_set_containing_cone(c + stem(set)), false};
}

}  // namespace contrafix
