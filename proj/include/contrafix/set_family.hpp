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
#include <bit>
#include <charconv>
#include <cstdint>
#include <functional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "contrafix/progression.hpp"
#include "contrafix/word.hpp"

namespace contrafix {

/// Declared in type-precedence order: A-type sets sort before B-type, B before W.
enum class SetKind { A, B, W };

inline char kind_letter(SetKind k) noexcept { return k == SetKind::A ? 'A' : k == SetKind::B ? 'B' : 'W'; }

/// All extensions of an available word.
struct WSet {
  Word stem;
  friend auto operator<=>(const WSet&, const WSet&) = default;
};

/// Prefixes of root^∞ whose length lies in a residue class mod a power of two.
struct ASet {
  Word root;
  std::uint64_t modulus;
  std::uint64_t residue;
  friend auto operator<=>(const ASet&, const ASet&) = default;
};

/// Union of the cones over root's available extensions indexed by I_index.
struct BSet {
  Word root;
  std::uint64_t index;
  friend auto operator<=>(const BSet&, const BSet&) = default;
};

/**
 * Symbolic name of one diametrisable set. Construction validates the
 * descriptor, so every instance denotes a member of the family; two
 * descriptors denote the same set iff they compare equal.
 */
class SetDescriptor {
 public:
  using Value = std::variant<ASet, BSet, WSet>;

  static SetDescriptor W(Word stem) {
    if (!is_available(stem)) throw std::invalid_argument("W-type stem must be available: " + stem.token());
    return SetDescriptor(WSet{std::move(stem)});
  }

  static SetDescriptor A(Word root, std::uint64_t modulus, std::uint64_t residue) {
    if (!is_minimal(root)) throw std::invalid_argument("A-type root must be minimal: " + root.token());
    if (modulus == 0 || !std::has_single_bit(modulus)) {
      throw std::invalid_argument("A-type modulus must be a power of two");
    }
    if (residue >= modulus) throw std::invalid_argument("A-type residue must be below the modulus");
    return SetDescriptor(ASet{std::move(root), modulus, residue});
  }

  static SetDescriptor B(Word root, std::uint64_t index) {
    if (!is_minimal(root)) throw std::invalid_argument("B-type root must be minimal: " + root.token());
    if (index < 1) throw std::invalid_argument("B-type index must be >= 1");
    return SetDescriptor(BSet{std::move(root), index});
  }

  /// W(∅), the whole space.
  static SetDescriptor whole() { return SetDescriptor(WSet{Word{}}); }

  /// Parses "W:<word>", "A:<word>:<p>:<r>" or "B:<word>:<k>".
  static SetDescriptor parse(std::string_view text) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    for (std::size_t i = 0; i <= text.size(); ++i) {
      if (i == text.size() || text[i] == ':') {
        parts.push_back(text.substr(start, i - start));
        start = i + 1;
      }
    }
    auto number = [&](std::string_view s) {
      std::uint64_t v = 0;
      auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
      if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) {
        throw std::invalid_argument("bad number in descriptor: " + std::string(text));
      }
      return v;
    };
    if (parts.size() == 2 && parts[0] == "W") return W(Word::parse(parts[1]));
    if (parts.size() == 4 && parts[0] == "A") return A(Word::parse(parts[1]), number(parts[2]), number(parts[3]));
    if (parts.size() == 3 && parts[0] == "B") return B(Word::parse(parts[1]), number(parts[2]));
    throw std::invalid_argument("malformed descriptor: " + std::string(text));
  }

  SetKind kind() const noexcept { return static_cast<SetKind>(value_.index()); }
  const Value& value() const noexcept { return value_; }

  /// The stem of a W-type set or the root word of an A/B-type set.
  const Word& word() const noexcept {
    return std::visit([](const auto& s) -> const Word& {
      if constexpr (std::is_same_v<std::decay_t<decltype(s)>, WSet>) {
        return s.stem;
      } else {
        return s.root;
      }
    }, value_);
  }

  std::string to_string() const {
    return std::visit([](const auto& s) -> std::string {
      using T = std::decay_t<decltype(s)>;
      if constexpr (std::is_same_v<T, WSet>) {
        return "W:" + s.stem.token();
      } else if constexpr (std::is_same_v<T, ASet>) {
        return "A:" + s.root.token() + ":" + std::to_string(s.modulus) + ":" + std::to_string(s.residue);
      } else {
        return "B:" + s.root.token() + ":" + std::to_string(s.index);
      }
    }, value_);
  }

  friend auto operator<=>(const SetDescriptor&, const SetDescriptor&) = default;

 private:
  explicit SetDescriptor(Value v) : value_(std::move(v)) {}

  Value value_;
};

inline std::ostream& operator<<(std::ostream& os, const SetDescriptor& s) { return os << s.to_string(); }

/// Parent minus the two children is `lost`; the children are disjoint.
struct SplitResult {
  SetDescriptor left;
  SetDescriptor right;
  std::vector<Word> lost;
};

// Length rule for A-type sets: lengths r + i·p with i >= 1, above root_len².
// Switching to i >= 0 means dropping the `len >= residue + modulus` clause.
inline bool a_length_admissible(std::size_t len, std::size_t root_len, std::uint64_t modulus,
                                std::uint64_t residue) noexcept {
  return len > root_len * root_len && len % modulus == residue && len >= residue + modulus;
}

/// Shortest admissible length of A(root, modulus, residue) for a root of length root_len.
inline std::uint64_t a_sigma_length(std::size_t root_len, std::uint64_t modulus, std::uint64_t residue) noexcept {
  const std::uint64_t lo = std::max<std::uint64_t>(root_len * root_len + 1, residue + modulus);
  return lo + (residue + modulus - lo % modulus) % modulus;
}

inline bool member(const SetDescriptor& set, const Word& u) {
  return std::visit([&](const auto& s) -> bool {
    using T = std::decay_t<decltype(s)>;
    if constexpr (std::is_same_v<T, WSet>) {
      return is_prefix(s.stem, u);
    } else if constexpr (std::is_same_v<T, ASet>) {
      return a_length_admissible(u.length(), s.root.length(), s.modulus, s.residue) &&
             !first_deviation(u, s.root).has_value();
    } else {
      const auto dev = first_deviation(u, s.root);
      const std::size_t sq = s.root.length() * s.root.length();
      return dev.has_value() && *dev > sq && contains(s.index, *dev - sq);
    }
  }, set.value());
}

/// The shortest word of the set (unique).
inline Word sigma(const SetDescriptor& set) {
  return std::visit([](const auto& s) -> Word {
    using T = std::decay_t<decltype(s)>;
    if constexpr (std::is_same_v<T, WSet>) {
      return s.stem;
    } else if constexpr (std::is_same_v<T, ASet>) {
      return periodic_prefix(s.root, a_sigma_length(s.root.length(), s.modulus, s.residue));
    } else {
      return available_extension(s.root, progression(s.index).first);
    }
  }, set.value());
}

inline std::size_t sigma_length(const SetDescriptor& set) {
  return std::visit([](const auto& s) -> std::size_t {
    using T = std::decay_t<decltype(s)>;
    if constexpr (std::is_same_v<T, WSet>) {
      return s.stem.length();
    } else if constexpr (std::is_same_v<T, ASet>) {
      return a_sigma_length(s.root.length(), s.modulus, s.residue);
    } else {
      return s.root.length() * s.root.length() + progression(s.index).first;
    }
  }, set.value());
}

/// Longest common prefix of all members: the stem for W, σ for A, and σ minus
/// its last letter for B (the later components continue along root^∞ there).
inline Word stem(const SetDescriptor& set) {
  if (set.kind() == SetKind::B) return sigma(set).drop_last();
  return sigma(set);
}

/// Whether the set contains every extension of x.
inline bool contains_cone(const SetDescriptor& set, const Word& x) {
  switch (set.kind()) {
    case SetKind::W:
      return is_prefix(set.word(), x);
    case SetKind::A:
      return false;
    case SetKind::B:
      return member(set, x);
  }
  return false;
}

/**
 * U ⊆ V, decided from the descriptors. Sets of the family are nested or
 * disjoint, so outside the same-root A and B cases this reduces to V holding
 * the cone over the common prefix of U.
 */
inline bool is_subset(const SetDescriptor& u, const SetDescriptor& v) {
  if (u == v) return true;
  if (v.kind() == SetKind::A) {
    if (u.kind() != SetKind::A) return false;
    const auto& a = std::get<ASet>(u.value());
    const auto& b = std::get<ASet>(v.value());
    return a.root == b.root && a.modulus % b.modulus == 0 && a.residue % b.modulus == b.residue &&
           a_sigma_length(a.root.length(), a.modulus, a.residue) >= b.residue + b.modulus;
  }
  if (v.kind() == SetKind::B && u.kind() == SetKind::B && u.word() == v.word()) {
    return progression(std::get<BSet>(v.value()).index).includes(progression(std::get<BSet>(u.value()).index));
  }
  return contains_cone(v, stem(u));
}

/// The unique split of a set into two disjoint proper subsets of the family.
inline SplitResult children(const SetDescriptor& set) {
  return std::visit([&](const auto& s) -> SplitResult {
    using T = std::decay_t<decltype(s)>;
    if constexpr (std::is_same_v<T, WSet>) {
      const Word wa = s.stem + Char::a;
      const Word wb = s.stem + Char::b;
      if (is_available(wa) && is_available(wb)) {
        return {SetDescriptor::W(wa), SetDescriptor::W(wb), {s.stem}};
      }
      // One extension is forbidden only when stem = t^{l(t)} for a minimal t.
      std::size_t root_len = 0;
      while ((root_len + 1) * (root_len + 1) <= s.stem.length()) ++root_len;
      if (root_len == 0 || root_len * root_len != s.stem.length()) {
        throw std::logic_error("forbidden extension of a non-square stem " + s.stem.token());
      }
      Word root = s.stem.prefix(root_len);
      if (periodic_prefix(root, s.stem.length()) != s.stem) {
        throw std::logic_error("stem " + s.stem.token() + " is not a power of its root");
      }
      return {SetDescriptor::A(root, 1, 0), SetDescriptor::B(root, 1), {s.stem}};
    } else if constexpr (std::is_same_v<T, ASet>) {
      std::vector<Word> lost;
      const std::uint64_t edge = s.residue + s.modulus;
      if (edge > s.root.length() * s.root.length()) lost.push_back(periodic_prefix(s.root, edge));
      return {SetDescriptor::A(s.root, 2 * s.modulus, s.residue),
              SetDescriptor::A(s.root, 2 * s.modulus, s.modulus + s.residue), std::move(lost)};
    } else {
      const SplitKind parts = split(s.index);
      if (const auto* two = std::get_if<TwoWaySplit>(&parts)) {
        return {SetDescriptor::B(s.root, two->left), SetDescriptor::B(s.root, two->right), {}};
      }
      const auto& drop = std::get<DropMinSplit>(parts);
      return {SetDescriptor::B(s.root, drop.next), SetDescriptor::W(available_extension(s.root, drop.lost)), {}};
    }
  }, set.value());
}

/// The path from W(∅) down to `set` in the tree, both ends included.
inline std::vector<SetDescriptor> tree_ancestors(const SetDescriptor& set) {
  std::vector<SetDescriptor> path{SetDescriptor::whole()};
  while (path.back() != set) {
    SplitResult parts = children(path.back());
    if (is_subset(set, parts.left)) {
      path.push_back(std::move(parts.left));
    } else if (is_subset(set, parts.right)) {
      path.push_back(std::move(parts.right));
    } else {
      throw std::logic_error("no child of " + path.back().to_string() + " contains " + set.to_string());
    }
  }
  return path;
}

/// Path from W(∅) following x until x is one of the lost words; this is the
/// chain of all sets containing x, outermost first.
inline std::vector<SetDescriptor> tree_path(const Word& x) {
  std::vector<SetDescriptor> path{SetDescriptor::whole()};
  for (;;) {
    SplitResult parts = children(path.back());
    if (member(parts.left, x)) {
      path.push_back(std::move(parts.left));
    } else if (member(parts.right, x)) {
      path.push_back(std::move(parts.right));
    } else {
      return path;
    }
  }
}

namespace detail {

inline void sort_chain(std::vector<SetDescriptor>& chain) {
  std::sort(chain.begin(), chain.end(), [](const SetDescriptor& x, const SetDescriptor& y) {
    const std::size_t lx = sigma_length(x), ly = sigma_length(y);
    if (lx != ly) return lx < ly;
    return x != y && is_subset(y, x);
  });
}

}  // namespace detail

/**
 * Every set containing u, found inside the finite search ranges: W over the
 * prefixes of u; A and B over roots t = u[0, q) with q² < l(u). Returned
 * outermost first.
 */
inline std::vector<SetDescriptor> sets_containing(const Word& u) {
  std::vector<SetDescriptor> out;
  for (std::size_t i = 0; i <= u.length(); ++i) {
    Word v = u.prefix(i);
    if (is_available(v)) out.push_back(SetDescriptor::W(std::move(v)));
  }
  for (std::size_t q = 1; q * q < u.length(); ++q) {
    const Word root = u.prefix(q);
    if (!is_minimal(root)) continue;
    const auto dev = first_deviation(u, root);
    if (!dev) {
      for (std::uint64_t p = 1; p <= u.length(); p *= 2) {
        const std::uint64_t r = u.length() % p;
        if (a_length_admissible(u.length(), q, p, r)) out.push_back(SetDescriptor::A(root, p, r));
      }
    } else if (*dev > q * q) {
      for (std::uint64_t k : indices_containing(*dev - q * q)) out.push_back(SetDescriptor::B(root, k));
    }
  }
  detail::sort_chain(out);
  return out;
}

/// The A- and B-type sets whose shortest word has length `len`.
inline std::vector<SetDescriptor> enumerate_typed_sigma_len(std::size_t len) {
  std::vector<SetDescriptor> out;
  for (std::size_t q = 1; q * q < len; ++q) {
    for (Word& root : words_of_length(q)) {
      if (!is_minimal(root)) continue;
      for (std::uint64_t p = 1; p <= len; p *= 2) {
        for (std::uint64_t r = 0; r < p; ++r) {
          if (a_sigma_length(q, p, r) == len) out.push_back(SetDescriptor::A(root, p, r));
        }
      }
      for (std::uint64_t k : indices_with_first(len - q * q)) out.push_back(SetDescriptor::B(root, k));
    }
  }
  return out;
}

/// Every set whose shortest word has length `len` (W-type first, then A and B).
inline std::vector<SetDescriptor> enumerate_sigma_len(std::size_t len) {
  std::vector<SetDescriptor> out;
  for (Word& w : words_of_length(len)) {
    if (is_available(w)) out.push_back(SetDescriptor::W(std::move(w)));
  }
  auto typed = enumerate_typed_sigma_len(len);
  out.insert(out.end(), std::make_move_iterator(typed.begin()), std::make_move_iterator(typed.end()));
  return out;
}

/// Members of the set of length at most max_len, in length-lexicographic order.
inline std::vector<Word> members_up_to(const SetDescriptor& set, std::size_t max_len) {
  std::vector<Word> out;
  if (set.kind() == SetKind::A) {
    const auto& a = std::get<ASet>(set.value());
    for (std::size_t len = sigma_length(set); len <= max_len; len += a.modulus) {
      out.push_back(periodic_prefix(a.root, len));
    }
    return out;
  }
  // W and B members all extend the stem; filter its extensions.
  const Word base = stem(set);
  for (std::size_t extra = 0; base.length() + extra <= max_len; ++extra) {
    for (const Word& tail : words_of_length(extra)) {
      Word candidate = base + tail;
      if (member(set, candidate)) out.push_back(std::move(candidate));
    }
  }
  return out;
}

}  // namespace contrafix

template <>
struct std::hash<contrafix::SetDescriptor> {
  std::size_t operator()(const contrafix::SetDescriptor& d) const noexcept {
    std::size_t h = std::hash<std::string>{}(d.word().letters());
    auto mix = [&h](std::uint64_t v) { h ^= std::hash<std::uint64_t>{}(v) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2); };
    mix(static_cast<std::uint64_t>(d.kind()));
    if (const auto* a = std::get_if<contrafix::ASet>(&d.value())) {
      mix(a->modulus);
      mix(a->residue);
    } else if (const auto* b = std::get_if<contrafix::BSet>(&d.value())) {
      mix(b->index);
    }
    return h;
  }
};
