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
#include <memory>
#include <mutex>
#include <shared_mutex>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "contrafix/set_family.hpp"

namespace contrafix {

/// Position of a set in the enumeration S_0, S_1, ...; diam(S_n) = λ^n.
using Rank = std::uint64_t;

/**
 * The well-order on the family:
 *   1. shorter σ first;
 *   2. equal σ-length, one contains the other: the larger set first;
 *   3. otherwise A-type before B-type before W-type;
 *   4. otherwise σ in alphabetical order.
 */
inline std::strong_ordering compare(const SetDescriptor& u, const SetDescriptor& v) {
  if (u == v) return std::strong_ordering::equal;
  const std::size_t lu = sigma_length(u);
  const std::size_t lv = sigma_length(v);
  if (lu != lv) return lu <=> lv;
  if (is_subset(v, u)) return std::strong_ordering::less;
  if (is_subset(u, v)) return std::strong_ordering::greater;
  if (u.kind() != v.kind()) return u.kind() <=> v.kind();
  // Comparable lengths are equal here, so this is plain alphabetical order.
  return sigma(u) <=> sigma(v);
}

inline bool precedes(const SetDescriptor& u, const SetDescriptor& v) { return compare(u, v) < 0; }

/**
 * One σ-length layer of the family. Within a layer every A- and B-type set
 * precedes every W-type set, and W-type sets follow the alphabetical order of
 * their stems, so only the typed part is stored; W positions are counted.
 */
struct SigmaLayer {
  std::size_t sigma_len = 0;
  Rank offset = 0;
  std::vector<SetDescriptor> typed;
  std::unordered_map<SetDescriptor, Rank> typed_position;
  /// Forbidden words of this length, alphabetical.
  std::vector<Word> forbidden;
  Rank w_count = 0;

  Rank size() const noexcept { return typed.size() + w_count; }

  /// Number of available words of this length before w.
  Rank available_before(const Word& w) const {
    const auto below = std::lower_bound(forbidden.begin(), forbidden.end(), w) - forbidden.begin();
    return binary_value(w) - static_cast<Rank>(below);
  }

  /// The j-th available word of this length.
  Word available_at(Rank j) const {
    Rank v = j;
    for (const Word& f : forbidden) {
      if (binary_value(f) > v) break;
      ++v;
    }
    return from_binary_value(v, sigma_len);
  }
};

/**
 * Lazily built rank table. Layers are computed in σ-length order, published
 * once and never modified, so references handed out stay valid. Ranks must
 * fit in 64 bits, which limits σ-length to 62.
 */
class FamilyOrder {
 public:
  static constexpr std::size_t max_sigma_len = 62;

  const SigmaLayer& layer(std::size_t sigma_len) const {
    if (sigma_len > max_sigma_len) {
      throw std::overflow_error("rank of a set with σ-length " + std::to_string(sigma_len) + " exceeds 64 bits");
    }
    {
      std::shared_lock lock(mutex_);
      if (sigma_len < layers_.size()) return *layers_[sigma_len];
    }
    std::unique_lock lock(mutex_);
    while (layers_.size() <= sigma_len) {
      auto next = std::make_unique<SigmaLayer>();
      const std::size_t len = layers_.size();
      next->sigma_len = len;
      if (!layers_.empty() && __builtin_add_overflow(layers_.back()->offset, layers_.back()->size(), &next->offset)) {
        throw std::overflow_error("rank table offset exceeds 64 bits at σ-length " + std::to_string(len));
      }
      next->typed = enumerate_typed_sigma_len(len);
      std::sort(next->typed.begin(), next->typed.end(), precedes);
      for (std::size_t i = 0; i < next->typed.size(); ++i) next->typed_position.emplace(next->typed[i], i);
      next->forbidden = forbidden_words_of_length(len);
      next->w_count = (Rank{1} << len) - next->forbidden.size();
      layers_.push_back(std::move(next));
    }
    return *layers_[sigma_len];
  }

  Rank rank(const SetDescriptor& set) const {
    const SigmaLayer& l = layer(sigma_length(set));
    if (set.kind() == SetKind::W) {
      Rank out = 0;
      if (__builtin_add_overflow(l.offset + l.typed.size(), l.available_before(set.word()), &out)) {
        throw std::overflow_error("rank exceeds 64 bits: " + set.to_string());
      }
      return out;
    }
    const auto it = l.typed_position.find(set);
    if (it == l.typed_position.end()) throw std::logic_error("descriptor missing from its layer: " + set.to_string());
    return l.offset + it->second;
  }

  SetDescriptor nth(Rank n) const {
    for (std::size_t len = 0;; ++len) {
      const SigmaLayer& l = layer(len);
      if (n - l.offset >= l.size()) continue;
      const Rank pos = n - l.offset;
      if (pos < l.typed.size()) return l.typed[pos];
      return SetDescriptor::W(l.available_at(pos - l.typed.size()));
    }
  }

  /// Number of sets with σ-length at most `sigma_len`.
  Rank count_up_to(std::size_t sigma_len) const {
    const SigmaLayer& l = layer(sigma_len);
    Rank out = 0;
    if (__builtin_add_overflow(l.offset, l.size(), &out)) throw std::overflow_error("set count exceeds 64 bits");
    return out;
  }

 private:
  mutable std::shared_mutex mutex_;
  mutable std::vector<std::unique_ptr<SigmaLayer>> layers_;
};

inline const FamilyOrder& family_order() {
  static const FamilyOrder order;
  return order;
}

inline Rank rank(const SetDescriptor& set) { return family_order().rank(set); }

inline SetDescriptor nth_set(Rank n) { return family_order().nth(n); }

/// All sets with σ-length at most `max_sigma_len`, in rank order.
inline std::vector<SetDescriptor> universe(std::size_t max_sigma_len) {
  std::vector<SetDescriptor> out;
  for (std::size_t len = 0; len <= max_sigma_len; ++len) {
    const SigmaLayer& l = family_order().layer(len);
    out.insert(out.end(), l.typed.begin(), l.typed.end());
    for (Word& w : words_of_length(len)) {
      if (is_available(w)) out.push_back(SetDescriptor::W(std::move(w)));
    }
  }
  return out;
}

}  // namespace contrafix
