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
#include <compare>
#include <cstdint>
#include <stdexcept>
#include <variant>
#include <vector>

#include "contrafix/detail/write_once_cache.hpp"

namespace contrafix {

/// The arithmetic progression {first + i·step : i >= 0}; step is a power of two.
struct Progression {
  std::uint64_t first = 1;
  std::uint64_t step = 1;

  bool contains(std::uint64_t n) const noexcept { return n >= first && (n - first) % step == 0; }

  std::uint64_t nth(std::uint64_t i) const noexcept { return first + i * step; }

  /// Whether every element of `other` belongs to this progression.
  bool includes(const Progression& other) const noexcept {
    return other.step % step == 0 && contains(other.first);
  }

  bool intersects(const Progression& other) const noexcept {
    // Both steps are powers of two, so the coarser one is a multiple of the finer.
    const std::uint64_t fine = step < other.step ? step : other.step;
    const std::uint64_t lo = first < other.first ? first : other.first;
    const std::uint64_t hi = first < other.first ? other.first : first;
    return (hi - lo) % fine == 0;
  }

  friend auto operator<=>(const Progression&, const Progression&) = default;
};

/// `I_k = I_left ⊔ I_right`.
struct TwoWaySplit {
  std::uint64_t left;
  std::uint64_t right;
  friend bool operator==(const TwoWaySplit&, const TwoWaySplit&) = default;
};

/// `I_k = {lost} ⊔ I_{next}` with lost = min I_k.
struct DropMinSplit {
  std::uint64_t next;
  std::uint64_t lost;
  friend bool operator==(const DropMinSplit&, const DropMinSplit&) = default;
};

using SplitKind = std::variant<TwoWaySplit, DropMinSplit>;

namespace detail {

// For k >= 3, the m >= 2 with 2^m - 1 <= k <= 2^(m+1) - 2.
inline unsigned progression_level(std::uint64_t k) noexcept {
  return static_cast<unsigned>(std::bit_width(k + 1)) - 1;
}

inline WriteOnceCache<std::uint64_t, Progression>& progression_cache() {
  static WriteOnceCache<std::uint64_t, Progression> cache;
  return cache;
}

}  // namespace detail

/**
 * I_k, computed from the level recurrence:
 *
 *   I_1 = {1, 2, 3, ...},  I_2 = I_1 minus its minimum,
 *
 * and for m >= 2, writing h = 2^(m-1):
 *   2^m - 1 <= k <= 2^m + h - 2:  step h, first = min I_{(k-1)/2 + h/2}
 *                                 (k odd) or min I_{(k-2)/2 + h/2} + h/2 (k even);
 *   2^m + h - 1 <= k <= 2^(m+1) - 2:  I_{k-h} minus its minimum.
 */
inline Progression progression(std::uint64_t k) {
  if (k < 1) throw std::invalid_argument("progression index must be >= 1");
  if (k == 1) return {1, 1};
  if (k == 2) return {2, 1};
  if (k > (std::uint64_t{1} << 62)) throw std::invalid_argument("progression index too large");
  return detail::progression_cache().get_or_compute(k, [k] {
    const unsigned m = detail::progression_level(k);
    const std::uint64_t full = std::uint64_t{1} << m;
    const std::uint64_t half = full >> 1;
    const std::uint64_t quarter = half >> 1;
    if (k <= full + half - 2) {
      const std::uint64_t first = (k % 2 == 1) ? progression((k - 1) / 2 + quarter).first
                                               : progression((k - 2) / 2 + quarter).first + quarter;
      return Progression{first, half};
    }
    const Progression base = progression(k - half);
    return Progression{base.first + base.step, base.step};
  });
}

inline bool contains(std::uint64_t k, std::uint64_t n) { return n >= 1 && progression(k).contains(n); }

/// How I_k decomposes into the progressions one level down the index tree.
inline SplitKind split(std::uint64_t k) {
  if (k < 1) throw std::invalid_argument("progression index must be >= 1");
  if (k == 1) return DropMinSplit{2, 1};
  const unsigned m = detail::progression_level(k);
  const std::uint64_t full = std::uint64_t{1} << m;
  const std::uint64_t half = full >> 1;
  if (k == 2) return TwoWaySplit{3, 4};
  if (k <= full + half - 2) return DropMinSplit{k + half, progression(k).first};
  // k sits in the drop-min band of level m; its parts live at level m + 1.
  const std::uint64_t left = 2 * k + 1 - full;
  return TwoWaySplit{left, left + 1};
}

/// Indices k with n ∈ I_k, in descending order of I_k.
inline std::vector<std::uint64_t> indices_containing(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  if (n < 1) return out;
  std::uint64_t k = 1;
  for (;;) {
    out.push_back(k);
    const SplitKind s = split(k);
    if (const auto* two = std::get_if<TwoWaySplit>(&s)) {
      k = progression(two->left).contains(n) ? two->left : two->right;
    } else {
      const auto& drop = std::get<DropMinSplit>(s);
      if (drop.lost == n) break;
      k = drop.next;
    }
  }
  return out;
}

/// Indices k with min I_k = n, in increasing order.
inline std::vector<std::uint64_t> indices_with_first(std::uint64_t n) {
  std::vector<std::uint64_t> out;
  std::vector<std::uint64_t> stack{1};
  while (!stack.empty()) {
    const std::uint64_t k = stack.back();
    stack.pop_back();
    const Progression p = progression(k);
    if (p.first > n) continue;
    if (p.first == n) out.push_back(k);
    const SplitKind s = split(k);
    if (const auto* two = std::get_if<TwoWaySplit>(&s)) {
      stack.push_back(two->left);
      stack.push_back(two->right);
    } else {
      stack.push_back(std::get<DropMinSplit>(s).next);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// The index of the smallest I_l containing every element of `target`, i.e.
/// the deepest node of the index tree whose progression includes it.
inline std::uint64_t smallest_index_including(const Progression& target) {
  std::uint64_t k = 1;
  for (;;) {
    const SplitKind s = split(k);
    if (const auto* two = std::get_if<TwoWaySplit>(&s)) {
      if (progression(two->left).includes(target)) {
        k = two->left;
      } else if (progression(two->right).includes(target)) {
        k = two->right;
      } else {
        return k;
      }
    } else {
      const auto& drop = std::get<DropMinSplit>(s);
      if (!progression(drop.next).includes(target)) return k;
      k = drop.next;
    }
  }
}

}  // namespace contrafix
