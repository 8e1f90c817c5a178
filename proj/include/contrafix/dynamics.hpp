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
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "contrafix/metric.hpp"

namespace contrafix {

inline Word f(const Word& x) { return Char::a + x; }
inline Word g(const Word& x) { return Char::b + x; }

/// The composition of f and g spelled by w, applied to x.
inline Word word_map(const Word& w, const Word& x) { return w + x; }

class ContractionViolation : public std::runtime_error {
 public:
  ContractionViolation(Word x, Word y)
      : std::runtime_error("contraction violated for pair (" + x.token() + ", " + y.token() + ")"),
        x_(std::move(x)), y_(std::move(y)) {}
  const Word& x() const noexcept { return x_; }
  const Word& y() const noexcept { return y_; }

 private:
  Word x_;
  Word y_;
};

/// A letter c with d(cx, cy) <= λ·d(x, y) for every λ, i.e. the distance
/// exponent grows by at least one. Equal points give `a`.
inline Char contraction_check(const Word& x, const Word& y) {
  if (x == y) return Char::a;
  const std::uint64_t e = distance(x, y).exponent();
  for (Char c : {Char::a, Char::b}) {
    if (distance(c + x, c + y).exponent() >= e + 1) return c;
  }
  throw ContractionViolation(x, y);
}

/**
 * Shortest u with l(u) <= len_bound, u ∈ S and w·u ∈ S. Exhaustive over the
 * bounded range: membership only depends on where a word leaves the relevant
 * periodic ray, so each class is probed through its shortest representative.
 */
inline std::optional<Word> find_pair_witness(const SetDescriptor& set, const Word& w, std::size_t len_bound) {
  if (w.empty()) throw std::invalid_argument("pair scan needs a nonempty word");
  switch (set.kind()) {
    case SetKind::W: {
      // w·u is longer than the stem, so only the stem matters.
      const Word& v = set.word();
      if (v.length() <= len_bound && is_prefix(v, w + v)) return v;
      return std::nullopt;
    }
    case SetKind::A: {
      const auto& a = std::get<ASet>(set.value());
      for (std::size_t len = sigma_length(set); len <= len_bound; len += a.modulus) {
        Word u = periodic_prefix(a.root, len);
        if (member(set, w + u)) return u;
      }
      return std::nullopt;
    }
    case SetKind::B:
      break;
  }
  const auto& b = std::get<BSet>(set.value());
  const Word& t = b.root;
  const std::size_t sq = t.length() * t.length();
  const Progression ik = progression(b.index);
  std::optional<Word> best;
  for (std::uint64_t i = 0;; ++i) {
    const std::uint64_t n = ik.nth(i);
    if (sq + n > len_bound || (best && sq + n >= best->length())) break;
    const Word base = available_extension(t, n);
    const Word image = w + base;
    if (const auto dev = first_deviation(image, t)) {
      if (*dev > sq && ik.contains(*dev - sq)) best = base;
      continue;
    }
    // w·base still follows t^∞; u must leave it right after, at some offset.
    for (std::size_t extra = 1; base.length() + extra <= len_bound; ++extra) {
      if (best && base.length() + extra >= best->length()) break;
      const std::size_t dev = image.length() + extra;
      if (dev <= sq || !ik.contains(dev - sq)) continue;
      std::string tail;
      for (std::size_t m = 0; m + 1 < extra; ++m) tail.push_back(to_char(periodic_at(t, image.length() + m)));
      tail.push_back(to_char(other(periodic_at(t, image.length() + extra - 1))));
      best = base + Word(tail);
      break;
    }
  }
  return best;
}

/// Witness length that settles W- and A-type sets for the word w.
inline std::size_t pair_scan_length_bound(const SetDescriptor& set, const Word& w) {
  return sigma_length(set) + 2 * w.length() * (w.length() + 1);
}

struct PairHit {
  Rank rank;
  SetDescriptor set;
  Word witness;
};

struct PairScanReport {
  Word word;
  Rank checked_max_rank = 0;
  std::size_t len_bound = 0;
  std::vector<PairHit> hits;
  /// B-type sets without a hit; absence there is certified only up to the bound.
  std::size_t bounded_certified = 0;
};

/**
 * For every S_n with n <= max_rank, looks for u ∈ S_n with w·u ∈ S_n. The
 * search bound for each set is the larger of `len_bound` and
 * `pair_scan_length_bound`.
 */
inline PairScanReport pair_scan(const Word& w, Rank max_rank, std::size_t len_bound) {
  if (w.empty()) throw std::invalid_argument("pair scan needs a nonempty word");
  PairScanReport report{w, max_rank, len_bound, {}, 0};
  for (Rank n = 0; n <= max_rank; ++n) {
    SetDescriptor set = nth_set(n);
    const std::size_t bound = std::max(len_bound, pair_scan_length_bound(set, w));
    if (auto u = find_pair_witness(set, w, bound)) {
      report.hits.push_back({n, std::move(set), std::move(*u)});
    } else if (set.kind() == SetKind::B) {
      ++report.bounded_certified;
    }
  }
  return report;
}

namespace detail {

inline void sort_by_order(std::vector<SetDescriptor>& sets) { std::sort(sets.begin(), sets.end(), precedes); }

}  // namespace detail

/**
 * The sets containing w^n for every large n, in rank order:
 *   - W(v) for the available prefixes v of w^∞;
 *   - A(root, p, 0) for powers of two p dividing l(w), root being the
 *     primitive root of w;
 *   - B(t, k) where t is a minimal word whose ray w^∞ leaves at a position j
 *     with j - l(t)² ∈ I_k.
 */
inline std::vector<SetDescriptor> orbit_tail_sets(const Word& w) {
  if (w.empty()) throw std::invalid_argument("orbit of the empty word is constant");
  const Word root = primitive_root(w);
  const std::size_t period = root.length();
  std::vector<SetDescriptor> out;
  for (std::size_t len = 0; len <= period * period; ++len) {
    Word v = periodic_prefix(root, len);
    if (is_available(v)) out.push_back(SetDescriptor::W(std::move(v)));
  }
  for (std::uint64_t p = 1; w.length() % p == 0; p *= 2) out.push_back(SetDescriptor::A(root, p, 0));
  // A ray of period q agrees with root^∞ on fewer than q + period letters
  // unless the rays coincide, so q(q - 1) < period.
  for (std::size_t q = 1; q * (q - 1) < period; ++q) {
    const Word t = periodic_prefix(root, q);
    if (!is_minimal(t) || primitive_root(t) == root) continue;
    const auto dev = first_deviation(periodic_prefix(root, q + period + q * q), t);
    if (dev && *dev > q * q) {
      for (std::uint64_t k : indices_containing(*dev - q * q)) out.push_back(SetDescriptor::B(t, k));
    }
  }
  detail::sort_by_order(out);
  return out;
}

/// Sets of σ-length <= max_sigma_len containing w^n for every n in [n0, n0 + span].
inline std::vector<SetDescriptor> orbit_tail_sets_sampled(const Word& w, std::size_t max_sigma_len, std::size_t n0,
                                                          std::size_t span) {
  std::vector<Word> orbit;
  Word power;
  for (std::size_t n = 1; n <= n0 + span; ++n) {
    power = power + w;
    if (n >= n0) orbit.push_back(power);
  }
  std::vector<SetDescriptor> out;
  for (const SetDescriptor& set : universe(max_sigma_len)) {
    if (std::all_of(orbit.begin(), orbit.end(), [&](const Word& x) { return member(set, x); })) out.push_back(set);
  }
  return out;
}

struct CauchyCertificate {
  /// Whether the orbit w, w², w³, ... is Cauchy; false whenever its tail sets are finite.
  bool cauchy = false;
  std::size_t tail_sets = 0;
  Rank max_tail_rank = 0;
};

/// The orbit of w is Cauchy only if infinitely many sets hold its tail.
inline CauchyCertificate cauchy_certificate(const Word& w) {
  const auto tail = orbit_tail_sets(w);
  CauchyCertificate out;
  out.cauchy = false;
  out.tail_sets = tail.size();
  for (const auto& s : tail) out.max_tail_rank = std::max(out.max_tail_rank, rank(s));
  return out;
}

/**
 * A finite descending chain from W(∅) approximating a point of the completion.
 * Entries are compared with the family order directly, since deep chains
 * reach sets whose numeric rank does not fit in 64 bits.
 */
class ChainPoint {
 public:
  explicit ChainPoint(std::vector<SetDescriptor> chain) : chain_(std::move(chain)) {
    if (chain_.empty() || chain_.front() != SetDescriptor::whole()) {
      throw std::invalid_argument("chain point must start at W:_");
    }
    for (std::size_t i = 1; i < chain_.size(); ++i) {
      if (chain_[i] == chain_[i - 1] || !is_subset(chain_[i], chain_[i - 1]) ||
          !precedes(chain_[i - 1], chain_[i])) {
        throw std::invalid_argument("chain point entries must strictly descend: " + chain_[i].to_string());
      }
    }
  }

  /// The chain of all sets containing x.
  static ChainPoint of_word(const Word& x) { return ChainPoint(tree_path(x)); }

  const std::vector<SetDescriptor>& chain() const noexcept { return chain_; }
  std::size_t depth() const noexcept { return chain_.size(); }
  const SetDescriptor& deepest() const noexcept { return chain_.back(); }

 private:
  std::vector<SetDescriptor> chain_;
};

/// Pushes every chain entry through `push_set`, then sorts and deduplicates.
inline ChainPoint push_point(Char c, const ChainPoint& point) {
  std::vector<SetDescriptor> images{SetDescriptor::whole()};
  for (const SetDescriptor& s : point.chain()) images.push_back(push_set(c, s).target);
  detail::sort_by_order(images);
  images.erase(std::unique(images.begin(), images.end()), images.end());
  return ChainPoint(std::move(images));
}

}  // namespace contrafix
