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
#include <gtest/gtest.h>

#include <random>
#include <thread>

#include "contrafix/ordering.hpp"

namespace contrafix {
namespace {

using D = SetDescriptor;

// Order rules evaluated on member lists instead of descriptor algebra.
struct BruteOrder {
  explicit BruteOrder(std::size_t max_len) : words(words_up_to(max_len)) {}

  std::vector<Word> words;

  bool inside(const D& u, const D& v) const {
    for (const Word& w : words) {
      if (member(u, w) && !member(v, w)) return false;
    }
    return true;
  }

  Word shortest(const D& s) const {
    for (const Word& w : words) {
      if (member(s, w)) return w;
    }
    throw std::logic_error("no member in range");
  }

  bool before(const D& u, const D& v) const {
    if (u == v) return false;
    const Word su = shortest(u);
    const Word sv = shortest(v);
    if (su.length() != sv.length()) return su.length() < sv.length();
    if (inside(v, u)) return true;
    if (inside(u, v)) return false;
    if (u.kind() != v.kind()) return u.kind() < v.kind();
    return su < sv;
  }
};

TEST(Ordering, CompareExamples) {
  EXPECT_TRUE(precedes(D::A(Word("a"), 1, 0), D::A(Word("a"), 2, 0)));
  EXPECT_TRUE(precedes(D::A(Word("a"), 2, 0), D::A(Word("b"), 1, 0)));
  EXPECT_TRUE(precedes(D::B(Word("a"), 1), D::W(Word("ab"))));
  EXPECT_TRUE(precedes(D::W(Word("b")), D::W(Word("ab"))));
  EXPECT_EQ(compare(D::W(Word("a")), D::W(Word("a"))), std::strong_ordering::equal);
}

TEST(Ordering, RankExamples) {
  EXPECT_EQ(rank(D::whole()), 0U);
  EXPECT_EQ(rank(D::W(Word("a"))), 1U);
  EXPECT_EQ(rank(D::W(Word("b"))), 2U);
  EXPECT_EQ(rank(D::A(Word("a"), 1, 0)), 3U);
  EXPECT_EQ(nth_set(7), D::B(Word("a"), 1));
  EXPECT_EQ(nth_set(0), D::whole());
}

TEST(Ordering, LayerSizes) {
  const std::vector<Rank> sizes{1, 2, 8, 12, 18, 42, 74, 132, 264, 520, 1054, 2078, 4116};
  for (std::size_t len = 0; len < sizes.size(); ++len) {
    EXPECT_EQ(family_order().layer(len).size(), sizes[len]) << len;
    EXPECT_EQ(enumerate_sigma_len(len).size(), sizes[len]) << len;
  }
  EXPECT_EQ(family_order().layer(10).offset, 1073U);
  EXPECT_EQ(family_order().layer(11).offset, 2127U);
}

TEST(OrderingProperty, CompareMatchesMemberLevelRules) {
  const BruteOrder brute(12);
  const auto sets = universe(4);
  for (const auto& u : sets) {
    for (const auto& v : sets) ASSERT_EQ(precedes(u, v), brute.before(u, v)) << u.to_string() << " " << v.to_string();
  }
}

TEST(OrderingProperty, CountedRankMatchesSortedLayers) {
  Rank next = 0;
  for (std::size_t len = 0; len <= 11; ++len) {
    auto layer = enumerate_sigma_len(len);
    std::sort(layer.begin(), layer.end(), precedes);
    for (const auto& s : layer) {
      ASSERT_EQ(rank(s), next) << s.to_string();
      ASSERT_EQ(nth_set(next), s) << next;
      ++next;
    }
  }
  EXPECT_EQ(family_order().count_up_to(11), next);
  EXPECT_EQ(universe(11).size(), next);
}

TEST(OrderingProperty, StrictTotalOrderOnSamples) {
  const auto sets = universe(7);
  std::mt19937_64 rng(7);
  for (int i = 0; i < 20000; ++i) {
    const auto& x = sets[rng() % sets.size()];
    const auto& y = sets[rng() % sets.size()];
    const auto& z = sets[rng() % sets.size()];
    EXPECT_FALSE(precedes(x, y) && precedes(y, x));
    if (!(x == y)) {
      EXPECT_TRUE(precedes(x, y) || precedes(y, x));
    }
    if (precedes(x, y) && precedes(y, z)) {
      EXPECT_TRUE(precedes(x, z)) << x.to_string() << " " << y.to_string() << " " << z.to_string();
    }
    EXPECT_EQ(precedes(x, y), rank(x) < rank(y));
  }
}

TEST(OrderingProperty, LargerSetsComeFirst) {
  const auto sets = universe(6);
  for (const auto& u : sets) {
    for (const auto& v : sets) {
      if (!(u == v) && is_subset(u, v)) {
        EXPECT_LT(rank(v), rank(u)) << u.to_string() << " " << v.to_string();
      }
    }
  }
}

TEST(OrderingProperty, DeepLayersStayConsistent) {
  std::mt19937_64 rng(11);
  for (std::size_t len = 20; len <= 40; len += 5) {
    const SigmaLayer& l = family_order().layer(len);
    for (const auto& s : l.typed) ASSERT_EQ(nth_set(rank(s)), s) << s.to_string();
    for (int i = 0; i < 200; ++i) {
      const Rank r = l.offset + rng() % l.size();
      const D s = nth_set(r);
      ASSERT_EQ(sigma_length(s), len);
      ASSERT_EQ(rank(s), r);
    }
    const D first_w = nth_set(l.offset + l.typed.size());
    EXPECT_EQ(first_w.kind(), SetKind::W);
    EXPECT_TRUE(precedes(l.typed.back(), first_w));
  }
}

TEST(OrderingProperty, RanksBeyondSixtyFourBitsThrow) {
  const Word deep = Word::repeat(Char::a, 62) + Char::b;
  EXPECT_THROW(rank(D::W(deep)), std::overflow_error);
  EXPECT_NO_THROW(family_order().count_up_to(FamilyOrder::max_sigma_len));
}

TEST(OrderingConcurrency, ParallelRankQueriesAgree) {
  const auto sets = universe(9);
  std::vector<std::vector<Rank>> seen(4);
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < seen.size(); ++t) {
    pool.emplace_back([&, t] {
      for (const auto& s : sets) seen[t].push_back(rank(s));
      seen[t].push_back(rank(nth_set(1000000 + t)) - t);
    });
  }
  for (auto& th : pool) th.join();
  for (std::size_t t = 1; t < seen.size(); ++t) EXPECT_EQ(seen[t], seen[0]);
}

}  // namespace
}  // namespace contrafix
