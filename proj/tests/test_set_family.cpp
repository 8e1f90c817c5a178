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

#include <set>

#include "contrafix/set_family.hpp"

namespace contrafix {
namespace {

using D = SetDescriptor;

std::vector<Word> brute_members(const D& s, std::size_t max_len) {
  std::vector<Word> out;
  for (const Word& w : words_up_to(max_len)) {
    if (member(s, w)) out.push_back(w);
  }
  return out;
}

bool brute_subset(const D& u, const D& v, std::size_t max_len) {
  for (const Word& w : words_up_to(max_len)) {
    if (member(u, w) && !member(v, w)) return false;
  }
  return true;
}

std::vector<D> sets_up_to(std::size_t len) {
  std::vector<D> out;
  for (std::size_t l = 0; l <= len; ++l) {
    auto layer = enumerate_sigma_len(l);
    out.insert(out.end(), layer.begin(), layer.end());
  }
  return out;
}

TEST(SetFamily, ParseAndPrint) {
  for (const char* text : {"W:_", "W:ab", "A:a:2:1", "B:ba:13"}) EXPECT_EQ(D::parse(text).to_string(), text);
  EXPECT_THROW(D::parse("W:aa"), std::invalid_argument);
  EXPECT_THROW(D::parse("A:aa:1:0"), std::invalid_argument);
  EXPECT_THROW(D::parse("A:a:3:0"), std::invalid_argument);
  EXPECT_THROW(D::parse("A:a:2:2"), std::invalid_argument);
  EXPECT_THROW(D::parse("B:a:0"), std::invalid_argument);
  EXPECT_THROW(D::parse("C:a"), std::invalid_argument);
}

TEST(SetFamily, MembershipExamples) {
  EXPECT_TRUE(member(D::B(Word("a"), 7), Word("aaaab")));
  EXPECT_TRUE(member(D::A(Word("a"), 1, 0), Word("aa")));
  EXPECT_FALSE(member(D::W(Word("ab")), Word("ba")));
  EXPECT_FALSE(member(D::A(Word("a"), 1, 0), Word("a")));
}

TEST(SetFamily, SigmaExamples) {
  EXPECT_EQ(sigma(D::B(Word("a"), 7)), Word("aaaab"));
  EXPECT_EQ(sigma(D::B(Word("ba"), 13)), Word("babababababaa"));
  EXPECT_EQ(sigma(D::A(Word("a"), 1, 0)), Word("aa"));
}

TEST(SetFamily, BComponentsFollowProgression) {
  const auto members = brute_members(D::B(Word("a"), 7), 13);
  std::vector<Word> shortest_per_component;
  for (const std::uint64_t n : {4, 8, 12}) shortest_per_component.push_back(available_extension(Word("a"), n));
  EXPECT_EQ(shortest_per_component, (std::vector<Word>{Word("aaaab"), Word("aaaaaaaab"), Word("aaaaaaaaaaaab")}));
  for (const Word& w : shortest_per_component) EXPECT_NE(std::find(members.begin(), members.end(), w), members.end());
}

TEST(SetFamily, ChildrenExamples) {
  const SplitResult wa = children(D::W(Word("a")));
  EXPECT_EQ(wa.left, D::A(Word("a"), 1, 0));
  EXPECT_EQ(wa.right, D::B(Word("a"), 1));
  EXPECT_EQ(wa.lost, std::vector<Word>{Word("a")});

  const SplitResult aa = children(D::A(Word("a"), 1, 0));
  EXPECT_EQ(aa.left, D::A(Word("a"), 2, 0));
  EXPECT_EQ(aa.right, D::A(Word("a"), 2, 1));
  EXPECT_TRUE(aa.lost.empty());

  // ab itself belongs to neither W(aba) nor W(abb).
  const SplitResult wab = children(D::W(Word("ab")));
  EXPECT_EQ(wab.left, D::W(Word("aba")));
  EXPECT_EQ(wab.right, D::W(Word("abb")));
  EXPECT_EQ(wab.lost, std::vector<Word>{Word("ab")});

  const SplitResult root = children(D::whole());
  EXPECT_EQ(root.left, D::W(Word("a")));
  EXPECT_EQ(root.right, D::W(Word("b")));
  EXPECT_EQ(root.lost, std::vector<Word>{Word()});
}

TEST(SetFamily, SubsetExamples) {
  EXPECT_TRUE(is_subset(D::A(Word("a"), 2, 0), D::A(Word("a"), 1, 0)));
  EXPECT_TRUE(is_subset(D::B(Word("a"), 7), D::B(Word("a"), 5)));
  EXPECT_TRUE(is_subset(D::W(Word("ab")), D::B(Word("a"), 1)));
  EXPECT_FALSE(is_subset(D::A(Word("a"), 1, 0), D::A(Word("a"), 2, 0)));
  EXPECT_FALSE(is_subset(D::W(Word("b")), D::W(Word("a"))));
}

TEST(SetFamily, SetsContainingExamples) {
  EXPECT_EQ(sets_containing(Word("a")), (std::vector<D>{D::whole(), D::W(Word("a"))}));
  EXPECT_EQ(sets_containing(Word("b")), (std::vector<D>{D::whole(), D::W(Word("b"))}));
  const auto chain = sets_containing(Word("aaaab"));
  const std::vector<D> expected{D::whole(),          D::W(Word("a")),    D::B(Word("a"), 1), D::B(Word("a"), 2),
                                D::B(Word("a"), 3), D::B(Word("a"), 5), D::B(Word("a"), 7), D::W(Word("aaaab"))};
  EXPECT_EQ(chain, expected);
  EXPECT_EQ(tree_path(Word("aaaab")), expected);
}

TEST(SetFamily, EnumerationExamples) {
  EXPECT_EQ(enumerate_sigma_len(0), std::vector<D>{D::whole()});
  EXPECT_EQ(enumerate_sigma_len(1), (std::vector<D>{D::W(Word("a")), D::W(Word("b"))}));
  const auto two = enumerate_sigma_len(2);
  const std::set<std::string> got = [&] {
    std::set<std::string> s;
    for (const auto& d : two) s.insert(d.to_string());
    return s;
  }();
  EXPECT_EQ(got, (std::set<std::string>{"W:ab", "W:ba", "A:a:1:0", "A:a:2:0", "A:b:1:0", "A:b:2:0", "B:a:1", "B:b:1"}));
  EXPECT_EQ(two.size(), got.size());
}

TEST(SetFamilyProperty, EnumerationMatchesDescriptorScan) {
  constexpr std::size_t kLen = 8;
  std::vector<std::set<std::string>> by_len(kLen + 1);
  for (const Word& w : words_up_to(kLen)) {
    if (is_available(w)) by_len[w.length()].insert(D::W(w).to_string());
  }
  for (const Word& root : words_up_to(3)) {
    if (!is_minimal(root)) continue;
    for (std::uint64_t p = 1; p <= 16; p *= 2) {
      for (std::uint64_t r = 0; r < p; ++r) {
        const auto m = brute_members(D::A(root, p, r), kLen);
        if (!m.empty()) by_len[m.front().length()].insert(D::A(root, p, r).to_string());
      }
    }
    for (std::uint64_t k = 1; k < 512; ++k) {
      const auto m = brute_members(D::B(root, k), kLen);
      if (!m.empty()) by_len[m.front().length()].insert(D::B(root, k).to_string());
    }
  }
  for (std::size_t len = 0; len <= kLen; ++len) {
    std::set<std::string> got;
    for (const auto& d : enumerate_sigma_len(len)) ASSERT_TRUE(got.insert(d.to_string()).second) << d.to_string();
    EXPECT_EQ(got, by_len[len]) << "length " << len;
  }
}

TEST(SetFamilyProperty, SigmaIsUniqueShortestMember) {
  for (const auto& s : sets_up_to(6)) {
    const auto m = brute_members(s, 12);
    ASSERT_FALSE(m.empty()) << s.to_string();
    EXPECT_EQ(m.front(), sigma(s)) << s.to_string();
    EXPECT_EQ(m.front().length(), sigma_length(s));
    if (m.size() > 1) {
      EXPECT_GT(m[1].length(), m[0].length()) << s.to_string();
    }
    EXPECT_EQ(members_up_to(s, 12), [&] {
      auto sorted = m;
      std::sort(sorted.begin(), sorted.end(), [](const Word& x, const Word& y) {
        return x.length() != y.length() ? x.length() < y.length() : x < y;
      });
      return sorted;
    }()) << s.to_string();
  }
}

TEST(SetFamilyProperty, ChildrenPartitionTheParent) {
  const auto words = words_up_to(13);
  for (const auto& s : sets_up_to(5)) {
    const SplitResult parts = children(s);
    for (const Word& w : words) {
      const int hits = member(parts.left, w) + member(parts.right, w) +
                       (std::find(parts.lost.begin(), parts.lost.end(), w) != parts.lost.end());
      ASSERT_EQ(hits, member(s, w) ? 1 : 0) << s.to_string() << " " << w.token();
    }
  }
}

TEST(SetFamilyProperty, NestedOrDisjointAndSubsetAgreesWithMembers) {
  const auto sets = sets_up_to(4);
  for (const auto& u : sets) {
    for (const auto& v : sets) {
      const bool semantic = brute_subset(u, v, 12);
      ASSERT_EQ(is_subset(u, v), semantic) << u.to_string() << " in " << v.to_string();
      bool meet = false;
      for (const Word& w : words_up_to(12)) meet = meet || (member(u, w) && member(v, w));
      if (meet) {
        EXPECT_TRUE(is_subset(u, v) || is_subset(v, u)) << u.to_string() << " " << v.to_string();
      }
    }
  }
}

TEST(SetFamilyProperty, DirectSubsetRules) {
  for (const Word& root : {Word("a"), Word("ab"), Word("aab")}) {
    for (std::uint64_t p = 1; p <= 8; p *= 2) {
      for (std::uint64_t r = 0; r < 2 * p; ++r) {
        EXPECT_TRUE(is_subset(D::A(root, 2 * p, r), D::A(root, p, r % p)));
      }
    }
    for (std::uint64_t k = 1; k < 64; ++k) {
      const D b = D::B(root, k);
      const Word s = sigma(b);
      for (std::size_t len = 0; len <= s.length(); ++len) {
        const Word v = s.prefix(len);
        if (!is_available(v)) continue;
        EXPECT_EQ(is_subset(b, D::W(v)), len < s.length()) << b.to_string() << " " << v.token();
      }
    }
  }
}

TEST(SetFamilyProperty, ProperSubsetsLieUnderOneChild) {
  const auto inner = sets_up_to(5);
  for (const auto& u : sets_up_to(4)) {
    const SplitResult parts = children(u);
    for (const auto& v : inner) {
      if (v == u || !is_subset(v, u)) continue;
      EXPECT_NE(is_subset(v, parts.left), is_subset(v, parts.right)) << u.to_string() << " " << v.to_string();
    }
  }
}

TEST(SetFamilyProperty, FirstBSetIdentity) {
  for (const char* text : {"a", "b", "ab", "ba"}) {
    const Word w(text);
    const Word power = periodic_prefix(w, w.length() * w.length());
    for (const Word& x : words_up_to(14)) {
      const bool rhs = member(D::W(power), x) && !member(D::A(w, 1, 0), x) && x != power;
      ASSERT_EQ(member(D::B(w, 1), x), rhs) << text << " " << x.token();
    }
  }
}

TEST(SetFamilyProperty, SetsContainingMatchesFilter) {
  const auto sets = sets_up_to(8);
  for (const Word& u : words_up_to(8)) {
    std::set<std::string> brute;
    for (const auto& s : sets) {
      if (member(s, u)) brute.insert(s.to_string());
    }
    std::set<std::string> listed;
    const auto chain = sets_containing(u);
    for (const auto& s : chain) EXPECT_TRUE(listed.insert(s.to_string()).second);
    EXPECT_EQ(listed, brute) << u.token();
    EXPECT_EQ(chain, tree_path(u)) << u.token();
  }
}

TEST(SetFamilyProperty, TreeReachesEverySet) {
  std::set<std::string> reached;
  std::vector<D> frontier{D::whole()};
  while (!frontier.empty()) {
    D s = frontier.back();
    frontier.pop_back();
    if (sigma_length(s) > 4) continue;
    reached.insert(s.to_string());
    SplitResult parts = children(s);
    frontier.push_back(parts.left);
    frontier.push_back(parts.right);
  }
  std::set<std::string> all;
  for (const auto& s : sets_up_to(4)) all.insert(s.to_string());
  EXPECT_EQ(reached, all);
  for (const auto& s : sets_up_to(6)) {
    const auto path = tree_ancestors(s);
    EXPECT_EQ(path.front(), D::whole());
    EXPECT_EQ(path.back(), s);
  }
}

}  // namespace
}  // namespace contrafix
