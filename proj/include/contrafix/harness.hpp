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
#include <array>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include <boost/dynamic_bitset.hpp>
#include <json.hpp>

#include "contrafix/dynamics.hpp"

namespace contrafix {

using Json = nlohmann::ordered_json;

/// Bounds for the check suites. Defaults are the standard depths.
struct CheckParams {
  std::size_t sigma_len = 4;
  Rank max_rank = 300;
  std::size_t word_len = 14;
  std::size_t member_len = 12;
  Rank contract_max_rank = 200;
  std::size_t chain_depth = 8;
  std::size_t max_plateau = 2;
  std::size_t finite_len = 10;
  std::size_t contraction_len = 7;
  Rank pair_max_rank = 2000;
  std::size_t pair_word_len = 3;
  std::size_t pair_len_bound = 30;
  Rank brute_max_rank = 300;
  std::size_t brute_len = 10;
  std::size_t cauchy_word_len = 4;
  std::size_t triples = 100000;
  std::size_t triple_word_len = 10;
  std::size_t diam_sets = 1000;
  std::size_t diam_set_size = 8;
  std::uint64_t seed = 0;
};

/// Largest accepted value of each bound.
inline const CheckParams& param_caps() {
  static const CheckParams caps{
      .sigma_len = 6,
      .max_rank = 2000,
      .word_len = 16,
      .member_len = 14,
      .contract_max_rank = 2000,
      .chain_depth = 12,
      .max_plateau = 12,
      .finite_len = 12,
      .contraction_len = 8,
      .pair_max_rank = 100000,
      .pair_word_len = 4,
      .pair_len_bound = 64,
      .brute_max_rank = 2000,
      .brute_len = 12,
      .cauchy_word_len = 6,
      .triples = 1000000,
      .triple_word_len = 14,
      .diam_sets = 100000,
      .diam_set_size = 16,
      .seed = UINT64_MAX,
  };
  return caps;
}

struct CheckReport {
  std::string check_id;
  Json params;
  bool passed = true;
  Json counterexample;
  Json details;
  double runtime_ms = 0;

  /// The report as JSON; runtime is left out unless asked for, so that equal
  /// runs serialize identically.
  Json to_json(bool with_runtime = false) const {
    Json out;
    out["check_id"] = check_id;
    out["params"] = params;
    out["verdict"] = passed ? "pass" : "fail";
    if (!passed) out["counterexample"] = counterexample;
    out["details"] = details;
    if (with_runtime) out["runtime_ms"] = runtime_ms;
    return out;
  }
};

inline const std::vector<std::string>& check_ids() {
  static const std::vector<std::string> ids{"a1",          "a2",          "a3",        "a4",        "a5",
                                            "a6",          "ultrametric", "contraction", "containprop", "splitprop",
                                            "typeprop",    "order",       "pairscan",  "diam4",     "cauchy"};
  return ids;
}

namespace detail {

/// All words up to a length, indexed so that bitsets can stand for sets.
class WordUniverse {
 public:
  explicit WordUniverse(std::size_t max_len) : max_len_(max_len), words_(words_up_to(max_len)) {}

  std::size_t size() const noexcept { return words_.size(); }
  std::size_t max_len() const noexcept { return max_len_; }
  const std::vector<Word>& words() const noexcept { return words_; }

  std::size_t index(const Word& w) const { return (std::size_t{1} << w.length()) - 1 + binary_value(w); }

  boost::dynamic_bitset<> members(const SetDescriptor& set) const {
    boost::dynamic_bitset<> bits(words_.size());
    for (std::size_t i = 0; i < words_.size(); ++i) {
      if (member(set, words_[i])) bits.set(i);
    }
    return bits;
  }

 private:
  std::size_t max_len_;
  std::vector<Word> words_;
};

inline Json word_list(const std::vector<Word>& words) {
  Json out = Json::array();
  for (const Word& w : words) out.push_back(w.token());
  return out;
}

inline Json set_list(const std::vector<SetDescriptor>& sets) {
  Json out = Json::array();
  for (const SetDescriptor& s : sets) out.push_back(s.to_string());
  return out;
}

/// Records the first failure only; checks iterate smallest cases first.
struct Outcome {
  bool passed = true;
  Json counterexample;

  Outcome fail(Json why) {
    if (passed) {
      passed = false;
      counterexample = std::move(why);
    }
    return *this;
  }
};

/// Draws from raw mt19937_64 output so results match across standard libraries.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t below(std::uint64_t n) { return engine_() % n; }

  Word word(std::size_t max_len) {
    const std::size_t len = below(max_len + 1);
    std::string s(len, 'a');
    for (char& ch : s) ch = (engine_() >> 32 & 1U) ? 'b' : 'a';
    return Word(std::move(s));
  }

 private:
  std::mt19937_64 engine_;
};

inline std::vector<SetDescriptor> first_sets(Rank max_rank) {
  std::vector<SetDescriptor> out;
  for (Rank n = 0; n <= max_rank; ++n) out.push_back(nth_set(n));
  return out;
}

/// Root paths of the tree with at most `depth` entries.
inline std::vector<std::vector<SetDescriptor>> tree_chains(std::size_t depth) {
  std::vector<std::vector<SetDescriptor>> out;
  std::vector<std::vector<SetDescriptor>> stack{{SetDescriptor::whole()}};
  while (!stack.empty()) {
    auto chain = std::move(stack.back());
    stack.pop_back();
    if (chain.size() < depth) {
      SplitResult parts = children(chain.back());
      auto right = chain;
      right.push_back(std::move(parts.right));
      stack.push_back(std::move(right));
      auto left = chain;
      left.push_back(std::move(parts.left));
      stack.push_back(std::move(left));
    }
    out.push_back(std::move(chain));
  }
  return out;
}

inline std::string rational_text(const Rational& q) {
  return boost::multiprecision::numerator(q).str() + "/" + boost::multiprecision::denominator(q).str();
}

// --- individual suites -----------------------------------------------------

inline Outcome check_a1(const CheckParams& p, Json& details) {
  Outcome out;
  const WordUniverse universe(p.word_len);
  const auto sets = first_sets(p.max_rank);
  std::vector<boost::dynamic_bitset<>> bits;
  bits.reserve(sets.size());
  for (const auto& s : sets) bits.push_back(universe.members(s));
  if (!bits[0].all()) return out.fail({{"reason", "S_0 misses a word"}, {"set", sets[0].to_string()}});
  std::size_t nested = 0;
  for (std::size_t j = 1; j < sets.size(); ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      if (!bits[i].intersects(bits[j])) continue;
      ++nested;
      if (!is_subset(sets[j], sets[i]) || !bits[j].is_subset_of(bits[i])) {
        return out.fail({{"reason", "intersecting sets not nested"},
                         {"earlier", sets[i].to_string()},
                         {"later", sets[j].to_string()}});
      }
    }
  }
  details["sets"] = sets.size();
  details["intersecting_pairs"] = nested;
  return out;
}

inline Outcome check_a2(const CheckParams& p, Json& details) {
  Outcome out;
  const auto universe = contrafix::universe(p.finite_len);
  std::vector<std::vector<SetDescriptor>> chains;
  std::size_t longest = 0;
  for (const Word& x : words_up_to(p.finite_len)) {
    std::vector<SetDescriptor> brute;
    for (const auto& s : universe) {
      if (sigma_length(s) <= x.length() && member(s, x)) brute.push_back(s);
    }
    auto listed = sets_containing(x);
    sort_by_order(listed);
    if (listed != brute) {
      return out.fail({{"reason", "sets_containing disagrees with brute force"},
                       {"word", x.token()},
                       {"listed", set_list(listed)},
                       {"brute", set_list(brute)}});
    }
    for (std::size_t i = 1; i < listed.size(); ++i) {
      if (!is_subset(listed[i], listed[i - 1])) {
        return out.fail({{"reason", "containing sets not a chain"}, {"word", x.token()}, {"set", listed[i].to_string()}});
      }
    }
    longest = std::max(longest, listed.size());
    chains.push_back(std::move(listed));
  }
  // Distinct words are told apart by their deepest containing set.
  std::unordered_map<SetDescriptor, Word> seen;
  const auto words = words_up_to(p.finite_len);
  for (std::size_t i = 0; i < words.size(); ++i) {
    const auto [it, fresh] = seen.emplace(chains[i].back(), words[i]);
    if (!fresh) {
      return out.fail({{"reason", "two words share every containing set"},
                       {"x", it->second.token()},
                       {"y", words[i].token()}});
    }
  }
  details["words"] = words.size();
  details["longest_chain"] = longest;
  return out;
}

inline Outcome check_a3(const CheckParams& p, Json& details) {
  Outcome out;
  const std::size_t bound = p.word_len;
  const auto words = words_up_to(bound);
  std::vector<std::vector<Rank>> paths;
  paths.reserve(words.size());
  for (const Word& x : words) {
    std::vector<Rank> ranks;
    for (const auto& s : tree_path(x)) ranks.push_back(rank(s));
    paths.push_back(std::move(ranks));
  }
  std::vector<Rank> levels;
  for (Rank n = 0; n <= std::min<Rank>(p.max_rank, 20); ++n) levels.push_back(n);
  for (Rank n : {50, 100, 200, 300, 500, 1000, 2000}) {
    if (n <= p.max_rank) levels.push_back(n);
  }
  Json sizes = Json::object();
  for (Rank n : levels) {
    const CoverWitness cw = cover(n, bound);
    if (std::any_of(cw.indices.begin(), cw.indices.end(), [&](Rank r) { return r <= n; })) {
      return out.fail({{"reason", "cover uses a set of rank <= N"}, {"N", n}});
    }
    const std::unordered_set<Rank> leaves(cw.indices.begin(), cw.indices.end());
    std::unordered_set<std::string> leftover;
    for (const Word& w : cw.leftover) leftover.insert(w.letters());
    for (std::size_t i = 0; i < words.size(); ++i) {
      std::size_t hits = leftover.count(words[i].letters());
      for (Rank r : paths[i]) hits += leaves.count(r);
      if (hits != 1) {
        return out.fail({{"reason", hits == 0 ? "word not covered" : "word covered twice"},
                         {"N", n},
                         {"word", words[i].token()}});
      }
    }
    sizes[std::to_string(n)] = {{"sets", cw.indices.size()}, {"leftover", cw.leftover.size()}};
  }
  details["word_bound"] = bound;
  details["covers"] = sizes;
  return out;
}

inline Outcome check_a4(const CheckParams& p, Json& details) {
  Outcome out;
  const auto chains = tree_chains(p.chain_depth);
  const auto words = words_up_to(p.member_len);
  std::unordered_map<SetDescriptor, std::array<SetDescriptor, 2>> pushed;
  // Every image set is checked to hold c·x for members x.
  for (const auto& chain : chains) {
    const SetDescriptor& u = chain.back();
    std::array<SetDescriptor, 2> images{push_set(Char::a, u).target, push_set(Char::b, u).target};
    for (std::size_t ci = 0; ci < 2; ++ci) {
      const Char c = ci == 0 ? Char::a : Char::b;
      for (const Word& x : words) {
        if (member(u, x) && !member(images[ci], c + x)) {
          return out.fail({{"reason", "push target misses an image"},
                           {"letter", std::string(1, to_char(c))},
                           {"set", u.to_string()},
                           {"target", images[ci].to_string()},
                           {"word", x.token()}});
        }
      }
    }
    pushed.emplace(u, std::move(images));
  }
  std::size_t strict = 0;
  std::size_t worst_plateau = 0;
  for (const auto& chain : chains) {
    for (std::size_t ci = 0; ci < 2; ++ci) {
      std::size_t run = 0;
      bool every_step = true;
      for (std::size_t i = 1; i < chain.size(); ++i) {
        const auto& prev = pushed.at(chain[i - 1])[ci];
        const auto& next = pushed.at(chain[i])[ci];
        const auto order = compare(prev, next);
        if (order > 0) {
          return out.fail({{"reason", "push images go back in the order"},
                           {"letter", ci == 0 ? "a" : "b"},
                           {"chain", set_list(chain)}});
        }
        run = order == 0 ? run + 1 : 0;
        every_step = every_step && order < 0;
        worst_plateau = std::max(worst_plateau, run);
        if (run > p.max_plateau) {
          return out.fail({{"reason", "push images stall"},
                           {"letter", ci == 0 ? "a" : "b"},
                           {"chain", set_list(chain)}});
        }
      }
      if (every_step) ++strict;
      const ChainPoint point(chain);
      const ChainPoint image = push_point(ci == 0 ? Char::a : Char::b, point);
      if (image.deepest() != pushed.at(chain.back())[ci]) {
        return out.fail({{"reason", "pushed point lost its deepest image"}, {"chain", set_list(chain)}});
      }
    }
  }
  details["chains"] = chains.size();
  details["strictly_growing"] = strict;
  details["longest_plateau"] = worst_plateau;
  return out;
}

inline Outcome check_a5(const CheckParams& p, Json& details) {
  Outcome out;
  const auto words = words_up_to(p.member_len);
  std::size_t by_a = 0;
  for (Rank n = 0; n <= p.contract_max_rank; ++n) {
    const SetDescriptor u = nth_set(n);
    const ContractWitness cw = contract_witness(u);
    if (rank(cw.target) <= n || !precedes(u, cw.target)) {
      return out.fail({{"reason", "contraction target not ranked later"}, {"set", u.to_string()}, {"target", cw.target.to_string()}});
    }
    for (const Word& x : words) {
      if (member(u, x) && !member(cw.target, cw.letter + x)) {
        return out.fail({{"reason", "contraction target misses an image"},
                         {"set", u.to_string()},
                         {"target", cw.target.to_string()},
                         {"word", x.token()}});
      }
    }
    if (cw.letter == Char::a) ++by_a;
  }
  details["sets"] = p.contract_max_rank + 1;
  details["letter_a"] = by_a;
  return out;
}

inline Outcome check_a6(const CheckParams& p, Json& details) {
  Outcome out;
  const Rank half = p.pair_max_rank / 2;
  Json words = Json::object();
  for (const Word& w : words_up_to(p.pair_word_len)) {
    if (w.empty()) continue;
    const PairScanReport report = pair_scan(w, p.pair_max_rank, p.pair_len_bound);
    std::vector<SetDescriptor> late;
    for (const auto& hit : report.hits) {
      if (hit.rank > half) late.push_back(hit.set);
    }
    const std::size_t early = report.hits.size() - late.size();
    const CauchyCertificate cert = cauchy_certificate(w);
    words[w.token()] = {{"hits_half", early},
                        {"hits_full", report.hits.size()},
                        {"last_hit_rank", report.hits.empty() ? 0 : report.hits.back().rank},
                        {"cauchy", cert.cauchy}};
    if (!late.empty()) {
      out.fail({{"reason", "pair hits still appear past half the rank bound"},
                {"word", w.token()},
                {"half", half},
                {"hits_half", early},
                {"hits_full", report.hits.size()},
                {"late_sets", set_list(late)}});
    }
    if (cert.cauchy) out.fail({{"reason", "orbit reported Cauchy"}, {"word", w.token()}});
  }
  details["half_rank"] = half;
  details["words"] = words;
  return out;
}

inline Outcome check_ultrametric(const CheckParams& p, Json& details) {
  Outcome out;
  Sampler rng(p.seed);
  std::size_t zero_pairs = 0;
  for (std::size_t t = 0; t < p.triples; ++t) {
    const Word x = rng.word(p.triple_word_len);
    const Word y = rng.word(p.triple_word_len);
    const Word z = rng.word(p.triple_word_len);
    const ExactDistance xy = distance(x, y);
    const ExactDistance yz = distance(y, z);
    const ExactDistance xz = distance(x, z);
    const Json triple{{"x", x.token()}, {"y", y.token()}, {"z", z.token()}};
    if (xz > std::max(xy, yz)) {
      Json why = triple;
      why["reason"] = "strong triangle inequality fails";
      return out.fail(why);
    }
    if (distance(y, x) != xy || xy.is_zero() != (x == y)) {
      Json why = triple;
      why["reason"] = "distance not symmetric or degenerate";
      return out.fail(why);
    }
    if (x != y) {
      if (min_common_set(x, y) != min_common_set_by_chains(x, y)) {
        Json why = triple;
        why["reason"] = "tree descent and chain intersection disagree";
        return out.fail(why);
      }
    } else {
      ++zero_pairs;
    }
  }
  details["triples"] = p.triples;
  details["equal_pairs"] = zero_pairs;
  return out;
}

inline Outcome check_contraction(const CheckParams& p, Json& details) {
  Outcome out;
  const auto words = words_up_to(p.contraction_len);
  std::size_t pairs = 0;
  std::size_t by_a = 0;
  for (const Word& x : words) {
    for (const Word& y : words) {
      if (x == y) continue;
      ++pairs;
      try {
        if (contraction_check(x, y) == Char::a) ++by_a;
      } catch (const ContractionViolation& e) {
        return out.fail({{"reason", "no contracting letter"}, {"x", e.x().token()}, {"y", e.y().token()}});
      }
    }
  }
  details["ordered_pairs"] = pairs;
  details["letter_a"] = by_a;
  return out;
}

inline Outcome check_containprop(const CheckParams& p, Json& details) {
  Outcome out;
  const auto sets = universe(p.sigma_len);
  const WordUniverse big(p.word_len);
  // A-type sets grow once per period, and periods here are at most sigma_len.
  const WordUniverse small(p.word_len - std::max<std::size_t>(p.sigma_len, 1));
  std::vector<boost::dynamic_bitset<>> bits;
  std::vector<boost::dynamic_bitset<>> fewer;
  for (const auto& s : sets) {
    bits.push_back(big.members(s));
    fewer.push_back(small.members(s));
  }
  std::size_t nested = 0;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    for (std::size_t j = 0; j < sets.size(); ++j) {
      if (i == j) continue;
      if (is_subset(sets[i], sets[j]) != bits[i].is_subset_of(bits[j])) {
        return out.fail({{"reason", "descriptor containment disagrees with members"},
                         {"u", sets[i].to_string()},
                         {"v", sets[j].to_string()}});
      }
      if (j < i) continue;
      if (bits[i].intersects(bits[j])) {
        ++nested;
        if (!is_subset(sets[i], sets[j]) && !is_subset(sets[j], sets[i])) {
          return out.fail({{"reason", "intersecting sets not nested"}, {"u", sets[i].to_string()}, {"v", sets[j].to_string()}});
        }
      }
      if ((bits[i] ^ bits[j]).count() <= (fewer[i] ^ fewer[j]).count()) {
        return out.fail({{"reason", "symmetric difference does not grow"}, {"u", sets[i].to_string()}, {"v", sets[j].to_string()}});
      }
    }
  }
  // B(w, 1) is W(w^l(w)) minus A(w, 1, 0) and the word w^l(w) itself.
  for (const char* root : {"a", "b", "ab", "ba"}) {
    const Word w(root);
    Word power;
    for (std::size_t i = 0; i < w.length(); ++i) power = power + w;
    const auto b1 = SetDescriptor::B(w, 1);
    const auto cone = SetDescriptor::W(power);
    const auto ray = SetDescriptor::A(w, 1, 0);
    for (const Word& x : big.words()) {
      if (member(b1, x) != (member(cone, x) && !member(ray, x) && x != power)) {
        return out.fail({{"reason", "B(w,1) identity fails"}, {"root", w.token()}, {"word", x.token()}});
      }
    }
  }
  details["sets"] = sets.size();
  details["intersecting_pairs"] = nested;
  return out;
}

inline Outcome check_splitprop(const CheckParams& p, Json& details) {
  Outcome out;
  const WordUniverse words(p.word_len);
  const auto split_sets = universe(p.sigma_len + 1);
  std::size_t lost_total = 0;
  for (const auto& u : split_sets) {
    const SplitResult parts = children(u);
    const auto whole = words.members(u);
    const auto left = words.members(parts.left);
    const auto right = words.members(parts.right);
    boost::dynamic_bitset<> lost(words.size());
    for (const Word& w : parts.lost) {
      if (w.length() <= p.word_len) lost.set(words.index(w));
    }
    lost_total += parts.lost.size();
    if (left.intersects(right) || left.intersects(lost) || right.intersects(lost) || (left | right | lost) != whole ||
        !is_subset(parts.left, u) || !is_subset(parts.right, u)) {
      return out.fail({{"reason", "children do not partition the set"},
                       {"set", u.to_string()},
                       {"left", parts.left.to_string()},
                       {"right", parts.right.to_string()},
                       {"lost", word_list(parts.lost)}});
    }
  }
  // σ is the unique shortest member.
  for (const auto& u : universe(std::min<std::size_t>(p.sigma_len + 2, p.member_len))) {
    const auto found = members_up_to(u, p.member_len);
    const Word s = sigma(u);
    if (!member(u, s) || found.empty() || found.front() != s ||
        (found.size() > 1 && found[1].length() == s.length())) {
      return out.fail({{"reason", "sigma is not the unique shortest member"}, {"set", u.to_string()}});
    }
  }
  // Each proper subset in the family lies under exactly one child.
  const auto sets = universe(p.sigma_len);
  for (const auto& u : sets) {
    const SplitResult parts = children(u);
    for (const auto& v : split_sets) {
      if (v == u || !is_subset(v, u)) continue;
      if (is_subset(v, parts.left) == is_subset(v, parts.right)) {
        return out.fail({{"reason", "proper subset not under exactly one child"}, {"set", u.to_string()}, {"subset", v.to_string()}});
      }
    }
  }
  // Descending from W(∅) reaches every set.
  std::vector<SetDescriptor> reached;
  std::vector<SetDescriptor> frontier{SetDescriptor::whole()};
  while (!frontier.empty()) {
    SetDescriptor s = std::move(frontier.back());
    frontier.pop_back();
    if (sigma_length(s) > p.sigma_len) continue;
    SplitResult parts = children(s);
    frontier.push_back(std::move(parts.left));
    frontier.push_back(std::move(parts.right));
    reached.push_back(std::move(s));
  }
  sort_by_order(reached);
  if (reached != sets) {
    return out.fail({{"reason", "tree descent misses sets"}, {"reached", reached.size()}, {"expected", sets.size()}});
  }
  details["split_sets"] = split_sets.size();
  details["lost_words"] = lost_total;
  return out;
}

inline Outcome check_typeprop(const CheckParams& p, Json& details) {
  Outcome out;
  const auto sets = universe(p.sigma_len);
  std::map<std::string, std::size_t> pairs;
  for (const auto& u : sets) {
    for (const auto& v : sets) {
      if (u == v || !is_subset(v, u) || sigma(u) != sigma(v)) continue;
      const std::string kinds{kind_letter(u.kind()), kind_letter(v.kind())};
      if (kinds != "AA" && kinds != "BB" && kinds != "BW") {
        return out.fail({{"reason", "nested sets with equal sigma of unexpected types"}, {"outer", u.to_string()}, {"inner", v.to_string()}});
      }
      ++pairs[kinds];
    }
  }
  details["nested_equal_sigma"] = pairs;
  return out;
}

inline Outcome check_order(const CheckParams& p, Json& details) {
  Outcome out;
  const auto sets = universe(p.sigma_len);
  for (const auto& u : sets) {
    for (const auto& v : sets) {
      const auto uv = compare(u, v);
      const auto vu = compare(v, u);
      if ((uv < 0) != (vu > 0) || (uv == 0) != (u == v)) {
        return out.fail({{"reason", "order not antisymmetric"}, {"u", u.to_string()}, {"v", v.to_string()}});
      }
      if (!precedes(u, v)) continue;
      for (const auto& w : sets) {
        if (precedes(v, w) && !precedes(u, w)) {
          return out.fail({{"reason", "order not transitive"}, {"u", u.to_string()}, {"v", v.to_string()}, {"w", w.to_string()}});
        }
      }
    }
  }
  for (std::size_t i = 0; i < sets.size(); ++i) {
    if (rank(sets[i]) != i || nth_set(i) != sets[i]) {
      return out.fail({{"reason", "rank and enumeration disagree"}, {"set", sets[i].to_string()}});
    }
  }
  for (Rank n = 0; n <= p.max_rank; ++n) {
    if (rank(nth_set(n)) != n) return out.fail({{"reason", "rank(nth_set(n)) != n"}, {"n", n}});
  }
  // Counted ranks against sorting whole layers.
  const std::size_t sorted_len = std::min<std::size_t>(p.sigma_len + 4, 10);
  Rank offset = 0;
  for (std::size_t len = 0; len <= sorted_len; ++len) {
    auto layer = enumerate_sigma_len(len);
    std::sort(layer.begin(), layer.end(), precedes);
    for (std::size_t i = 0; i < layer.size(); ++i) {
      if (rank(layer[i]) != offset + i) {
        return out.fail({{"reason", "counted rank differs from sorted layer"}, {"set", layer[i].to_string()}});
      }
    }
    offset += layer.size();
  }
  details["sets"] = sets.size();
  details["sorted_layers_up_to"] = sorted_len;
  details["sets_in_sorted_layers"] = offset;
  return out;
}

inline Outcome check_pairscan(const CheckParams& p, Json& details) {
  Outcome out;
  const auto sets = first_sets(p.brute_max_rank);
  const auto candidates = words_up_to(p.brute_len);
  std::size_t hits_total = 0;
  std::size_t compared = 0;
  for (const Word& w : words_up_to(p.pair_word_len)) {
    if (w.empty()) continue;
    const PairScanReport report = pair_scan(w, p.pair_max_rank, p.pair_len_bound);
    for (const auto& hit : report.hits) {
      if (!member(hit.set, hit.witness) || !member(hit.set, w + hit.witness) || nth_set(hit.rank) != hit.set) {
        return out.fail({{"reason", "invalid pair witness"}, {"word", w.token()}, {"set", hit.set.to_string()}, {"witness", hit.witness.token()}});
      }
    }
    hits_total += report.hits.size();
    // The shortest witness agrees with a search over all words.
    for (const auto& s : sets) {
      std::optional<Word> brute;
      for (const Word& u : candidates) {
        if (member(s, u) && member(s, w + u)) {
          brute = u;
          break;
        }
      }
      const auto found = find_pair_witness(s, w, std::max(p.pair_len_bound, pair_scan_length_bound(s, w)));
      ++compared;
      const bool agree = brute ? (found && found->length() == brute->length())
                               : (!found || found->length() > p.brute_len);
      if (!agree) {
        return out.fail({{"reason", "witness search disagrees with brute force"},
                         {"word", w.token()},
                         {"set", s.to_string()},
                         {"found", found ? found->token() : "none"},
                         {"brute", brute ? brute->token() : "none"}});
      }
    }
  }
  details["hits"] = hits_total;
  details["brute_force_comparisons"] = compared;
  return out;
}

inline Outcome check_diam4(const CheckParams& p, Json& details) {
  Outcome out;
  Sampler rng(p.seed);
  const std::array<Lambda, 2> lambdas{Lambda(1, 2), Lambda(9, 10)};
  std::size_t tight = 0;
  for (std::size_t t = 0; t < p.diam_sets; ++t) {
    const std::size_t size = 1 + rng.below(p.diam_set_size);
    std::vector<Word> points;
    for (std::size_t i = 0; i < size; ++i) points.push_back(rng.word(p.triple_word_len));
    std::vector<Word> under_f;
    std::vector<Word> under_g;
    for (const Word& x : points) {
      under_f.push_back(f(x));
      under_g.push_back(g(x));
    }
    const ExactDistance d = diameter(points);
    const ExactDistance df = diameter(under_f);
    const ExactDistance dg = diameter(under_g);
    for (const Lambda& lambda : lambdas) {
      const Rational bound = 4 * lambda.value() * lambda.evaluate(d);
      const Rational best = std::min(lambda.evaluate(df), lambda.evaluate(dg));
      if (best > bound) {
        return out.fail({{"reason", "diameter bound fails"},
                         {"lambda", rational_text(lambda.value())},
                         {"points", word_list(points)}});
      }
      if (best == bound) ++tight;
    }
  }
  details["sets"] = p.diam_sets;
  details["tight"] = tight;
  return out;
}

inline Outcome check_cauchy(const CheckParams& p, Json& details) {
  Outcome out;
  constexpr std::size_t sample_sigma_len = 8;
  Json tails = Json::object();
  for (const Word& w : words_up_to(p.cauchy_word_len)) {
    if (w.empty()) continue;
    const CauchyCertificate cert = cauchy_certificate(w);
    if (cert.cauchy) return out.fail({{"reason", "orbit reported Cauchy"}, {"word", w.token()}});
    auto analytic = orbit_tail_sets(w);
    std::erase_if(analytic, [](const SetDescriptor& s) { return sigma_length(s) > sample_sigma_len; });
    const auto sampled = orbit_tail_sets_sampled(w, sample_sigma_len, 8, 16);
    if (analytic != sampled) {
      return out.fail({{"reason", "orbit tail sets disagree with sampling"},
                       {"word", w.token()},
                       {"analytic", set_list(analytic)},
                       {"sampled", set_list(sampled)}});
    }
    tails[w.token()] = {{"tail_sets", cert.tail_sets}, {"max_tail_rank", cert.max_tail_rank}};
  }
  details["words"] = tails;
  return out;
}

}  // namespace detail

/// The parameters a check reads, as reported in its JSON.
inline Json check_params_json(std::string_view id, const CheckParams& p) {
  if (id == "a1") return {{"max_rank", p.max_rank}, {"word_len", p.word_len}};
  if (id == "a2") return {{"finite_len", p.finite_len}};
  if (id == "a3") return {{"max_rank", p.max_rank}, {"word_len", p.word_len}};
  if (id == "a4") return {{"chain_depth", p.chain_depth}, {"member_len", p.member_len}, {"max_plateau", p.max_plateau}};
  if (id == "a5") return {{"contract_max_rank", p.contract_max_rank}, {"member_len", p.member_len}};
  if (id == "a6") return {{"pair_word_len", p.pair_word_len}, {"pair_max_rank", p.pair_max_rank}, {"pair_len_bound", p.pair_len_bound}};
  if (id == "ultrametric") return {{"triples", p.triples}, {"triple_word_len", p.triple_word_len}, {"seed", p.seed}};
  if (id == "contraction") return {{"contraction_len", p.contraction_len}};
  if (id == "containprop") return {{"sigma_len", p.sigma_len}, {"word_len", p.word_len}};
  if (id == "splitprop") return {{"sigma_len", p.sigma_len}, {"word_len", p.word_len}, {"member_len", p.member_len}};
  if (id == "typeprop") return {{"sigma_len", p.sigma_len}};
  if (id == "order") return {{"sigma_len", p.sigma_len}, {"max_rank", p.max_rank}};
  if (id == "pairscan") {
    return {{"pair_word_len", p.pair_word_len}, {"pair_max_rank", p.pair_max_rank}, {"pair_len_bound", p.pair_len_bound},
            {"brute_max_rank", p.brute_max_rank}, {"brute_len", p.brute_len}};
  }
  if (id == "diam4") {
    return {{"diam_sets", p.diam_sets}, {"diam_set_size", p.diam_set_size}, {"triple_word_len", p.triple_word_len},
            {"seed", p.seed}};
  }
  if (id == "cauchy") return {{"cauchy_word_len", p.cauchy_word_len}};
  throw std::invalid_argument("unknown check id: " + std::string(id));
}

/// Throws if any bound a check reads is above its cap.
inline void validate_params(std::string_view id, const CheckParams& p) {
  const Json caps = check_params_json(id, param_caps());
  const Json given = check_params_json(id, p);
  for (const auto& [key, value] : given.items()) {
    if (value.get<std::uint64_t>() > caps.at(key).get<std::uint64_t>()) {
      throw std::invalid_argument("parameter " + key + " of check " + std::string(id) + " exceeds its cap of " +
                                  caps.at(key).dump());
    }
  }
  if (id == "containprop" && p.word_len < 2 * std::max<std::size_t>(p.sigma_len, 1)) {
    throw std::invalid_argument("containprop needs word_len of at least twice sigma_len");
  }
}

inline CheckReport run_check(std::string_view id, const CheckParams& params) {
  using Suite = detail::Outcome (*)(const CheckParams&, Json&);
  static const std::unordered_map<std::string_view, Suite> suites{
      {"a1", detail::check_a1},
      {"a2", detail::check_a2},
      {"a3", detail::check_a3},
      {"a4", detail::check_a4},
      {"a5", detail::check_a5},
      {"a6", detail::check_a6},
      {"ultrametric", detail::check_ultrametric},
      {"contraction", detail::check_contraction},
      {"containprop", detail::check_containprop},
      {"splitprop", detail::check_splitprop},
      {"typeprop", detail::check_typeprop},
      {"order", detail::check_order},
      {"pairscan", detail::check_pairscan},
      {"diam4", detail::check_diam4},
      {"cauchy", detail::check_cauchy},
  };
  const auto suite = suites.find(id);
  if (suite == suites.end()) throw std::invalid_argument("unknown check id: " + std::string(id));
  validate_params(id, params);
  CheckReport report;
  report.check_id = std::string(id);
  report.params = check_params_json(id, params);
  report.details = Json::object();
  const auto start = std::chrono::steady_clock::now();
  detail::Outcome outcome = suite->second(params, report.details);
  report.runtime_ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  report.passed = outcome.passed;
  report.counterexample = std::move(outcome.counterexample);
  return report;
}

/// Worker count: CONTRAFIX_THREADS when set, else the hardware concurrency.
inline std::size_t worker_count() {
  if (const char* env = std::getenv("CONTRAFIX_THREADS"); env && *env) {
    char* end = nullptr;
    const unsigned long n = std::strtoul(env, &end, 10);
    if (end && *end == '\0' && n > 0) return n;
  }
  return std::max(1U, std::thread::hardware_concurrency());
}

/// Runs checks in parallel; reports come back in the order of `ids`.
inline std::vector<CheckReport> run_checks(const std::vector<std::string>& ids, const CheckParams& params,
                                           std::size_t threads = worker_count()) {
  for (const auto& id : ids) validate_params(id, params);
  std::vector<CheckReport> reports(ids.size());
  std::vector<std::exception_ptr> errors(ids.size());
  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < ids.size(); i = next++) {
      try {
        reports[i] = run_check(ids[i], params);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (std::size_t t = 1; t < std::min(threads, ids.size()); ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return reports;
}

enum class TreeFormat { dot, json };

/// The split tree restricted to sets of σ-length at most `max_sigma_len`.
inline std::string export_tree(std::size_t max_sigma_len, TreeFormat format) {
  struct Node {
    SetDescriptor set;
    Rank rank;
    std::optional<Rank> parent;
    std::vector<Word> lost;
  };
  std::vector<Node> nodes;
  std::vector<std::pair<SetDescriptor, std::optional<Rank>>> frontier{{SetDescriptor::whole(), std::nullopt}};
  while (!frontier.empty()) {
    auto [set, parent] = std::move(frontier.back());
    frontier.pop_back();
    if (sigma_length(set) > max_sigma_len) continue;
    SplitResult parts = children(set);
    const Rank r = rank(set);
    frontier.emplace_back(std::move(parts.right), r);
    frontier.emplace_back(std::move(parts.left), r);
    nodes.push_back({std::move(set), r, parent, std::move(parts.lost)});
  }
  std::sort(nodes.begin(), nodes.end(), [](const Node& x, const Node& y) { return x.rank < y.rank; });
  std::unordered_map<Rank, const Node*> by_rank;
  for (const Node& n : nodes) by_rank.emplace(n.rank, &n);

  if (format == TreeFormat::json) {
    Json out;
    out["max_sigma_len"] = max_sigma_len;
    out["nodes"] = Json::array();
    out["edges"] = Json::array();
    for (const Node& n : nodes) {
      out["nodes"].push_back({{"rank", n.rank},
                              {"descriptor", n.set.to_string()},
                              {"type", std::string(1, kind_letter(n.set.kind()))},
                              {"sigma", sigma(n.set).token()},
                              {"sigma_len", sigma_length(n.set)},
                              {"lost", detail::word_list(n.lost)}});
      if (n.parent) {
        out["edges"].push_back({{"from", *n.parent}, {"to", n.rank}, {"lost", detail::word_list(by_rank.at(*n.parent)->lost)}});
      }
    }
    return out.dump(2) + "\n";
  }
  std::ostringstream dot;
  dot << "digraph tree {\n  node [shape=box];\n";
  for (const Node& n : nodes) dot << "  s" << n.rank << " [label=\"S_" << n.rank << ": " << n.set.to_string() << "\"];\n";
  for (const Node& n : nodes) {
    if (!n.parent) continue;
    std::string lost;
    for (const Word& w : by_rank.at(*n.parent)->lost) lost += (lost.empty() ? "" : ",") + w.token();
    dot << "  s" << *n.parent << " -> s" << n.rank << " [label=\"lost {" << lost << "}\"];\n";
  }
  dot << "}\n";
  return dot.str();
}

}  // namespace contrafix
