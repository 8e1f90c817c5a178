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

#include "contrafix/harness.hpp"

namespace contrafix {
namespace {

std::string dump_all(const std::vector<CheckReport>& reports) {
  std::string out;
  for (const auto& r : reports) out += r.to_json().dump() + "\n";
  return out;
}

TEST(Harness, DefaultsPassExceptLatePairHits) {
  const auto reports = run_checks(check_ids(), CheckParams{});
  ASSERT_EQ(reports.size(), check_ids().size());
  for (std::size_t i = 0; i < reports.size(); ++i) {
    EXPECT_EQ(reports[i].check_id, check_ids()[i]);
    if (reports[i].check_id == "a6") {
      EXPECT_FALSE(reports[i].passed);
      EXPECT_EQ(reports[i].counterexample.at("word"), "aab");
    } else {
      EXPECT_TRUE(reports[i].passed) << reports[i].check_id << " " << reports[i].counterexample.dump();
    }
  }
}

TEST(Harness, LatePairHitsSettleWithLargerBound) {
  CheckParams p;
  p.pair_max_rank = 5000;
  const CheckReport r = run_check("a6", p);
  EXPECT_TRUE(r.passed) << r.counterexample.dump();
  EXPECT_EQ(r.details.at("words").at("aab").at("hits_half"), r.details.at("words").at("aab").at("hits_full"));
}

TEST(Harness, StructuralChecksPassAtMaximumDepth) {
  CheckParams p;
  p.sigma_len = param_caps().sigma_len;
  for (const char* id : {"containprop", "splitprop", "typeprop", "order"}) {
    const CheckReport r = run_check(id, p);
    EXPECT_TRUE(r.passed) << id << " " << r.counterexample.dump();
  }
}

TEST(Harness, OutputIndependentOfThreadCount) {
  CheckParams p;
  p.seed = 17;
  p.triples = 5000;
  const std::vector<std::string> ids{"ultrametric", "diam4", "containprop", "order", "a1"};
  const std::string one = dump_all(run_checks(ids, p, 1));
  EXPECT_EQ(one, dump_all(run_checks(ids, p, 4)));
  EXPECT_EQ(one, dump_all(run_checks(ids, p, 16)));
}

TEST(Harness, SeedChangesSamples) {
  CheckParams p;
  p.triples = 2000;
  const CheckReport r0 = run_check("ultrametric", p);
  p.seed = 1;
  const CheckReport r1 = run_check("ultrametric", p);
  EXPECT_TRUE(r0.passed);
  EXPECT_TRUE(r1.passed);
  EXPECT_NE(r0.params, r1.params);
}

TEST(Harness, RejectsUnknownIdsAndOversizedBounds) {
  EXPECT_THROW(run_check("a7", CheckParams{}), std::invalid_argument);
  EXPECT_THROW(check_params_json("nope", CheckParams{}), std::invalid_argument);
  CheckParams p;
  p.sigma_len = param_caps().sigma_len + 1;
  EXPECT_THROW(run_check("order", p), std::invalid_argument);
  EXPECT_THROW(run_checks({"a1", "order"}, p), std::invalid_argument);
  CheckParams q;
  q.sigma_len = 6;
  q.word_len = 11;
  EXPECT_THROW(run_check("containprop", q), std::invalid_argument);
}

TEST(Harness, ReportJson) {
  CheckReport r = run_check("cauchy", CheckParams{});
  const Json plain = r.to_json();
  EXPECT_EQ(plain.at("verdict"), "pass");
  EXPECT_FALSE(plain.contains("runtime_ms"));
  EXPECT_FALSE(plain.contains("counterexample"));
  EXPECT_TRUE(r.to_json(true).contains("runtime_ms"));
  EXPECT_EQ(plain.at("params"), check_params_json("cauchy", CheckParams{}));
}

TEST(Harness, WorkerCountFromEnvironment) {
  ::setenv("CONTRAFIX_THREADS", "3", 1);
  EXPECT_EQ(worker_count(), 3U);
  ::setenv("CONTRAFIX_THREADS", "zero", 1);
  EXPECT_GE(worker_count(), 1U);
  ::unsetenv("CONTRAFIX_THREADS");
}

TEST(TreeExport, SizesAndShape) {
  const std::string root = export_tree(0, TreeFormat::dot);
  EXPECT_NE(root.find("s0 [label=\"S_0: W:_\"]"), std::string::npos);
  EXPECT_EQ(root.find("->"), std::string::npos);

  const std::string one = export_tree(1, TreeFormat::dot);
  EXPECT_NE(one.find("s0 -> s1 [label=\"lost {_}\"]"), std::string::npos);
  EXPECT_NE(one.find("s0 -> s2"), std::string::npos);

  const Json two = Json::parse(export_tree(2, TreeFormat::json));
  EXPECT_EQ(two.at("nodes").size(), 11U);
  EXPECT_EQ(two.at("edges").size(), 10U);
  for (const auto& n : two.at("nodes")) {
    const SetDescriptor s = SetDescriptor::parse(n.at("descriptor").get<std::string>());
    EXPECT_EQ(n.at("rank"), rank(s));
    EXPECT_EQ(n.at("sigma"), sigma(s).token());
  }
}

TEST(TreeExport, NodesAreTheFirstLayers) {
  for (std::size_t len = 0; len <= 6; ++len) {
    const Json tree = Json::parse(export_tree(len, TreeFormat::json));
    ASSERT_EQ(tree.at("nodes").size(), family_order().count_up_to(len));
    Rank expect = 0;
    for (const auto& n : tree.at("nodes")) EXPECT_EQ(n.at("rank"), expect++);
  }
}

}  // namespace
}  // namespace contrafix
