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

// Command line front end: enumerate the family, measure distances, export the
// tree and run the check suites. Exit codes: 0 ok, 1 a check failed, 2 usage.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "contrafix/harness.hpp"

namespace {

using namespace contrafix;

constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kUsage = 2;

constexpr std::size_t kMaxEnumerate = 16;

struct UsageError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

int enumerate(std::size_t max_sigma_len, bool json, bool csv) {
  if (max_sigma_len > kMaxEnumerate) throw UsageError("--max-sigma-len is capped at " + std::to_string(kMaxEnumerate));
  const auto sets = universe(max_sigma_len);
  if (json) {
    Json rows = Json::array();
    for (std::size_t n = 0; n < sets.size(); ++n) {
      rows.push_back({{"n", n},
                      {"descriptor", sets[n].to_string()},
                      {"type", std::string(1, kind_letter(sets[n].kind()))},
                      {"sigma", sigma(sets[n]).token()},
                      {"sigma_len", sigma_length(sets[n])},
                      {"diam_exponent", n}});
    }
    std::cout << rows.dump(2) << "\n";
    return kOk;
  }
  if (csv) {
    std::cout << "n,descriptor,type,sigma,sigma_len,diam_exponent\n";
    for (std::size_t n = 0; n < sets.size(); ++n) {
      std::cout << n << ',' << sets[n].to_string() << ',' << kind_letter(sets[n].kind()) << ','
                << sigma(sets[n]).token() << ',' << sigma_length(sets[n]) << ',' << n << '\n';
    }
    return kOk;
  }
  std::cout << "n\tdescriptor\ttype\tsigma\tsigma_len\tdiam\n";
  for (std::size_t n = 0; n < sets.size(); ++n) {
    std::cout << "S_" << n << '\t' << sets[n].to_string() << '\t' << kind_letter(sets[n].kind()) << '\t'
              << sigma(sets[n]).token() << '\t' << sigma_length(sets[n]) << "\tλ^" << n << '\n';
  }
  return kOk;
}

int dist(const std::string& x_text, const std::string& y_text, const std::string& lambda_text) {
  const Word x = Word::parse(x_text);
  const Word y = Word::parse(y_text);
  const ExactDistance d = distance(x, y);
  std::cout << d.to_string();
  if (!lambda_text.empty()) {
    const Lambda lambda = Lambda::parse(lambda_text);
    const Rational value = lambda.evaluate(d);
    std::cout << " = " << detail::rational_text(value) << " = " << to_decimal(value);
  }
  std::cout << "\n";
  return kOk;
}

int tree(std::size_t sigma_len, const std::string& format) {
  if (sigma_len > 10) throw UsageError("--sigma-len is capped at 10 for tree export");
  std::cout << export_tree(sigma_len, format == "json" ? TreeFormat::json : TreeFormat::dot);
  return kOk;
}

std::vector<std::string> split_ids(const std::string& text) {
  if (text == "all") return check_ids();
  std::vector<std::string> ids;
  std::stringstream in(text);
  for (std::string id; std::getline(in, id, ',');) {
    if (std::find(check_ids().begin(), check_ids().end(), id) == check_ids().end()) {
      throw UsageError("unknown check id: " + id);
    }
    ids.push_back(id);
  }
  if (ids.empty()) throw UsageError("no checks given");
  return ids;
}

int report_checks(const std::vector<CheckReport>& reports, const Json& header, bool timing, const std::string& out_path) {
  Json out = header;
  bool passed = true;
  out["reports"] = Json::array();
  for (const auto& r : reports) {
    out["reports"].push_back(r.to_json(timing));
    passed = passed && r.passed;
    std::cerr << (r.passed ? "PASS " : "FAIL ") << r.check_id;
    if (!r.passed) std::cerr << " reproducer: " << r.counterexample.dump();
    std::cerr << "\n";
  }
  out["passed"] = passed;
  const std::string text = out.dump(2) + "\n";
  if (out_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream file(out_path, std::ios::binary);
    if (!file) throw UsageError("cannot write " + out_path);
    file << text;
  }
  return passed ? kOk : kCheckFailed;
}

int verify(const std::string& checks, const std::string& depth, std::uint64_t seed, Rank pair_max_rank, bool timing,
           const std::string& out) {
  CheckParams params;
  params.seed = seed;
  params.pair_max_rank = pair_max_rank;
  if (depth != "default") {
    try {
      std::size_t used = 0;
      params.sigma_len = std::stoul(depth, &used);
      if (used != depth.size()) throw std::invalid_argument(depth);
    } catch (const std::logic_error&) {
      throw UsageError("--depth must be 'default' or a number, got " + depth);
    }
  }
  const auto ids = split_ids(checks);
  Json header;
  header["seed"] = seed;
  header["sigma_len"] = params.sigma_len;
  return report_checks(run_checks(ids, params), header, timing, out);
}

int contraction(std::size_t max_len) {
  CheckParams params;
  params.contraction_len = max_len;
  Json header;
  header["max_len"] = max_len;
  return report_checks({run_check("contraction", params)}, header, false, "");
}

int pairs(const std::string& word, Rank max_rank, std::size_t len_bound) {
  const Word w = Word::parse(word);
  if (w.empty()) throw UsageError("--word must be nonempty");
  if (max_rank > param_caps().pair_max_rank) throw UsageError("--max-rank is capped at 100000");
  const PairScanReport report = pair_scan(w, max_rank, len_bound);
  Json out;
  out["word"] = report.word.token();
  out["checked_max_rank"] = report.checked_max_rank;
  out["len_bound"] = report.len_bound;
  out["hits"] = Json::array();
  for (const auto& hit : report.hits) {
    out["hits"].push_back({{"rank", hit.rank}, {"descriptor", hit.set.to_string()}, {"witness", hit.witness.token()}});
  }
  out["bounded_certified"] = report.bounded_certified;
  std::cout << out.dump(2) << "\n";
  return kOk;
}

int orbit(const std::string& word, std::size_t steps) {
  const Word w = Word::parse(word);
  if (w.empty()) throw UsageError("--word must be nonempty");
  if (steps == 0 || steps > 64) throw UsageError("--steps must lie in 1..64");
  std::cout << "n\tpoint\tdeepest set\td(w^n, w^(n+1))\n";
  Word point = w;
  for (std::size_t n = 1; n <= steps; ++n) {
    const Word next = point + w;
    std::cout << n << '\t' << point.token() << '\t' << tree_path(point).back().to_string() << '\t'
              << distance(point, next).to_string() << '\n';
    point = next;
  }
  const auto tail = orbit_tail_sets(w);
  const CauchyCertificate cert = cauchy_certificate(w);
  std::cout << "tail sets:";
  for (const auto& s : tail) std::cout << ' ' << s.to_string();
  std::cout << "\ncauchy: " << (cert.cauchy ? "true" : "false") << " (" << cert.tail_sets
            << " tail sets, max rank " << cert.max_tail_rank << ")\n";
  return kOk;
}

int list_progression(std::uint64_t k, std::size_t terms) {
  if (k < 1) throw UsageError("progression index must be positive");
  const Progression p = progression(k);
  std::cout << "I_" << k << " = {";
  for (std::size_t i = 0; i < terms; ++i) std::cout << (i ? ", " : "") << p.nth(i);
  std::cout << ", ...}\n";
  const SplitKind s = split(k);
  if (const auto* two = std::get_if<TwoWaySplit>(&s)) {
    std::cout << "split: I_" << two->left << " + I_" << two->right << "\n";
  } else {
    const auto& drop = std::get<DropMinSplit>(s);
    std::cout << "split: {" << drop.lost << "} + I_" << drop.next << "\n";
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact contractive-family metric space toolkit"};
  app.require_subcommand(1);

  std::size_t max_sigma_len = 0;
  bool as_json = false;
  bool as_csv = false;
  auto* cmd_enumerate = app.add_subcommand("enumerate", "List S_0, S_1, ... up to a σ-length");
  cmd_enumerate->add_option("--max-sigma-len", max_sigma_len, "Largest σ-length")->required();
  auto* json_flag = cmd_enumerate->add_flag("--json", as_json, "JSON rows");
  cmd_enumerate->add_flag("--csv", as_csv, "CSV rows")->excludes(json_flag);

  std::string x_text, y_text, lambda_text;
  auto* cmd_dist = app.add_subcommand("dist", "Distance between two words");
  cmd_dist->add_option("x", x_text, "First word, _ for empty")->required();
  cmd_dist->add_option("y", y_text, "Second word, _ for empty")->required();
  cmd_dist->add_option("--lambda", lambda_text, "Contraction ratio p/q for exact and decimal values");

  std::size_t tree_len = 0;
  std::string tree_format = "dot";
  auto* cmd_tree = app.add_subcommand("tree", "Export the split tree");
  cmd_tree->add_option("--sigma-len", tree_len, "Largest σ-length")->required();
  cmd_tree->add_option("--format", tree_format, "dot or json")->check(CLI::IsMember({"dot", "json"}));

  std::string checks = "all";
  std::string depth = "default";
  std::uint64_t seed = 0;
  bool timing = false;
  std::string out_path;
  auto* cmd_verify = app.add_subcommand("verify", "Run check suites and print a JSON report");
  cmd_verify->add_option("--checks", checks, "Comma separated ids or all");
  cmd_verify->add_option("--depth", depth, "Structural σ-length bound or default");
  cmd_verify->add_option("--seed", seed, "Seed for randomized suites");
  Rank verify_pair_rank = CheckParams{}.pair_max_rank;
  cmd_verify->add_option("--pair-max-rank", verify_pair_rank, "Rank bound for the pair scans of a6 and pairscan");
  cmd_verify->add_flag("--timing", timing, "Include runtime_ms in reports");
  cmd_verify->add_option("--out", out_path, "Write the report here instead of stdout");

  std::size_t contraction_len = 7;
  auto* cmd_contraction = app.add_subcommand("contraction", "Certify contraction on all short word pairs");
  cmd_contraction->add_option("--max-len", contraction_len, "Largest word length");

  std::string pair_word;
  Rank pair_rank = 2000;
  std::size_t len_bound = 30;
  auto* cmd_pairs = app.add_subcommand("pairs", "Scan for sets holding u and w·u");
  cmd_pairs->add_option("--word", pair_word, "The word w")->required();
  cmd_pairs->add_option("--max-rank", pair_rank, "Largest rank scanned");
  cmd_pairs->add_option("--len-bound", len_bound, "Witness length bound");

  std::string orbit_word;
  std::size_t steps = 8;
  auto* cmd_orbit = app.add_subcommand("orbit", "Follow w, w², w³, ...");
  cmd_orbit->add_option("--word", orbit_word, "The word w")->required();
  cmd_orbit->add_option("--steps", steps, "Number of orbit points");

  std::uint64_t prog_index = 1;
  std::size_t terms = 8;
  auto* cmd_prog = app.add_subcommand("progression", "Show I_k and its split");
  cmd_prog->add_option("k", prog_index, "Index k")->required();
  cmd_prog->add_option("--terms", terms, "Number of elements shown");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (cmd_enumerate->parsed()) return enumerate(max_sigma_len, as_json, as_csv);
    if (cmd_dist->parsed()) return dist(x_text, y_text, lambda_text);
    if (cmd_tree->parsed()) return tree(tree_len, tree_format);
    if (cmd_verify->parsed()) return verify(checks, depth, seed, verify_pair_rank, timing, out_path);
    if (cmd_contraction->parsed()) return contraction(contraction_len);
    if (cmd_pairs->parsed()) return pairs(pair_word, pair_rank, len_bound);
    if (cmd_orbit->parsed()) return orbit(orbit_word, steps);
    if (cmd_prog->parsed()) return list_progression(prog_index, terms);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kCheckFailed;
  }
  return kUsage;
}
