// Copyright 2026 The weakq Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef WEAKQ_EXPERIMENT_H_
#define WEAKQ_EXPERIMENT_H_

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "weakq/config.h"
#include "weakq/corpus_index.h"
#include "weakq/disambiguate.h"
#include "weakq/eval.h"
#include "weakq/expand.h"
#include "weakq/query_ast.h"
#include "weakq/retrieval.h"
#include "weakq/stats.h"
#include "weakq/topic_detect.h"
#include "weakq/wiki_kb.h"

namespace weakq {

struct QueryRecord {
  std::string qid;
  std::string text;
};

// "qid<TAB>text" per line; blank lines are skipped. Throws LoadError.
std::vector<QueryRecord> read_queries(std::istream &in,
                                      const std::string &source_name);
std::vector<QueryRecord> read_queries(const std::filesystem::path &path);

// Everything the pipeline learns about one query before building queries.
struct QueryAnalysis {
  std::string qid;
  std::vector<std::string> tokens;
  ContextCollection context;
  TopicDetection detection;
  // Segments sent to disambiguation: the detected topics, or the whole query
  // when no topic was found but the query itself is a KB surface.
  std::vector<Span> segments;
  std::vector<DisambiguationResult> with_links;     // full decision list
  std::vector<DisambiguationResult> without_links;  // definition text only
};

QueryAnalysis analyze_query(const QueryRecord &query,
                            const PositionalIndex &index,
                            const WikiKnowledgeBase &kb, const Config &config);

// The complete method: detected topics, and expansion terms mixed from the
// resolved pages and local context analysis.
QueryNode compile_full_query(const QueryAnalysis &analysis,
                             const PositionalIndex &index,
                             const WikiKnowledgeBase &kb, const Config &config);

inline constexpr const char *kTreatments[] = {
    "wsd_qe",      "no_wsd_qe",     "wsd_ir",      "no_wsd_ir",
    "wsd_qe_wiki", "wsd_qe_nowiki", "wsd_ir_wiki", "wsd_ir_nowiki",
};

// Builds the query a treatment runs. `fallback` is set to a description when
// the treatment had to fall back to the plain query.
QueryNode compile_treatment(const std::string &treatment,
                            const QueryAnalysis &analysis,
                            const PositionalIndex &index,
                            const WikiKnowledgeBase &kb, const Config &config,
                            std::string *fallback = nullptr);

struct PairwiseTest {
  std::string a;
  std::string b;
  std::size_t n = 0;
  std::optional<WilcoxonResult> wilcoxon;
  std::optional<TTestResult> t_test;
  std::string note;  // why a test was skipped
};

struct TreatmentResult {
  std::string name;
  std::map<std::string, Ranking> runs;
  std::map<std::string, std::string> compiled;  // qid -> serialized query
  MapResult scores;
};

struct EvalReport {
  std::vector<std::string> query_ids;      // all queries run
  std::vector<std::string> evaluated_ids;  // queries with judgments
  std::vector<TreatmentResult> treatments;
  std::vector<PairwiseTest> tests;
  std::vector<std::string> diagnostics;

  const TreatmentResult &treatment(const std::string &name) const;
};

// Runs every treatment over every query and compares them pairwise with
// the Wilcoxon signed-rank test and the paired t-test.
EvalReport run_experiment(const Config &config, const PositionalIndex &index,
                          const WikiKnowledgeBase &kb,
                          const std::vector<QueryRecord> &queries,
                          const Qrels &qrels);

// Writes runs/<treatment>.run, ap.tsv, queries.tsv and summary.json.
void write_report(const EvalReport &report, const std::filesystem::path &dir);
std::string report_ap_table(const EvalReport &report);
std::string report_summary_json(const EvalReport &report);

}  // namespace weakq

#endif  // WEAKQ_EXPERIMENT_H_
