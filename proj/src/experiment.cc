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

#include "weakq/experiment.h"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <istream>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "weakq/text.h"
#include "open_input.h"

namespace weakq {

std::vector<QueryRecord> read_queries(std::istream &in,
                                      const std::string &source_name) {
  std::vector<QueryRecord> queries;
  std::set<std::string> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    auto tab = line.find('\t');
    if (tab == std::string::npos || tab == 0) {
      throw LoadError(source_name, line_no, "expected 'qid<TAB>text'");
    }
    QueryRecord record{line.substr(0, tab), line.substr(tab + 1)};
    if (!seen.insert(record.qid).second) {
      throw LoadError(source_name, line_no, "duplicate query id '" + record.qid + "'");
    }
    queries.push_back(std::move(record));
  }
  return queries;
}

std::vector<QueryRecord> read_queries(const std::filesystem::path &path) {
  auto in = open_input(path, "queries");
  return read_queries(in, path.string());
}

QueryAnalysis analyze_query(const QueryRecord &query,
                            const PositionalIndex &index,
                            const WikiKnowledgeBase &kb, const Config &config) {
  QueryAnalysis analysis;
  analysis.qid = query.qid;
  analysis.tokens = tokenize(query.text);
  if (analysis.tokens.empty()) {
    throw InvalidInputError("query " + query.qid + " has no words");
  }
  const std::span<const std::string> tokens(analysis.tokens);

  TopicDetectParams params;
  params.alpha_d = config.alpha_d;
  params.lambda = config.lambda;
  params.fb_docs = config.fb_docs;
  params.mu = config.mu;
  analysis.context = acquire_context(tokens, index, config.fb_docs, config.mu);
  analysis.detection = detect_topic(tokens, index, kb, params);

  for (const auto &topic : analysis.detection.topics) {
    analysis.segments.push_back(topic.span);
  }
  if (analysis.segments.empty()) {
    const std::string whole = join_tokens(tokens);
    if (kb.has_title(whole) || kb.has_anchor(whole)) {
      analysis.segments.push_back({0, tokens.size()});
    }
  }
  for (const auto &span : analysis.segments) {
    auto segment = tokens.subspan(span.begin, span.size());
    analysis.with_links.push_back(resolve(segment, tokens, kb, {true}));
    analysis.without_links.push_back(resolve(segment, tokens, kb, {false}));
  }
  return analysis;
}

namespace {

struct Resolved {
  std::vector<std::vector<std::string>> topics;
  std::vector<std::pair<std::size_t, std::size_t>> spans;
  std::vector<const WikiPage *> pages;
};

Resolved resolved_segments(const QueryAnalysis &analysis,
                           const std::vector<DisambiguationResult> &results,
                           const WikiKnowledgeBase &kb) {
  Resolved out;
  std::set<PageId> seen;
  for (std::size_t i = 0; i < analysis.segments.size(); ++i) {
    if (!results[i].chosen_page_id) continue;
    const Span &span = analysis.segments[i];
    out.spans.emplace_back(span.begin, span.end);
    out.topics.emplace_back(analysis.tokens.begin() + span.begin,
                            analysis.tokens.begin() + span.end);
    if (seen.insert(*results[i].chosen_page_id).second) {
      out.pages.push_back(&kb.page(*results[i].chosen_page_id));
    }
  }
  return out;
}

}  // namespace

QueryNode compile_full_query(const QueryAnalysis &analysis,
                             const PositionalIndex &index,
                             const WikiKnowledgeBase &kb, const Config &config) {
  std::vector<std::vector<std::string>> topics;
  for (const auto &topic : analysis.detection.topics) {
    topics.emplace_back(analysis.tokens.begin() + topic.span.begin,
                        analysis.tokens.begin() + topic.span.end);
  }
  const Resolved resolved = resolved_segments(analysis, analysis.with_links, kb);
  const auto wiki =
      wiki_terms(resolved.pages, analysis.tokens, config.num_expansion_terms);
  const auto lca = lca_terms(analysis.tokens, analysis.context.docs, index,
                             config.num_expansion_terms, {config.lca_delta});
  const auto mixed = mix_terms(wiki, lca, config.num_expansion_terms);
  return build_query(analysis.tokens, topics, mixed, config.weights,
                     config.windows);
}

QueryNode compile_treatment(const std::string &treatment,
                            const QueryAnalysis &analysis,
                            const PositionalIndex &index,
                            const WikiKnowledgeBase &kb, const Config &config,
                            std::string *fallback) {
  const auto &tokens = analysis.tokens;
  auto note = [&](const std::string &why) {
    if (fallback != nullptr) *fallback = why;
  };

  if (treatment == "no_wsd_ir") return QueryNode::combine_terms(tokens);
  if (treatment == "no_wsd_qe") {
    const auto lca = lca_terms(tokens, analysis.context.docs, index,
                               config.num_expansion_terms, {config.lca_delta});
    return build_query(tokens, {}, lca, config.weights, config.windows);
  }

  const bool is_ir = treatment == "wsd_ir" || treatment == "wsd_ir_wiki" ||
                     treatment == "wsd_ir_nowiki";
  const bool is_qe = treatment == "wsd_qe" || treatment == "wsd_qe_wiki" ||
                     treatment == "wsd_qe_nowiki";
  if (!is_ir && !is_qe) {
    throw InvalidInputError("unknown treatment '" + treatment + "'");
  }
  const bool text_only = treatment.ends_with("_nowiki");
  const Resolved resolved = resolved_segments(
      analysis, text_only ? analysis.without_links : analysis.with_links, kb);

  if (resolved.pages.empty()) {
    note(is_ir ? "no segment resolved to a Wikipedia page; query treated as text"
               : "no Wikipedia page found; original query used without expansion");
    return QueryNode::combine_terms(tokens);
  }
  if (is_ir) return build_topic_query(tokens, resolved.spans);
  const auto wiki = wiki_terms(resolved.pages, tokens, config.num_expansion_terms);
  return build_query(tokens, resolved.topics, wiki, config.weights,
                     config.windows);
}

const TreatmentResult &EvalReport::treatment(const std::string &name) const {
  for (const auto &t : treatments) {
    if (t.name == name) return t;
  }
  throw NotFoundError("no treatment named '" + name + "'");
}

EvalReport run_experiment(const Config &config, const PositionalIndex &index,
                          const WikiKnowledgeBase &kb,
                          const std::vector<QueryRecord> &queries,
                          const Qrels &qrels) {
  config.validate();
  EvalReport report;
  for (const char *name : kTreatments) report.treatments.push_back({name, {}, {}, {}});

  RetrievalParams params;
  params.mu = config.mu;
  params.top_k = config.top_k;

  for (const auto &query : queries) {
    report.query_ids.push_back(query.qid);
    std::optional<QueryAnalysis> analysis;
    try {
      analysis = analyze_query(query, index, kb, config);
    } catch (const Error &e) {
      report.diagnostics.push_back(query.qid + ": " + e.what());
    }
    for (auto &treatment : report.treatments) {
      Ranking ranking{query.qid, {}};
      if (analysis) {
        std::string fallback;
        QueryNode node = compile_treatment(treatment.name, *analysis, index, kb,
                                           config, &fallback);
        if (!fallback.empty()) {
          report.diagnostics.push_back(query.qid + " " + treatment.name + ": " +
                                       fallback);
        }
        treatment.compiled[query.qid] = serialize(node);
        ranking = evaluate(node, index, params, query.qid);
      }
      treatment.runs[query.qid] = std::move(ranking);
    }
  }

  for (const auto &qid : report.query_ids) {
    if (qrels.relevant_count(qid) > 0) {
      report.evaluated_ids.push_back(qid);
    } else {
      report.diagnostics.push_back(qid + ": no relevant documents; excluded from MAP");
    }
  }
  for (auto &treatment : report.treatments) {
    treatment.scores =
        mean_average_precision(treatment.runs, qrels, report.evaluated_ids);
  }

  if (report.query_ids.empty()) return report;

  const std::pair<const char *, const char *> comparisons[] = {
      {"wsd_qe", "no_wsd_qe"},          {"wsd_ir", "no_wsd_ir"},
      {"wsd_qe", "no_wsd_ir"},          {"wsd_qe_wiki", "wsd_qe_nowiki"},
      {"wsd_qe_wiki", "wsd_ir_nowiki"}, {"wsd_ir_wiki", "wsd_ir_nowiki"},
  };
  for (const auto &[a, b] : comparisons) {
    PairwiseTest test;
    test.a = a;
    test.b = b;
    test.n = report.evaluated_ids.size();
    std::vector<double> xs, ys;
    for (const auto &qid : report.evaluated_ids) {
      xs.push_back(report.treatment(a).scores.per_query.at(qid));
      ys.push_back(report.treatment(b).scores.per_query.at(qid));
    }
    if (test.n < 2) {
      test.note = "fewer than 2 judged queries; tests skipped";
    } else {
      test.wilcoxon = wilcoxon_signed_rank(xs, ys);
      if (test.wilcoxon->all_zero) test.note = "all differences are zero";
      try {
        test.t_test = paired_t_test(xs, ys);
      } catch (const DegenerateSampleError &e) {
        test.note += (test.note.empty() ? "" : "; ") + std::string("t-test: ") + e.what();
      }
    }
    report.tests.push_back(std::move(test));
  }
  return report;
}

namespace {

std::string fixed(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

}  // namespace

std::string report_ap_table(const EvalReport &report) {
  std::ostringstream out;
  out << "qid";
  for (const auto &t : report.treatments) out << '\t' << t.name;
  out << '\n';
  for (const auto &qid : report.evaluated_ids) {
    out << qid;
    for (const auto &t : report.treatments) out << '\t' << fixed(t.scores.per_query.at(qid));
    out << '\n';
  }
  out << "MAP";
  for (const auto &t : report.treatments) out << '\t' << fixed(t.scores.map);
  out << '\n';
  return out.str();
}

std::string report_summary_json(const EvalReport &report) {
  using nlohmann::ordered_json;
  ordered_json summary;
  summary["queries"] = report.query_ids;
  summary["evaluated"] = report.evaluated_ids;
  ordered_json map = ordered_json::object();
  for (const auto &t : report.treatments) map[t.name] = t.scores.map;
  summary["map"] = std::move(map);
  ordered_json tests = ordered_json::array();
  for (const auto &test : report.tests) {
    ordered_json entry;
    entry["a"] = test.a;
    entry["b"] = test.b;
    entry["n"] = test.n;
    if (test.wilcoxon) {
      entry["wilcoxon"] = {{"w", test.wilcoxon->w},
                           {"w_plus", test.wilcoxon->w_plus},
                           {"w_minus", test.wilcoxon->w_minus},
                           {"p_two_tailed", test.wilcoxon->p_two_tailed},
                           {"n_effective", test.wilcoxon->n_effective}};
    } else {
      entry["wilcoxon"] = nullptr;
    }
    if (test.t_test) {
      entry["t_test"] = {{"t", test.t_test->t},
                         {"p_two_tailed", test.t_test->p_two_tailed},
                         {"df", test.t_test->df}};
    } else {
      entry["t_test"] = nullptr;
    }
    entry["note"] = test.note;
    tests.push_back(std::move(entry));
  }
  summary["tests"] = std::move(tests);
  summary["diagnostics"] = report.diagnostics;
  return summary.dump(2) + "\n";
}

void write_report(const EvalReport &report, const std::filesystem::path &dir) {
  std::filesystem::create_directories(dir / "runs");
  auto open = [](const std::filesystem::path &path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot write '" + path.string() + "'");
    return out;
  };
  for (const auto &t : report.treatments) {
    auto out = open(dir / "runs" / (t.name + ".run"));
    for (const auto &qid : report.query_ids) {
      write_trec_run(out, t.runs.at(qid), t.name);
    }
  }
  {
    auto out = open(dir / "queries.tsv");
    for (const auto &qid : report.query_ids) {
      for (const auto &t : report.treatments) {
        auto it = t.compiled.find(qid);
        if (it != t.compiled.end()) out << qid << '\t' << t.name << '\t' << it->second << '\n';
      }
    }
  }
  open(dir / "ap.tsv") << report_ap_table(report);
  open(dir / "summary.json") << report_summary_json(report);
}

}  // namespace weakq
