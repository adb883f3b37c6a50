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

// weakq: command-line front end.
//
//   weakq build-kb     --kb snapshot.jsonl [--out canonical.jsonl]
//   weakq index        --input docs.trec... --out corpus.idx
//   weakq detect       --index I --kb K --queries Q [--out F] [--audit F]
//   weakq disambiguate --kb K --queries Q [--out F] [--evidence F]
//   weakq expand       --index I --kb K --queries Q [--out F]
//   weakq search       --index I --kb K (--query TEXT | --queries Q) [--out F]
//   weakq experiment   --config C [--out DIR]
//   weakq eval         --run F --qrels F [--queries Q]
//
// Failures print one line "error: <kind>: <message>" to stderr and exit 1;
// usage errors exit 2.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "CLI11.hpp"
#include "weakq/config.h"
#include "weakq/corpus_index.h"
#include "weakq/disambiguate.h"
#include "weakq/eval.h"
#include "weakq/experiment.h"
#include "weakq/expand.h"
#include "weakq/query_ast.h"
#include "weakq/retrieval.h"
#include "weakq/text.h"
#include "weakq/topic_detect.h"
#include "weakq/wiki_kb.h"

namespace {

using namespace weakq;

class UsageError : public Error {
 public:
  using Error::Error;
  const char *kind() const noexcept override { return "usage"; }
};

// Flags shared by the pipeline subcommands. Unset flags leave the config
// file (or the defaults) in effect.
struct CommonFlags {
  std::string config_file;
  std::string dump_config;
  std::optional<double> alpha, lambda, mu;
  std::optional<std::size_t> fb_docs, exp_terms, top_k;
  std::optional<std::string> weights;
  std::optional<std::string> kb, index, queries, qrels, out;

  void attach(CLI::App *app) {
    app->add_option("--config", config_file, "key = value configuration file");
    app->add_option("--dump-config", dump_config,
                    "write the effective configuration to this file");
    app->add_option("--alpha", alpha, "chunk-model smoothing weight alpha_d");
    app->add_option("--lambda", lambda, "title/anchor background mix");
    app->add_option("--mu", mu, "retrieval Dirichlet prior");
    app->add_option("--fb-docs", fb_docs, "feedback documents (context depth)");
    app->add_option("--exp-terms", exp_terms, "number of expansion terms");
    app->add_option("--weights", weights, "original,topic,expansion weights");
    app->add_option("--top-k", top_k, "documents per ranking");
    app->add_option("--kb", kb, "Wikipedia snapshot (JSON lines)");
    app->add_option("--index", index, "positional index file");
    app->add_option("--queries", queries, "query file (qid<TAB>text)");
    app->add_option("--qrels", qrels, "TREC qrels");
    app->add_option("--out", out, "output file or directory");
  }

  Config resolve() const {
    Config config;
    if (!config_file.empty()) config = Config::load(config_file);
    if (alpha) config.alpha_d = *alpha;
    if (lambda) config.lambda = *lambda;
    if (mu) config.mu = *mu;
    if (fb_docs) config.fb_docs = *fb_docs;
    if (exp_terms) config.num_expansion_terms = *exp_terms;
    if (top_k) config.top_k = *top_k;
    if (weights) config.weights = parse_weights(*weights);
    if (kb) config.set("kb", *kb);
    if (index) config.set("index", *index);
    if (queries) config.set("queries", *queries);
    if (qrels) config.set("qrels", *qrels);
    if (out) config.set("out", *out);
    config.validate();
    if (!dump_config.empty()) {
      std::ofstream file(dump_config);
      if (!file) throw IoError("cannot write '" + dump_config + "'");
      file << config.dump();
    }
    return config;
  }
};

const std::filesystem::path &require(const std::filesystem::path &path,
                                     const char *flag) {
  if (path.empty()) throw UsageError(std::string("missing ") + flag);
  return path;
}

// Writes to the named file, or stdout when the name is empty.
class Output {
 public:
  explicit Output(const std::filesystem::path &path) {
    if (!path.empty()) {
      file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
      if (!*file_) throw IoError("cannot write '" + path.string() + "'");
    }
  }
  std::ostream &stream() { return file_ ? *file_ : std::cout; }

 private:
  std::unique_ptr<std::ofstream> file_;
};

std::string number(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.10g", v);
  return buf;
}

void report_diagnostics(const Diagnostics &diagnostics) {
  for (const auto &message : diagnostics.messages) {
    std::cerr << "warning: " << message << '\n';
  }
}

int run_build_kb(const CommonFlags &flags) {
  const Config config = flags.resolve();
  const auto kb = WikiKnowledgeBase::load_snapshot(require(config.kb, "--kb"));
  for (const auto &w : kb.load_warnings()) std::cerr << "warning: " << w << '\n';
  if (!config.out.empty()) {
    Output out(config.out);
    kb.write_snapshot(out.stream());
  }
  std::cerr << "pages=" << kb.page_count() << " anchors=" << kb.total_anchors()
            << " dangling=" << kb.dangling_link_count() << '\n';
  return 0;
}

int run_index(const std::vector<std::string> &inputs, const CommonFlags &flags) {
  const Config config = flags.resolve();
  if (inputs.empty()) throw UsageError("missing --input");
  std::vector<std::filesystem::path> files(inputs.begin(), inputs.end());
  Diagnostics diagnostics;
  const auto index = PositionalIndex::ingest(files, &diagnostics);
  report_diagnostics(diagnostics);
  index.save(require(config.out, "--out"));
  std::cerr << "docs=" << index.doc_count() << " tokens=" << index.total_tokens()
            << " terms=" << index.vocabulary_size() << '\n';
  return 0;
}

TopicDetectParams detect_params(const Config &config) {
  TopicDetectParams params;
  params.alpha_d = config.alpha_d;
  params.lambda = config.lambda;
  params.fb_docs = config.fb_docs;
  params.mu = config.mu;
  return params;
}

int run_detect(const CommonFlags &flags, const std::string &audit_path) {
  const Config config = flags.resolve();
  const auto index = PositionalIndex::load(require(config.index, "--index"));
  const auto kb = WikiKnowledgeBase::load_snapshot(require(config.kb, "--kb"));
  const auto queries = read_queries(require(config.queries, "--queries"));
  Output out(config.out);
  std::unique_ptr<Output> audit;
  if (!audit_path.empty()) audit = std::make_unique<Output>(audit_path);

  for (const auto &query : queries) {
    const auto tokens = tokenize(query.text);
    const auto detection = detect_topic(tokens, index, kb, detect_params(config));
    if (detection.topics.empty()) {
      out.stream() << query.qid << "\t\t0\n";
    }
    for (const auto &topic : detection.topics) {
      out.stream() << query.qid << '\t' << topic.text << '\t' << number(topic.score)
                   << '\n';
    }
    if (audit) {
      for (const auto &c : detection.table) {
        nlohmann::ordered_json row = {
            {"qid", query.qid},         {"chunk", c.text},
            {"begin", c.span.begin},    {"end", c.span.end},
            {"pair", c.pair_index},     {"side", c.is_left ? "left" : "right"},
            {"score", c.score}};
        audit->stream() << row.dump() << '\n';
      }
    }
  }
  return 0;
}

int run_disambiguate(const CommonFlags &flags, const std::string &evidence_path,
                     bool text_only) {
  const Config config = flags.resolve();
  const auto kb = WikiKnowledgeBase::load_snapshot(require(config.kb, "--kb"));
  const auto queries_path = require(config.queries, "--queries");
  if (std::filesystem::is_directory(queries_path)) {
    throw IoError("cannot open queries '" + queries_path.string() + "': is a directory");
  }
  std::ifstream in(queries_path);
  if (!in) throw IoError("cannot open queries '" + queries_path.string() + "'");
  Output out(config.out);
  std::unique_ptr<Output> evidence;
  if (!evidence_path.empty()) evidence = std::make_unique<Output>(evidence_path);

  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    if (line.back() == '\r') line.pop_back();
    std::vector<std::string> fields;
    std::stringstream split(line);
    for (std::string f; std::getline(split, f, '\t');) fields.push_back(f);
    if (fields.size() != 3) {
      throw LoadError(config.queries.string(), line_no,
                      "expected 'qid<TAB>query<TAB>segment'");
    }
    const auto query = tokenize(fields[1]);
    const auto segment = tokenize(fields[2]);
    const auto result = resolve(segment, query, kb, {!text_only});
    out.stream() << fields[0] << '\t' << result.segment << '\t'
                 << (result.chosen_page_id ? std::to_string(*result.chosen_page_id)
                                           : std::string("-"))
                 << '\t' << method_name(result.method) << '\n';
    if (evidence) {
      nlohmann::ordered_json senses = nlohmann::ordered_json::array();
      for (const auto &e : result.evidence) {
        senses.push_back({{"page_id", e.page_id},
                          {"link_count", e.link_count},
                          {"global_count", e.global_count},
                          {"link_overlap", e.link_overlap},
                          {"definition_overlap", e.definition_overlap}});
      }
      nlohmann::ordered_json row = {
          {"qid", fields[0]},
          {"segment", result.segment},
          {"page_id", result.chosen_page_id ? nlohmann::ordered_json(*result.chosen_page_id)
                                            : nlohmann::ordered_json(nullptr)},
          {"method", method_name(result.method)},
          {"links_consulted", result.links_consulted},
          {"context_pages", result.context_pages},
          {"senses", senses}};
      evidence->stream() << row.dump() << '\n';
    }
  }
  return 0;
}

std::vector<QueryRecord> queries_from(const Config &config,
                                      const std::string &inline_query,
                                      const std::string &inline_qid) {
  if (!inline_query.empty()) return {{inline_qid, inline_query}};
  return read_queries(require(config.queries, "--queries or --query"));
}

int run_expand_or_search(const CommonFlags &flags, const std::string &inline_query,
                         const std::string &inline_qid, bool search) {
  const Config config = flags.resolve();
  const auto index = PositionalIndex::load(require(config.index, "--index"));
  const auto kb = WikiKnowledgeBase::load_snapshot(require(config.kb, "--kb"));
  const auto queries = queries_from(config, inline_query, inline_qid);
  Output out(config.out);
  RetrievalParams params;
  params.mu = config.mu;
  params.top_k = config.top_k;
  for (const auto &query : queries) {
    const auto analysis = analyze_query(query, index, kb, config);
    const QueryNode node = compile_full_query(analysis, index, kb, config);
    if (!search) {
      out.stream() << query.qid << '\t' << serialize(node) << '\n';
      continue;
    }
    std::cerr << "query\t" << query.qid << '\t' << serialize(node) << '\n';
    write_trec_run(out.stream(), evaluate(node, index, params, query.qid), "weakq");
  }
  return 0;
}

int run_experiment_command(const CommonFlags &flags) {
  const Config config = flags.resolve();
  const auto index = PositionalIndex::load(require(config.index, "index"));
  const auto kb = WikiKnowledgeBase::load_snapshot(require(config.kb, "kb"));
  const auto queries = read_queries(require(config.queries, "queries"));
  const auto qrels = Qrels::load(require(config.qrels, "qrels"));
  const auto report = run_experiment(config, index, kb, queries, qrels);
  write_report(report, require(config.out, "out"));
  for (const auto &d : report.diagnostics) std::cerr << "note: " << d << '\n';
  std::cout << report_ap_table(report);
  return 0;
}

int run_eval(const std::string &run_path, const CommonFlags &flags) {
  const Config config = flags.resolve();
  if (run_path.empty()) throw UsageError("missing --run");
  const auto runs = read_trec_run(std::filesystem::path(run_path));
  const auto qrels = Qrels::load(require(config.qrels, "--qrels"));
  std::vector<std::string> ids;
  if (!config.queries.empty()) {
    for (const auto &q : read_queries(config.queries)) ids.push_back(q.qid);
  } else {
    for (const auto &[qid, ranking] : runs) ids.push_back(qid);
  }
  Diagnostics diagnostics;
  const auto result = mean_average_precision(runs, qrels, ids, &diagnostics);
  report_diagnostics(diagnostics);
  Output out(config.out);
  char buf[64];
  for (const auto &[qid, ap] : result.per_query) {
    std::snprintf(buf, sizeof(buf), "%.6f", ap);
    out.stream() << "map\t" << qid << '\t' << buf << '\n';
  }
  std::snprintf(buf, sizeof(buf), "%.6f", result.map);
  out.stream() << "map\tall\t" << buf << '\n';
  return 0;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"weakq: topic detection, Wikipedia disambiguation and query "
               "expansion for weak queries"};
  app.require_subcommand(1);

  CommonFlags build_flags, index_flags, detect_flags, disamb_flags, expand_flags,
      search_flags, experiment_flags, eval_flags;

  auto *build_kb = app.add_subcommand("build-kb", "validate and canonicalize a snapshot");
  build_flags.attach(build_kb);

  std::vector<std::string> inputs;
  auto *index = app.add_subcommand("index", "build a positional index from TREC files");
  index->add_option("--input", inputs, "TREC collection files")->expected(1, -1);
  index_flags.attach(index);

  std::string audit;
  auto *detect = app.add_subcommand("detect", "detect query topics");
  detect->add_option("--audit", audit, "JSON lines table of every candidate");
  detect_flags.attach(detect);

  std::string evidence;
  bool text_only = false;
  auto *disamb = app.add_subcommand("disambiguate", "resolve query segments to pages");
  disamb->add_option("--evidence", evidence, "JSON lines evidence per segment");
  disamb->add_flag("--text-only", text_only, "skip link overlap");
  disamb_flags.attach(disamb);

  auto *expand = app.add_subcommand("expand", "print the compiled structured queries");
  expand_flags.attach(expand);

  std::string query_text;
  std::string query_id = "1";
  auto *search = app.add_subcommand("search", "run the full method and rank documents");
  search->add_option("--query", query_text, "query text");
  search->add_option("--qid", query_id, "query id for --query");
  search_flags.attach(search);

  auto *experiment = app.add_subcommand("experiment", "run the treatment matrix");
  experiment_flags.attach(experiment);

  std::string run_path;
  auto *eval = app.add_subcommand("eval", "average precision of a TREC run");
  eval->add_option("--run", run_path, "TREC run file");
  eval_flags.attach(eval);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    std::cerr << app.help();
    return 2;
  }

  try {
    if (*build_kb) return run_build_kb(build_flags);
    if (*index) return run_index(inputs, index_flags);
    if (*detect) return run_detect(detect_flags, audit);
    if (*disamb) return run_disambiguate(disamb_flags, evidence, text_only);
    if (*expand) return run_expand_or_search(expand_flags, "", "", false);
    if (*search) return run_expand_or_search(search_flags, query_text, query_id, true);
    if (*experiment) return run_experiment_command(experiment_flags);
    if (*eval) return run_eval(run_path, eval_flags);
  } catch (const UsageError &e) {
    std::cerr << "error: usage: " << e.what() << '\n';
    return 2;
  } catch (const Error &e) {
    std::cerr << "error: " << e.kind() << ": " << e.what() << '\n';
    return 1;
  } catch (const std::exception &e) {
    std::cerr << "error: internal: " << e.what() << '\n';
    return 1;
  }
  return 2;
}
