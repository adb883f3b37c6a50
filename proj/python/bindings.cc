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

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "weakq/config.h"
#include "weakq/corpus_index.h"
#include "weakq/disambiguate.h"
#include "weakq/errors.h"
#include "weakq/eval.h"
#include "weakq/expand.h"
#include "weakq/experiment.h"
#include "weakq/query_ast.h"
#include "weakq/retrieval.h"
#include "weakq/stats.h"
#include "weakq/text.h"
#include "weakq/topic_detect.h"
#include "weakq/wiki_kb.h"

namespace py = pybind11;
using namespace weakq;

namespace {

using Tokens = std::vector<std::string>;

DocId doc_id(const PositionalIndex &index, const std::string &docno) {
  auto id = index.find_doc(docno);
  if (!id) throw NotFoundError("unknown docno '" + docno + "'");
  return *id;
}

py::dict evidence_dict(const SenseEvidence &e) {
  py::dict d;
  d["page_id"] = e.page_id;
  d["link_count"] = e.link_count;
  d["global_count"] = e.global_count;
  d["link_overlap"] = e.link_overlap;
  d["definition_overlap"] = e.definition_overlap;
  return d;
}

py::dict detection_dict(const TopicDetection &r) {
  py::list topics;
  for (const auto &t : r.topics) {
    py::dict d;
    d["text"] = t.text;
    d["begin"] = t.span.begin;
    d["end"] = t.span.end;
    d["score"] = t.score;
    d["promoted"] = t.promoted;
    topics.append(d);
  }
  py::list table;
  for (const auto &c : r.table) {
    table.append(py::make_tuple(c.text, c.score, c.pair_index, c.is_left));
  }
  py::dict out;
  out["topics"] = topics;
  out["table"] = table;
  out["no_topic"] = r.no_topic;
  out["degenerate_context"] = r.degenerate_context;
  return out;
}

// Expansion entries are (term, weight) or (term, weight, "wiki" | "lca").
std::vector<ExpansionTerm> to_expansion(const py::list &items) {
  std::vector<ExpansionTerm> out;
  for (const auto &item : items) {
    auto t = item.cast<py::tuple>();
    if (t.size() != 2 && t.size() != 3) {
      throw InvalidInputError("expansion entries are (term, weight[, source])");
    }
    ExpansionTerm term{t[0].cast<std::string>(), t[1].cast<double>(), TermSource::kWiki};
    if (t.size() == 3) {
      auto source = t[2].cast<std::string>();
      if (source == "lca") {
        term.source = TermSource::kLca;
      } else if (source != "wiki") {
        throw InvalidInputError("unknown expansion source '" + source + "'");
      }
    }
    out.push_back(std::move(term));
  }
  return out;
}

}  // namespace

PYBIND11_MODULE(_weakq, m) {
  m.doc() = "Topic detection, sense resolution and structured query expansion.";

  static py::exception<Error> error(m, "Error", PyExc_RuntimeError);
  py::register_exception<LoadError>(m, "LoadError", error.ptr());
  py::register_exception<IoError>(m, "IoError", error.ptr());
  py::register_exception<NotFoundError>(m, "NotFoundError", error.ptr());
  py::register_exception<InvalidInputError>(m, "InvalidInputError", error.ptr());
  py::register_exception<InvalidWindowError>(m, "InvalidWindowError", error.ptr());
  py::register_exception<DegenerateSampleError>(m, "DegenerateSampleError", error.ptr());

  m.def("tokenize", &tokenize, py::arg("text"));
  m.def("normalize_surface", &normalize_surface, py::arg("text"));
  m.def("is_stopword", &is_stopword, py::arg("token"));

  py::class_<WikiKnowledgeBase>(m, "KnowledgeBase")
      .def_static("load", &WikiKnowledgeBase::load_snapshot, py::arg("path"))
      .def_static(
          "from_pages",
          [](const py::list &pages) {
            std::vector<WikiPage> out;
            for (const auto &item : pages) {
              auto d = item.cast<py::dict>();
              WikiPage page;
              page.id = d["id"].cast<PageId>();
              page.title = d["title"].cast<std::string>();
              if (d.contains("definition")) page.definition = d["definition"].cast<std::string>();
              if (d.contains("links")) {
                for (const auto &[anchor, target] :
                     d["links"].cast<std::vector<std::pair<std::string, PageId>>>()) {
                  page.links.push_back({anchor, target});
                }
              }
              out.push_back(std::move(page));
            }
            return WikiKnowledgeBase::from_pages(std::move(out));
          },
          py::arg("pages"),
          "Pages are dicts with id, title, definition and links [(anchor, target)].")
      .def_property_readonly("page_count", &WikiKnowledgeBase::page_count)
      .def_property_readonly("total_anchors", &WikiKnowledgeBase::total_anchors)
      .def("title", [](const WikiKnowledgeBase &kb, PageId id) { return kb.page(id).title; })
      .def(
          "senses_of",
          [](const WikiKnowledgeBase &kb, const std::string &surface) {
            std::vector<std::pair<PageId, std::int64_t>> out;
            for (const auto &s : kb.senses_of(surface)) out.emplace_back(s.page_id, s.link_count);
            return out;
          },
          py::arg("surface"))
      .def("commonness", &WikiKnowledgeBase::commonness, py::arg("surface"),
           py::arg("page_id"))
      .def(
          "background_prob",
          [](const WikiKnowledgeBase &kb, const std::string &chunk, double lambda) {
            return kb.background_prob(chunk, lambda);
          },
          py::arg("chunk"), py::arg("lam") = 0.5)
      .def("global_count", &WikiKnowledgeBase::global_count, py::arg("page_id"))
      .def("has_title", &WikiKnowledgeBase::has_title, py::arg("surface"))
      .def("has_anchor", &WikiKnowledgeBase::has_anchor, py::arg("surface"));

  py::class_<PositionalIndex>(m, "Index")
      .def_static(
          "from_documents",
          [](const std::vector<std::pair<std::string, std::string>> &docs) {
            PositionalIndex::Builder builder;
            for (const auto &[docno, text] : docs) {
              if (!builder.add_document(docno, text)) {
                throw InvalidInputError("rejected docno '" + docno + "'");
              }
            }
            return std::move(builder).build();
          },
          py::arg("documents"), "Builds an index from (docno, text) pairs.")
      .def_static(
          "ingest",
          [](const std::vector<std::filesystem::path> &files) {
            return PositionalIndex::ingest(files);
          },
          py::arg("files"))
      .def_static(
          "load",
          [](const std::filesystem::path &path) { return PositionalIndex::load(path); },
          py::arg("path"))
      .def(
          "save",
          [](const PositionalIndex &index, const std::filesystem::path &path) {
            index.save(path);
          },
          py::arg("path"))
      .def_property_readonly("doc_count", &PositionalIndex::doc_count)
      .def_property_readonly("total_tokens", &PositionalIndex::total_tokens)
      .def_property_readonly("vocabulary_size", &PositionalIndex::vocabulary_size)
      .def("docno", &PositionalIndex::docno, py::arg("doc"))
      .def("collection_tf", &PositionalIndex::collection_tf, py::arg("term"))
      .def(
          "tf",
          [](const PositionalIndex &index, const std::string &docno, const std::string &term) {
            return index.tf(doc_id(index, docno), term);
          },
          py::arg("docno"), py::arg("term"))
      .def(
          "phrase_count",
          [](const PositionalIndex &index, const std::string &docno, const Tokens &terms) {
            return index.phrase_count(doc_id(index, docno), terms);
          },
          py::arg("docno"), py::arg("terms"))
      .def(
          "uwindow_count",
          [](const PositionalIndex &index, const std::string &docno, const Tokens &terms,
             std::uint32_t width) {
            return index.uwindow_count(doc_id(index, docno), terms, width);
          },
          py::arg("docno"), py::arg("terms"), py::arg("width"))
      .def("__eq__", &PositionalIndex::operator==);

  m.def(
      "chunk_pairs",
      [](const std::string &query) {
        std::vector<std::pair<Tokens, Tokens>> out;
        for (auto &p : generate_chunk_pairs(tokenize(query))) {
          out.emplace_back(std::move(p.left), std::move(p.right));
        }
        return out;
      },
      py::arg("query"));

  m.def(
      "detect_topic",
      [](const std::string &query, const PositionalIndex &index, const WikiKnowledgeBase &kb,
         double alpha_d, double lambda, std::size_t fb_docs, double mu) {
        TopicDetectParams params{alpha_d, lambda, fb_docs, mu};
        return detection_dict(detect_topic(tokenize(query), index, kb, params));
      },
      py::arg("query"), py::arg("index"), py::arg("kb"), py::arg("alpha_d") = 0.4,
      py::arg("lam") = 0.5, py::arg("fb_docs") = 20, py::arg("mu") = 2500.0);

  m.def(
      "resolve",
      [](const std::string &segment, const std::string &query, const WikiKnowledgeBase &kb,
         bool use_link_overlap) {
        auto r = resolve(tokenize(segment), tokenize(query), kb,
                         DisambiguationOptions{use_link_overlap});
        py::list evidence;
        for (const auto &e : r.evidence) evidence.append(evidence_dict(e));
        py::dict out;
        out["segment"] = r.segment;
        out["page_id"] = r.chosen_page_id;
        out["method"] = std::string(method_name(r.method));
        out["evidence"] = evidence;
        out["context_pages"] = r.context_pages;
        return out;
      },
      py::arg("segment"), py::arg("query"), py::arg("kb"), py::arg("use_link_overlap") = true);

  py::class_<QueryNode>(m, "Query")
      .def("__str__", &serialize)
      .def("__repr__", [](const QueryNode &q) { return "Query('" + serialize(q) + "')"; })
      .def("__eq__", &QueryNode::operator==)
      .def("leaf_tokens", &leaf_tokens);

  m.def("parse_query", &parse_query, py::arg("text"));

  m.def(
      "build_query",
      [](const std::string &original, const std::vector<std::string> &topics,
         const py::list &expansion, std::tuple<double, double, double> weights,
         std::pair<std::uint32_t, std::uint32_t> windows) {
        std::vector<Tokens> topic_tokens;
        for (const auto &t : topics) topic_tokens.push_back(tokenize(t));
        auto terms = to_expansion(expansion);
        auto [o, t, e] = weights;
        return build_query(tokenize(original), topic_tokens, terms, QueryWeights{o, t, e},
                           WindowSizes{windows.first, windows.second});
      },
      py::arg("original"), py::arg("topics"), py::arg("expansion"),
      py::arg("weights") = std::make_tuple(0.5, 0.2, 0.3),
      py::arg("windows") = std::make_pair(12u, 20u));

  m.def(
      "evaluate",
      [](const QueryNode &query, const PositionalIndex &index, double mu, std::size_t top_k) {
        auto ranking = evaluate(query, index, RetrievalParams{mu, top_k});
        std::vector<std::pair<std::string, double>> out;
        for (const auto &e : ranking.entries) out.emplace_back(e.docno, e.score);
        return out;
      },
      py::arg("query"), py::arg("index"), py::arg("mu") = 2500.0, py::arg("top_k") = 1000);

  m.def(
      "average_precision",
      [](const Tokens &ranking, const std::map<std::string, int> &judgments) {
        Qrels qrels;
        for (const auto &[docno, grade] : judgments) qrels.set("q", docno, grade);
        return average_precision(ranking, qrels, "q");
      },
      py::arg("ranking"), py::arg("judgments"),
      "AP of a ranked docno list against {docno: grade}; None when nothing is relevant.");

  m.def(
      "wilcoxon",
      [](const std::vector<double> &a, const std::vector<double> &b) {
        auto r = wilcoxon_signed_rank(a, b);
        py::dict out;
        out["w"] = r.w;
        out["w_plus"] = r.w_plus;
        out["w_minus"] = r.w_minus;
        out["p"] = r.p_two_tailed;
        out["n"] = r.n_effective;
        return out;
      },
      py::arg("a"), py::arg("b"));

  m.def(
      "paired_t_test",
      [](const std::vector<double> &a, const std::vector<double> &b) {
        auto r = paired_t_test(a, b);
        py::dict out;
        out["t"] = r.t;
        out["p"] = r.p_two_tailed;
        out["df"] = r.df;
        return out;
      },
      py::arg("a"), py::arg("b"));

  m.def(
      "run_experiment",
      [](const std::filesystem::path &config_path,
         const std::map<std::string, std::string> &overrides) {
        Config config = Config::load(config_path);
        for (const auto &[key, value] : overrides) {
          config.set(key, value, std::filesystem::current_path());
        }
        config.validate();
        EvalReport report;
        {
          py::gil_scoped_release release;
          auto index = PositionalIndex::load(config.index);
          auto kb = WikiKnowledgeBase::load_snapshot(config.kb);
          auto queries = read_queries(config.queries);
          auto qrels = Qrels::load(config.qrels);
          report = run_experiment(config, index, kb, queries, qrels);
          if (!config.out.empty()) write_report(report, config.out);
        }
        py::dict maps;
        for (const auto &t : report.treatments) maps[py::str(t.name)] = t.scores.map;
        py::list tests;
        for (const auto &t : report.tests) {
          py::dict d;
          d["a"] = t.a;
          d["b"] = t.b;
          d["wilcoxon_p"] = t.wilcoxon ? py::cast(t.wilcoxon->p_two_tailed) : py::none();
          d["t_test_p"] = t.t_test ? py::cast(t.t_test->p_two_tailed) : py::none();
          d["note"] = t.note;
          tests.append(d);
        }
        py::dict out;
        out["map"] = maps;
        out["tests"] = tests;
        out["summary_json"] = report_summary_json(report);
        return out;
      },
      py::arg("config"), py::arg("overrides") = std::map<std::string, std::string>{},
      "Runs all treatments; overrides are config key/value pairs.");
}
