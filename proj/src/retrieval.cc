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

#include "weakq/retrieval.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <memory>
#include <ostream>
#include <set>

namespace weakq {
namespace {

// A query tree with leaf statistics resolved against one index.
struct CompiledNode {
  NodeKind kind = NodeKind::kTerm;
  std::vector<std::uint32_t> counts;  // per document, leaves only
  double p_collection = 0.0;
  std::vector<CompiledNode> children;
  std::vector<double> weights;  // normalized
};

std::string describe_leaf(const QueryNode &node) {
  if (node.kind == NodeKind::kTerm) return "term '" + node.tokens.front() + "'";
  return "operator " + serialize(node);
}

CompiledNode compile(const QueryNode &node, const PositionalIndex &index,
                     Diagnostics *diagnostics) {
  CompiledNode out;
  out.kind = node.kind;
  switch (node.kind) {
    case NodeKind::kTerm:
    case NodeKind::kPhrase:
    case NodeKind::kUnorderedWindow: {
      out.counts.assign(index.doc_count(), 0);
      std::uint64_t ctf = 0;
      for (DocId doc : index.docs_with_all(node.tokens)) {
        std::uint32_t c = 0;
        if (node.kind == NodeKind::kTerm) {
          c = index.tf(doc, node.tokens.front());
        } else if (node.kind == NodeKind::kPhrase) {
          c = index.phrase_count(doc, node.tokens);
        } else {
          c = index.uwindow_count(doc, node.tokens, node.window);
        }
        out.counts[doc] = c;
        ctf += c;
      }
      if (index.total_tokens() > 0) {
        out.p_collection = static_cast<double>(ctf) /
                           static_cast<double>(index.total_tokens());
      }
      if (ctf == 0) {
        warn(diagnostics, describe_leaf(node) +
                              " never matches the collection; scored at the floor");
      }
      break;
    }
    case NodeKind::kCombine: {
      const double share = 1.0 / static_cast<double>(node.children.size());
      for (const auto &child : node.children) {
        out.children.push_back(compile(child, index, diagnostics));
        out.weights.push_back(share);
      }
      break;
    }
    case NodeKind::kWeight: {
      double total = 0.0;
      for (double w : node.weights) total += w;
      for (std::size_t i = 0; i < node.children.size(); ++i) {
        out.children.push_back(compile(node.children[i], index, diagnostics));
        out.weights.push_back(node.weights[i] / total);
      }
      break;
    }
  }
  return out;
}

double belief(const CompiledNode &node, const PositionalIndex &index,
              DocId doc, const RetrievalParams &params) {
  if (node.children.empty()) {
    return score_term(node.counts[doc], index.doc_length(doc),
                      node.p_collection, params.mu, params.log_floor);
  }
  double sum = 0.0;
  for (std::size_t i = 0; i < node.children.size(); ++i) {
    sum += node.weights[i] * belief(node.children[i], index, doc, params);
  }
  return sum;
}

}  // namespace

double score_term(std::uint64_t tf, std::uint64_t doc_length,
                  double p_collection, double mu, double log_floor,
                  Diagnostics *diagnostics) {
  if (!(mu > 0.0)) throw InvalidInputError("mu must be positive");
  const double numerator = static_cast<double>(tf) + mu * p_collection;
  if (numerator <= 0.0) {
    warn(diagnostics, "zero probability clamped to the log floor");
    return log_floor;
  }
  return std::log(numerator / (static_cast<double>(doc_length) + mu));
}

Ranking evaluate(const QueryNode &query, const PositionalIndex &index,
                 const RetrievalParams &params, std::string query_id,
                 Diagnostics *diagnostics) {
  validate(query);
  if (!(params.mu > 0.0)) throw InvalidInputError("mu must be positive");

  const CompiledNode compiled = compile(query, index, diagnostics);
  const std::vector<DocId> candidates =
      index.docs_with_any(leaf_tokens(query));

  Ranking ranking;
  ranking.query_id = std::move(query_id);
  ranking.entries.reserve(candidates.size());
  for (DocId doc : candidates) {
    ranking.entries.push_back(
        {index.docno(doc), belief(compiled, index, doc, params), 0});
  }
  std::sort(ranking.entries.begin(), ranking.entries.end(),
            [](const RankedDoc &a, const RankedDoc &b) {
              if (a.score != b.score) return a.score > b.score;
              return a.docno < b.docno;
            });
  if (ranking.entries.size() > params.top_k) ranking.entries.resize(params.top_k);
  for (std::size_t i = 0; i < ranking.entries.size(); ++i) {
    ranking.entries[i].rank = i + 1;
  }
  return ranking;
}

void write_trec_run(std::ostream &out, const Ranking &ranking,
                    std::string_view tag) {
  char score[64];
  for (const auto &entry : ranking.entries) {
    std::snprintf(score, sizeof(score), "%.10g", entry.score);
    out << ranking.query_id << " Q0 " << entry.docno << ' ' << entry.rank << ' '
        << score << ' ' << tag << '\n';
  }
}

}  // namespace weakq
