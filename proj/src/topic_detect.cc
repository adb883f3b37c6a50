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

#include "weakq/topic_detect.h"

#include <algorithm>

#include "weakq/query_ast.h"
#include "weakq/retrieval.h"
#include "weakq/text.h"

namespace weakq {

std::vector<ChunkPair> generate_chunk_pairs(std::span<const std::string> query) {
  if (query.empty()) throw InvalidInputError("cannot segment an empty query");
  std::vector<ChunkPair> pairs;
  for (std::size_t split = 1; split < query.size(); ++split) {
    pairs.push_back({{query.begin(), query.begin() + split},
                     {query.begin() + split, query.end()}});
  }
  return pairs;
}

ContextCollection acquire_context(std::span<const std::string> query,
                                  const PositionalIndex &index, std::size_t k,
                                  double mu) {
  ContextCollection context;
  context.k = k;
  if (k == 0 || query.empty()) return context;
  RetrievalParams params;
  params.mu = mu;
  params.top_k = k;
  const auto ranking = evaluate(
      QueryNode::combine_terms({query.begin(), query.end()}), index, params);
  for (const auto &entry : ranking.entries) {
    context.docs.push_back(*index.find_doc(entry.docno));
  }
  return context;
}

CandidateScore score_candidate(std::span<const std::string> chunk,
                               std::span<const std::string> query,
                               const ContextCollection &context,
                               const PositionalIndex &index, double background,
                               double alpha_d) {
  if (!(alpha_d >= 0.0 && alpha_d <= 1.0)) {
    throw InvalidInputError("alpha_d must lie in [0,1]");
  }
  if (chunk.empty()) throw InvalidInputError("empty chunk");
  if (context.docs.empty()) return {alpha_d * background, true};

  double sum = 0.0;
  for (DocId doc : context.docs) {
    const double length = index.doc_length(doc);
    if (length == 0.0) continue;
    double query_likelihood = 1.0;
    double query_mass = 0.0;
    for (const auto &w : query) {
      const double tf = index.tf(doc, w);
      query_likelihood *= tf / length;
      query_mass += tf;
    }
    if (query_mass == 0.0) continue;
    const double chunk_ml = index.phrase_count(doc, chunk) / query_mass;
    sum += ((1.0 - alpha_d) * chunk_ml + alpha_d * background) * query_likelihood;
  }
  return {sum / static_cast<double>(context.docs.size()), false};
}

CandidateScore score_candidate(std::span<const std::string> chunk,
                               std::span<const std::string> query,
                               const ContextCollection &context,
                               const PositionalIndex &index,
                               const WikiKnowledgeBase &kb, double alpha_d,
                               double lambda) {
  return score_candidate(chunk, query, context, index,
                         kb.background_prob(join_tokens(chunk), lambda),
                         alpha_d);
}

TopicDetection detect_topic(
    std::span<const std::string> query, const PositionalIndex &index,
    const BackgroundFn &background,
    const std::function<bool(const std::string &)> &is_known_surface,
    const TopicDetectParams &params) {
  TopicDetection result;
  const auto pairs = generate_chunk_pairs(query);
  if (pairs.empty()) return result;

  const ContextCollection context =
      acquire_context(query, index, params.fb_docs, params.mu);
  result.degenerate_context = context.docs.empty();

  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const std::size_t split = i + 1;
    for (bool left : {true, false}) {
      TopicCandidate c;
      c.span = left ? Span{0, split} : Span{split, query.size()};
      c.pair_index = i;
      c.is_left = left;
      auto tokens = query.subspan(c.span.begin, c.span.size());
      c.text = join_tokens(tokens);
      c.score = score_candidate(tokens, query, context, index,
                                background(c.text), params.alpha_d)
                    .score;
      result.table.push_back(std::move(c));
    }
  }

  const TopicCandidate *best = &result.table.front();
  for (const auto &c : result.table) {
    if (c.score > best->score ||
        (c.score == best->score &&
         (c.span.size() > best->span.size() ||
          (c.span.size() == best->span.size() &&
           c.span.begin < best->span.begin)))) {
      best = &c;
    }
  }
  if (!(best->score > 0.0)) {
    result.no_topic = true;
    return result;
  }

  result.topics.push_back({best->span, best->text, best->score, false});
  // The complement shares the split, so it is adjacent in the table.
  const std::size_t best_pos = static_cast<std::size_t>(best - &result.table[0]);
  const TopicCandidate &complement =
      result.table[best->is_left ? best_pos + 1 : best_pos - 1];
  if (is_known_surface(complement.text)) {
    result.topics.push_back(
        {complement.span, complement.text, complement.score, true});
  }
  std::sort(result.topics.begin(), result.topics.end(),
            [](const Topic &a, const Topic &b) {
              return a.span.begin < b.span.begin;
            });
  return result;
}

TopicDetection detect_topic(std::span<const std::string> query,
                            const PositionalIndex &index,
                            const WikiKnowledgeBase &kb,
                            const TopicDetectParams &params) {
  return detect_topic(
      query, index,
      [&](const std::string &chunk) {
        return kb.background_prob(chunk, params.lambda);
      },
      [&](const std::string &surface) {
        return kb.has_title(surface) || kb.has_anchor(surface);
      },
      params);
}

}  // namespace weakq
