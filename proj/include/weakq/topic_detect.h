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

#ifndef WEAKQ_TOPIC_DETECT_H_
#define WEAKQ_TOPIC_DETECT_H_

#include <cstddef>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "weakq/corpus_index.h"
#include "weakq/wiki_kb.h"

namespace weakq {

// Token range [begin, end) of the query.
struct Span {
  std::size_t begin = 0;
  std::size_t end = 0;

  std::size_t size() const { return end - begin; }
  bool operator==(const Span &) const = default;
};

// Split of the query into a non-empty prefix and its complement.
struct ChunkPair {
  std::vector<std::string> left;
  std::vector<std::string> right;

  bool operator==(const ChunkPair &) const = default;
};

// n-1 pairs for an n-token query, shortest left chunk first. Throws
// InvalidInputError for an empty query.
std::vector<ChunkPair> generate_chunk_pairs(std::span<const std::string> query);

// Pseudo-relevance feedback documents for a query.
struct ContextCollection {
  std::vector<DocId> docs;
  std::size_t k = 0;
};

// Top-k documents for the bag-of-words query under the retrieval model.
ContextCollection acquire_context(std::span<const std::string> query,
                                  const PositionalIndex &index, std::size_t k,
                                  double mu = 2500.0);

struct CandidateScore {
  double score = 0.0;
  bool degenerate = false;  // empty context: score is alpha_d * P(s)
};

// p(s,q|C) = (1/|C|) sum_d [(1 - alpha_d) f(s,d) / sum_{w in q} f(w,d)
//                          + alpha_d P(s)] * prod_{w in q} tf(w,d)/|d|
// where f(s,d) is the phrase count of the chunk and P(s) the background
// probability supplied by the caller.
CandidateScore score_candidate(std::span<const std::string> chunk,
                               std::span<const std::string> query,
                               const ContextCollection &context,
                               const PositionalIndex &index,
                               double background, double alpha_d);

// Same, with P(s) taken from the knowledge base.
CandidateScore score_candidate(std::span<const std::string> chunk,
                               std::span<const std::string> query,
                               const ContextCollection &context,
                               const PositionalIndex &index,
                               const WikiKnowledgeBase &kb, double alpha_d,
                               double lambda);

struct TopicDetectParams {
  double alpha_d = 0.4;
  double lambda = 0.5;
  std::size_t fb_docs = 20;
  double mu = 2500.0;
};

struct TopicCandidate {
  Span span;
  std::string text;
  double score = 0.0;
  std::size_t pair_index = 0;  // which split produced it
  bool is_left = false;
};

struct Topic {
  Span span;
  std::string text;
  double score = 0.0;
  bool promoted = false;  // complement of the winner, matched in the KB
};

struct TopicDetection {
  std::vector<Topic> topics;            // in query order; empty = no topic
  std::vector<TopicCandidate> table;    // every scored chunk
  bool no_topic = false;                // all candidate scores were 0
  bool degenerate_context = false;
};

using BackgroundFn = std::function<double(const std::string &chunk)>;

// Scores every chunk of every split and returns the best one (ties: longer,
// then leftmost). The winner's complement is also returned as a topic when
// `is_known_surface` accepts it.
TopicDetection detect_topic(std::span<const std::string> query,
                            const PositionalIndex &index,
                            const BackgroundFn &background,
                            const std::function<bool(const std::string &)>
                                &is_known_surface,
                            const TopicDetectParams &params);

TopicDetection detect_topic(std::span<const std::string> query,
                            const PositionalIndex &index,
                            const WikiKnowledgeBase &kb,
                            const TopicDetectParams &params);

}  // namespace weakq

#endif  // WEAKQ_TOPIC_DETECT_H_
