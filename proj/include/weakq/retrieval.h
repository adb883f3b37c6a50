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

#ifndef WEAKQ_RETRIEVAL_H_
#define WEAKQ_RETRIEVAL_H_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "weakq/corpus_index.h"
#include "weakq/errors.h"
#include "weakq/query_ast.h"

namespace weakq {

struct RetrievalParams {
  double mu = 2500.0;           // Dirichlet prior
  std::size_t top_k = 1000;
  double log_floor = -1e10;     // stands in for log(0)
};

// Dirichlet-smoothed log probability
//   log((tf + mu * p_collection) / (doc_length + mu)).
// A zero numerator yields `log_floor` and a diagnostic.
double score_term(std::uint64_t tf, std::uint64_t doc_length,
                  double p_collection, double mu,
                  double log_floor = RetrievalParams{}.log_floor,
                  Diagnostics *diagnostics = nullptr);

struct RankedDoc {
  std::string docno;
  double score = 0.0;
  std::size_t rank = 0;  // 1-based

  bool operator==(const RankedDoc &) const = default;
};

struct Ranking {
  std::string query_id;
  std::vector<RankedDoc> entries;  // score descending, ties by docno

  bool operator==(const Ranking &) const = default;
};

// Scores every document that contains at least one query token.
//   Term                 -> score_term
//   #1 / #uwN            -> score_term on the operator's match count, with
//                           collection statistics summed over all documents
//   #combine(c1..cn)     -> mean of child beliefs
//   #weight(w1 c1 ...)   -> sum of (wi / sum w) * child belief
// Throws InvalidWindowError / InvalidInputError for malformed trees.
Ranking evaluate(const QueryNode &query, const PositionalIndex &index,
                 const RetrievalParams &params, std::string query_id = {},
                 Diagnostics *diagnostics = nullptr);

// "qid Q0 docno rank score tag" lines.
void write_trec_run(std::ostream &out, const Ranking &ranking,
                    std::string_view tag);

}  // namespace weakq

#endif  // WEAKQ_RETRIEVAL_H_
