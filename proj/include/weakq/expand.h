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

#ifndef WEAKQ_EXPAND_H_
#define WEAKQ_EXPAND_H_

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "weakq/corpus_index.h"
#include "weakq/query_ast.h"
#include "weakq/wiki_kb.h"

namespace weakq {

enum class TermSource { kWiki, kLca };

std::string_view source_name(TermSource source);

struct ExpansionTerm {
  std::string term;
  double weight = 0.0;
  TermSource source = TermSource::kWiki;

  bool operator==(const ExpansionTerm &) const = default;
};

// Frequency of non-stopword, non-query tokens in the pages' titles and
// definitions; top m by frequency (ties alphabetical), weights normalized
// to sum to 1.
std::vector<ExpansionTerm> wiki_terms(std::span<const WikiPage *const> pages,
                                      std::span<const std::string> query,
                                      std::size_t m);
std::vector<ExpansionTerm> wiki_terms(const WikiPage &page,
                                      std::span<const std::string> query,
                                      std::size_t m);

struct LcaParams {
  double delta = 0.1;
};

// Local context analysis over feedback documents. For each concept c
//   score(c) = prod_w (delta + log(1 + co(c,w)) * idf(c) / log(1 + n))^idf(w)
// with co(c,w) = sum_d tf(c,d) tf(w,d), idf(x) = log(1 + N / df(x)) over the
// whole collection and n the number of feedback documents. Query words that
// do not occur in the collection are skipped. Top m, normalized.
std::vector<ExpansionTerm> lca_terms(std::span<const std::string> query,
                                     std::span<const DocId> feedback,
                                     const PositionalIndex &index,
                                     std::size_t m,
                                     const LcaParams &params = {});

// Merges both sources: weights of a term found in both are added, the
// union is ranked by weight and the top m renormalized.
std::vector<ExpansionTerm> mix_terms(std::span<const ExpansionTerm> wiki,
                                     std::span<const ExpansionTerm> lca,
                                     std::size_t m);

struct QueryWeights {
  double original = 0.5;
  double topic = 0.2;
  double expansion = 0.3;

  bool operator==(const QueryWeights &) const = default;
};

struct WindowSizes {
  std::uint32_t topic = 12;
  std::uint32_t no_topic = 20;

  bool operator==(const WindowSizes &) const = default;
};

// #weight(w_o #combine(original)
//         w_t #combine(#1(topic)... #uw12(original))   or  #uw20(original)
//         w_e #weight(expansion))
// Empty expansion drops its slot and renormalizes; no topics and no
// expansion gives #combine(original). A window narrower than the number of
// distinct query words is widened to fit. Throws InvalidInputError for an
// empty query or non-positive weights.
QueryNode build_query(std::span<const std::string> original,
                      std::span<const std::vector<std::string>> topics,
                      std::span<const ExpansionTerm> expansion,
                      const QueryWeights &weights = {},
                      const WindowSizes &windows = {});

// Topics as phrases and the remaining words as terms, in query order:
// #combine(#1(whole foods) #1(wind energy)). Topics must be non-overlapping
// spans of the query.
QueryNode build_topic_query(std::span<const std::string> original,
                            std::span<const std::pair<std::size_t, std::size_t>>
                                topic_spans);

}  // namespace weakq

#endif  // WEAKQ_EXPAND_H_
