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

#include "weakq/expand.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "weakq/errors.h"
#include "weakq/text.h"

namespace weakq {

std::string_view source_name(TermSource source) {
  return source == TermSource::kWiki ? "wiki" : "lca";
}

namespace {

// Sorts by weight descending (ties alphabetical), keeps m, rescales to 1.
std::vector<ExpansionTerm> top_normalized(std::vector<ExpansionTerm> terms,
                                          std::size_t m) {
  std::sort(terms.begin(), terms.end(),
            [](const ExpansionTerm &a, const ExpansionTerm &b) {
              if (a.weight != b.weight) return a.weight > b.weight;
              return a.term < b.term;
            });
  if (terms.size() > m) terms.resize(m);
  double total = 0.0;
  for (const auto &t : terms) total += t.weight;
  if (!(total > 0.0)) return {};
  for (auto &t : terms) t.weight /= total;
  return terms;
}

std::uint32_t distinct_count(std::span<const std::string> tokens) {
  return static_cast<std::uint32_t>(
      std::set<std::string>(tokens.begin(), tokens.end()).size());
}

}  // namespace

std::vector<ExpansionTerm> wiki_terms(std::span<const WikiPage *const> pages,
                                      std::span<const std::string> query,
                                      std::size_t m) {
  const std::unordered_set<std::string> excluded(query.begin(), query.end());
  std::map<std::string, int> freq;
  for (const WikiPage *page : pages) {
    if (page == nullptr) continue;
    for (const auto &text : {page->title, page->definition}) {
      for (auto &token : tokenize(text)) {
        if (!is_stopword(token) && excluded.count(token) == 0) ++freq[token];
      }
    }
  }
  std::vector<ExpansionTerm> terms;
  for (const auto &[term, n] : freq) {
    terms.push_back({term, static_cast<double>(n), TermSource::kWiki});
  }
  return top_normalized(std::move(terms), m);
}

std::vector<ExpansionTerm> wiki_terms(const WikiPage &page,
                                      std::span<const std::string> query,
                                      std::size_t m) {
  const WikiPage *pages[] = {&page};
  return wiki_terms(pages, query, m);
}

std::vector<ExpansionTerm> lca_terms(std::span<const std::string> query,
                                     std::span<const DocId> feedback,
                                     const PositionalIndex &index,
                                     std::size_t m, const LcaParams &params) {
  if (feedback.empty() || m == 0) return {};
  const double n_docs = static_cast<double>(index.doc_count());
  auto idf = [&](std::uint32_t df) {
    return std::log(1.0 + n_docs / static_cast<double>(df));
  };

  // Distinct query words present in the collection, with their idf.
  std::vector<std::pair<TermId, double>> words;
  std::unordered_set<std::string> query_set(query.begin(), query.end());
  for (const auto &w : std::set<std::string>(query.begin(), query.end())) {
    if (auto id = index.term_id(w)) {
      words.emplace_back(*id, idf(static_cast<std::uint32_t>(index.postings(*id).size())));
    }
  }
  if (words.empty()) return {};

  // co[c][k] = sum over feedback docs of tf(c,d) * tf(word k, d)
  std::unordered_map<TermId, std::vector<double>> co;
  for (DocId doc : feedback) {
    const auto terms = index.doc_terms(doc);
    std::vector<double> word_tf(words.size(), 0.0);
    for (std::size_t k = 0; k < words.size(); ++k) {
      auto it = std::lower_bound(
          terms.begin(), terms.end(), words[k].first,
          [](const std::pair<TermId, std::uint32_t> &p, TermId t) {
            return p.first < t;
          });
      if (it != terms.end() && it->first == words[k].first) word_tf[k] = it->second;
    }
    for (const auto &[term, tf] : terms) {
      const std::string &text = index.term(term);
      if (is_stopword(text) || query_set.count(text) > 0) continue;
      auto &row = co[term];
      row.resize(words.size(), 0.0);
      for (std::size_t k = 0; k < words.size(); ++k) row[k] += tf * word_tf[k];
    }
  }

  const double log_n = std::log(1.0 + static_cast<double>(feedback.size()));
  std::vector<ExpansionTerm> scored;
  for (const auto &[term, row] : co) {
    const double idf_c = idf(static_cast<std::uint32_t>(index.postings(term).size()));
    double score = 1.0;
    for (std::size_t k = 0; k < words.size(); ++k) {
      const double base = params.delta + std::log(1.0 + row[k]) * idf_c / log_n;
      score *= std::pow(base, words[k].second);
    }
    scored.push_back({index.term(term), score, TermSource::kLca});
  }
  return top_normalized(std::move(scored), m);
}

std::vector<ExpansionTerm> mix_terms(std::span<const ExpansionTerm> wiki,
                                     std::span<const ExpansionTerm> lca,
                                     std::size_t m) {
  struct Acc {
    double weight = 0.0;
    double wiki = 0.0;
    double lca = 0.0;
  };
  std::map<std::string, Acc> merged;
  for (const auto &t : wiki) {
    merged[t.term].weight += t.weight;
    merged[t.term].wiki += t.weight;
  }
  for (const auto &t : lca) {
    merged[t.term].weight += t.weight;
    merged[t.term].lca += t.weight;
  }
  std::vector<ExpansionTerm> terms;
  for (const auto &[term, acc] : merged) {
    terms.push_back({term, acc.weight,
                     acc.wiki >= acc.lca ? TermSource::kWiki : TermSource::kLca});
  }
  return top_normalized(std::move(terms), m);
}

QueryNode build_query(std::span<const std::string> original,
                      std::span<const std::vector<std::string>> topics,
                      std::span<const ExpansionTerm> expansion,
                      const QueryWeights &weights, const WindowSizes &windows) {
  if (original.empty()) throw InvalidInputError("empty query");
  if (!(weights.original > 0.0 && weights.topic > 0.0 && weights.expansion > 0.0)) {
    throw InvalidInputError("query component weights must be positive");
  }
  const std::vector<std::string> words(original.begin(), original.end());
  const std::uint32_t needed = distinct_count(original);

  std::vector<QueryNode> phrases;
  for (const auto &topic : topics) {
    if (!topic.empty()) phrases.push_back(QueryNode::phrase(topic));
  }
  const bool has_topics = !phrases.empty();
  const bool has_expansion = !expansion.empty();
  if (!has_topics && !has_expansion) return QueryNode::combine_terms(words);

  QueryNode topic_slot;
  if (has_topics) {
    phrases.push_back(
        QueryNode::unordered_window(words, std::max(windows.topic, needed)));
    topic_slot = QueryNode::combine(std::move(phrases));
  } else {
    topic_slot = QueryNode::unordered_window(words, std::max(windows.no_topic, needed));
  }

  double total = weights.original + weights.topic;
  if (has_expansion) total += weights.expansion;

  std::vector<std::pair<double, QueryNode>> slots;
  slots.emplace_back(weights.original / total, QueryNode::combine_terms(words));
  slots.emplace_back(weights.topic / total, std::move(topic_slot));
  if (has_expansion) {
    std::vector<std::pair<double, QueryNode>> terms;
    for (const auto &t : expansion) terms.emplace_back(t.weight, QueryNode::term(t.term));
    slots.emplace_back(weights.expansion / total, QueryNode::weight(std::move(terms)));
  }
  return QueryNode::weight(std::move(slots));
}

QueryNode build_topic_query(
    std::span<const std::string> original,
    std::span<const std::pair<std::size_t, std::size_t>> topic_spans) {
  if (original.empty()) throw InvalidInputError("empty query");
  std::vector<std::pair<std::size_t, std::size_t>> spans(topic_spans.begin(),
                                                          topic_spans.end());
  std::sort(spans.begin(), spans.end());
  std::vector<QueryNode> children;
  std::size_t i = 0;
  for (const auto &[begin, end] : spans) {
    if (begin < i || end > original.size() || begin >= end) {
      throw InvalidInputError("topic spans must be disjoint sub-spans of the query");
    }
    for (; i < begin; ++i) children.push_back(QueryNode::term(original[i]));
    children.push_back(QueryNode::phrase({original.begin() + begin, original.begin() + end}));
    i = end;
  }
  for (; i < original.size(); ++i) children.push_back(QueryNode::term(original[i]));
  return QueryNode::combine(std::move(children));
}

}  // namespace weakq
