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

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "weakq/text.h"

namespace weakq {
namespace {

using Tokens = std::vector<std::string>;

// A police dog page whose title and definition give, after removing
// stopwords and the words of "law enforcement dogs", exactly twenty
// candidates: dog 7, police 6, ten words twice and eight once (41 total).
WikiPage police_dog_page() {
  std::string def = "The police dog is a dog used by law enforcement. ";
  for (int i = 0; i < 4; ++i) def += "dog ";
  for (int i = 0; i < 4; ++i) def += "police ";
  for (const char *w : {"morphology", "officer", "patrol", "scent", "search",
                        "shepherd", "temperament", "tracking", "trained", "units"}) {
    def += std::string(w) + " " + w + " ";
  }
  for (const char *w : {"ability", "breeds", "chosen", "german", "handler",
                        "k9", "sniff", "work"}) {
    def += std::string(w) + " ";
  }
  def += "Dogs, dogs and more dogs.";
  return WikiPage{2, "Police dog", def, {}};
}

const std::string kPoliceDogQuery =
    "#weight(0.5 #combine(law enforcement dogs) "
    "0.2 #combine(#1(law enforcement) #uw12(law enforcement dogs)) "
    "0.3 #weight(0.170731707317073 dog 0.146341463414634 police "
    "0.0487804878048781 morphology 0.0487804878048781 officer "
    "0.0487804878048781 patrol 0.0487804878048781 scent "
    "0.0487804878048781 search 0.0487804878048781 shepherd "
    "0.0487804878048781 temperament 0.0487804878048781 tracking "
    "0.0487804878048781 trained 0.0487804878048781 units "
    "0.024390243902439 ability 0.024390243902439 breeds "
    "0.024390243902439 chosen 0.024390243902439 german "
    "0.024390243902439 handler 0.024390243902439 k9 "
    "0.024390243902439 sniff 0.024390243902439 work))";

TEST(WikiTerms, PoliceDogFrequencies) {
  Tokens q = tokenize("law enforcement dogs");
  auto terms = wiki_terms(police_dog_page(), q, 20);
  ASSERT_EQ(terms.size(), 20u);
  EXPECT_EQ(terms[0].term, "dog");
  EXPECT_EQ(terms[1].term, "police");
  EXPECT_EQ(terms[2].term, "morphology");
  EXPECT_NEAR(terms[0].weight, 7.0 / 41, 1e-15);
  EXPECT_NEAR(terms[1].weight, 6.0 / 41, 1e-15);
  EXPECT_NEAR(terms[2].weight, 2.0 / 41, 1e-15);
  double sum = 0;
  for (const auto &t : terms) {
    sum += t.weight;
    EXPECT_EQ(t.source, TermSource::kWiki);
    EXPECT_FALSE(is_stopword(t.term));
    EXPECT_EQ(std::count(q.begin(), q.end(), t.term), 0);
  }
  EXPECT_NEAR(sum, 1.0, 1e-9);
}

TEST(WikiTerms, FullyFilteredAndSingleTerm) {
  WikiPage page{1, "The Dogs", "the of and dogs law", {}};
  EXPECT_TRUE(wiki_terms(page, tokenize("law dogs"), 20).empty());
  auto one = wiki_terms(police_dog_page(), tokenize("law enforcement dogs"), 1);
  ASSERT_EQ(one.size(), 1u);
  EXPECT_EQ(one[0].weight, 1.0);
  EXPECT_TRUE(wiki_terms(police_dog_page(), Tokens{}, 0).empty());
}

TEST(WikiTerms, MultiplePagesAggregate) {
  WikiPage a{1, "Alpha", "river river stone", {}};
  WikiPage b{2, "Beta", "stone stone", {}};
  std::vector<const WikiPage *> pages{&a, &b};
  auto terms = wiki_terms(pages, Tokens{}, 10);
  ASSERT_GE(terms.size(), 2u);
  EXPECT_EQ(terms[0].term, "stone");  // 3 times
  EXPECT_EQ(terms[1].term, "river");  // 2 times
}

TEST(WikiTerms, RaisingFrequencyNeverLowersRank) {
  std::mt19937 rng(4);
  const Tokens vocab{"amber", "birch", "cedar", "delta", "ember", "fjord", "grove"};
  auto rank_of = [](const std::vector<ExpansionTerm> &terms, const std::string &w) {
    for (std::size_t i = 0; i < terms.size(); ++i) {
      if (terms[i].term == w) return i;
    }
    return terms.size();
  };
  for (int trial = 0; trial < 300; ++trial) {
    std::string def;
    for (int i = 0; i < 15; ++i) def += vocab[rng() % vocab.size()] + " ";
    const std::string &boosted = vocab[rng() % vocab.size()];
    std::size_t m = 1 + rng() % 7;
    auto before = wiki_terms(WikiPage{1, "x", def, {}}, Tokens{"x"}, m);
    auto after = wiki_terms(WikiPage{1, "x", def + boosted, {}}, Tokens{"x"}, m);
    EXPECT_LE(rank_of(after, boosted), rank_of(before, boosted));
  }
}

// co(c,w) = sum_d tf(c,d) tf(w,d); idf over the whole collection.
std::map<std::string, double> lca_oracle(const Tokens &query,
                                         const std::vector<DocId> &feedback,
                                         const PositionalIndex &index,
                                         double delta) {
  std::set<std::string> words(query.begin(), query.end());
  std::set<std::string> candidates;
  for (DocId d : feedback) {
    for (const auto &[t, tf] : index.doc_terms(d)) {
      const auto &text = index.term(t);
      if (!is_stopword(text) && !words.count(text)) candidates.insert(text);
    }
  }
  const double n = static_cast<double>(index.doc_count());
  auto idf = [&](const std::string &x) { return std::log(1 + n / index.doc_freq(x)); };
  std::map<std::string, double> scores;
  for (const auto &c : candidates) {
    double s = 1;
    for (const auto &w : words) {
      if (index.doc_freq(w) == 0) continue;
      double co = 0;
      for (DocId d : feedback) co += double(index.tf(d, c)) * index.tf(d, w);
      s *= std::pow(delta + std::log(1 + co) * idf(c) / std::log(1.0 + feedback.size()),
                    idf(w));
    }
    scores[c] = s;
  }
  return scores;
}

TEST(LcaTerms, MatchesOracleOnSmallFixture) {
  PositionalIndex::Builder builder;
  builder.add_document("1", "wind energy turbine farm grid");
  builder.add_document("2", "wind energy turbine blade");
  builder.add_document("3", "wind turbine energy solar");
  builder.add_document("4", "solar panel roof");
  builder.add_document("5", "grocery store organic");
  auto index = std::move(builder).build();
  Tokens q{"wind", "energy"};
  std::vector<DocId> fb{0, 1, 2};
  auto terms = lca_terms(q, fb, index, 20);
  auto oracle = lca_oracle(q, fb, index, 0.1);
  ASSERT_EQ(terms.size(), oracle.size());
  double total = 0;
  for (const auto &[c, s] : oracle) total += s;
  for (const auto &t : terms) {
    EXPECT_NEAR(t.weight, oracle.at(t.term) / total, 1e-12) << t.term;
    EXPECT_NE(t.term, "wind");
    EXPECT_NE(t.term, "energy");
    EXPECT_EQ(t.source, TermSource::kLca);
  }
  // "turbine" co-occurs with both words in all three documents.
  EXPECT_EQ(terms[0].term, "turbine");
  auto rank = [&](const std::string &w) {
    return std::find_if(terms.begin(), terms.end(),
                        [&](const ExpansionTerm &t) { return t.term == w; }) -
           terms.begin();
  };
  EXPECT_LT(rank("turbine"), rank("solar"));
}

TEST(LcaTerms, EmptyFeedback) {
  PositionalIndex::Builder builder;
  builder.add_document("1", "a b");
  auto index = std::move(builder).build();
  EXPECT_TRUE(lca_terms(Tokens{"a"}, std::vector<DocId>{}, index, 20).empty());
}

TEST(MixTerms, SumsSharedTermsAndRenormalizes) {
  std::vector<ExpansionTerm> wiki{{"dog", 0.6, TermSource::kWiki},
                                  {"police", 0.4, TermSource::kWiki}};
  std::vector<ExpansionTerm> lca{{"dog", 0.5, TermSource::kLca},
                                 {"handler", 0.3, TermSource::kLca},
                                 {"leash", 0.2, TermSource::kLca}};
  auto mixed = mix_terms(wiki, lca, 3);
  ASSERT_EQ(mixed.size(), 3u);
  EXPECT_EQ(mixed[0].term, "dog");
  EXPECT_EQ(mixed[1].term, "police");
  EXPECT_EQ(mixed[2].term, "handler");
  EXPECT_NEAR(mixed[0].weight, 1.1 / 1.8, 1e-12);
  double sum = 0;
  for (const auto &t : mixed) sum += t.weight;
  EXPECT_NEAR(sum, 1.0, 1e-9);
}

TEST(BuildQuery, PoliceDogExample) {
  Tokens q = tokenize("law enforcement dogs");
  auto expansion = wiki_terms(police_dog_page(), q, 20);
  std::vector<Tokens> topics{{"law", "enforcement"}};
  auto query = build_query(q, topics, expansion, {0.5, 0.2, 0.3});
  EXPECT_EQ(serialize(query), kPoliceDogQuery);
  EXPECT_EQ(parse_query(kPoliceDogQuery), query);
}

TEST(BuildQuery, NoTopicUsesWideWindow) {
  Tokens q = tokenize("marine vegetation");
  std::vector<ExpansionTerm> exp{{"kelp", 1.0, TermSource::kLca}};
  auto query = build_query(q, {}, exp);
  EXPECT_EQ(serialize(query),
            "#weight(0.5 #combine(marine vegetation) 0.2 #uw20(marine vegetation) "
            "0.3 #weight(1 kelp))");
}

TEST(BuildQuery, NothingToAddGivesCombine) {
  Tokens q = tokenize("marine vegetation");
  EXPECT_EQ(serialize(build_query(q, {}, {})), "#combine(marine vegetation)");
  EXPECT_THROW(build_query(Tokens{}, {}, {}), InvalidInputError);
  EXPECT_THROW(build_query(q, {}, {}, {0.5, 0.0, 0.5}), InvalidInputError);
}

TEST(BuildQuery, EmptyExpansionRenormalizes) {
  Tokens q = tokenize("law enforcement dogs");
  std::vector<Tokens> topics{{"law", "enforcement"}};
  auto query = build_query(q, topics, {});
  ASSERT_EQ(query.kind, NodeKind::kWeight);
  ASSERT_EQ(query.weights.size(), 2u);
  EXPECT_NEAR(query.weights[0], 0.5 / 0.7, 1e-14);
  EXPECT_NEAR(query.weights[1], 0.2 / 0.7, 1e-14);
}

TEST(BuildQuery, LongQueryWidensWindow) {
  Tokens q;
  for (int i = 0; i < 14; ++i) q.push_back("w" + std::to_string(i));
  std::vector<Tokens> topics{{"w0", "w1"}};
  auto query = build_query(q, topics, {});
  EXPECT_NO_THROW(validate(query));
  EXPECT_EQ(query.children[1].children.back().window, 14u);
}

TEST(BuildQuery, RandomQueriesRoundTripAndSumToOne) {
  std::mt19937 rng(31);
  const Tokens vocab{"law", "enforcement", "dogs", "wind", "energy", "jaguar", "cars"};
  for (int trial = 0; trial < 500; ++trial) {
    Tokens q(1 + rng() % 5);
    for (auto &t : q) t = vocab[rng() % vocab.size()];
    std::vector<Tokens> topics;
    if (q.size() > 1 && rng() % 2) topics.push_back({q[0], q[1]});
    std::vector<ExpansionTerm> exp;
    double total = 0;
    for (int i = rng() % 4; i > 0; --i) {
      double w = 0.01 + (rng() % 1000) / 1000.0;
      exp.push_back({"e" + std::to_string(i), w, TermSource::kWiki});
      total += w;
    }
    for (auto &e : exp) e.weight /= total;
    auto query = build_query(q, topics, exp);
    EXPECT_EQ(parse_query(serialize(query)), query);
    if (query.kind == NodeKind::kWeight) {
      double sum = 0;
      for (double w : query.weights) sum += w;
      EXPECT_NEAR(sum, 1.0, 1e-12);
      if (!topics.empty() && !exp.empty()) EXPECT_EQ(query.children.size(), 3u);
    }
  }
}

TEST(BuildTopicQuery, PhrasesAndRemainingWords) {
  Tokens q = tokenize("whole foods wind energy");
  std::vector<std::pair<std::size_t, std::size_t>> spans{{0, 2}, {2, 4}};
  EXPECT_EQ(serialize(build_topic_query(q, spans)),
            "#combine(#1(whole foods) #1(wind energy))");
  Tokens p = tokenize("police dog training");
  std::vector<std::pair<std::size_t, std::size_t>> one{{0, 2}};
  EXPECT_EQ(serialize(build_topic_query(p, one)),
            "#combine(#1(police dog) training)");
}

}  // namespace
}  // namespace weakq
