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

#include "weakq/disambiguate.h"

#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "weakq/text.h"

namespace weakq {
namespace {

using Tokens = std::vector<std::string>;

WikiPage make_page(PageId id, std::string title, std::string definition,
                   std::vector<std::pair<std::string, PageId>> links = {}) {
  WikiPage page{id, std::move(title), std::move(definition), {}};
  for (auto &[anchor, target] : links) page.links.push_back({anchor, target});
  return page;
}

WikiPage hub(PageId id, std::vector<std::pair<std::pair<std::string, PageId>, int>> links) {
  WikiPage page = make_page(id, "Hub " + std::to_string(id), "index page");
  for (auto &[link, times] : links) {
    for (int i = 0; i < times; ++i) page.links.push_back({link.first, link.second});
  }
  return page;
}

// "jaguar" has two senses: 1 (cars) and 2 (animal). The query context
// "luxury car" is page 3. Counts and texts are set per scenario.
WikiKnowledgeBase jaguar_kb(bool context_has_links, int car_links, int cat_links,
                            std::string context_definition) {
  std::vector<std::pair<std::string, PageId>> context_links;
  if (context_has_links) context_links = {{"sedan", 10}, {"engine", 11}};
  return WikiKnowledgeBase::from_pages({
      make_page(1, "Jaguar Cars", "A maker of fast cats",
                {{"sedan", 10}, {"engine", 11}}),
      make_page(2, "Jaguar (animal)",
                "A wild cat of dense rainforest and river",
                {{"rainforest", 12}}),
      make_page(3, "Luxury car", std::move(context_definition), context_links),
      make_page(10, "Sedan", "A car body style."),
      make_page(11, "Engine", "A machine that converts energy."),
      make_page(12, "Rainforest", "A dense tropical forest."),
      hub(20, {{{"jaguar", 1}, car_links}, {{"jaguar", 2}, cat_links},
               {{"luxury car", 3}, 1}}),
  });
}

const SenseEvidence &evidence_for(const DisambiguationResult &r, PageId id) {
  auto it = std::find_if(r.evidence.begin(), r.evidence.end(),
                         [&](const SenseEvidence &e) { return e.page_id == id; });
  EXPECT_NE(it, r.evidence.end());
  return *it;
}

TEST(Resolve, LinkOverlapWinsOverEverythingElse) {
  // The animal sense has more definition overlap and more links, but the
  // car sense shares two out-links with the context page.
  auto kb = jaguar_kb(true, 1, 5, "Expensive cars with a wild cat rainforest river theme");
  Tokens q = tokenize("jaguar luxury car");
  auto r = resolve(Tokens{"jaguar"}, q, kb);
  EXPECT_EQ(r.method, ResolutionMethod::kLinkOverlap);
  EXPECT_EQ(r.chosen_page_id, PageId{1});
  EXPECT_EQ(r.context_pages, (std::set<PageId>{3}));
  EXPECT_EQ(evidence_for(r, 1).link_overlap, 2u);
  EXPECT_EQ(evidence_for(r, 2).link_overlap, 0u);
  EXPECT_GT(evidence_for(r, 2).definition_overlap, evidence_for(r, 1).definition_overlap);
  EXPECT_GT(evidence_for(r, 2).global_count, evidence_for(r, 1).global_count);
}

TEST(Resolve, DefinitionOverlapWhenNoLinksShared) {
  // Context page has no out-links. Definitions: the animal sense shares
  // wild, cat, river (3); the car sense shares fast (1). The car sense is
  // linked more often, so commonness alone would pick it.
  auto kb = jaguar_kb(false, 5, 1, "wild cat river fast");
  auto r = resolve(Tokens{"jaguar"}, tokenize("jaguar luxury car"), kb);
  EXPECT_EQ(r.method, ResolutionMethod::kDefinitionOverlap);
  EXPECT_EQ(r.chosen_page_id, PageId{2});
  EXPECT_EQ(evidence_for(r, 2).definition_overlap, 3u);
  EXPECT_EQ(evidence_for(r, 1).definition_overlap, 1u);
  for (const auto &e : r.evidence) EXPECT_EQ(e.link_overlap, 0u);
}

TEST(Resolve, TextOnlyOptionSkipsLinks) {
  auto kb = jaguar_kb(true, 1, 5, "Expensive cars with a wild cat rainforest river theme");
  auto r = resolve(Tokens{"jaguar"}, tokenize("jaguar luxury car"), kb,
                   {.use_link_overlap = false});
  EXPECT_FALSE(r.links_consulted);
  EXPECT_EQ(r.method, ResolutionMethod::kDefinitionOverlap);
  EXPECT_EQ(r.chosen_page_id, PageId{2});
  for (const auto &e : r.evidence) EXPECT_EQ(e.link_overlap, 0u);
}

TEST(Resolve, CommonnessWithoutContext) {
  WikiPage source = make_page(3, "Source", "Mentions both.");
  for (int i = 0; i < 466; ++i) source.links.push_back({"jaguar", 1});
  for (int i = 0; i < 461; ++i) source.links.push_back({"jaguar", 2});
  auto kb = WikiKnowledgeBase::from_pages(
      {make_page(1, "Jaguar Cars", "British car maker."),
       make_page(2, "Jaguar", "A large cat."), source});
  auto r = resolve(Tokens{"jaguar"}, Tokens{"jaguar"}, kb);
  EXPECT_EQ(r.method, ResolutionMethod::kCommonness);
  EXPECT_EQ(r.chosen_page_id, PageId{1});
  EXPECT_TRUE(r.context_pages.empty());
  for (const auto &e : r.evidence) {
    EXPECT_EQ(e.link_overlap, 0u);
    EXPECT_EQ(e.definition_overlap, 0u);
  }
}

TEST(Resolve, UnambiguousAndNotInWikipedia) {
  auto kb = WikiKnowledgeBase::load_snapshot(WEAKQ_FIXTURES "/wiki.jsonl");
  auto wild = resolve(Tokens{"wild", "cat"}, tokenize("wild cat habitat"), kb);
  EXPECT_EQ(wild.method, ResolutionMethod::kUnambiguous);
  EXPECT_EQ(wild.chosen_page_id, PageId{4});
  auto marine = resolve(Tokens{"marine"}, tokenize("marine vegetation"), kb);
  EXPECT_EQ(marine.method, ResolutionMethod::kNotInWikipedia);
  EXPECT_FALSE(marine.chosen_page_id.has_value());
  EXPECT_EQ(method_name(ResolutionMethod::kLinkOverlap), "link_overlap");
  EXPECT_EQ(method_name(ResolutionMethod::kNotInWikipedia), "not_in_wikipedia");
}

TEST(Resolve, FixtureJaguarQueries) {
  auto kb = WikiKnowledgeBase::load_snapshot(WEAKQ_FIXTURES "/wiki.jsonl");
  // "luxury cars" links to page 3, whose out-link set {4} matches the
  // link set of sense 3 ({4}); sense 4 links only to 3.
  auto cars = resolve(Tokens{"jaguar"}, tokenize("jaguar luxury cars"), kb);
  EXPECT_EQ(cars.method, ResolutionMethod::kLinkOverlap);
  EXPECT_EQ(cars.chosen_page_id, PageId{3});
  auto cats = resolve(Tokens{"jaguar"}, tokenize("jaguar rainforest habitat"), kb);
  EXPECT_EQ(cats.method, ResolutionMethod::kCommonness);
  EXPECT_EQ(cats.chosen_page_id, PageId{4});
}

TEST(ContextPages, Examples) {
  auto kb = WikiKnowledgeBase::load_snapshot(WEAKQ_FIXTURES "/wiki.jsonl");
  Tokens q = tokenize("Whole Foods wind energy");
  EXPECT_EQ(context_pages(q, 0, 2, kb), (std::set<PageId>{6}));
  EXPECT_EQ(context_pages(q, 2, 4, kb), (std::set<PageId>{5}));
  EXPECT_TRUE(context_pages(q, 0, 4, kb).empty());
  Tokens m = tokenize("marine vegetation");
  EXPECT_TRUE(context_pages(m, 0, 1, kb).empty());
  // An ambiguous context surface contributes its most common sense.
  Tokens j = tokenize("wild cat jaguar");
  EXPECT_EQ(context_pages(j, 0, 2, kb), (std::set<PageId>{4}));
}

TEST(ChooseSense, IndependentOfSenseOrder) {
  std::mt19937 rng(21);
  for (int trial = 0; trial < 300; ++trial) {
    std::uniform_int_distribution<int> small(0, 3);
    std::vector<SenseRepresentation> senses;
    std::vector<std::int64_t> counts;
    SenseContext context;
    for (int p = 100; p < 106; ++p) {
      if (small(rng) == 0) context.linked_pages.insert(p);
    }
    for (const char *w : {"red", "blue", "green", "gold"}) {
      if (small(rng) == 0) context.definition_terms.insert(w);
    }
    int n = std::uniform_int_distribution<int>(2, 6)(rng);
    for (int i = 0; i < n; ++i) {
      SenseRepresentation s;
      s.page_id = i + 1;
      for (int p = 100; p < 106; ++p) {
        if (small(rng) == 0) s.link_set.insert(p);
      }
      for (const char *w : {"red", "blue", "green", "gold", "grey"}) {
        if (small(rng) == 0) s.definition_terms[w] = 1;
      }
      s.global_count = small(rng);
      senses.push_back(s);
      counts.push_back(1);
    }
    for (bool links : {true, false}) {
      auto base = choose_sense(senses, counts, context, {.use_link_overlap = links});
      std::vector<std::size_t> order(senses.size());
      std::iota(order.begin(), order.end(), 0);
      for (int shuffle = 0; shuffle < 5; ++shuffle) {
        std::shuffle(order.begin(), order.end(), rng);
        std::vector<SenseRepresentation> permuted;
        for (auto i : order) permuted.push_back(senses[i]);
        auto again = choose_sense(permuted, counts, context, {.use_link_overlap = links});
        EXPECT_EQ(again.page_id, base.page_id);
        EXPECT_EQ(again.method, base.method);
      }
      // The reported method agrees with the evidence.
      std::size_t max_link = 0, max_def = 0;
      for (const auto &e : base.evidence) {
        max_link = std::max(max_link, e.link_overlap);
        max_def = std::max(max_def, e.definition_overlap);
      }
      if (base.method == ResolutionMethod::kLinkOverlap) {
        EXPECT_GT(max_link, 0u);
      } else if (base.method == ResolutionMethod::kDefinitionOverlap) {
        EXPECT_EQ(max_link, 0u);
        EXPECT_GT(max_def, 0u);
      } else {
        EXPECT_EQ(max_link, 0u);
        EXPECT_EQ(max_def, 0u);
      }
    }
  }
}

TEST(ChooseSense, TiesGoToGlobalCountThenPageId) {
  SenseRepresentation a{7, {50}, {}, 2};
  SenseRepresentation b{3, {50}, {}, 2};
  SenseRepresentation c{9, {50}, {}, 1};
  std::vector<SenseRepresentation> senses{a, b, c};
  std::vector<std::int64_t> counts{1, 1, 1};
  SenseContext context{{50}, {}};
  auto choice = choose_sense(senses, counts, context, {});
  EXPECT_EQ(choice.page_id, 3);
  EXPECT_EQ(choice.method, ResolutionMethod::kLinkOverlap);
}

TEST(Resolve, Deterministic) {
  auto kb = WikiKnowledgeBase::load_snapshot(WEAKQ_FIXTURES "/wiki.jsonl");
  for (const char *q : {"jaguar luxury cars", "jaguar rainforest habitat", "jaguar"}) {
    Tokens tokens = tokenize(q);
    auto a = resolve(Tokens{"jaguar"}, tokens, kb);
    auto b = resolve(Tokens{"jaguar"}, tokens, kb);
    EXPECT_EQ(a.chosen_page_id, b.chosen_page_id);
    EXPECT_EQ(a.method, b.method);
  }
}

}  // namespace
}  // namespace weakq
