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

#include <algorithm>
#include <iterator>

#include "weakq/text.h"

namespace weakq {

std::string_view method_name(ResolutionMethod method) {
  switch (method) {
    case ResolutionMethod::kLinkOverlap:
      return "link_overlap";
    case ResolutionMethod::kDefinitionOverlap:
      return "definition_overlap";
    case ResolutionMethod::kCommonness:
      return "commonness";
    case ResolutionMethod::kUnambiguous:
      return "unambiguous";
    case ResolutionMethod::kNotInWikipedia:
      return "not_in_wikipedia";
  }
  return "unknown";
}

namespace {

// Page referred to by an exact surface, if any. Titles win over anchors.
std::optional<PageId> surface_page(const std::string &surface,
                                   const WikiKnowledgeBase &kb) {
  if (auto titled = kb.pages_titled(surface); !titled.empty()) {
    return titled.front();
  }
  if (auto senses = kb.senses_of(surface); !senses.empty()) {
    return senses.front().page_id;
  }
  return std::nullopt;
}

void scan_context(std::span<const std::string> part,
                  const WikiKnowledgeBase &kb, std::set<PageId> &out) {
  std::size_t i = 0;
  while (i < part.size()) {
    bool matched = false;
    for (std::size_t j = part.size(); j > i; --j) {
      auto page = surface_page(join_tokens(part.subspan(i, j - i)), kb);
      if (page) {
        out.insert(*page);
        i = j;
        matched = true;
        break;
      }
    }
    if (!matched) ++i;
  }
}

std::optional<std::size_t> find_segment(std::span<const std::string> query,
                                        std::span<const std::string> segment) {
  if (segment.empty() || segment.size() > query.size()) return std::nullopt;
  for (std::size_t i = 0; i + segment.size() <= query.size(); ++i) {
    if (std::equal(segment.begin(), segment.end(), query.begin() + i)) return i;
  }
  return std::nullopt;
}

// Index of the best candidate by `key`, ties by global count then page id.
template <typename Key>
std::size_t argmax(std::span<const SenseEvidence> evidence, Key key) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < evidence.size(); ++i) {
    const auto &a = evidence[i];
    const auto &b = evidence[best];
    if (key(a) != key(b)) {
      if (key(a) > key(b)) best = i;
    } else if (a.global_count != b.global_count) {
      if (a.global_count > b.global_count) best = i;
    } else if (a.page_id < b.page_id) {
      best = i;
    }
  }
  return best;
}

}  // namespace

std::set<PageId> context_pages(std::span<const std::string> query,
                               std::size_t segment_begin,
                               std::size_t segment_end,
                               const WikiKnowledgeBase &kb) {
  std::set<PageId> pages;
  segment_end = std::min(segment_end, query.size());
  segment_begin = std::min(segment_begin, segment_end);
  scan_context(query.subspan(0, segment_begin), kb, pages);
  scan_context(query.subspan(segment_end), kb, pages);
  return pages;
}

SenseContext build_sense_context(const std::set<PageId> &pages,
                                 const WikiKnowledgeBase &kb) {
  SenseContext context;
  for (PageId id : pages) {
    auto rep = kb.sense_representation(id);
    context.linked_pages.insert(rep.link_set.begin(), rep.link_set.end());
    for (const auto &[term, count] : rep.definition_terms) {
      context.definition_terms.insert(term);
    }
  }
  return context;
}

SenseChoice choose_sense(std::span<const SenseRepresentation> senses,
                         std::span<const std::int64_t> link_counts,
                         const SenseContext &context,
                         const DisambiguationOptions &options) {
  SenseChoice choice;
  for (std::size_t i = 0; i < senses.size(); ++i) {
    const auto &sense = senses[i];
    SenseEvidence ev;
    ev.page_id = sense.page_id;
    ev.link_count = i < link_counts.size() ? link_counts[i] : 0;
    ev.global_count = sense.global_count;
    if (options.use_link_overlap) {
      for (PageId p : sense.link_set) ev.link_overlap += context.linked_pages.count(p);
    }
    for (const auto &[term, count] : sense.definition_terms) {
      ev.definition_overlap += context.definition_terms.count(term);
    }
    choice.evidence.push_back(ev);
  }
  if (choice.evidence.empty()) return choice;

  std::span<const SenseEvidence> ev(choice.evidence);
  std::size_t pick = argmax(ev, [](const SenseEvidence &e) { return e.link_overlap; });
  if (ev[pick].link_overlap > 0) {
    choice.method = ResolutionMethod::kLinkOverlap;
  } else {
    pick = argmax(ev, [](const SenseEvidence &e) { return e.definition_overlap; });
    if (ev[pick].definition_overlap > 0) {
      choice.method = ResolutionMethod::kDefinitionOverlap;
    } else {
      pick = argmax(ev, [](const SenseEvidence &e) { return e.global_count; });
      choice.method = ResolutionMethod::kCommonness;
    }
  }
  choice.page_id = ev[pick].page_id;
  return choice;
}

DisambiguationResult resolve(std::span<const std::string> segment,
                             std::span<const std::string> query,
                             const WikiKnowledgeBase &kb,
                             const DisambiguationOptions &options) {
  DisambiguationResult result;
  result.segment = join_tokens(segment);
  result.links_consulted = options.use_link_overlap;

  const auto senses = kb.senses_of(result.segment);
  if (senses.empty()) {
    result.method = ResolutionMethod::kNotInWikipedia;
    return result;
  }
  if (senses.size() == 1) {
    result.method = ResolutionMethod::kUnambiguous;
    result.chosen_page_id = senses.front().page_id;
    result.evidence.push_back({senses.front().page_id, senses.front().link_count,
                               kb.global_count(senses.front().page_id), 0, 0});
    return result;
  }

  if (auto at = find_segment(query, segment)) {
    result.context_pages = context_pages(query, *at, *at + segment.size(), kb);
  } else {
    result.context_pages = context_pages(query, 0, 0, kb);
  }
  const SenseContext context = build_sense_context(result.context_pages, kb);

  std::vector<SenseRepresentation> reps;
  std::vector<std::int64_t> link_counts;
  for (const auto &sense : senses) {
    reps.push_back(kb.sense_representation(sense.page_id));
    link_counts.push_back(sense.link_count);
  }
  SenseChoice choice = choose_sense(reps, link_counts, context, options);
  result.chosen_page_id = choice.page_id;
  result.method = choice.method;
  result.evidence = std::move(choice.evidence);
  return result;
}

}  // namespace weakq
