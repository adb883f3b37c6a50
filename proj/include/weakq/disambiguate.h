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

#ifndef WEAKQ_DISAMBIGUATE_H_
#define WEAKQ_DISAMBIGUATE_H_

#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "weakq/wiki_kb.h"

namespace weakq {

enum class ResolutionMethod {
  kLinkOverlap,
  kDefinitionOverlap,
  kCommonness,
  kUnambiguous,
  kNotInWikipedia,
};

std::string_view method_name(ResolutionMethod method);

struct SenseEvidence {
  PageId page_id = 0;
  std::int64_t link_count = 0;    // links from the segment's surface
  std::int64_t global_count = 0;  // links to the page from anywhere
  std::size_t link_overlap = 0;
  std::size_t definition_overlap = 0;
};

struct DisambiguationResult {
  std::string segment;
  std::optional<PageId> chosen_page_id;
  ResolutionMethod method = ResolutionMethod::kNotInWikipedia;
  std::vector<SenseEvidence> evidence;  // in inventory order
  std::set<PageId> context_pages;
  bool links_consulted = true;
};

struct DisambiguationOptions {
  // When false only definition text and commonness are used; link overlaps
  // are reported as 0.
  bool use_link_overlap = true;
};

// Pages the rest of the query refers to. The tokens outside `segment` are
// scanned left to right for the longest sub-span that is a KB title (its
// page) or an anchor surface (its most common sense).
std::set<PageId> context_pages(std::span<const std::string> query,
                               std::size_t segment_begin,
                               std::size_t segment_end,
                               const WikiKnowledgeBase &kb);

// What the context pages contribute to the comparison.
struct SenseContext {
  std::set<PageId> linked_pages;           // union of context out-links
  std::set<std::string> definition_terms;  // union of context definitions
};

SenseContext build_sense_context(const std::set<PageId> &pages,
                                 const WikiKnowledgeBase &kb);

struct SenseChoice {
  PageId page_id = 0;
  ResolutionMethod method = ResolutionMethod::kCommonness;
  std::vector<SenseEvidence> evidence;  // same order as `senses`
};

// The decision list over at least two candidate senses: most shared
// out-links, else most shared definition words, else highest global count.
// Ties go to the higher global count, then the lower page id, so the order
// of `senses` does not matter.
SenseChoice choose_sense(std::span<const SenseRepresentation> senses,
                         std::span<const std::int64_t> link_counts,
                         const SenseContext &context,
                         const DisambiguationOptions &options);

// Resolves a query segment to a page. The segment is located in the query
// by its first occurrence; if it does not occur the whole query is context.
DisambiguationResult resolve(std::span<const std::string> segment,
                             std::span<const std::string> query,
                             const WikiKnowledgeBase &kb,
                             const DisambiguationOptions &options = {});

}  // namespace weakq

#endif  // WEAKQ_DISAMBIGUATE_H_
