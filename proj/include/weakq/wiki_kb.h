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

#ifndef WEAKQ_WIKI_KB_H_
#define WEAKQ_WIKI_KB_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "weakq/errors.h"

namespace weakq {

using PageId = std::int64_t;

struct WikiLink {
  std::string anchor;  // as written in the snapshot
  PageId target = 0;
  bool dangling = false;  // target is not a page of the snapshot

  bool operator==(const WikiLink &) const = default;
};

struct WikiPage {
  PageId id = 0;
  std::string title;
  std::string definition;  // first paragraph
  std::vector<WikiLink> links;

  bool operator==(const WikiPage &) const = default;
};

struct SenseCount {
  PageId page_id = 0;
  std::int64_t link_count = 0;

  bool operator==(const SenseCount &) const = default;
};

// What the disambiguator knows about one candidate page.
struct SenseRepresentation {
  PageId page_id = 0;
  std::set<PageId> link_set;                       // out-link targets
  std::map<std::string, int> definition_terms;     // stopwords removed
  std::int64_t global_count = 0;                   // times linked to

  std::size_t definition_token_count() const;
};

// Immutable view of a miniature Wikipedia: pages, the anchor sense
// inventory, commonness priors and the title/anchor background model.
//
// Titles and anchors are keyed by normalize_surface(). Dangling links count
// toward anchor statistics but never enter a sense inventory.
class WikiKnowledgeBase {
 public:
  WikiKnowledgeBase() = default;

  // Reads a JSON-lines snapshot. Throws LoadError naming the line for a
  // malformed record or duplicate id, IoError if the file cannot be read.
  static WikiKnowledgeBase load_snapshot(const std::filesystem::path &path);
  static WikiKnowledgeBase parse_snapshot(std::istream &in,
                                          const std::string &source_name);
  // Dangling flags on the input are recomputed.
  static WikiKnowledgeBase from_pages(std::vector<WikiPage> pages);

  // Writes the snapshot back out, one page per line, ascending id.
  void write_snapshot(std::ostream &out) const;

  std::span<const WikiPage> pages() const { return pages_; }
  std::size_t page_count() const { return pages_.size(); }
  const WikiPage *find_page(PageId id) const;
  const WikiPage &page(PageId id) const;  // throws NotFoundError

  // Candidate senses of a surface, by link count descending then page id.
  std::vector<SenseCount> senses_of(std::string_view surface) const;
  bool is_polyseme(std::string_view surface) const;
  // link_count / total links of the surface; 0 when not a sense.
  double commonness(std::string_view surface, PageId page_id) const;

  std::int64_t title_count(std::string_view chunk) const;
  std::int64_t total_titles() const {
    return static_cast<std::int64_t>(pages_.size());
  }
  std::int64_t anchor_count(std::string_view chunk) const;
  std::int64_t total_anchors() const { return total_anchors_; }

  // lambda * P(S | titles) + (1 - lambda) * P(S | anchors). A component with
  // an empty denominator is taken as 0 and reported to `diagnostics`.
  double background_prob(std::string_view chunk, double lambda,
                         Diagnostics *diagnostics = nullptr) const;

  bool has_title(std::string_view surface) const;
  bool has_anchor(std::string_view surface) const;
  // Pages whose normalized title equals the surface, ascending id.
  std::vector<PageId> pages_titled(std::string_view surface) const;

  // Throws NotFoundError for an unknown id. Self-links are left out of the
  // link set.
  SenseRepresentation sense_representation(PageId id) const;
  std::int64_t global_count(PageId id) const;

  std::size_t dangling_link_count() const { return dangling_links_; }
  // Non-fatal findings from loading (e.g. a linked page without definition).
  const std::vector<std::string> &load_warnings() const { return warnings_; }

 private:
  void build();

  std::vector<WikiPage> pages_;  // ascending id
  std::unordered_map<PageId, std::size_t> page_index_;
  std::unordered_map<std::string, std::vector<SenseCount>> inventory_;
  std::unordered_map<std::string, std::vector<PageId>> titles_;
  std::unordered_map<std::string, std::int64_t> anchor_counts_;
  std::unordered_map<PageId, std::int64_t> inbound_;
  std::int64_t total_anchors_ = 0;
  std::size_t dangling_links_ = 0;
  std::vector<std::string> warnings_;
};

}  // namespace weakq

#endif  // WEAKQ_WIKI_KB_H_
