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

#include "weakq/wiki_kb.h"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <string>

#include <nlohmann/json.hpp>

#include "weakq/text.h"
#include "open_input.h"

namespace weakq {
namespace {

using nlohmann::json;

WikiPage page_from_json(const json &record, const std::string &source,
                        std::size_t line) {
  auto fail = [&](const std::string &what) {
    throw LoadError(source, line, what);
  };
  if (!record.is_object()) fail("record is not a JSON object");
  for (const char *key : {"id", "title", "definition", "links"}) {
    if (!record.contains(key)) fail(std::string("missing field '") + key + "'");
  }
  if (!record["id"].is_number_integer()) fail("'id' must be an integer");
  if (!record["title"].is_string()) fail("'title' must be a string");
  if (!record["definition"].is_string()) fail("'definition' must be a string");
  if (!record["links"].is_array()) fail("'links' must be an array");

  WikiPage page;
  page.id = record["id"].get<PageId>();
  page.title = record["title"].get<std::string>();
  page.definition = record["definition"].get<std::string>();
  for (const auto &link : record["links"]) {
    if (!link.is_object() || !link.contains("anchor") ||
        !link.contains("target") || !link["anchor"].is_string() ||
        !link["target"].is_number_integer()) {
      fail("link must be {\"anchor\": <string>, \"target\": <int>}");
    }
    page.links.push_back(
        {link["anchor"].get<std::string>(), link["target"].get<PageId>()});
  }
  return page;
}

}  // namespace

std::size_t SenseRepresentation::definition_token_count() const {
  std::size_t n = 0;
  for (const auto &[term, count] : definition_terms) n += count;
  return n;
}

WikiKnowledgeBase WikiKnowledgeBase::load_snapshot(
    const std::filesystem::path &path) {
  auto in = open_input(path, "snapshot", std::ios::binary);
  return parse_snapshot(in, path.string());
}

WikiKnowledgeBase WikiKnowledgeBase::parse_snapshot(
    std::istream &in, const std::string &source_name) {
  std::vector<WikiPage> pages;
  std::unordered_map<PageId, std::size_t> seen;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    json record;
    try {
      record = json::parse(line);
    } catch (const json::parse_error &e) {
      throw LoadError(source_name, line_no, std::string("bad JSON: ") + e.what());
    }
    WikiPage page = page_from_json(record, source_name, line_no);
    if (auto it = seen.find(page.id); it != seen.end()) {
      throw LoadError(source_name, line_no,
                      "duplicate page id " + std::to_string(page.id) +
                          " (first on line " + std::to_string(it->second) + ")");
    }
    seen.emplace(page.id, line_no);
    pages.push_back(std::move(page));
  }
  return from_pages(std::move(pages));
}

WikiKnowledgeBase WikiKnowledgeBase::from_pages(std::vector<WikiPage> pages) {
  WikiKnowledgeBase kb;
  kb.pages_ = std::move(pages);
  std::sort(kb.pages_.begin(), kb.pages_.end(),
            [](const WikiPage &a, const WikiPage &b) { return a.id < b.id; });
  for (std::size_t i = 0; i + 1 < kb.pages_.size(); ++i) {
    if (kb.pages_[i].id == kb.pages_[i + 1].id) {
      throw LoadError("<pages>", 0,
                      "duplicate page id " + std::to_string(kb.pages_[i].id));
    }
  }
  kb.build();
  return kb;
}

void WikiKnowledgeBase::build() {
  for (std::size_t i = 0; i < pages_.size(); ++i) page_index_[pages_[i].id] = i;

  // surface -> target -> count
  std::unordered_map<std::string, std::map<PageId, std::int64_t>> counts;
  for (auto &page : pages_) {
    titles_[normalize_surface(page.title)].push_back(page.id);
    for (auto &link : page.links) {
      link.dangling = page_index_.count(link.target) == 0;
      ++total_anchors_;
      std::string surface = normalize_surface(link.anchor);
      if (!surface.empty()) ++anchor_counts_[surface];
      if (link.dangling) {
        ++dangling_links_;
        continue;
      }
      ++inbound_[link.target];
      if (!surface.empty()) ++counts[surface][link.target];
    }
  }

  for (auto &[surface, targets] : counts) {
    std::vector<SenseCount> senses;
    for (const auto &[target, n] : targets) senses.push_back({target, n});
    std::stable_sort(senses.begin(), senses.end(),
                     [](const SenseCount &a, const SenseCount &b) {
                       return a.link_count > b.link_count;
                     });
    inventory_.emplace(surface, std::move(senses));
  }

  std::set<PageId> undefined;
  for (const auto &[surface, senses] : inventory_) {
    for (const auto &sense : senses) {
      if (pages_[page_index_.at(sense.page_id)].definition.empty()) {
        undefined.insert(sense.page_id);
      }
    }
  }
  for (PageId id : undefined) {
    warnings_.push_back("page " + std::to_string(id) +
                        " is a link target but has no definition");
  }
}

void WikiKnowledgeBase::write_snapshot(std::ostream &out) const {
  for (const auto &page : pages_) {
    json links = json::array();
    for (const auto &link : page.links) {
      links.push_back({{"anchor", link.anchor}, {"target", link.target}});
    }
    json record = {{"id", page.id},
                   {"title", page.title},
                   {"definition", page.definition},
                   {"links", std::move(links)}};
    out << record.dump() << '\n';
  }
}

const WikiPage *WikiKnowledgeBase::find_page(PageId id) const {
  auto it = page_index_.find(id);
  return it == page_index_.end() ? nullptr : &pages_[it->second];
}

const WikiPage &WikiKnowledgeBase::page(PageId id) const {
  const WikiPage *p = find_page(id);
  if (p == nullptr) throw NotFoundError("no page with id " + std::to_string(id));
  return *p;
}

std::vector<SenseCount> WikiKnowledgeBase::senses_of(
    std::string_view surface) const {
  auto it = inventory_.find(normalize_surface(surface));
  if (it == inventory_.end()) return {};
  return it->second;
}

bool WikiKnowledgeBase::is_polyseme(std::string_view surface) const {
  auto it = inventory_.find(normalize_surface(surface));
  return it != inventory_.end() && it->second.size() >= 2;
}

double WikiKnowledgeBase::commonness(std::string_view surface,
                                     PageId page_id) const {
  auto it = inventory_.find(normalize_surface(surface));
  if (it == inventory_.end()) return 0.0;
  std::int64_t total = 0;
  std::int64_t mine = 0;
  for (const auto &sense : it->second) {
    total += sense.link_count;
    if (sense.page_id == page_id) mine = sense.link_count;
  }
  return static_cast<double>(mine) / static_cast<double>(total);
}

std::int64_t WikiKnowledgeBase::title_count(std::string_view chunk) const {
  auto it = titles_.find(normalize_surface(chunk));
  return it == titles_.end() ? 0 : static_cast<std::int64_t>(it->second.size());
}

std::int64_t WikiKnowledgeBase::anchor_count(std::string_view chunk) const {
  auto it = anchor_counts_.find(normalize_surface(chunk));
  return it == anchor_counts_.end() ? 0 : it->second;
}

double WikiKnowledgeBase::background_prob(std::string_view chunk,
                                          double lambda,
                                          Diagnostics *diagnostics) const {
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    throw InvalidInputError("lambda must lie in [0,1], got " +
                            std::to_string(lambda));
  }
  double title_part = 0.0;
  double anchor_part = 0.0;
  if (total_titles() > 0) {
    title_part = static_cast<double>(title_count(chunk)) /
                 static_cast<double>(total_titles());
  } else {
    warn(diagnostics, "background model: knowledge base has no titles");
  }
  if (total_anchors_ > 0) {
    anchor_part = static_cast<double>(anchor_count(chunk)) /
                  static_cast<double>(total_anchors_);
  } else {
    warn(diagnostics, "background model: knowledge base has no anchors");
  }
  return lambda * title_part + (1.0 - lambda) * anchor_part;
}

bool WikiKnowledgeBase::has_title(std::string_view surface) const {
  return titles_.count(normalize_surface(surface)) > 0;
}

bool WikiKnowledgeBase::has_anchor(std::string_view surface) const {
  return anchor_counts_.count(normalize_surface(surface)) > 0;
}

std::vector<PageId> WikiKnowledgeBase::pages_titled(
    std::string_view surface) const {
  auto it = titles_.find(normalize_surface(surface));
  if (it == titles_.end()) return {};
  return it->second;  // built in ascending id order
}

SenseRepresentation WikiKnowledgeBase::sense_representation(PageId id) const {
  const WikiPage &p = page(id);
  SenseRepresentation rep;
  rep.page_id = id;
  for (const auto &link : p.links) {
    if (link.target != id) rep.link_set.insert(link.target);
  }
  for (auto &token : tokenize(p.definition)) {
    if (!is_stopword(token)) ++rep.definition_terms[token];
  }
  rep.global_count = global_count(id);
  return rep;
}

std::int64_t WikiKnowledgeBase::global_count(PageId id) const {
  auto it = inbound_.find(id);
  return it == inbound_.end() ? 0 : it->second;
}

}  // namespace weakq
