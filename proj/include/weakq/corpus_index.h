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

#ifndef WEAKQ_CORPUS_INDEX_H_
#define WEAKQ_CORPUS_INDEX_H_

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "weakq/errors.h"

namespace weakq {

using DocId = std::uint32_t;
using TermId = std::uint32_t;
using Position = std::uint32_t;

struct Posting {
  DocId doc = 0;
  std::vector<Position> positions;  // strictly increasing

  bool operator==(const Posting &) const = default;
};

// Counts start positions p with p + i in lists[i] for every i. Overlapping
// matches are all counted ("a a a" holds "a a" twice).
std::uint32_t count_phrase(std::span<const std::span<const Position>> lists);

// Counts non-overlapping minimal windows, scanning left to right, that hold
// one occurrence from every list within `width` consecutive positions. Each
// list belongs to a distinct term. Throws InvalidWindowError when there are
// more lists than `width`.
std::uint32_t count_unordered_window(
    std::span<const std::span<const Position>> lists, std::uint32_t width);

// Positional inverted index over a TREC collection, plus the collection
// statistics needed for language-model scoring. Immutable once built.
class PositionalIndex {
 public:
  class Builder {
   public:
    // Returns false (and records why) for a docno that is empty, contains
    // whitespace, or was already added.
    bool add_document(std::string docno, std::string_view text,
                      Diagnostics *diagnostics = nullptr);
    // Parses <DOC> records from a TREC SGML-like stream.
    void add_trec(std::istream &in, const std::string &source_name,
                  Diagnostics *diagnostics = nullptr);
    PositionalIndex build() &&;

   private:
    struct PendingDoc {
      std::string docno;
      std::vector<std::string> tokens;
    };
    std::vector<PendingDoc> docs_;
    std::unordered_map<std::string, DocId> docnos_;
  };

  PositionalIndex() = default;

  static PositionalIndex ingest(std::span<const std::filesystem::path> files,
                                Diagnostics *diagnostics = nullptr);

  // Versioned text format. load() throws LoadError on version mismatch or
  // corrupt data.
  void save(std::ostream &out) const;
  void save(const std::filesystem::path &path) const;
  static PositionalIndex load(std::istream &in, const std::string &source_name);
  static PositionalIndex load(const std::filesystem::path &path);

  std::size_t doc_count() const { return docnos_.size(); }
  std::uint64_t total_tokens() const { return total_tokens_; }
  std::size_t vocabulary_size() const { return terms_.size(); }
  const std::string &docno(DocId doc) const { return docnos_.at(doc); }
  std::uint32_t doc_length(DocId doc) const { return lengths_.at(doc); }
  std::optional<DocId> find_doc(std::string_view docno) const;

  std::optional<TermId> term_id(std::string_view term) const;
  const std::string &term(TermId id) const { return terms_.at(id); }
  std::uint64_t collection_tf(std::string_view term) const;
  std::uint32_t doc_freq(std::string_view term) const;
  std::span<const Posting> postings(TermId id) const { return postings_.at(id); }

  // Per-document (term, tf) pairs in ascending term id order.
  std::span<const std::pair<TermId, std::uint32_t>> doc_terms(DocId doc) const {
    return forward_.at(doc);
  }

  std::span<const Position> positions(DocId doc, std::string_view term) const;
  std::uint32_t tf(DocId doc, std::string_view term) const;

  // Contiguous in-order occurrences of `terms` in `doc`. terms non-empty.
  std::uint32_t phrase_count(DocId doc,
                             std::span<const std::string> terms) const;
  // Duplicate terms collapse; throws InvalidWindowError if the number of
  // distinct terms exceeds `width`.
  std::uint32_t uwindow_count(DocId doc, std::span<const std::string> terms,
                              std::uint32_t width) const;

  // Ascending ids of documents containing every / any of the terms.
  std::vector<DocId> docs_with_all(std::span<const std::string> terms) const;
  std::vector<DocId> docs_with_any(std::span<const std::string> terms) const;

  bool operator==(const PositionalIndex &other) const;

 private:
  void rebuild_lookup();

  std::vector<std::string> docnos_;
  std::vector<std::uint32_t> lengths_;
  std::unordered_map<std::string, DocId> doc_lookup_;
  std::vector<std::string> terms_;  // first-seen order
  std::unordered_map<std::string, TermId> lexicon_;
  std::vector<std::vector<Posting>> postings_;
  std::vector<std::uint64_t> collection_tf_;
  std::vector<std::vector<std::pair<TermId, std::uint32_t>>> forward_;
  std::uint64_t total_tokens_ = 0;
};

}  // namespace weakq

#endif  // WEAKQ_CORPUS_INDEX_H_
