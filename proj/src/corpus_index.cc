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

#include "weakq/corpus_index.h"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <istream>
#include <iterator>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>

#include "weakq/text.h"
#include "open_input.h"

namespace weakq {
namespace {

constexpr std::string_view kFormatTag = "weakq-index";
constexpr int kFormatVersion = 1;

std::string_view trim(std::string_view s) {
  const char *ws = " \t\r\n";
  auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(ws);
  return s.substr(b, e - b + 1);
}

template <typename T>
bool parse_number(std::string_view s, T &out) {
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && ptr == s.data() + s.size();
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> parts;
  std::size_t start = 0;
  while (true) {
    auto pos = s.find(sep, start);
    parts.push_back(s.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return parts;
}

}  // namespace

std::uint32_t count_phrase(std::span<const std::span<const Position>> lists) {
  if (lists.empty()) return 0;
  std::vector<std::size_t> cursor(lists.size(), 0);
  std::uint32_t count = 0;
  for (Position start : lists[0]) {
    bool match = true;
    for (std::size_t i = 1; i < lists.size(); ++i) {
      const Position want = start + static_cast<Position>(i);
      auto &c = cursor[i];
      while (c < lists[i].size() && lists[i][c] < want) ++c;
      if (c == lists[i].size()) return count;
      if (lists[i][c] != want) {
        match = false;
        break;
      }
    }
    if (match) ++count;
  }
  return count;
}

std::uint32_t count_unordered_window(
    std::span<const std::span<const Position>> lists, std::uint32_t width) {
  if (lists.size() > width) {
    throw InvalidWindowError("unordered window of width " +
                             std::to_string(width) + " cannot hold " +
                             std::to_string(lists.size()) + " terms");
  }
  if (lists.empty()) return 0;
  for (const auto &list : lists) {
    if (list.empty()) return 0;
  }

  std::vector<std::pair<Position, std::size_t>> events;
  for (std::size_t i = 0; i < lists.size(); ++i) {
    for (Position p : lists[i]) events.emplace_back(p, i);
  }
  std::sort(events.begin(), events.end());

  // last[i] is the latest occurrence of term i since the previous match, or
  // unset when stamp[i] != generation.
  std::vector<Position> last(lists.size(), 0);
  std::vector<std::uint32_t> stamp(lists.size(), 0);
  std::uint32_t generation = 1;
  std::size_t seen = 0;
  std::uint32_t count = 0;
  for (const auto &[pos, term] : events) {
    if (stamp[term] != generation) {
      stamp[term] = generation;
      ++seen;
    }
    last[term] = pos;
    if (seen < lists.size()) continue;
    Position start = *std::min_element(last.begin(), last.end());
    if (pos - start + 1 <= width) {
      ++count;
      ++generation;
      seen = 0;
    }
  }
  return count;
}

bool PositionalIndex::Builder::add_document(std::string docno,
                                            std::string_view text,
                                            Diagnostics *diagnostics) {
  docno = std::string(trim(docno));
  if (docno.empty()) {
    warn(diagnostics, "document without DOCNO rejected");
    return false;
  }
  if (docno.find_first_of(" \t\r\n") != std::string::npos) {
    warn(diagnostics, "DOCNO '" + docno + "' contains whitespace; rejected");
    return false;
  }
  if (docnos_.count(docno) > 0) {
    warn(diagnostics, "duplicate DOCNO '" + docno + "'; later record rejected");
    return false;
  }
  docnos_.emplace(docno, static_cast<DocId>(docs_.size()));
  docs_.push_back({std::move(docno), tokenize(text)});
  return true;
}

void PositionalIndex::Builder::add_trec(std::istream &in,
                                        const std::string &source_name,
                                        Diagnostics *diagnostics) {
  const std::string data((std::istreambuf_iterator<char>(in)),
                         std::istreambuf_iterator<char>());
  const std::string_view all(data);
  std::size_t cursor = 0;
  std::size_t record = 0;
  while (true) {
    auto open = all.find("<DOC>", cursor);
    if (open == std::string_view::npos) break;
    ++record;
    auto close = all.find("</DOC>", open);
    if (close == std::string_view::npos) {
      warn(diagnostics, source_name + ": record " + std::to_string(record) +
                            " has no </DOC>; ignored");
      break;
    }
    std::string_view body = all.substr(open + 5, close - open - 5);
    cursor = close + 6;

    std::string docno;
    auto dn = body.find("<DOCNO>");
    if (dn != std::string_view::npos) {
      auto dn_end = body.find("</DOCNO>", dn);
      if (dn_end != std::string_view::npos) {
        docno = std::string(trim(body.substr(dn + 7, dn_end - dn - 7)));
      }
    }
    if (docno.empty()) {
      warn(diagnostics, source_name + ": record " + std::to_string(record) +
                            " has no DOCNO; rejected");
      continue;
    }

    std::string text;
    std::size_t t = 0;
    while ((t = body.find("<TEXT>", t)) != std::string_view::npos) {
      auto t_end = body.find("</TEXT>", t);
      if (t_end == std::string_view::npos) t_end = body.size();
      if (!text.empty()) text.push_back(' ');
      text.append(body.substr(t + 6, t_end - t - 6));
      t = t_end;
    }
    add_document(std::move(docno), text, diagnostics);
  }
}

PositionalIndex PositionalIndex::Builder::build() && {
  PositionalIndex index;
  for (DocId doc = 0; doc < docs_.size(); ++doc) {
    auto &pending = docs_[doc];
    index.docnos_.push_back(std::move(pending.docno));
    index.lengths_.push_back(static_cast<std::uint32_t>(pending.tokens.size()));
    index.total_tokens_ += pending.tokens.size();
    for (Position pos = 0; pos < pending.tokens.size(); ++pos) {
      const std::string &token = pending.tokens[pos];
      auto [it, inserted] = index.lexicon_.try_emplace(
          token, static_cast<TermId>(index.terms_.size()));
      if (inserted) {
        index.terms_.push_back(token);
        index.postings_.emplace_back();
      }
      auto &plist = index.postings_[it->second];
      if (plist.empty() || plist.back().doc != doc) plist.push_back({doc, {}});
      plist.back().positions.push_back(pos);
    }
  }
  docs_.clear();
  docnos_.clear();
  index.rebuild_lookup();
  return index;
}

void PositionalIndex::rebuild_lookup() {
  doc_lookup_.clear();
  for (DocId doc = 0; doc < docnos_.size(); ++doc) doc_lookup_[docnos_[doc]] = doc;
  lexicon_.clear();
  for (TermId id = 0; id < terms_.size(); ++id) lexicon_[terms_[id]] = id;
  collection_tf_.assign(terms_.size(), 0);
  forward_.assign(docnos_.size(), {});
  for (TermId id = 0; id < terms_.size(); ++id) {
    for (const auto &posting : postings_[id]) {
      const auto tf = static_cast<std::uint32_t>(posting.positions.size());
      collection_tf_[id] += tf;
      forward_[posting.doc].emplace_back(id, tf);
    }
  }
}

PositionalIndex PositionalIndex::ingest(
    std::span<const std::filesystem::path> files, Diagnostics *diagnostics) {
  Builder builder;
  for (const auto &file : files) {
    auto in = open_input(file, "collection file", std::ios::binary);
    builder.add_trec(in, file.string(), diagnostics);
  }
  return std::move(builder).build();
}

void PositionalIndex::save(std::ostream &out) const {
  out << kFormatTag << ' ' << kFormatVersion << '\n';
  out << "docs " << docnos_.size() << " tokens " << total_tokens_ << '\n';
  for (DocId doc = 0; doc < docnos_.size(); ++doc) {
    out << docnos_[doc] << ' ' << lengths_[doc] << '\n';
  }
  out << "terms " << terms_.size() << '\n';
  for (TermId id = 0; id < terms_.size(); ++id) {
    out << terms_[id] << ' ' << postings_[id].size();
    for (const auto &posting : postings_[id]) {
      out << ' ' << posting.doc << ':';
      for (std::size_t i = 0; i < posting.positions.size(); ++i) {
        if (i > 0) out << ',';
        out << posting.positions[i];
      }
    }
    out << '\n';
  }
}

void PositionalIndex::save(const std::filesystem::path &path) const {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write index '" + path.string() + "'");
  save(out);
  if (!out) throw IoError("failed writing index '" + path.string() + "'");
}

PositionalIndex PositionalIndex::load(const std::filesystem::path &path) {
  auto in = open_input(path, "index", std::ios::binary);
  return load(in, path.string());
}

PositionalIndex PositionalIndex::load(std::istream &in,
                                      const std::string &source_name) {
  std::string line;
  std::size_t line_no = 0;
  auto next = [&]() -> std::string_view {
    if (!std::getline(in, line)) {
      throw LoadError(source_name, line_no + 1, "unexpected end of file");
    }
    ++line_no;
    return line;
  };
  auto fail = [&](const std::string &message) {
    throw LoadError(source_name, line_no, message);
  };

  {
    auto header = split(next(), ' ');
    int version = 0;
    if (header.size() != 2 || header[0] != kFormatTag ||
        !parse_number(header[1], version)) {
      fail("not a weakq index");
    }
    if (version != kFormatVersion) {
      fail("unsupported index version " + std::to_string(version));
    }
  }

  PositionalIndex index;
  std::size_t doc_count = 0;
  std::uint64_t total = 0;
  {
    auto f = split(next(), ' ');
    if (f.size() != 4 || f[0] != "docs" || f[2] != "tokens" ||
        !parse_number(f[1], doc_count) || !parse_number(f[3], total)) {
      fail("bad docs header");
    }
  }
  for (std::size_t i = 0; i < doc_count; ++i) {
    auto f = split(next(), ' ');
    std::uint32_t length = 0;
    if (f.size() != 2 || f[0].empty() || !parse_number(f[1], length)) {
      fail("bad document line");
    }
    index.docnos_.emplace_back(f[0]);
    index.lengths_.push_back(length);
  }
  std::size_t term_count = 0;
  {
    auto f = split(next(), ' ');
    if (f.size() != 2 || f[0] != "terms" || !parse_number(f[1], term_count)) {
      fail("bad terms header");
    }
  }
  std::vector<std::uint64_t> doc_tokens(doc_count, 0);
  for (std::size_t i = 0; i < term_count; ++i) {
    auto f = split(next(), ' ');
    std::size_t n = 0;
    if (f.size() < 2 || f[0].empty() || !parse_number(f[1], n) ||
        f.size() != n + 2) {
      fail("bad term line");
    }
    std::vector<Posting> plist;
    for (std::size_t j = 0; j < n; ++j) {
      auto colon = f[j + 2].find(':');
      if (colon == std::string_view::npos) fail("bad posting");
      Posting posting;
      if (!parse_number(f[j + 2].substr(0, colon), posting.doc) ||
          posting.doc >= doc_count ||
          (!plist.empty() && plist.back().doc >= posting.doc)) {
        fail("bad posting document");
      }
      for (auto p : split(f[j + 2].substr(colon + 1), ',')) {
        Position pos = 0;
        if (!parse_number(p, pos) || pos >= index.lengths_[posting.doc] ||
            (!posting.positions.empty() && posting.positions.back() >= pos)) {
          fail("bad position list");
        }
        posting.positions.push_back(pos);
      }
      doc_tokens[posting.doc] += posting.positions.size();
      plist.push_back(std::move(posting));
    }
    index.terms_.emplace_back(f[0]);
    index.postings_.push_back(std::move(plist));
  }
  for (std::size_t doc = 0; doc < doc_count; ++doc) {
    if (doc_tokens[doc] != index.lengths_[doc]) {
      fail("document '" + index.docnos_[doc] + "' length does not match postings");
    }
    index.total_tokens_ += doc_tokens[doc];
  }
  if (index.total_tokens_ != total) fail("token total does not match postings");
  index.rebuild_lookup();
  if (index.lexicon_.size() != index.terms_.size() ||
      index.doc_lookup_.size() != index.docnos_.size()) {
    fail("duplicate term or docno");
  }
  return index;
}

std::optional<DocId> PositionalIndex::find_doc(std::string_view docno) const {
  auto it = doc_lookup_.find(std::string(docno));
  if (it == doc_lookup_.end()) return std::nullopt;
  return it->second;
}

std::optional<TermId> PositionalIndex::term_id(std::string_view term) const {
  auto it = lexicon_.find(std::string(term));
  if (it == lexicon_.end()) return std::nullopt;
  return it->second;
}

std::uint64_t PositionalIndex::collection_tf(std::string_view term) const {
  auto id = term_id(term);
  return id ? collection_tf_[*id] : 0;
}

std::uint32_t PositionalIndex::doc_freq(std::string_view term) const {
  auto id = term_id(term);
  return id ? static_cast<std::uint32_t>(postings_[*id].size()) : 0;
}

std::span<const Position> PositionalIndex::positions(
    DocId doc, std::string_view term) const {
  auto id = term_id(term);
  if (!id) return {};
  const auto &plist = postings_[*id];
  auto it = std::lower_bound(
      plist.begin(), plist.end(), doc,
      [](const Posting &p, DocId d) { return p.doc < d; });
  if (it == plist.end() || it->doc != doc) return {};
  return it->positions;
}

std::uint32_t PositionalIndex::tf(DocId doc, std::string_view term) const {
  return static_cast<std::uint32_t>(positions(doc, term).size());
}

std::uint32_t PositionalIndex::phrase_count(
    DocId doc, std::span<const std::string> terms) const {
  if (terms.empty()) throw InvalidInputError("phrase needs at least one term");
  std::vector<std::span<const Position>> lists;
  lists.reserve(terms.size());
  for (const auto &term : terms) {
    auto p = positions(doc, term);
    if (p.empty()) return 0;
    lists.push_back(p);
  }
  return count_phrase(lists);
}

std::uint32_t PositionalIndex::uwindow_count(DocId doc,
                                             std::span<const std::string> terms,
                                             std::uint32_t width) const {
  std::vector<std::string> distinct(terms.begin(), terms.end());
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  std::vector<std::span<const Position>> lists;
  lists.reserve(distinct.size());
  for (const auto &term : distinct) lists.push_back(positions(doc, term));
  return count_unordered_window(lists, width);
}

std::vector<DocId> PositionalIndex::docs_with_all(
    std::span<const std::string> terms) const {
  std::vector<DocId> result;
  bool first = true;
  for (const auto &term : terms) {
    auto id = term_id(term);
    if (!id) return {};
    std::vector<DocId> docs;
    for (const auto &posting : postings_[*id]) docs.push_back(posting.doc);
    if (first) {
      result = std::move(docs);
      first = false;
    } else {
      std::vector<DocId> merged;
      std::set_intersection(result.begin(), result.end(), docs.begin(),
                            docs.end(), std::back_inserter(merged));
      result = std::move(merged);
    }
  }
  return result;
}

std::vector<DocId> PositionalIndex::docs_with_any(
    std::span<const std::string> terms) const {
  std::vector<DocId> result;
  for (const auto &term : terms) {
    auto id = term_id(term);
    if (!id) continue;
    for (const auto &posting : postings_[*id]) result.push_back(posting.doc);
  }
  std::sort(result.begin(), result.end());
  result.erase(std::unique(result.begin(), result.end()), result.end());
  return result;
}

bool PositionalIndex::operator==(const PositionalIndex &other) const {
  return docnos_ == other.docnos_ && lengths_ == other.lengths_ &&
         terms_ == other.terms_ && postings_ == other.postings_ &&
         total_tokens_ == other.total_tokens_;
}

}  // namespace weakq
