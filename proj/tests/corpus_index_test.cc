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

#include <gtest/gtest.h>

#include <chrono>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.h"
#include "weakq/errors.h"
#include "weakq/text.h"

namespace weakq {
namespace {

using Tokens = std::vector<std::string>;
using Positions = std::vector<Position>;

PositionalIndex from_trec(const std::string &text, Diagnostics *diag = nullptr) {
  PositionalIndex::Builder builder;
  std::istringstream in(text);
  builder.add_trec(in, "inline", diag);
  return std::move(builder).build();
}

PositionalIndex single_doc(const std::string &text) {
  PositionalIndex::Builder builder;
  builder.add_document("d", text);
  return std::move(builder).build();
}

TEST(Ingest, ThreeDocFile) {
  auto index = from_trec(
      "<DOC>\n<DOCNO> D1 </DOCNO>\n<TEXT>\nThe quick brown fox.\n</TEXT>\n</DOC>\n"
      "<DOC>\n<DOCNO>D2</DOCNO>\n<TEXT>Jumps over</TEXT>\n</DOC>\n"
      "<DOC><DOCNO>D3</DOCNO><TEXT>the lazy dog, the end</TEXT></DOC>\n");
  EXPECT_EQ(index.doc_count(), 3u);
  EXPECT_EQ(index.total_tokens(), 4u + 2u + 5u);
  EXPECT_EQ(index.docno(0), "D1");
  EXPECT_EQ(index.doc_length(2), 5u);
  EXPECT_EQ(index.collection_tf("the"), 3u);
  EXPECT_EQ(index.doc_freq("the"), 2u);
  EXPECT_EQ(index.collection_tf("cat"), 0u);
  EXPECT_EQ(index.find_doc("D2"), DocId{1});
  EXPECT_FALSE(index.find_doc("D4").has_value());
}

TEST(Ingest, EmptyTextHasLengthZero) {
  auto index = from_trec("<DOC><DOCNO>E</DOCNO><TEXT></TEXT></DOC>");
  ASSERT_EQ(index.doc_count(), 1u);
  EXPECT_EQ(index.doc_length(0), 0u);
  EXPECT_EQ(index.total_tokens(), 0u);
}

TEST(Ingest, NewYorkPositions) {
  auto index = single_doc("New York, new york!");
  EXPECT_EQ(index.tf(0, "new"), 2u);
  EXPECT_EQ(index.tf(0, "york"), 2u);
  auto pn = index.positions(0, "new");
  auto py = index.positions(0, "york");
  EXPECT_EQ(Positions(pn.begin(), pn.end()), (Positions{0, 2}));
  EXPECT_EQ(Positions(py.begin(), py.end()), (Positions{1, 3}));
}

TEST(Ingest, MissingAndDuplicateDocnoAreRejected) {
  Diagnostics diag;
  auto index = from_trec(
      "<DOC><TEXT>no id here</TEXT></DOC>"
      "<DOC><DOCNO>A</DOCNO><TEXT>first</TEXT></DOC>"
      "<DOC><DOCNO>A</DOCNO><TEXT>second copy</TEXT></DOC>",
      &diag);
  ASSERT_EQ(index.doc_count(), 1u);
  EXPECT_EQ(index.tf(0, "first"), 1u);
  EXPECT_EQ(index.collection_tf("second"), 0u);
  EXPECT_EQ(diag.messages.size(), 2u);
}

TEST(Ingest, MultipleTextBlocksConcatenate) {
  auto index = from_trec(
      "<DOC><DOCNO>M</DOCNO><TEXT>alpha beta</TEXT><TEXT>gamma</TEXT></DOC>");
  EXPECT_EQ(index.doc_length(0), 3u);
  EXPECT_EQ(index.positions(0, "gamma")[0], 2u);
}

TEST(Ingest, DocumentInvariants) {
  auto index = PositionalIndex::ingest(
      std::vector<std::filesystem::path>{WEAKQ_FIXTURES "/corpus.trec"});
  EXPECT_EQ(index.doc_count(), 51u);
  std::uint64_t sum_cf = 0;
  for (TermId t = 0; t < index.vocabulary_size(); ++t) {
    sum_cf += index.collection_tf(index.term(t));
    EXPECT_LE(index.doc_freq(index.term(t)), index.doc_count());
    for (const auto &posting : index.postings(t)) {
      for (std::size_t i = 1; i < posting.positions.size(); ++i) {
        EXPECT_LT(posting.positions[i - 1], posting.positions[i]);
      }
    }
  }
  EXPECT_EQ(sum_cf, index.total_tokens());
  for (DocId d = 0; d < index.doc_count(); ++d) {
    std::uint64_t len = 0;
    for (const auto &[term, tf] : index.doc_terms(d)) len += tf;
    EXPECT_EQ(len, index.doc_length(d));
  }
}

TEST(Ingest, DeterministicAndRoundTrips) {
  std::vector<std::filesystem::path> files{WEAKQ_FIXTURES "/corpus.trec"};
  auto a = PositionalIndex::ingest(files);
  auto b = PositionalIndex::ingest(files);
  EXPECT_TRUE(a == b);
  std::ostringstream out;
  a.save(out);
  std::istringstream in(out.str());
  auto c = PositionalIndex::load(in, "saved");
  EXPECT_TRUE(a == c);
  std::ostringstream again;
  c.save(again);
  EXPECT_EQ(out.str(), again.str());
}

TEST(Ingest, LoadRejectsCorruptData) {
  std::istringstream wrong_tag("something-else 1\n");
  EXPECT_THROW(PositionalIndex::load(wrong_tag, "x"), LoadError);
  std::istringstream truncated("weakq-index 1\ndocs 2 tokens 3\nA 1\n");
  EXPECT_THROW(PositionalIndex::load(truncated, "x"), LoadError);
  EXPECT_THROW(PositionalIndex::load("/nonexistent/index"), IoError);
}

TEST(PhraseCount, Examples) {
  EXPECT_EQ(single_doc("a b c").phrase_count(0, Tokens{"a", "b"}), 1u);
  EXPECT_EQ(single_doc("a b a b").phrase_count(0, Tokens{"a", "b"}), 2u);
  EXPECT_EQ(single_doc("b a").phrase_count(0, Tokens{"a", "b"}), 0u);
  EXPECT_EQ(single_doc("a a a").phrase_count(0, Tokens{"a", "a"}), 2u);
  EXPECT_EQ(single_doc("a b").phrase_count(0, Tokens{"zzz"}), 0u);
  EXPECT_THROW(single_doc("a").phrase_count(0, Tokens{}), InvalidInputError);
}

TEST(UwindowCount, Examples) {
  EXPECT_EQ(single_doc("dogs law enforcement")
                .uwindow_count(0, Tokens{"law", "enforcement", "dogs"}, 12),
            1u);
  EXPECT_EQ(single_doc("law x x x x x x x x x x x enforcement")
                .uwindow_count(0, Tokens{"law", "enforcement"}, 12),
            0u);
  EXPECT_EQ(single_doc("law x x x x x x x x x x enforcement")
                .uwindow_count(0, Tokens{"law", "enforcement"}, 12),
            1u);
  EXPECT_EQ(single_doc("a b").uwindow_count(0, Tokens{"a"}, 1), 1u);
  EXPECT_THROW(single_doc("a b c").uwindow_count(0, Tokens{"a", "b", "c"}, 2),
               InvalidWindowError);
}

TEST(CountFunctions, WorkOnRawPositionLists) {
  Positions a{0, 2, 4}, b{1, 3};
  std::vector<std::span<const Position>> lists{a, b};
  EXPECT_EQ(count_phrase(lists), 2u);
  EXPECT_EQ(count_unordered_window(lists, 2), 2u);
  EXPECT_THROW(count_unordered_window(lists, 1), InvalidWindowError);
}

// Random documents of up to 30 tokens over {a, b, c, d}, with random
// phrases and term sets, against the brute-force scanners.
TEST(OperatorProperty, MatchesBruteForce) {
  std::mt19937 rng(20260415);
  std::uniform_int_distribution<int> qlen(1, 4);
  std::uniform_int_distribution<int> sym(0, 3);
  std::uniform_int_distribution<std::uint32_t> width_extra(0, 8);
  const int cases = 2000;
  int mismatches = 0;
  for (int c = 0; c < cases; ++c) {
    Tokens doc = oracle::random_doc(rng, 30, 4);
    auto index = single_doc(join_tokens(doc));
    Tokens query(qlen(rng));
    for (auto &t : query) t = std::string(1, static_cast<char>('a' + sym(rng)));
    if (doc.empty()) continue;
    auto phrase = index.phrase_count(0, query);
    if (phrase != oracle::phrase_count(doc, query)) ++mismatches;

    Tokens distinct = query;
    std::sort(distinct.begin(), distinct.end());
    distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
    std::uint32_t width = static_cast<std::uint32_t>(distinct.size()) + width_extra(rng);
    auto window = index.uwindow_count(0, query, width);
    if (window != oracle::uwindow_count(doc, query, width)) ++mismatches;

    // Counts never exceed the rarest term.
    std::uint32_t min_tf = UINT32_MAX;
    for (const auto &t : query) min_tf = std::min(min_tf, index.tf(0, t));
    EXPECT_LE(phrase, min_tf);
    EXPECT_LE(window, min_tf);
  }
  EXPECT_EQ(mismatches, 0);
}

TEST(OperatorProperty, SingleTermCountsEqualTf) {
  std::mt19937 rng(11);
  for (int c = 0; c < 300; ++c) {
    Tokens doc = oracle::random_doc(rng, 30, 4);
    if (doc.empty()) continue;
    auto index = single_doc(join_tokens(doc));
    for (const char *w : {"a", "b", "c", "d"}) {
      Tokens one{w};
      EXPECT_EQ(index.phrase_count(0, one), index.tf(0, w));
      EXPECT_EQ(index.uwindow_count(0, one, 1), index.tf(0, w));
    }
  }
}

TEST(DocSets, AllAndAny) {
  auto index = from_trec(
      "<DOC><DOCNO>1</DOCNO><TEXT>a b</TEXT></DOC>"
      "<DOC><DOCNO>2</DOCNO><TEXT>b c</TEXT></DOC>"
      "<DOC><DOCNO>3</DOCNO><TEXT>c d</TEXT></DOC>");
  EXPECT_EQ(index.docs_with_all(Tokens{"b", "c"}), (std::vector<DocId>{1}));
  EXPECT_EQ(index.docs_with_any(Tokens{"a", "d"}), (std::vector<DocId>{0, 2}));
  EXPECT_TRUE(index.docs_with_all(Tokens{"a", "zz"}).empty());
}

}  // namespace
}  // namespace weakq
