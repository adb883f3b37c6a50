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

#ifndef WEAKQ_EVAL_H_
#define WEAKQ_EVAL_H_

#include <filesystem>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "weakq/errors.h"
#include "weakq/retrieval.h"

namespace weakq {

// Relevance judgments. A document is relevant when its grade is >= 1;
// unjudged documents are non-relevant.
class Qrels {
 public:
  // "qid 0 docno grade" per line. Throws LoadError / IoError.
  static Qrels load(const std::filesystem::path &path);
  static Qrels parse(std::istream &in, const std::string &source_name);

  void set(const std::string &qid, const std::string &docno, int grade);
  int grade(std::string_view qid, std::string_view docno) const;
  bool is_relevant(std::string_view qid, std::string_view docno) const {
    return grade(qid, docno) >= 1;
  }
  std::size_t relevant_count(std::string_view qid) const;
  std::vector<std::string> query_ids() const;

 private:
  std::map<std::string, std::map<std::string, int, std::less<>>, std::less<>>
      judgments_;
};

// Sum of precision at each relevant retrieved rank divided by the number of
// relevant documents. Returns nullopt (and warns) when qid has none.
std::optional<double> average_precision(std::span<const std::string> docnos,
                                        const Qrels &qrels,
                                        std::string_view qid,
                                        Diagnostics *diagnostics = nullptr);
std::optional<double> average_precision(const Ranking &ranking,
                                        const Qrels &qrels,
                                        Diagnostics *diagnostics = nullptr);

struct MapResult {
  double map = 0.0;
  std::map<std::string, double> per_query;  // queries with judgments only
  std::vector<std::string> excluded;        // no relevant documents
};

// Mean AP over `query_ids`; a query without a ranking scores 0.
MapResult mean_average_precision(const std::map<std::string, Ranking> &runs,
                                 const Qrels &qrels,
                                 std::span<const std::string> query_ids,
                                 Diagnostics *diagnostics = nullptr);

// Reads "qid Q0 docno rank score tag" lines, grouped by qid, entries in
// file order.
std::map<std::string, Ranking> read_trec_run(std::istream &in,
                                             const std::string &source_name);
std::map<std::string, Ranking> read_trec_run(const std::filesystem::path &path);

}  // namespace weakq

#endif  // WEAKQ_EVAL_H_
