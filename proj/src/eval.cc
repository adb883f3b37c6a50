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

#include "weakq/eval.h"

#include <fstream>
#include <istream>
#include <sstream>

#include "open_input.h"

namespace weakq {

Qrels Qrels::load(const std::filesystem::path &path) {
  auto in = open_input(path, "qrels");
  return parse(in, path.string());
}

Qrels Qrels::parse(std::istream &in, const std::string &source_name) {
  Qrels qrels;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream fields(line);
    std::string qid, iteration, docno, grade_text, extra;
    if (!(fields >> qid)) continue;
    if (!(fields >> iteration >> docno >> grade_text) || (fields >> extra)) {
      throw LoadError(source_name, line_no, "expected 'qid 0 docno grade'");
    }
    int grade = 0;
    try {
      std::size_t used = 0;
      grade = std::stoi(grade_text, &used);
      if (used != grade_text.size()) throw std::invalid_argument(grade_text);
    } catch (const std::exception &) {
      throw LoadError(source_name, line_no, "grade is not an integer");
    }
    if (grade < 0) throw LoadError(source_name, line_no, "negative grade");
    qrels.set(qid, docno, grade);
  }
  return qrels;
}

void Qrels::set(const std::string &qid, const std::string &docno, int grade) {
  judgments_[qid][docno] = grade;
}

int Qrels::grade(std::string_view qid, std::string_view docno) const {
  auto q = judgments_.find(qid);
  if (q == judgments_.end()) return 0;
  auto d = q->second.find(docno);
  return d == q->second.end() ? 0 : d->second;
}

std::size_t Qrels::relevant_count(std::string_view qid) const {
  auto q = judgments_.find(qid);
  if (q == judgments_.end()) return 0;
  std::size_t n = 0;
  for (const auto &[docno, grade] : q->second) n += grade >= 1;
  return n;
}

std::vector<std::string> Qrels::query_ids() const {
  std::vector<std::string> ids;
  for (const auto &[qid, docs] : judgments_) ids.push_back(qid);
  return ids;
}

std::optional<double> average_precision(std::span<const std::string> docnos,
                                        const Qrels &qrels,
                                        std::string_view qid,
                                        Diagnostics *diagnostics) {
  const std::size_t relevant = qrels.relevant_count(qid);
  if (relevant == 0) {
    warn(diagnostics, "query " + std::string(qid) +
                          " has no relevant documents; excluded from MAP");
    return std::nullopt;
  }
  double sum = 0.0;
  std::size_t hits = 0;
  for (std::size_t i = 0; i < docnos.size(); ++i) {
    if (qrels.is_relevant(qid, docnos[i])) {
      ++hits;
      sum += static_cast<double>(hits) / static_cast<double>(i + 1);
    }
  }
  return sum / static_cast<double>(relevant);
}

std::optional<double> average_precision(const Ranking &ranking,
                                        const Qrels &qrels,
                                        Diagnostics *diagnostics) {
  std::vector<std::string> docnos;
  docnos.reserve(ranking.entries.size());
  for (const auto &e : ranking.entries) docnos.push_back(e.docno);
  return average_precision(docnos, qrels, ranking.query_id, diagnostics);
}

MapResult mean_average_precision(const std::map<std::string, Ranking> &runs,
                                 const Qrels &qrels,
                                 std::span<const std::string> query_ids,
                                 Diagnostics *diagnostics) {
  MapResult result;
  double sum = 0.0;
  for (const auto &qid : query_ids) {
    Ranking empty{qid, {}};
    auto it = runs.find(qid);
    const Ranking &ranking = it == runs.end() ? empty : it->second;
    auto ap = average_precision(ranking, qrels, diagnostics);
    if (!ap) {
      result.excluded.push_back(qid);
      continue;
    }
    result.per_query[qid] = *ap;
    sum += *ap;
  }
  if (!result.per_query.empty()) {
    result.map = sum / static_cast<double>(result.per_query.size());
  }
  return result;
}

std::map<std::string, Ranking> read_trec_run(std::istream &in,
                                             const std::string &source_name) {
  std::map<std::string, Ranking> runs;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::istringstream fields(line);
    std::string qid, q0, docno, tag;
    std::size_t rank = 0;
    double score = 0.0;
    if (!(fields >> qid)) continue;
    if (!(fields >> q0 >> docno >> rank >> score >> tag)) {
      throw LoadError(source_name, line_no,
                      "expected 'qid Q0 docno rank score tag'");
    }
    auto &ranking = runs[qid];
    ranking.query_id = qid;
    ranking.entries.push_back({docno, score, rank});
  }
  return runs;
}

std::map<std::string, Ranking> read_trec_run(const std::filesystem::path &path) {
  auto in = open_input(path, "run");
  return read_trec_run(in, path.string());
}

}  // namespace weakq
