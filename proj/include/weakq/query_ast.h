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

#ifndef WEAKQ_QUERY_AST_H_
#define WEAKQ_QUERY_AST_H_

#include <cstdint>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace weakq {

enum class NodeKind {
  kTerm,             // w
  kPhrase,           // #1(w1 w2 ...)
  kUnorderedWindow,  // #uwN(w1 w2 ...)
  kCombine,          // #combine(n1 n2 ...)
  kWeight,           // #weight(x1 n1 x2 n2 ...)
};

// Structured query tree in the Indri operator subset we evaluate. Leaves
// carry tokens; Combine/Weight carry children (and weights for Weight).
struct QueryNode {
  NodeKind kind = NodeKind::kTerm;
  std::vector<std::string> tokens;
  std::uint32_t window = 0;
  std::vector<QueryNode> children;
  std::vector<double> weights;  // parallel to children, kWeight only

  static QueryNode term(std::string token);
  static QueryNode phrase(std::vector<std::string> tokens);
  static QueryNode unordered_window(std::vector<std::string> tokens,
                                    std::uint32_t width);
  static QueryNode combine(std::vector<QueryNode> children);
  static QueryNode combine_terms(const std::vector<std::string> &tokens);
  static QueryNode weight(std::vector<std::pair<double, QueryNode>> weighted);

  bool operator==(const QueryNode &) const = default;
};

// Weights are stored rounded to 15 significant digits, the precision they
// are printed with, so that parse(serialize(q)) == q holds exactly.
double canonical_weight(double w);
std::string format_weight(double w);

// Single-line text form, e.g.
//   #weight(0.5 #combine(a b) 0.2 #combine(#1(a b) #uw12(a b c)) ...)
std::string serialize(const QueryNode &node);

// Parses the text form. Whitespace between items is free, so multi-line
// input and "#uw20 (a b)" are accepted. Throws InvalidInputError.
QueryNode parse_query(std::string_view text);

// Structural checks: non-empty operators, positive weights, window width
// covers its distinct tokens. Throws InvalidInputError / InvalidWindowError.
void validate(const QueryNode &node);

// Every token appearing anywhere in the tree, in order of appearance.
std::vector<std::string> leaf_tokens(const QueryNode &node);

}  // namespace weakq

#endif  // WEAKQ_QUERY_AST_H_
