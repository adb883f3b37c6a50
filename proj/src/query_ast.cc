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

#include "weakq/query_ast.h"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <set>

#include "weakq/errors.h"

namespace weakq {

QueryNode QueryNode::term(std::string token) {
  QueryNode node;
  node.kind = NodeKind::kTerm;
  node.tokens.push_back(std::move(token));
  return node;
}

QueryNode QueryNode::phrase(std::vector<std::string> tokens) {
  QueryNode node;
  node.kind = NodeKind::kPhrase;
  node.tokens = std::move(tokens);
  return node;
}

QueryNode QueryNode::unordered_window(std::vector<std::string> tokens,
                                      std::uint32_t width) {
  QueryNode node;
  node.kind = NodeKind::kUnorderedWindow;
  node.tokens = std::move(tokens);
  node.window = width;
  return node;
}

QueryNode QueryNode::combine(std::vector<QueryNode> children) {
  QueryNode node;
  node.kind = NodeKind::kCombine;
  node.children = std::move(children);
  return node;
}

QueryNode QueryNode::combine_terms(const std::vector<std::string> &tokens) {
  std::vector<QueryNode> children;
  children.reserve(tokens.size());
  for (const auto &t : tokens) children.push_back(term(t));
  return combine(std::move(children));
}

QueryNode QueryNode::weight(std::vector<std::pair<double, QueryNode>> weighted) {
  QueryNode node;
  node.kind = NodeKind::kWeight;
  for (auto &[w, child] : weighted) {
    node.weights.push_back(canonical_weight(w));
    node.children.push_back(std::move(child));
  }
  return node;
}

double canonical_weight(double w) {
  return std::strtod(format_weight(w).c_str(), nullptr);
}

std::string format_weight(double w) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.15g", w);
  return buf;
}

namespace {

void append_tokens(std::string &out, const std::vector<std::string> &tokens) {
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i > 0) out.push_back(' ');
    out += tokens[i];
  }
}

void write_node(std::string &out, const QueryNode &node) {
  switch (node.kind) {
    case NodeKind::kTerm:
      out += node.tokens.empty() ? std::string() : node.tokens.front();
      break;
    case NodeKind::kPhrase:
      out += "#1(";
      append_tokens(out, node.tokens);
      out += ')';
      break;
    case NodeKind::kUnorderedWindow:
      out += "#uw" + std::to_string(node.window) + "(";
      append_tokens(out, node.tokens);
      out += ')';
      break;
    case NodeKind::kCombine:
      out += "#combine(";
      for (std::size_t i = 0; i < node.children.size(); ++i) {
        if (i > 0) out.push_back(' ');
        write_node(out, node.children[i]);
      }
      out += ')';
      break;
    case NodeKind::kWeight:
      out += "#weight(";
      for (std::size_t i = 0; i < node.children.size(); ++i) {
        if (i > 0) out.push_back(' ');
        out += format_weight(node.weights[i]);
        out.push_back(' ');
        write_node(out, node.children[i]);
      }
      out += ')';
      break;
  }
}

class Parser {
 public:
  explicit Parser(std::string_view text) : text_(text) {}

  QueryNode parse_all() {
    QueryNode node = parse_node();
    skip_space();
    if (pos_ != text_.size()) fail("trailing input");
    return node;
  }

 private:
  [[noreturn]] void fail(const std::string &what) const {
    throw InvalidInputError("query parse error at offset " +
                            std::to_string(pos_) + ": " + what);
  }

  void skip_space() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  bool at(char c) {
    skip_space();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  void expect(char c) {
    if (!at(c)) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  // A run of characters that are not whitespace or parentheses.
  std::string_view word() {
    skip_space();
    std::size_t start = pos_;
    while (pos_ < text_.size() && text_[pos_] != '(' && text_[pos_] != ')' &&
           !std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
    if (start == pos_) fail("expected a term");
    return text_.substr(start, pos_ - start);
  }

  std::vector<std::string> token_list() {
    expect('(');
    std::vector<std::string> tokens;
    while (!at(')')) {
      if (pos_ >= text_.size()) fail("unterminated operator");
      auto w = word();
      if (w.front() == '#') fail("operator not allowed inside a term list");
      tokens.emplace_back(w);
    }
    ++pos_;
    return tokens;
  }

  QueryNode parse_node() {
    skip_space();
    if (pos_ >= text_.size()) fail("unexpected end of query");
    auto w = word();
    if (w.front() != '#') return QueryNode::term(std::string(w));

    if (w == "#1") return QueryNode::phrase(token_list());
    if (w.starts_with("#uw")) {
      auto digits = w.substr(3);
      if (digits.empty() ||
          !std::all_of(digits.begin(), digits.end(),
                       [](char c) { return c >= '0' && c <= '9'; })) {
        fail("bad window size");
      }
      auto width = static_cast<std::uint32_t>(
          std::strtoul(std::string(digits).c_str(), nullptr, 10));
      return QueryNode::unordered_window(token_list(), width);
    }
    if (w == "#combine") {
      expect('(');
      std::vector<QueryNode> children;
      while (!at(')')) {
        if (pos_ >= text_.size()) fail("unterminated #combine");
        children.push_back(parse_node());
      }
      ++pos_;
      return QueryNode::combine(std::move(children));
    }
    if (w == "#weight") {
      expect('(');
      QueryNode node;
      node.kind = NodeKind::kWeight;
      while (!at(')')) {
        if (pos_ >= text_.size()) fail("unterminated #weight");
        auto number = std::string(word());
        char *end = nullptr;
        double value = std::strtod(number.c_str(), &end);
        if (end != number.c_str() + number.size()) fail("expected a weight");
        node.weights.push_back(value);
        node.children.push_back(parse_node());
      }
      ++pos_;
      return node;
    }
    fail("unknown operator '" + std::string(w) + "'");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string serialize(const QueryNode &node) {
  std::string out;
  write_node(out, node);
  return out;
}

QueryNode parse_query(std::string_view text) {
  QueryNode query = Parser(text).parse_all();
  validate(query);
  return query;
}

void validate(const QueryNode &node) {
  switch (node.kind) {
    case NodeKind::kTerm:
      if (node.tokens.size() != 1 || node.tokens.front().empty()) {
        throw InvalidInputError("term node must hold exactly one token");
      }
      break;
    case NodeKind::kPhrase:
      if (node.tokens.empty()) throw InvalidInputError("empty #1 operator");
      break;
    case NodeKind::kUnorderedWindow: {
      if (node.tokens.empty()) throw InvalidInputError("empty #uw operator");
      std::set<std::string> distinct(node.tokens.begin(), node.tokens.end());
      if (distinct.size() > node.window) {
        throw InvalidWindowError("#uw" + std::to_string(node.window) +
                                 " cannot hold " +
                                 std::to_string(distinct.size()) + " terms");
      }
      break;
    }
    case NodeKind::kCombine:
      if (node.children.empty()) throw InvalidInputError("empty #combine");
      for (const auto &child : node.children) validate(child);
      break;
    case NodeKind::kWeight:
      if (node.children.empty()) throw InvalidInputError("empty #weight");
      if (node.weights.size() != node.children.size()) {
        throw InvalidInputError("#weight needs one weight per child");
      }
      for (double w : node.weights) {
        if (!(w > 0.0)) throw InvalidInputError("#weight weights must be positive");
      }
      for (const auto &child : node.children) validate(child);
      break;
  }
}

std::vector<std::string> leaf_tokens(const QueryNode &node) {
  std::vector<std::string> out(node.tokens);
  for (const auto &child : node.children) {
    auto sub = leaf_tokens(child);
    out.insert(out.end(), sub.begin(), sub.end());
  }
  return out;
}

}  // namespace weakq
