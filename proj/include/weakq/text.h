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

#ifndef WEAKQ_TEXT_H_
#define WEAKQ_TEXT_H_

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace weakq {

// Splits text into lowercase tokens. Any byte that is not an ASCII letter or
// digit separates tokens, except bytes >= 0x80, which are kept so UTF-8
// sequences stay inside their word. The same tokenizer is used for corpus
// text, queries, titles, anchors and definitions.
std::vector<std::string> tokenize(std::string_view text);

// Joins tokens with single spaces.
std::string join_tokens(std::span<const std::string> tokens);

// Canonical key for titles, anchors and query chunks: tokenize + join.
std::string normalize_surface(std::string_view text);

// Bundled English stopword list.
bool is_stopword(std::string_view token);
std::size_t stopword_count();

}  // namespace weakq

#endif  // WEAKQ_TEXT_H_
