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

#ifndef WEAKQ_CONFIG_H_
#define WEAKQ_CONFIG_H_

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>

#include "weakq/expand.h"

namespace weakq {

// Every tunable of the pipeline. Files are flat "key = value" text; '#'
// starts a comment. Relative paths in a file resolve against the file's
// directory; all stored paths are absolute.
struct Config {
  double alpha_d = 0.4;          // chunk-model smoothing
  double lambda = 0.5;           // title vs anchor background mix
  double mu = 2500.0;            // retrieval Dirichlet prior
  std::size_t fb_docs = 20;      // feedback / context depth
  std::size_t num_expansion_terms = 20;
  QueryWeights weights;          // original, topic, expansion
  WindowSizes windows;           // topic window, no-topic window
  std::size_t top_k = 1000;
  double lca_delta = 0.1;
  std::filesystem::path kb;
  std::filesystem::path index;
  std::filesystem::path queries;
  std::filesystem::path qrels;
  std::filesystem::path out;

  bool operator==(const Config &) const = default;

  static Config load(const std::filesystem::path &path);
  static Config parse(std::istream &in, const std::string &source_name,
                      const std::filesystem::path &base_dir = {});

  // Sets one key from its text form. Throws InvalidInputError for an
  // unknown key or a bad value.
  void set(std::string_view key, std::string_view value,
           const std::filesystem::path &base_dir = {});

  // Throws InvalidInputError when a value is out of range.
  void validate() const;

  // Every key, in a form parse() reads back to an equal Config.
  std::string dump() const;
};

// "o,t,e"
QueryWeights parse_weights(std::string_view text);

}  // namespace weakq

#endif  // WEAKQ_CONFIG_H_
