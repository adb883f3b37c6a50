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

#include "weakq/config.h"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <istream>
#include <sstream>
#include <vector>

#include "weakq/errors.h"
#include "open_input.h"

namespace weakq {
namespace {

std::string_view trim(std::string_view s) {
  const char *ws = " \t\r\n";
  auto b = s.find_first_not_of(ws);
  if (b == std::string_view::npos) return {};
  return s.substr(b, s.find_last_not_of(ws) - b + 1);
}

double to_double(std::string_view key, std::string_view value) {
  std::string text(value);
  char *end = nullptr;
  double v = std::strtod(text.c_str(), &end);
  if (text.empty() || end != text.c_str() + text.size()) {
    throw InvalidInputError("config '" + std::string(key) +
                            "': not a number: '" + text + "'");
  }
  return v;
}

template <typename T>
T to_unsigned(std::string_view key, std::string_view value) {
  T v{};
  auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), v);
  if (ec != std::errc() || ptr != value.data() + value.size()) {
    throw InvalidInputError("config '" + std::string(key) +
                            "': not a non-negative integer: '" +
                            std::string(value) + "'");
  }
  return v;
}

// Shortest form that parses back to the same double.
std::string exact(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::filesystem::path resolve(std::string_view value,
                              const std::filesystem::path &base_dir) {
  std::filesystem::path p{std::string(value)};
  if (p.empty()) return p;
  if (p.is_relative() && !base_dir.empty()) p = base_dir / p;
  return std::filesystem::absolute(p).lexically_normal();
}

}  // namespace

QueryWeights parse_weights(std::string_view text) {
  std::vector<double> parts;
  std::size_t start = 0;
  while (true) {
    auto comma = text.find(',', start);
    parts.push_back(to_double("weights", trim(text.substr(start, comma - start))));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  if (parts.size() != 3) {
    throw InvalidInputError("weights must be three comma-separated numbers");
  }
  return {parts[0], parts[1], parts[2]};
}

Config Config::load(const std::filesystem::path &path) {
  auto in = open_input(path, "config");
  return parse(in, path.string(), path.parent_path());
}

Config Config::parse(std::istream &in, const std::string &source_name,
                     const std::filesystem::path &base_dir) {
  Config config;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view(line);
    if (auto hash = view.find('#'); hash != std::string_view::npos) {
      view = view.substr(0, hash);
    }
    view = trim(view);
    if (view.empty()) continue;
    auto eq = view.find('=');
    if (eq == std::string_view::npos) {
      throw LoadError(source_name, line_no, "expected 'key = value'");
    }
    try {
      config.set(trim(view.substr(0, eq)), trim(view.substr(eq + 1)), base_dir);
    } catch (const InvalidInputError &e) {
      throw LoadError(source_name, line_no, e.what());
    }
  }
  return config;
}

void Config::set(std::string_view key, std::string_view value,
                 const std::filesystem::path &base_dir) {
  if (key == "alpha_d") {
    alpha_d = to_double(key, value);
  } else if (key == "lambda") {
    lambda = to_double(key, value);
  } else if (key == "mu") {
    mu = to_double(key, value);
  } else if (key == "fb_docs") {
    fb_docs = to_unsigned<std::size_t>(key, value);
  } else if (key == "num_expansion_terms") {
    num_expansion_terms = to_unsigned<std::size_t>(key, value);
  } else if (key == "weights") {
    weights = parse_weights(value);
  } else if (key == "topic_window") {
    windows.topic = to_unsigned<std::uint32_t>(key, value);
  } else if (key == "notopic_window") {
    windows.no_topic = to_unsigned<std::uint32_t>(key, value);
  } else if (key == "top_k") {
    top_k = to_unsigned<std::size_t>(key, value);
  } else if (key == "lca_delta") {
    lca_delta = to_double(key, value);
  } else if (key == "kb") {
    kb = resolve(value, base_dir);
  } else if (key == "index") {
    index = resolve(value, base_dir);
  } else if (key == "queries") {
    queries = resolve(value, base_dir);
  } else if (key == "qrels") {
    qrels = resolve(value, base_dir);
  } else if (key == "out") {
    out = resolve(value, base_dir);
  } else {
    throw InvalidInputError("unknown config key '" + std::string(key) + "'");
  }
}

void Config::validate() const {
  if (!(alpha_d >= 0.0 && alpha_d <= 1.0)) {
    throw InvalidInputError("alpha_d must lie in [0,1]");
  }
  if (!(lambda >= 0.0 && lambda <= 1.0)) {
    throw InvalidInputError("lambda must lie in [0,1]");
  }
  if (!(mu > 0.0)) throw InvalidInputError("mu must be positive");
  if (!(weights.original > 0.0 && weights.topic > 0.0 && weights.expansion > 0.0)) {
    throw InvalidInputError("weights must be positive");
  }
  if (windows.topic == 0 || windows.no_topic == 0) {
    throw InvalidInputError("window sizes must be positive");
  }
  if (!(lca_delta >= 0.0)) throw InvalidInputError("lca_delta must be >= 0");
}

std::string Config::dump() const {
  std::ostringstream text;
  text << "alpha_d = " << exact(alpha_d) << '\n'
      << "lambda = " << exact(lambda) << '\n'
      << "mu = " << exact(mu) << '\n'
      << "fb_docs = " << fb_docs << '\n'
      << "num_expansion_terms = " << num_expansion_terms << '\n'
      << "weights = " << exact(weights.original) << ',' << exact(weights.topic)
      << ',' << exact(weights.expansion) << '\n'
      << "topic_window = " << windows.topic << '\n'
      << "notopic_window = " << windows.no_topic << '\n'
      << "top_k = " << top_k << '\n'
      << "lca_delta = " << exact(lca_delta) << '\n';
  auto path_line = [&](const char *key, const std::filesystem::path &p) {
    if (!p.empty()) text << key << " = " << p.string() << '\n';
  };
  path_line("kb", kb);
  path_line("index", index);
  path_line("queries", queries);
  path_line("qrels", qrels);
  path_line("out", out);
  return text.str();
}

}  // namespace weakq
