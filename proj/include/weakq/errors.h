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

#ifndef WEAKQ_ERRORS_H_
#define WEAKQ_ERRORS_H_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace weakq {

// Base class for all errors raised by the library. kind() is a short,
// stable identifier used by the CLI in its one-line error output.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
  virtual const char *kind() const noexcept { return "error"; }
};

// Malformed input file. line() is 1-based, 0 when not line oriented.
class LoadError : public Error {
 public:
  LoadError(const std::string &source, std::size_t line,
            const std::string &message)
      : Error(source + (line > 0 ? ":" + std::to_string(line) : "") + ": " +
              message),
        line_(line) {}
  std::size_t line() const { return line_; }
  const char *kind() const noexcept override { return "load"; }

 private:
  std::size_t line_;
};

class IoError : public Error {
 public:
  using Error::Error;
  const char *kind() const noexcept override { return "io"; }
};

class NotFoundError : public Error {
 public:
  using Error::Error;
  const char *kind() const noexcept override { return "not-found"; }
};

class InvalidInputError : public Error {
 public:
  using Error::Error;
  const char *kind() const noexcept override { return "invalid-input"; }
};

// An unordered window asked to hold more distinct terms than its width.
class InvalidWindowError : public Error {
 public:
  using Error::Error;
  const char *kind() const noexcept override { return "invalid-window"; }
};

class DegenerateSampleError : public Error {
 public:
  using Error::Error;
  const char *kind() const noexcept override { return "degenerate-sample"; }
};

// Collects non-fatal warnings (degenerate inputs, skipped records). Passing
// a null sink is always allowed.
struct Diagnostics {
  std::vector<std::string> messages;

  void warn(std::string message) { messages.push_back(std::move(message)); }
  bool empty() const { return messages.empty(); }
};

inline void warn(Diagnostics *sink, std::string message) {
  if (sink != nullptr) sink->warn(std::move(message));
}

}  // namespace weakq

#endif  // WEAKQ_ERRORS_H_
