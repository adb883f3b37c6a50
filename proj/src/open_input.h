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

#ifndef WEAKQ_SRC_OPEN_INPUT_H_
#define WEAKQ_SRC_OPEN_INPUT_H_

#include <filesystem>
#include <fstream>
#include <string>

#include "weakq/errors.h"

namespace weakq {

// ifstream happily opens a directory on Linux, so check for that too.
inline std::ifstream open_input(const std::filesystem::path &path, const std::string &what,
                                std::ios::openmode mode = std::ios::in) {
  std::error_code ec;
  if (std::filesystem::is_directory(path, ec)) {
    throw IoError("cannot open " + what + " '" + path.string() + "': is a directory");
  }
  std::ifstream in(path, mode);
  if (!in) throw IoError("cannot open " + what + " '" + path.string() + "'");
  return in;
}

}  // namespace weakq

#endif  // WEAKQ_SRC_OPEN_INPUT_H_
