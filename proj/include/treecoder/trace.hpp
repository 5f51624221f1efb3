// Copyright 2026 The Treecoder Authors.
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

#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace treecoder {

// Human-readable derivation log, one line per decision.
class Trace {
 public:
  void Add(std::string line) { lines_.push_back(std::move(line)); }

  const std::vector<std::string> &lines() const { return lines_; }

  bool Contains(std::string_view needle) const {
    for (const auto &line : lines_) {
      if (line.find(needle) != std::string::npos) return true;
    }
    return false;
  }

  std::string ToString() const {
    std::string out;
    for (const auto &line : lines_) {
      out += line;
      out += '\n';
    }
    return out;
  }

 private:
  std::vector<std::string> lines_;
};

}  // namespace treecoder
