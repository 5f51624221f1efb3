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

#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace treecoder {

// Token-sequence trie mapping phrases to values.
template <typename Value>
class PhraseTrie {
 public:
  struct Match {
    size_t start = 0;
    size_t length = 0;
    const Value *value = nullptr;
  };

  // Inserts `value` only if the phrase is new. Returns the stored value and
  // whether it was inserted.
  std::pair<const Value *, bool> Insert(std::span<const std::string> phrase,
                                        Value value) {
    Node *node = &root_;
    for (const auto &token : phrase) node = &node->children[token];
    if (node->value) return {&*node->value, false};
    node->value = std::move(value);
    ++size_;
    return {&*node->value, true};
  }

  const Value *Find(std::span<const std::string> phrase) const {
    const Node *node = &root_;
    for (const auto &token : phrase) {
      auto it = node->children.find(token);
      if (it == node->children.end()) return nullptr;
      node = &it->second;
    }
    return node->value ? &*node->value : nullptr;
  }

  // Longest phrase that is a prefix of tokens[start...].
  std::optional<Match> LongestAt(std::span<const std::string> tokens,
                                 size_t start) const {
    std::optional<Match> best;
    const Node *node = &root_;
    for (size_t i = start; i < tokens.size(); ++i) {
      auto it = node->children.find(tokens[i]);
      if (it == node->children.end()) break;
      node = &it->second;
      if (node->value) best = Match{start, i - start + 1, &*node->value};
    }
    return best;
  }

  // Leftmost start with any match, longest match there.
  std::optional<Match> FirstLongest(std::span<const std::string> tokens) const {
    for (size_t start = 0; start < tokens.size(); ++start) {
      if (auto match = LongestAt(tokens, start)) return match;
    }
    return std::nullopt;
  }

  size_t size() const { return size_; }

 private:
  struct Node {
    std::map<std::string, Node> children;
    std::optional<Value> value;
  };

  Node root_;
  size_t size_ = 0;
};

}  // namespace treecoder
