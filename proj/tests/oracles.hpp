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

// Brute-force reference implementations used by property tests.

#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "treecoder/tree.hpp"

namespace treecoder::testing {

// Every path from `id` to a word of the matching class through same-kind
// phrases, as sequences of child indices.
inline void EnumeratePaths(const ParseTree &tree, NodeId id, NodeKind kind,
                    std::vector<uint32_t> *prefix,
                    std::vector<std::pair<std::vector<uint32_t>, NodeId>> *out) {
  for (NodeId child : tree.children(id)) {
    const ParseNode &c = tree.node(child);
    prefix->push_back(c.index);
    if (c.is_word()) {
      const std::string &tag = c.category;
      bool ok = (kind == NodeKind::kNP && tag[0] == 'N') ||
                (kind == NodeKind::kVP && tag[0] == 'V') ||
                (kind == NodeKind::kPP && (tag == "IN" || tag == "TO"));
      if (ok) out->emplace_back(*prefix, child);
    } else if (c.kind == kind) {
      EnumeratePaths(tree, child, kind, prefix, out);
    }
    prefix->pop_back();
  }
}

// Brute force: the lexicographically greatest index path is the rightmost
// path at every branch.
inline std::optional<NodeId> OracleHead(const ParseTree &tree, NodeId id) {
  NodeKind kind = tree.kind(id);
  if (kind == NodeKind::kWord) return id;
  if (kind != NodeKind::kNP && kind != NodeKind::kVP &&
      kind != NodeKind::kPP) {
    return std::nullopt;
  }
  std::vector<uint32_t> prefix;
  std::vector<std::pair<std::vector<uint32_t>, NodeId>> paths;
  EnumeratePaths(tree, id, kind, &prefix, &paths);
  if (paths.empty()) return std::nullopt;
  auto best = paths.front();
  for (const auto &path : paths) {
    if (path.first > best.first) best = path;
  }
  return best.second;
}

}  // namespace treecoder::testing
