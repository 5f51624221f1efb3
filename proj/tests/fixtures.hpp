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

// Shared fixtures: the sample dictionaries under data/ and the bracketed
// trees used across test files.

#pragma once

#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "treecoder/treecoder.hpp"

namespace treecoder::testing {

inline std::string DataPath(const std::string &name) {
  return std::string(TREECODER_DATA_DIR) + "/" + name;
}

inline DictionaryPaths SamplePaths() {
  return {DataPath("actors.txt"), DataPath("agents.txt"),
          DataPath("verbs.txt"), DataPath("discard.txt"),
          DataPath("cameo_map.tsv")};
}

inline const DictionaryStore &SampleStore() {
  static const DictionaryStore store = DictionaryStore::Load(SamplePaths());
  return store;
}

inline std::string ReadAll(const std::string &path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

inline ParseTree Tree(const std::string &text,
                      const std::string &date = "20140101") {
  return ParseTree::Parse(text, "t", Date::FromString(date));
}

// First node of the given kind whose covered text is exactly `text`.
inline NodeId FindNode(const ParseTree &tree, NodeKind kind,
                       const std::string &text) {
  for (NodeId id = 0; id < tree.size(); ++id) {
    if (tree.kind(id) == kind && tree.Text(id) == text) return id;
  }
  throw std::out_of_range("no node covering '" + text + "'");
}

// "Israel said a mortar bomb was launched at it from the Gaza strip on
// Tuesday", bracketed as in the worked example.
inline constexpr const char *kGoldenTree =
    "(S (NP (NNP Israel)) (VP (VBD said) (SBAR (S (NP (DT a) (JJ mortar) "
    "(NN bomb)) (VP (VBD was) (VP (VBN launched) (PP (IN at) (NP (PRP it))) "
    "(PP (IN from) (NP (NP (DT the) (NNP Gaza) (NNP strip)) (PP (IN on) "
    "(NP (NNP Tuesday)))))))))) (. .))";

inline constexpr const char *kActiveMonument =
    "(S (NP (NN protesters)) (VP (VBD destroyed) (NP (DT the) "
    "(NN monument))) (. .))";

inline constexpr const char *kPassiveMonument =
    "(S (NP (DT the) (NN monument)) (VP (VBD was) (VP (VBN destroyed) "
    "(PP (IN by) (NP (NN protesters))))) (. .))";

inline constexpr const char *kReflexive =
    "(S (NP (NNP A)) (VP (VBD said) (SBAR (S (NP (NNP B)) (VP (VBD hurt) "
    "(NP (PRP itself)))))) (. .))";

inline constexpr const char *kNonReflexive =
    "(S (NP (NNP A)) (VP (VBD said) (SBAR (S (NP (NNP B)) (VP (VBD hurt) "
    "(NP (PRP it)))))) (. .))";

inline std::string ObamaTree(const std::string &pronoun) {
  return "(S (NP (NNP Obama)) (VP (VBD told) (NP (NNP Hillary)) (SBAR "
         "(IN that) (S (NP (PRP " +
         pronoun +
         ")) (VP (MD should) (VP (VB run) (PP (IN for) (NP (NNP President))) "
         "(ADVP (RB again))))))) (. .))";
}

inline constexpr const char *kAmericanTroops =
    "(NP (NP (JJ American) (NNS troops)) (PP (IN in) (NP (NNP Iraq))))";
inline constexpr const char *kTroopsInIraq =
    "(NP (NP (NNS troops)) (PP (IN in) (NP (NNP Iraq))))";

// Random phrase-structure trees for property tests.
class TreeGenerator {
 public:
  explicit TreeGenerator(uint32_t seed) : rng_(seed) {}

  std::string Generate(int max_depth = 6, int max_branching = 4) {
    return Phrase(max_depth, max_branching, true);
  }

 private:
  std::string Phrase(int depth, int branching, bool root) {
    static const char *kPhrases[] = {"NP", "VP", "PP", "S", "SBAR", "ADJP"};
    std::string label = root ? "S" : kPhrases[Pick(std::size(kPhrases))];
    int n = 1 + static_cast<int>(Pick(branching));
    std::string out = "(" + label;
    for (int i = 0; i < n; ++i) {
      out += ' ';
      if (depth <= 1 || Pick(3) == 0) {
        out += Word();
      } else {
        out += Phrase(depth - 1, branching, false);
      }
    }
    return out + ")";
  }

  std::string Word() {
    static const char *kTags[] = {"NN", "NNS", "NNP", "VB",  "VBD", "VBN",
                                  "IN", "TO",  "DT",  "JJ",  "PRP", "RB"};
    static const char *kWords[] = {"alpha", "beta", "gamma", "delta", "eps"};
    return std::string("(") + kTags[Pick(std::size(kTags))] + " " +
           kWords[Pick(std::size(kWords))] + ")";
  }

  size_t Pick(size_t n) {
    return std::uniform_int_distribution<size_t>(0, n - 1)(rng_);
  }

  std::mt19937 rng_;
};

}  // namespace treecoder::testing
