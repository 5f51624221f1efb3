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

// Penn Treebank bracketed parses as an arena of linked phrase nodes, plus the
// structural queries the coder needs: phrase heads, the enclosing clause, and
// the subject specifier of a verb phrase.

#pragma once

#include <cctype>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "treecoder/date.hpp"

namespace treecoder {

using NodeId = std::uint32_t;

enum class NodeKind { kS, kNP, kVP, kPP, kWord, kOther };

inline std::string_view KindName(NodeKind kind) {
  switch (kind) {
    case NodeKind::kS: return "S";
    case NodeKind::kNP: return "NP";
    case NodeKind::kVP: return "VP";
    case NodeKind::kPP: return "PP";
    case NodeKind::kWord: return "Word";
    case NodeKind::kOther: return "Other";
  }
  return "Other";
}

enum class TreeErrorKind {
  kUnbalancedParens,
  kEmptyTree,
  kMultipleRoots,
  kBadPreterminal,
  kMalformedNode,
};

class TreeError : public std::runtime_error {
 public:
  TreeError(TreeErrorKind kind, size_t position, const std::string &what)
      : std::runtime_error(what + " at offset " + std::to_string(position)),
        kind_(kind),
        position_(position) {}

  TreeErrorKind kind() const { return kind_; }
  size_t position() const { return position_; }

 private:
  TreeErrorKind kind_;
  size_t position_;
};

// Strips functional tags and coindexing ("NP-SBJ-1" -> "NP"). Labels that
// start with a dash are bracket tokens such as -LRB- and are kept whole.
inline std::string_view BareCategory(std::string_view label) {
  if (label.empty() || label.front() == '-') return label;
  size_t cut = label.find_first_of("-=");
  return cut == std::string_view::npos ? label : label.substr(0, cut);
}

// Penn Treebank II part-of-speech tags, with the OntoNotes additions CoreNLP
// emits.
inline bool IsPosTag(std::string_view tag) {
  static constexpr std::string_view kTags[] = {
      "CC",   "CD",   "DT",    "EX",    "FW",  "IN",     "JJ",     "JJR",
      "JJS",  "LS",   "MD",    "NN",    "NNS", "NNP",    "NNPS",   "PDT",
      "POS",  "PRP",  "PRP$",  "RB",    "RBR", "RBS",    "RP",     "SYM",
      "TO",   "UH",   "VB",    "VBD",   "VBG", "VBN",    "VBP",    "VBZ",
      "WDT",  "WP",   "WP$",   "WRB",   ",",   ".",      ":",      "``",
      "''",   "-LRB-", "-RRB-", "-LCB-", "#",   "$",      "-NONE-", "NFP",
      "ADD",  "AFX",  "HYPH",  "-RCB-"};
  for (std::string_view t : kTags) {
    if (t == tag) return true;
  }
  return false;
}

inline NodeKind ClassifyLabel(std::string_view label) {
  std::string_view category = BareCategory(label);
  if (IsPosTag(category)) return NodeKind::kWord;
  if (category.starts_with("NP")) return NodeKind::kNP;
  if (category.starts_with("VP")) return NodeKind::kVP;
  if (category.starts_with("PP")) return NodeKind::kPP;
  if (category.starts_with("S")) return NodeKind::kS;
  return NodeKind::kOther;
}

inline bool IsNounTag(std::string_view tag) { return tag.starts_with("N"); }
inline bool IsVerbTag(std::string_view tag) { return tag.starts_with("V"); }
inline bool IsPrepTag(std::string_view tag) {
  return tag == "IN" || tag == "TO";
}
inline bool IsPronounTag(std::string_view tag) {
  return tag == "PRP" || tag == "PRP$";
}

inline std::string ToUpperAscii(std::string_view text) {
  std::string out(text);
  for (char &c : out) {
    c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
  }
  return out;
}

struct ParseNode {
  std::string label;     // verbatim, including functional tags
  std::string category;  // bare category used for classification
  NodeKind kind = NodeKind::kOther;
  std::string token;     // Word nodes only, uppercase
  std::vector<NodeId> children;
  std::optional<NodeId> parent;
  uint32_t index = 0;        // position among siblings
  uint32_t first_token = 0;  // leaf span [first_token, end_token)
  uint32_t end_token = 0;

  bool is_word() const { return kind == NodeKind::kWord; }
};

class ParseTree {
 public:
  // Parses one bracketed tree. Tokens are uppercased; labels are kept.
  static ParseTree Parse(std::string_view text, std::string sentence_id,
                         Date date) {
    ParseTree tree;
    tree.sentence_id_ = std::move(sentence_id);
    tree.date_ = date;
    tree.Build(text);
    return tree;
  }

  const ParseNode &node(NodeId id) const { return nodes_[id]; }
  NodeId root() const { return root_; }
  size_t size() const { return nodes_.size(); }
  const std::string &sentence_id() const { return sentence_id_; }
  Date date() const { return date_; }

  NodeKind kind(NodeId id) const { return nodes_[id].kind; }
  const std::vector<NodeId> &children(NodeId id) const {
    return nodes_[id].children;
  }
  std::optional<NodeId> parent(NodeId id) const { return nodes_[id].parent; }

  // Word nodes in left-to-right order.
  const std::vector<NodeId> &leaves() const { return leaves_; }

  std::vector<std::string> Tokens() const {
    std::vector<std::string> tokens;
    tokens.reserve(leaves_.size());
    for (NodeId leaf : leaves_) tokens.push_back(nodes_[leaf].token);
    return tokens;
  }

  // Space-joined tokens under a node.
  std::string Text(NodeId id) const {
    std::string text;
    const ParseNode &n = nodes_[id];
    for (uint32_t i = n.first_token; i < n.end_token; ++i) {
      if (!text.empty()) text += ' ';
      text += nodes_[leaves_[i]].token;
    }
    return text;
  }

  std::string ToSexpr(NodeId id) const {
    std::string out;
    AppendSexpr(id, &out);
    return out;
  }
  std::string ToSexpr() const { return ToSexpr(root_); }

  bool IsAncestorOrSelf(NodeId ancestor, NodeId id) const {
    for (std::optional<NodeId> n = id; n; n = nodes_[*n].parent) {
      if (*n == ancestor) return true;
    }
    return false;
  }

  // Lowest word reachable through an unbroken chain of same-kind phrases,
  // taking the rightmost viable branch. Nouns head NPs, verbs head VPs and
  // prepositions head PPs.
  std::optional<NodeId> FindHead(NodeId id) const {
    const ParseNode &n = nodes_[id];
    if (n.is_word()) return id;
    if (n.kind != NodeKind::kNP && n.kind != NodeKind::kVP &&
        n.kind != NodeKind::kPP) {
      return std::nullopt;
    }
    return SearchHead(id, n.kind);
  }

  // Nearest ancestor-or-self clause node (S, SBAR, SINV, ...).
  std::optional<NodeId> ClauseOf(NodeId id) const {
    for (std::optional<NodeId> n = id; n; n = nodes_[*n].parent) {
      if (nodes_[*n].kind == NodeKind::kS) return n;
    }
    return std::nullopt;
  }

  // Top of the verb chain a VP belongs to: climbs while the parent is a VP.
  NodeId TopOfVerbChain(NodeId vp) const {
    NodeId top = vp;
    while (nodes_[top].parent && nodes_[*nodes_[top].parent].kind ==
                                     NodeKind::kVP) {
      top = *nodes_[top].parent;
    }
    return top;
  }

  // The NP specifier of a verb phrase: the NP sibling preceding the highest
  // VP of the verb chain, directly under a clause node.
  std::optional<NodeId> SubjectOf(NodeId vp) const {
    if (nodes_[vp].kind != NodeKind::kVP) return std::nullopt;
    NodeId top = TopOfVerbChain(vp);
    std::optional<NodeId> clause = nodes_[top].parent;
    if (!clause || nodes_[*clause].kind != NodeKind::kS) return std::nullopt;
    std::optional<NodeId> subject;
    for (NodeId child : nodes_[*clause].children) {
      if (nodes_[child].index >= nodes_[top].index) break;
      if (nodes_[child].kind == NodeKind::kNP) subject = child;
    }
    return subject;
  }

  // First word child satisfying a tag predicate.
  template <typename Pred>
  std::optional<NodeId> FirstWordChild(NodeId id, Pred pred) const {
    for (NodeId child : nodes_[id].children) {
      const ParseNode &c = nodes_[child];
      if (c.is_word() && pred(c.category)) return child;
    }
    return std::nullopt;
  }

  // The verb a VP is about: its first verb-tagged word child.
  std::optional<NodeId> VerbOf(NodeId vp) const {
    return FirstWordChild(vp, IsVerbTag);
  }

  // The preposition token of a PP, or empty when the PP has none.
  std::string PrepositionOf(NodeId pp) const {
    auto word = FirstWordChild(pp, IsPrepTag);
    if (!word) word = FirstWordChild(pp, [](std::string_view) { return true; });
    return word ? nodes_[*word].token : std::string();
  }

 private:
  ParseTree() = default;

  std::optional<NodeId> SearchHead(NodeId id, NodeKind kind) const {
    const auto &kids = nodes_[id].children;
    for (auto it = kids.rbegin(); it != kids.rend(); ++it) {
      const ParseNode &c = nodes_[*it];
      if (c.is_word()) {
        bool match = (kind == NodeKind::kNP && IsNounTag(c.category)) ||
                     (kind == NodeKind::kVP && IsVerbTag(c.category)) ||
                     (kind == NodeKind::kPP && IsPrepTag(c.category));
        if (match) return *it;
      } else if (c.kind == kind) {
        if (auto head = SearchHead(*it, kind)) return head;
      }
    }
    return std::nullopt;
  }

  void AppendSexpr(NodeId id, std::string *out) const {
    const ParseNode &n = nodes_[id];
    *out += '(';
    *out += n.label;
    if (n.is_word()) {
      *out += ' ';
      *out += n.token;
    } else {
      for (NodeId child : n.children) {
        *out += ' ';
        AppendSexpr(child, out);
      }
    }
    *out += ')';
  }

  struct Lexeme {
    enum Type { kOpen, kClose, kAtom } type;
    std::string_view text;
    size_t position;
  };

  static std::vector<Lexeme> Lex(std::string_view text) {
    std::vector<Lexeme> lexemes;
    size_t i = 0;
    while (i < text.size()) {
      char c = text[i];
      if (std::isspace(static_cast<unsigned char>(c))) {
        ++i;
      } else if (c == '(') {
        lexemes.push_back({Lexeme::kOpen, text.substr(i, 1), i});
        ++i;
      } else if (c == ')') {
        lexemes.push_back({Lexeme::kClose, text.substr(i, 1), i});
        ++i;
      } else {
        size_t start = i;
        while (i < text.size() && text[i] != '(' && text[i] != ')' &&
               !std::isspace(static_cast<unsigned char>(text[i]))) {
          ++i;
        }
        lexemes.push_back({Lexeme::kAtom, text.substr(start, i - start),
                           start});
      }
    }
    return lexemes;
  }

  NodeId NewNode(std::string_view label, std::optional<NodeId> parent) {
    ParseNode n;
    n.label = std::string(label);
    n.category = std::string(BareCategory(label));
    n.kind = ClassifyLabel(label);
    n.parent = parent;
    if (parent) {
      n.index = static_cast<uint32_t>(nodes_[*parent].children.size());
    }
    nodes_.push_back(std::move(n));
    NodeId id = static_cast<NodeId>(nodes_.size() - 1);
    if (parent) nodes_[*parent].children.push_back(id);
    return id;
  }

  void Build(std::string_view text) {
    std::vector<Lexeme> lexemes = Lex(text);
    if (lexemes.empty()) {
      throw TreeError(TreeErrorKind::kEmptyTree, 0, "empty tree");
    }

    // Open nodes; a node is created when its label (or lack of one) is seen.
    std::vector<NodeId> stack;
    std::vector<size_t> open_positions;
    bool have_root = false;
    size_t i = 0;
    while (i < lexemes.size()) {
      const Lexeme &lex = lexemes[i];
      if (lex.type == Lexeme::kOpen) {
        if (stack.empty() && have_root) {
          throw TreeError(TreeErrorKind::kMultipleRoots, lex.position,
                          "more than one top-level bracket");
        }
        std::string_view label;
        ++i;
        if (i < lexemes.size() && lexemes[i].type == Lexeme::kAtom) {
          label = lexemes[i].text;
          ++i;
        }
        std::optional<NodeId> parent;
        if (!stack.empty()) {
          parent = stack.back();
          if (nodes_[*parent].is_word()) {
            throw TreeError(TreeErrorKind::kMalformedNode, lex.position,
                            "word node '" + nodes_[*parent].label +
                                "' has a bracketed child");
          }
        }
        NodeId id = NewNode(label, parent);
        if (!parent) {
          root_ = id;
          have_root = true;
        }
        stack.push_back(id);
        open_positions.push_back(lex.position);
        // A single atom followed by ')' makes this node a preterminal.
        if (i + 1 < lexemes.size() && lexemes[i].type == Lexeme::kAtom &&
            lexemes[i + 1].type == Lexeme::kClose) {
          ParseNode &n = nodes_[id];
          if (n.kind != NodeKind::kWord) {
            throw TreeError(TreeErrorKind::kBadPreterminal,
                            open_positions.back(),
                            "label '" + n.label + "' is not a POS tag");
          }
          n.token = ToUpperAscii(lexemes[i].text);
          ++i;
        }
      } else if (lex.type == Lexeme::kClose) {
        if (stack.empty()) {
          throw TreeError(TreeErrorKind::kUnbalancedParens, lex.position,
                          "unexpected ')'");
        }
        const ParseNode &n = nodes_[stack.back()];
        if (n.is_word() && n.token.empty()) {
          throw TreeError(TreeErrorKind::kMalformedNode,
                          open_positions.back(),
                          "word node '" + n.label + "' has no token");
        }
        if (!n.is_word() && n.children.empty()) {
          throw TreeError(TreeErrorKind::kMalformedNode,
                          open_positions.back(),
                          "phrase '" + n.label + "' has no children");
        }
        stack.pop_back();
        open_positions.pop_back();
        ++i;
      } else {
        if (stack.empty()) {
          throw TreeError(TreeErrorKind::kMalformedNode, lex.position,
                          "token outside brackets");
        }
        throw TreeError(TreeErrorKind::kMalformedNode, lex.position,
                        "stray token '" + std::string(lex.text) + "'");
      }
    }
    if (!stack.empty()) {
      throw TreeError(TreeErrorKind::kUnbalancedParens, open_positions.back(),
                      "unclosed '('");
    }
    if (!have_root) {
      throw TreeError(TreeErrorKind::kEmptyTree, 0, "empty tree");
    }
    AssignSpans(root_);
  }

  void AssignSpans(NodeId root) {
    // Iterative post-order so deep trees do not exhaust the stack.
    std::vector<std::pair<NodeId, bool>> work = {{root, false}};
    while (!work.empty()) {
      auto [id, visited] = work.back();
      work.pop_back();
      ParseNode &n = nodes_[id];
      if (n.is_word()) {
        n.first_token = static_cast<uint32_t>(leaves_.size());
        n.end_token = n.first_token + 1;
        leaves_.push_back(id);
      } else if (!visited) {
        work.push_back({id, true});
        for (auto it = n.children.rbegin(); it != n.children.rend(); ++it) {
          work.push_back({*it, false});
        }
      } else {
        n.first_token = nodes_[n.children.front()].first_token;
        n.end_token = nodes_[n.children.back()].end_token;
      }
    }
  }

  std::vector<ParseNode> nodes_;
  std::vector<NodeId> leaves_;
  NodeId root_ = 0;
  std::string sentence_id_;
  Date date_;
};

}  // namespace treecoder
