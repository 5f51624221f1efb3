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

// Verb dictionary rules: phrase patterns around a verb, and postfix
// transformations over nested (source target verb) events.
//
// Pattern syntax, one verb marker per pattern:
//
//   protesters * monument [145]
//   * {nuclear weapon} (against israel) [138]
//
// Unmarked words are phrase heads, {braced words} are one noun phrase whose
// last word is the head, (parenthesised words) are a preposition followed by
// its noun, and &NAME stands for any member of a synset.
//
// Transformation syntax, postfix with single lowercase letters as variables
// and "." matching anything:
//
//   a (b . ATTACK) SAY = a b 112

#pragma once

#include <cctype>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "treecoder/code_algebra.hpp"
#include "treecoder/tree.hpp"

namespace treecoder {

enum class RuleErrorKind {
  kNoVerbMarker,
  kMultipleVerbMarkers,
  kNestedBraces,
  kMalformedGroup,
  kEmptyPattern,
  kBadCode,
  kMalformedPostfix,
  kUnboundVariable,
};

class RuleError : public std::runtime_error {
 public:
  RuleError(RuleErrorKind kind, const std::string &what)
      : std::runtime_error(what), kind_(kind) {}
  RuleErrorKind kind() const { return kind_; }

 private:
  RuleErrorKind kind_;
};

struct NounSpec {
  std::string head;
  std::vector<std::string> extra;  // words before the head, in order

  size_t size() const { return extra.size() + 1; }
  friend bool operator==(const NounSpec &, const NounSpec &) = default;
};

struct PrepSpec {
  std::string prep;
  NounSpec noun;

  friend bool operator==(const PrepSpec &, const PrepSpec &) = default;
};

struct VerbPattern {
  std::vector<NounSpec> pre_nouns;
  std::vector<PrepSpec> pre_preps;
  std::vector<NounSpec> post_nouns;
  std::vector<PrepSpec> post_preps;
  InternalCode code;
  std::string source_text;

  int PartCount() const {
    return !pre_nouns.empty() + !pre_preps.empty() + !post_nouns.empty() +
           !post_preps.empty();
  }

  int TokenCount() const {
    int count = 0;
    for (const auto &n : pre_nouns) count += static_cast<int>(n.size());
    for (const auto &n : post_nouns) count += static_cast<int>(n.size());
    for (const auto &p : pre_preps) count += 1 + static_cast<int>(p.noun.size());
    for (const auto &p : post_preps) {
      count += 1 + static_cast<int>(p.noun.size());
    }
    return count;
  }

  // Structural equality; the original line is not compared.
  friend bool operator==(const VerbPattern &a, const VerbPattern &b) {
    return a.pre_nouns == b.pre_nouns && a.pre_preps == b.pre_preps &&
           a.post_nouns == b.post_nouns && a.post_preps == b.post_preps &&
           a.code == b.code;
  }
};

namespace detail {

inline std::string_view Trim(std::string_view text) {
  size_t begin = 0;
  while (begin < text.size() &&
         std::isspace(static_cast<unsigned char>(text[begin]))) {
    ++begin;
  }
  size_t end = text.size();
  while (end > begin && std::isspace(static_cast<unsigned char>(text[end - 1]))) {
    --end;
  }
  return text.substr(begin, end - begin);
}

inline std::string_view StripComment(std::string_view line) {
  size_t hash = line.find('#');
  return hash == std::string_view::npos ? line : line.substr(0, hash);
}

// Splits on whitespace, keeping each of `singles` as its own token.
inline std::vector<std::string> Lex(std::string_view text,
                                    std::string_view singles) {
  std::vector<std::string> tokens;
  std::string current;
  auto flush = [&] {
    if (!current.empty()) tokens.push_back(std::move(current));
    current.clear();
  };
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      flush();
    } else if (singles.find(c) != std::string_view::npos) {
      flush();
      tokens.emplace_back(1, c);
    } else {
      current += c;
    }
  }
  flush();
  return tokens;
}

inline std::string FormatNoun(const NounSpec &noun) {
  if (noun.extra.empty()) return noun.head;
  std::string out = "{";
  for (const auto &word : noun.extra) out += word + " ";
  return out + noun.head + "}";
}

}  // namespace detail

// Compiles one pattern line (without the leading "- " of the verbs file).
// Trailing "# comments" are ignored.
inline VerbPattern CompilePattern(std::string_view line, const CodeMap &codes) {
  VerbPattern pattern;
  pattern.source_text = std::string(detail::Trim(line));
  std::string_view body = detail::Trim(detail::StripComment(line));

  size_t open = body.rfind('[');
  size_t close = body.rfind(']');
  if (open == std::string_view::npos || close == std::string_view::npos ||
      close < open || !detail::Trim(body.substr(close + 1)).empty()) {
    throw RuleError(RuleErrorKind::kBadCode,
                    "pattern '" + pattern.source_text +
                        "' must end with a [CODE]");
  }
  std::string cameo =
      std::string(detail::Trim(body.substr(open + 1, close - open - 1)));
  try {
    pattern.code = codes.ToInternal(cameo);
  } catch (const CodeError &e) {
    throw RuleError(RuleErrorKind::kBadCode,
                    "pattern '" + pattern.source_text + "': " + e.what());
  }

  std::vector<std::string> tokens =
      detail::Lex(body.substr(0, open), "{}()*");
  bool after_verb = false;
  int verb_markers = 0;

  auto fail = [&](RuleErrorKind kind, const std::string &why) {
    throw RuleError(kind, "pattern '" + pattern.source_text + "': " + why);
  };
  auto read_braces = [&](size_t *i) {
    // tokens[*i] is "{"; consumes through the matching "}".
    std::vector<std::string> words;
    for (++*i; *i < tokens.size(); ++*i) {
      const std::string &t = tokens[*i];
      if (t == "}") {
        if (words.empty()) fail(RuleErrorKind::kMalformedGroup, "empty {}");
        NounSpec noun;
        noun.head = words.back();
        words.pop_back();
        noun.extra = std::move(words);
        return noun;
      }
      if (t == "{") fail(RuleErrorKind::kNestedBraces, "nested braces");
      if (t == "(" || t == ")" || t == "*") {
        fail(RuleErrorKind::kMalformedGroup, "'" + t + "' inside braces");
      }
      words.push_back(ToUpperAscii(t));
    }
    fail(RuleErrorKind::kMalformedGroup, "unclosed '{'");
    return NounSpec{};
  };

  for (size_t i = 0; i < tokens.size(); ++i) {
    const std::string &t = tokens[i];
    if (t == "*") {
      if (++verb_markers > 1) {
        fail(RuleErrorKind::kMultipleVerbMarkers, "more than one '*'");
      }
      after_verb = true;
    } else if (t == "{") {
      NounSpec noun = read_braces(&i);
      (after_verb ? pattern.post_nouns : pattern.pre_nouns).push_back(noun);
    } else if (t == "(") {
      PrepSpec prep;
      std::vector<std::string> words;
      bool closed = false;
      for (++i; i < tokens.size(); ++i) {
        const std::string &g = tokens[i];
        if (g == ")") {
          closed = true;
          break;
        }
        if (g == "(" || g == "*" || g == "}") {
          fail(RuleErrorKind::kMalformedGroup,
               "'" + g + "' inside a prepositional group");
        }
        if (g == "{") {
          if (prep.prep.empty()) {
            fail(RuleErrorKind::kMalformedGroup,
                 "prepositional group must start with a preposition");
          }
          NounSpec braced = read_braces(&i);
          words.insert(words.end(), braced.extra.begin(), braced.extra.end());
          words.push_back(braced.head);
        } else if (prep.prep.empty()) {
          prep.prep = ToUpperAscii(g);
        } else {
          words.push_back(ToUpperAscii(g));
        }
      }
      if (!closed) fail(RuleErrorKind::kMalformedGroup, "unclosed '('");
      if (words.empty()) {
        fail(RuleErrorKind::kMalformedGroup,
             "prepositional group needs a noun after the preposition");
      }
      prep.noun.head = words.back();
      words.pop_back();
      prep.noun.extra = std::move(words);
      (after_verb ? pattern.post_preps : pattern.pre_preps).push_back(prep);
    } else if (t == "}" || t == ")") {
      fail(RuleErrorKind::kMalformedGroup, "unmatched '" + t + "'");
    } else {
      NounSpec noun{ToUpperAscii(t), {}};
      (after_verb ? pattern.post_nouns : pattern.pre_nouns).push_back(noun);
    }
  }
  if (verb_markers == 0) fail(RuleErrorKind::kNoVerbMarker, "no '*' marker");
  if (pattern.PartCount() == 0) {
    fail(RuleErrorKind::kEmptyPattern, "pattern has no parts besides the verb");
  }
  return pattern;
}

// Canonical text for a pattern; CompilePattern reads it back unchanged.
inline std::string SerializePattern(const VerbPattern &pattern,
                                    const CodeMap &codes) {
  std::vector<std::string> parts;
  for (const auto &n : pattern.pre_nouns) parts.push_back(detail::FormatNoun(n));
  for (const auto &p : pattern.pre_preps) {
    parts.push_back("(" + p.prep + " " + detail::FormatNoun(p.noun) + ")");
  }
  parts.push_back("*");
  for (const auto &n : pattern.post_nouns) {
    parts.push_back(detail::FormatNoun(n));
  }
  for (const auto &p : pattern.post_preps) {
    parts.push_back("(" + p.prep + " " + detail::FormatNoun(p.noun) + ")");
  }
  parts.push_back("[" + codes.ToCameo(pattern.code) + "]");
  std::string out;
  for (const auto &part : parts) {
    if (!out.empty()) out += ' ';
    out += part;
  }
  return out;
}

// A verb position in a transformation: a synset, a verb lemma, a CAMEO code
// or the "." wildcard. Non-wildcard symbols are resolved by the dictionary
// store once all synsets and verbs are known.
struct VerbSymbol {
  enum class Kind { kUnresolved, kAny, kSynset, kLemma, kCode };

  std::string text;
  Kind kind = Kind::kUnresolved;
  std::set<std::string> lemmas;  // kSynset, kLemma
  InternalCode code;             // kCode
};

struct TransformTerm {
  enum class Kind { kVariable, kWildcard, kTriple };

  Kind kind = Kind::kWildcard;
  char variable = 0;
  std::vector<TransformTerm> args;  // kTriple: {source, target}
  VerbSymbol verb;                  // kTriple only
};

struct TransformRule {
  TransformTerm pattern;
  char result_source = 0;
  char result_target = 0;
  InternalCode code;
  std::string source_text;
};

namespace detail {

inline bool IsVariableToken(std::string_view t) {
  return t.size() == 1 && t[0] >= 'a' && t[0] <= 'z';
}

class PostfixParser {
 public:
  PostfixParser(std::vector<std::string> tokens, std::string line)
      : tokens_(std::move(tokens)), line_(std::move(line)) {}

  TransformTerm ParseTop() {
    // Accepts both "a (b c X) Y" and "(a (b c X) Y)".
    TransformTerm top;
    if (tokens_.size() >= 2 && tokens_.front() == "(" &&
        MatchingClose(0) == tokens_.size() - 1) {
      pos_ = 1;
      top = ParseTripleBody(tokens_.size() - 1);
      pos_ = tokens_.size();
    } else {
      top = ParseTripleBody(tokens_.size());
    }
    return top;
  }

  [[noreturn]] void Fail(const std::string &why) const {
    throw RuleError(RuleErrorKind::kMalformedPostfix,
                    "transformation '" + line_ + "': " + why);
  }

 private:
  size_t MatchingClose(size_t open) const {
    int depth = 0;
    for (size_t i = open; i < tokens_.size(); ++i) {
      if (tokens_[i] == "(") ++depth;
      if (tokens_[i] == ")" && --depth == 0) return i;
    }
    Fail("unbalanced parentheses");
  }

  // Parses "source target VERB" ending exactly at `end`.
  TransformTerm ParseTripleBody(size_t end) {
    TransformTerm triple;
    triple.kind = TransformTerm::Kind::kTriple;
    triple.args.push_back(ParseActor(end, /*allow_triple=*/false));
    triple.args.push_back(ParseActor(end, /*allow_triple=*/true));
    if (pos_ >= end) Fail("missing verb symbol");
    const std::string &verb = tokens_[pos_++];
    if (verb == "(" || verb == ")" || IsVariableToken(verb)) {
      Fail("'" + verb + "' cannot stand in a verb position");
    }
    triple.verb.text = verb == "." ? "." : ToUpperAscii(verb);
    if (verb == ".") triple.verb.kind = VerbSymbol::Kind::kAny;
    if (pos_ != end) Fail("a term has more than three parts");
    return triple;
  }

  TransformTerm ParseActor(size_t end, bool allow_triple) {
    if (pos_ >= end) Fail("term has fewer than three parts");
    const std::string &t = tokens_[pos_];
    TransformTerm term;
    if (t == "(") {
      if (!allow_triple) Fail("a nested event cannot be a source");
      size_t close = MatchingClose(pos_);
      if (close >= end) Fail("unbalanced parentheses");
      ++pos_;
      term = ParseTripleBody(close);
      pos_ = close + 1;
      return term;
    }
    if (t == ")") Fail("unexpected ')'");
    ++pos_;
    if (t == ".") return term;
    if (!IsVariableToken(t)) {
      Fail("'" + t + "' cannot stand in an actor position");
    }
    term.kind = TransformTerm::Kind::kVariable;
    term.variable = t[0];
    return term;
  }

  std::vector<std::string> tokens_;
  std::string line_;
  size_t pos_ = 0;
};

inline void CollectVariables(const TransformTerm &term, std::set<char> *vars) {
  if (term.kind == TransformTerm::Kind::kVariable) vars->insert(term.variable);
  for (const auto &arg : term.args) CollectVariables(arg, vars);
}

}  // namespace detail

// Parses `<postfix pattern> = <source> <target> <CAMEO code>` (without the
// leading "~ " of the verbs file). Verb symbols are left unresolved.
inline TransformRule ParseTransformation(std::string_view line,
                                         const CodeMap &codes) {
  TransformRule rule;
  rule.source_text = std::string(detail::Trim(line));
  std::string_view body = detail::Trim(detail::StripComment(line));
  size_t eq = body.find('=');
  if (eq == std::string_view::npos || body.find('=', eq + 1) != body.npos) {
    throw RuleError(RuleErrorKind::kMalformedPostfix,
                    "transformation '" + rule.source_text +
                        "' needs exactly one '='");
  }
  detail::PostfixParser parser(detail::Lex(body.substr(0, eq), "()"),
                               rule.source_text);
  rule.pattern = parser.ParseTop();

  std::vector<std::string> result = detail::Lex(body.substr(eq + 1), "");
  if (result.size() != 3) {
    parser.Fail("result must be '<source> <target> <code>'");
  }
  if (!detail::IsVariableToken(result[0]) ||
      !detail::IsVariableToken(result[1])) {
    parser.Fail("result source and target must be variables");
  }
  std::set<char> bound;
  detail::CollectVariables(rule.pattern, &bound);
  for (int i = 0; i < 2; ++i) {
    if (!bound.count(result[i][0])) {
      throw RuleError(RuleErrorKind::kUnboundVariable,
                      "transformation '" + rule.source_text + "': variable '" +
                          result[i] + "' is not bound by the pattern");
    }
  }
  rule.result_source = result[0][0];
  rule.result_target = result[1][0];
  try {
    rule.code = codes.ToInternal(result[2]);
  } catch (const CodeError &e) {
    throw RuleError(RuleErrorKind::kBadCode,
                    "transformation '" + rule.source_text + "': " + e.what());
  }
  return rule;
}

}  // namespace treecoder
