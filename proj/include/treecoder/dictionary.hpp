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

// Actor, agent, verb and discard dictionaries.
//
// Actors (a block of non-blank lines is one entry; '#' starts a comment):
//
//   ISRAEL ; ISR
//   BARACK OBAMA ; USAELI 20090120 20170120
//   ; USAGOV 20170121 -
//
// Agents:      TROOPS ; MIL
// Discards:    WORLD CUP
// Verbs:
//
//   &ATTACK
//   +LAUNCH +BOMB
//
//   --- DESTROY [180] ---
//   +DESTROYED +DESTROYS
//   - protesters * monument [145]
//   ~ a (b . ATTACK) SAY = a b 112
//
// Everything is case-insensitive and stored uppercase; underscores join the
// words of a phrase like spaces do.

#pragma once

#include <algorithm>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "treecoder/code_algebra.hpp"
#include "treecoder/date.hpp"
#include "treecoder/phrase_trie.hpp"
#include "treecoder/rules.hpp"
#include "treecoder/tree.hpp"

namespace treecoder {

struct Origin {
  std::string file;
  int line = 0;

  std::string ToString() const { return file + ":" + std::to_string(line); }
};

struct DatedCode {
  std::string code;
  std::optional<Date> start;  // open when empty
  std::optional<Date> end;

  bool Contains(Date date) const {
    return (!start || *start <= date) && (!end || date <= *end);
  }
  friend bool operator==(const DatedCode &, const DatedCode &) = default;
};

struct ActorEntry {
  std::vector<std::string> phrase;
  std::vector<DatedCode> codes;
  std::optional<std::string> default_code;
  Origin origin;

  std::optional<std::string> CodeOn(Date date) const {
    for (const auto &dated : codes) {
      if (dated.Contains(date)) return dated.code;
    }
    return default_code;
  }
};

struct AgentEntry {
  std::vector<std::string> phrase;
  std::string code;
  Origin origin;
};

struct DiscardEntry {
  std::vector<std::string> phrase;
  Origin origin;
};

struct VerbEntry {
  std::string lemma;
  std::set<std::string> forms;
  std::optional<InternalCode> base_code;
  std::vector<VerbPattern> patterns;
  std::vector<Origin> pattern_origins;  // parallel to patterns
  Origin origin;
};

enum class DictionaryErrorKind { kIo, kSyntax, kDuplicate };

class DictionaryError : public std::runtime_error {
 public:
  DictionaryError(DictionaryErrorKind kind, std::string file, int line,
                  const std::string &reason)
      : std::runtime_error(Format(kind, file, line, reason)),
        kind_(kind),
        file_(std::move(file)),
        line_(line) {}

  DictionaryErrorKind kind() const { return kind_; }
  const std::string &file() const { return file_; }
  int line() const { return line_; }

 private:
  static std::string Format(DictionaryErrorKind kind, const std::string &file,
                            int line, const std::string &reason) {
    const char *label = kind == DictionaryErrorKind::kIo ? "I/O error"
                        : kind == DictionaryErrorKind::kSyntax
                            ? "syntax error"
                            : "duplicate entry";
    std::string where = file;
    if (line > 0) where += ":" + std::to_string(line);
    return where + ": " + label + ": " + reason;
  }

  DictionaryErrorKind kind_;
  std::string file_;
  int line_;
};

// Dictionary file contents, for loading from memory. Names label errors.
struct DictionaryTexts {
  std::string actors;
  std::string agents;
  std::string verbs;
  std::string discard;
  std::string code_map;
  std::string actors_name = "actors";
  std::string agents_name = "agents";
  std::string verbs_name = "verbs";
  std::string discard_name = "discard";
  std::string code_map_name = "code-map";
};

// Agents and discard may be left empty to load no entries.
struct DictionaryPaths {
  std::string actors;
  std::string agents;
  std::string verbs;
  std::string discard;
  std::string code_map;
};

inline bool IsDeterminerToken(std::string_view token) {
  return token == "THE" || token == "A" || token == "AN";
}

// Uppercases and splits a dictionary phrase on spaces and underscores.
inline std::vector<std::string> SplitPhrase(std::string_view text) {
  std::string upper = ToUpperAscii(text);
  std::replace(upper.begin(), upper.end(), '_', ' ');
  std::vector<std::string> words;
  std::istringstream in(upper);
  std::string word;
  while (in >> word) words.push_back(word);
  return words;
}

class DictionaryStore {
 public:
  struct ActorMatch {
    std::optional<std::string> code;  // empty when no span covers the date
    const ActorEntry *entry = nullptr;
    size_t start = 0;
    size_t length = 0;
  };

  struct AgentMatch {
    const AgentEntry *entry = nullptr;
    size_t start = 0;
    size_t length = 0;
  };

  static DictionaryStore Load(const DictionaryPaths &paths) {
    DictionaryTexts texts;
    texts.code_map = ReadFile(paths.code_map, "code map");
    texts.actors = ReadFile(paths.actors, "actors");
    texts.verbs = ReadFile(paths.verbs, "verbs");
    if (!paths.agents.empty()) texts.agents = ReadFile(paths.agents, "agents");
    if (!paths.discard.empty()) {
      texts.discard = ReadFile(paths.discard, "discard");
    }
    texts.code_map_name = paths.code_map;
    texts.actors_name = paths.actors;
    texts.agents_name = paths.agents;
    texts.verbs_name = paths.verbs;
    texts.discard_name = paths.discard;
    return FromTexts(texts);
  }

  static DictionaryStore FromTexts(const DictionaryTexts &texts) {
    DictionaryStore store;
    try {
      store.codes_ = CodeMap::FromString(texts.code_map, texts.code_map_name);
    } catch (const CodeError &e) {
      throw DictionaryError(DictionaryErrorKind::kSyntax, texts.code_map_name,
                            0, e.what());
    }
    store.LoadActors(texts.actors, texts.actors_name);
    store.LoadAgents(texts.agents, texts.agents_name);
    store.LoadDiscards(texts.discard, texts.discard_name);
    store.LoadVerbs(texts.verbs, texts.verbs_name);
    return store;
  }

  // Longest actor phrase at the leftmost position where any phrase starts.
  // Tokens must already be uppercase; nothing is skipped.
  std::optional<ActorMatch> MatchActor(std::span<const std::string> tokens,
                                       Date date) const {
    auto match = actors_.FirstLongest(tokens);
    if (!match) return std::nullopt;
    return ActorMatch{match->value->CodeOn(date), match->value, match->start,
                      match->length};
  }

  std::optional<std::string> ResolveActor(std::span<const std::string> tokens,
                                          Date date,
                                          bool skip_determiners = true) const {
    std::vector<std::string> kept = Filter(tokens, skip_determiners);
    auto match = MatchActor(kept, date);
    return match ? match->code : std::nullopt;
  }

  std::optional<AgentMatch> MatchAgentEntry(
      std::span<const std::string> tokens) const {
    auto match = agents_.FirstLongest(tokens);
    if (!match) return std::nullopt;
    return AgentMatch{match->value, match->start, match->length};
  }

  std::optional<std::string> MatchAgent(std::span<const std::string> tokens,
                                        bool skip_determiners = true) const {
    std::vector<std::string> kept = Filter(tokens, skip_determiners);
    auto match = MatchAgentEntry(kept);
    if (!match) return std::nullopt;
    return match->entry->code;
  }

  // True iff a discard phrase occurs contiguously in the token sequence.
  bool ContainsDiscard(std::span<const std::string> tokens) const {
    return discards_.FirstLongest(tokens).has_value();
  }

  bool IsDiscard(const ParseTree &tree) const {
    std::vector<std::string> tokens = tree.Tokens();
    return ContainsDiscard(tokens);
  }

  const VerbEntry *FindVerb(std::string_view form) const {
    auto it = verb_forms_.find(std::string(form));
    return it == verb_forms_.end() ? nullptr : &verbs_[it->second];
  }

  const std::set<std::string> *Synset(std::string_view name) const {
    if (name.starts_with("&")) name.remove_prefix(1);
    auto it = synsets_.find(std::string(name));
    return it == synsets_.end() ? nullptr : &it->second;
  }

  // A pattern word matches a surface token literally, or by synset
  // membership when written &NAME.
  bool TokenMatches(std::string_view spec, std::string_view token) const {
    if (spec.starts_with("&")) {
      const auto *members = Synset(spec);
      return members && members->count(std::string(token)) > 0;
    }
    return spec == token;
  }

  const std::vector<TransformRule> &transforms() const { return transforms_; }
  const std::vector<Origin> &transform_origins() const {
    return transform_origins_;
  }
  const std::vector<VerbEntry> &verbs() const { return verbs_; }
  const CodeMap &codes() const { return codes_; }

  size_t actor_count() const { return actors_.size(); }
  size_t agent_count() const { return agents_.size(); }
  size_t discard_count() const { return discards_.size(); }
  size_t verb_count() const { return verbs_.size(); }
  size_t synset_count() const { return synsets_.size(); }

 private:
  DictionaryStore() = default;

  static std::string ReadFile(const std::string &path, const char *what) {
    if (path.empty()) {
      throw DictionaryError(DictionaryErrorKind::kIo, "<unset>", 0,
                            std::string("no ") + what + " file given");
    }
    std::ifstream in(path);
    if (!in) {
      throw DictionaryError(DictionaryErrorKind::kIo, path, 0,
                            std::string("cannot open ") + what + " file");
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
  }

  static std::vector<std::string> Filter(std::span<const std::string> tokens,
                                         bool skip_determiners) {
    std::vector<std::string> kept;
    for (const auto &t : tokens) {
      if (!skip_determiners || !IsDeterminerToken(t)) kept.push_back(t);
    }
    return kept;
  }

  // Calls fn(line_number, trimmed line without comment) for every line,
  // including blank ones.
  template <typename Fn>
  static void ForEachLine(std::string_view text, Fn fn) {
    std::istringstream in{std::string(text)};
    std::string line;
    int number = 0;
    while (std::getline(in, line)) {
      ++number;
      std::string_view raw = detail::Trim(line);
      bool comment_only = raw.starts_with("#");
      fn(number, detail::Trim(detail::StripComment(line)), comment_only);
    }
  }

  static std::optional<Date> ParseBound(std::string_view text,
                                        const std::string &file, int line) {
    if (text == "-") return std::nullopt;
    auto date = Date::Parse(text);
    if (!date) {
      throw DictionaryError(DictionaryErrorKind::kSyntax, file, line,
                            "bad date '" + std::string(text) + "'");
    }
    return date;
  }

  void LoadActors(std::string_view text, const std::string &file) {
    std::optional<ActorEntry> block;
    auto finish = [&] {
      if (!block) return;
      ActorEntry entry = std::move(*block);
      block.reset();
      auto spans = entry.codes;
      std::sort(spans.begin(), spans.end(), [](const auto &a, const auto &b) {
        if (!a.start || !b.start) return !a.start && b.start;
        return *a.start < *b.start;
      });
      for (size_t i = 1; i < spans.size(); ++i) {
        const auto &prev = spans[i - 1];
        const auto &next = spans[i];
        if (!prev.end || !next.start || *next.start <= *prev.end) {
          throw DictionaryError(DictionaryErrorKind::kSyntax, file,
                                entry.origin.line,
                                "overlapping date spans for codes " +
                                    prev.code + " and " + next.code);
        }
      }
      auto [stored, inserted] = actors_.Insert(entry.phrase, entry);
      if (!inserted && (stored->codes != entry.codes ||
                        stored->default_code != entry.default_code)) {
        throw DictionaryError(DictionaryErrorKind::kDuplicate, file,
                              entry.origin.line,
                              "actor phrase already coded at " +
                                  stored->origin.ToString());
      }
    };

    ForEachLine(text, [&](int number, std::string_view line,
                          bool comment_only) {
      if (comment_only) return;
      if (line.empty()) {
        finish();
        return;
      }
      size_t semi = line.find(';');
      if (semi == std::string_view::npos) {
        throw DictionaryError(DictionaryErrorKind::kSyntax, file, number,
                              "expected 'PHRASE ; CODE [START END]'");
      }
      std::vector<std::string> phrase = SplitPhrase(line.substr(0, semi));
      std::vector<std::string> fields = SplitPhrase(line.substr(semi + 1));
      if (fields.size() != 1 && fields.size() != 3) {
        throw DictionaryError(DictionaryErrorKind::kSyntax, file, number,
                              "expected CODE or CODE START END after ';'");
      }
      if (!block) {
        if (phrase.empty()) {
          throw DictionaryError(DictionaryErrorKind::kSyntax, file, number,
                                "actor entry has no phrase");
        }
        block.emplace();
        block->phrase = phrase;
        block->origin = {file, number};
      } else if (!phrase.empty() && phrase != block->phrase) {
        throw DictionaryError(DictionaryErrorKind::kSyntax, file, number,
                              "phrase differs from the block's first line");
      }
      if (fields.size() == 1) {
        if (block->default_code) {
          throw DictionaryError(DictionaryErrorKind::kSyntax, file, number,
                                "actor has two undated codes");
        }
        block->default_code = fields[0];
      } else {
        DatedCode dated{fields[0], ParseBound(fields[1], file, number),
                        ParseBound(fields[2], file, number)};
        if (dated.start && dated.end && *dated.end < *dated.start) {
          throw DictionaryError(DictionaryErrorKind::kSyntax, file, number,
                                "date span ends before it starts");
        }
        block->codes.push_back(std::move(dated));
      }
    });
    finish();
  }

  void LoadAgents(std::string_view text, const std::string &file) {
    ForEachLine(text, [&](int number, std::string_view line, bool) {
      if (line.empty()) return;
      size_t semi = line.find(';');
      std::vector<std::string> phrase =
          SplitPhrase(semi == line.npos ? line : line.substr(0, semi));
      std::vector<std::string> code =
          semi == line.npos ? std::vector<std::string>{}
                            : SplitPhrase(line.substr(semi + 1));
      if (phrase.empty() || code.size() != 1) {
        throw DictionaryError(DictionaryErrorKind::kSyntax, file, number,
                              "expected 'PHRASE ; CODE'");
      }
      AgentEntry entry{phrase, code[0], {file, number}};
      auto [stored, inserted] = agents_.Insert(phrase, entry);
      if (!inserted && stored->code != entry.code) {
        throw DictionaryError(DictionaryErrorKind::kDuplicate, file, number,
                              "agent phrase already coded at " +
                                  stored->origin.ToString());
      }
    });
  }

  void LoadDiscards(std::string_view text, const std::string &file) {
    ForEachLine(text, [&](int number, std::string_view line, bool) {
      if (line.empty()) return;
      std::vector<std::string> phrase = SplitPhrase(line);
      discards_.Insert(phrase, DiscardEntry{phrase, {file, number}});
    });
  }

  void LoadVerbs(std::string_view text, const std::string &file) {
    enum class Block { kNone, kSynset, kVerb } block = Block::kNone;
    std::string synset;
    struct PendingRef {
      std::string token;
      int line;
    };
    std::vector<PendingRef> synset_refs;

    auto syntax = [&](int number, const std::string &why) {
      return DictionaryError(DictionaryErrorKind::kSyntax, file, number, why);
    };

    ForEachLine(text, [&](int number, std::string_view line, bool) {
      if (line.empty()) {
        if (block == Block::kSynset) block = Block::kNone;
        return;
      }
      if (line.starts_with("&")) {
        std::vector<std::string> words = SplitPhrase(line.substr(1));
        if (words.size() != 1) throw syntax(number, "expected '&NAME'");
        synset = words[0];
        if (synsets_.count(synset)) {
          throw DictionaryError(DictionaryErrorKind::kDuplicate, file, number,
                                "synset &" + synset + " defined twice");
        }
        synsets_[synset];
        block = Block::kSynset;
      } else if (line.starts_with("---")) {
        if (line.size() < 6 || !line.ends_with("---")) {
          throw syntax(number, "expected '--- LEMMA [CODE] ---'");
        }
        std::string_view inner = detail::Trim(line.substr(3, line.size() - 6));
        VerbEntry verb;
        verb.origin = {file, number};
        size_t open = inner.find('[');
        if (open != std::string_view::npos) {
          size_t close = inner.find(']', open);
          if (close == std::string_view::npos ||
              !detail::Trim(inner.substr(close + 1)).empty()) {
            throw syntax(number, "malformed base code");
          }
          std::string cameo(detail::Trim(inner.substr(open + 1, close - open - 1)));
          try {
            verb.base_code = codes_.ToInternal(cameo);
          } catch (const CodeError &e) {
            throw syntax(number, e.what());
          }
          inner = detail::Trim(inner.substr(0, open));
        }
        std::vector<std::string> lemma = SplitPhrase(inner);
        if (lemma.size() != 1) throw syntax(number, "verb needs one lemma");
        verb.lemma = lemma[0];
        for (const auto &existing : verbs_) {
          if (existing.lemma == verb.lemma) {
            throw DictionaryError(DictionaryErrorKind::kDuplicate, file, number,
                                  "verb " + verb.lemma + " already defined at " +
                                      existing.origin.ToString());
          }
        }
        verbs_.push_back(std::move(verb));
        AddForm(verbs_.back().lemma, file, number);
        block = Block::kVerb;
      } else if (line.starts_with("+")) {
        std::vector<std::string> forms;
        for (const auto &word : SplitPhrase(line)) {
          std::string_view w = word;
          if (w.starts_with("+")) w.remove_prefix(1);
          if (!w.empty()) forms.emplace_back(w);
        }
        if (block == Block::kSynset) {
          synsets_[synset].insert(forms.begin(), forms.end());
        } else if (block == Block::kVerb) {
          for (const auto &form : forms) AddForm(form, file, number);
        } else {
          throw syntax(number, "'+' line outside a verb or synset block");
        }
      } else if (line.starts_with("-")) {
        if (block != Block::kVerb) {
          throw syntax(number, "pattern outside a verb block");
        }
        VerbPattern pattern;
        try {
          pattern = CompilePattern(line.substr(1), codes_);
        } catch (const RuleError &e) {
          throw syntax(number, e.what());
        }
        auto note_refs = [&](const NounSpec &noun) {
          for (const auto &w : noun.extra) {
            if (w.starts_with("&")) synset_refs.push_back({w, number});
          }
          if (noun.head.starts_with("&")) {
            synset_refs.push_back({noun.head, number});
          }
        };
        for (const auto &n : pattern.pre_nouns) note_refs(n);
        for (const auto &n : pattern.post_nouns) note_refs(n);
        for (const auto &p : pattern.pre_preps) note_refs(p.noun);
        for (const auto &p : pattern.post_preps) note_refs(p.noun);
        verbs_.back().patterns.push_back(std::move(pattern));
        verbs_.back().pattern_origins.push_back({file, number});
      } else if (line.starts_with("~")) {
        try {
          transforms_.push_back(ParseTransformation(line.substr(1), codes_));
        } catch (const RuleError &e) {
          throw syntax(number, e.what());
        }
        transform_origins_.push_back({file, number});
      } else {
        throw syntax(number, "unrecognised line");
      }
    });

    for (const auto &ref : synset_refs) {
      if (!Synset(ref.token)) {
        throw syntax(ref.line, "unknown synset " + ref.token);
      }
    }
    for (size_t i = 0; i < transforms_.size(); ++i) {
      ResolveSymbols(&transforms_[i].pattern, transform_origins_[i]);
    }
  }

  void AddForm(const std::string &form, const std::string &file, int number) {
    size_t index = verbs_.size() - 1;
    auto [it, inserted] = verb_forms_.emplace(form, index);
    if (!inserted && it->second != index) {
      throw DictionaryError(DictionaryErrorKind::kDuplicate, file, number,
                            "form " + form + " already belongs to verb " +
                                verbs_[it->second].lemma);
    }
    verbs_[index].forms.insert(form);
  }

  void ResolveSymbols(TransformTerm *term, const Origin &origin) {
    for (auto &arg : term->args) ResolveSymbols(&arg, origin);
    if (term->kind != TransformTerm::Kind::kTriple) return;
    VerbSymbol &verb = term->verb;
    if (verb.kind == VerbSymbol::Kind::kAny) return;
    if (const auto *members = Synset(verb.text)) {
      verb.kind = VerbSymbol::Kind::kSynset;
      verb.lemmas = *members;
      return;
    }
    std::string_view name = verb.text;
    if (name.starts_with("&")) name.remove_prefix(1);
    for (const auto &entry : verbs_) {
      if (entry.lemma == name) {
        verb.kind = VerbSymbol::Kind::kLemma;
        verb.lemmas = {entry.lemma};
        return;
      }
    }
    try {
      verb.code = codes_.ToInternal(verb.text);
      verb.kind = VerbSymbol::Kind::kCode;
    } catch (const CodeError &) {
      throw DictionaryError(DictionaryErrorKind::kSyntax, origin.file,
                            origin.line,
                            "unknown verb symbol '" + verb.text +
                                "' (not a synset, verb or CAMEO code)");
    }
  }

  CodeMap codes_;
  PhraseTrie<ActorEntry> actors_;
  PhraseTrie<AgentEntry> agents_;
  PhraseTrie<DiscardEntry> discards_;
  std::vector<VerbEntry> verbs_;
  std::unordered_map<std::string, size_t> verb_forms_;
  std::map<std::string, std::set<std::string>> synsets_;
  std::vector<TransformRule> transforms_;
  std::vector<Origin> transform_origins_;
};

}  // namespace treecoder
