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

// Recursive meaning computation over a parse tree.
//
// The meaning of a node is built from the meanings of its children: noun
// phrases yield actor codes, verb phrases combine a source (their subject),
// a verb code (from dictionary patterns) and whatever their complements mean
// into events. Asking the uppermost verb phrase for its meaning codes the
// whole sentence.

#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "treecoder/code_algebra.hpp"
#include "treecoder/dictionary.hpp"
#include "treecoder/rules.hpp"
#include "treecoder/trace.hpp"
#include "treecoder/tree.hpp"

namespace treecoder {

// Placeholder for a missing source or target.
inline constexpr std::string_view kUnbound = "---";

struct Event {
  std::string source{kUnbound};
  std::string target{kUnbound};
  std::optional<InternalCode> code;
  std::string verb;  // lemma of the verb that coded the event
  std::optional<NodeId> origin;
  bool transformed = false;

  bool complete() const {
    return source != kUnbound && target != kUnbound && code.has_value();
  }
};

struct Meaning {
  std::vector<std::string> actors;
  std::optional<std::string> agent;  // agent suffix not yet attached
  std::vector<Event> events;
  bool negated = false;
  std::optional<std::string> head_token;

  bool empty() const { return actors.empty() && !agent && events.empty(); }

  // Codes usable as a source or target. A bare agent codes with an unbound
  // country prefix ("---MIL").
  std::vector<std::string> ActorCodes() const {
    if (!actors.empty()) return actors;
    if (agent) return {std::string(kUnbound) + *agent};
    return {};
  }
};

struct CodeMatch {
  InternalCode code;
  const VerbEntry *verb = nullptr;
  const VerbPattern *pattern = nullptr;  // null when the base code was used
};

inline bool IsBeForm(std::string_view token) {
  static constexpr std::string_view kForms[] = {
      "BE", "AM", "IS", "ARE", "WAS", "WERE", "BEEN", "BEING", "'S", "'RE",
      "'M"};
  return std::find(std::begin(kForms), std::end(kForms), token) !=
         std::end(kForms);
}

inline bool IsNegationToken(std::string_view token) {
  return token == "NOT" || token == "N'T";
}

inline bool IsReflexive(std::string_view token) {
  return token.ends_with("SELF") || token.ends_with("SELVES");
}

namespace detail {

inline bool VerbSymbolMatches(const VerbSymbol &symbol, std::string_view lemma,
                              std::optional<InternalCode> code) {
  switch (symbol.kind) {
    case VerbSymbol::Kind::kAny:
      return true;
    case VerbSymbol::Kind::kSynset:
    case VerbSymbol::Kind::kLemma:
      return symbol.lemmas.count(std::string(lemma)) > 0;
    case VerbSymbol::Kind::kCode:
      return code && *code == symbol.code;
    case VerbSymbol::Kind::kUnresolved:
      return symbol.text == lemma;
  }
  return false;
}

// Binds an actor position. Variables never bind the unbound placeholder.
inline bool UnifyActor(const TransformTerm &term, const std::string &actor,
                       std::map<char, std::string> *bindings) {
  switch (term.kind) {
    case TransformTerm::Kind::kWildcard:
      return true;
    case TransformTerm::Kind::kTriple:
      return false;
    case TransformTerm::Kind::kVariable: {
      if (actor == kUnbound) return false;
      auto [it, inserted] = bindings->emplace(term.variable, actor);
      return inserted || it->second == actor;
    }
  }
  return false;
}

}  // namespace detail

// Unifies the nested structure (outer_source (inner) outer_verb) with each
// rule in order; the first rule that matches rewrites it to a flat event.
inline std::optional<Event> MatchTransform(
    std::string_view outer_source, std::optional<InternalCode> outer_code,
    std::string_view outer_verb, const Event &inner,
    std::span<const TransformRule> rules, size_t *matched_rule = nullptr) {
  for (size_t i = 0; i < rules.size(); ++i) {
    const TransformRule &rule = rules[i];
    const TransformTerm &top = rule.pattern;
    if (top.kind != TransformTerm::Kind::kTriple) continue;
    std::map<char, std::string> bindings;
    if (!detail::UnifyActor(top.args[0], std::string(outer_source),
                            &bindings)) {
      continue;
    }
    const TransformTerm &nested = top.args[1];
    if (nested.kind == TransformTerm::Kind::kVariable) continue;
    if (nested.kind == TransformTerm::Kind::kTriple) {
      if (!detail::UnifyActor(nested.args[0], inner.source, &bindings) ||
          !detail::UnifyActor(nested.args[1], inner.target, &bindings) ||
          !detail::VerbSymbolMatches(nested.verb, inner.verb, inner.code)) {
        continue;
      }
    }
    if (!detail::VerbSymbolMatches(top.verb, outer_verb, outer_code)) continue;
    auto source = bindings.find(rule.result_source);
    auto target = bindings.find(rule.result_target);
    if (source == bindings.end() || target == bindings.end()) continue;
    Event event;
    event.source = source->second;
    event.target = target->second;
    event.code = rule.code;
    event.verb = std::string(outer_verb);
    event.origin = inner.origin;
    event.transformed = true;
    if (matched_rule) *matched_rule = i;
    return event;
  }
  return std::nullopt;
}

// Computes meanings for one sentence. Results are cached per node, so each
// node is analysed (and traced) once.
class Analyzer {
 public:
  Analyzer(const ParseTree &tree, const DictionaryStore &store,
           Trace *trace = nullptr)
      : tree_(tree), store_(store), trace_(trace) {}

  Meaning MeaningOf(NodeId id) {
    if (auto it = cache_.find(id); it != cache_.end()) return it->second;
    // Re-entry can only come from pronoun or specifier lookups reaching a
    // node that is still being analysed; it contributes nothing.
    if (!in_progress_.insert(id).second) return Meaning{};
    Meaning meaning;
    switch (tree_.kind(id)) {
      case NodeKind::kNP:
        meaning = NounPhraseMeaning(id);
        break;
      case NodeKind::kPP:
        meaning = PrepPhraseMeaning(id);
        break;
      case NodeKind::kVP:
        if (IsValidVerbPhrase(id)) {
          meaning = VerbPhraseMeaning(id);
        } else {
          Note(id, "participle used as a modifier, read as a noun phrase");
          meaning = NounLikeMeaning(id);
        }
        break;
      case NodeKind::kS:
        meaning = ClauseMeaning(id);
        break;
      case NodeKind::kWord:
        meaning = WordMeaning(id);
        break;
      case NodeKind::kOther:
        meaning = TransparentMeaning(id);
        break;
    }
    in_progress_.erase(id);
    cache_.emplace(id, meaning);
    return meaning;
  }

  // Actors of a noun phrase, by priority: its own words, then child NPs,
  // then child PPs, then child VPs. A bare agent keeps searching lower
  // priorities for an actor to attach to.
  Meaning NounPhraseMeaning(NodeId np) {
    Meaning meaning = NounLikeMeaning(np);
    if (auto head = tree_.FindHead(np)) {
      meaning.head_token = tree_.node(*head).token;
    }
    return meaning;
  }

  // The meaning of the non-preposition constituent, tagged with the
  // preposition.
  Meaning PrepPhraseMeaning(NodeId pp) {
    std::string prep = tree_.PrepositionOf(pp);
    Meaning meaning;
    for (NodeId child : tree_.children(pp)) {
      if (tree_.node(child).is_word()) continue;
      Meaning m = MeaningOf(child);
      if (!m.empty()) {
        meaning = std::move(m);
        break;
      }
    }
    meaning.head_token = prep;
    return meaning;
  }

  // Reflexives bind inside their own clause: the nearest preceding coded NP
  // on the way up, or the subject of the first verb phrase that has one.
  // Other pronouns skip their own clause and take the closest coded NP that
  // precedes it.
  Meaning ResolvePronoun(NodeId word) {
    const ParseNode &node = tree_.node(word);
    if (IsReflexive(node.token)) {
      NodeId child = word;
      for (auto ancestor = tree_.parent(word); ancestor;
           child = *ancestor, ancestor = tree_.parent(*ancestor)) {
        const auto &kids = tree_.children(*ancestor);
        for (size_t i = tree_.node(child).index; i-- > 0;) {
          if (tree_.kind(kids[i]) != NodeKind::kNP) continue;
          Meaning m = MeaningOf(kids[i]);
          if (!m.ActorCodes().empty()) {
            Note(word, "reflexive " + node.token + " binds " +
                           Describe(kids[i]) + " -> " + Join(m.ActorCodes()));
            return m;
          }
        }
        if (tree_.kind(*ancestor) == NodeKind::kVP) {
          if (auto subject = tree_.SubjectOf(*ancestor)) {
            Meaning m = MeaningOf(*subject);
            Note(word, "reflexive " + node.token + " binds subject " +
                           Describe(*subject) + " -> " +
                           Join(m.ActorCodes()));
            return m;
          }
        }
      }
      Note(word, "reflexive " + node.token + " unresolved");
      return Meaning{};
    }

    auto clause = tree_.ClauseOf(word);
    if (!clause) {
      Note(word, "pronoun " + node.token + " has no enclosing clause");
      return Meaning{};
    }
    uint32_t boundary = tree_.node(*clause).first_token;
    std::vector<NodeId> candidates;
    for (NodeId id = 0; id < tree_.size(); ++id) {
      const ParseNode &n = tree_.node(id);
      if (n.kind == NodeKind::kNP && n.end_token <= boundary) {
        candidates.push_back(id);
      }
    }
    // Closest first; among phrases ending at the same word, the widest.
    std::sort(candidates.begin(), candidates.end(), [&](NodeId a, NodeId b) {
      const ParseNode &x = tree_.node(a);
      const ParseNode &y = tree_.node(b);
      if (x.end_token != y.end_token) return x.end_token > y.end_token;
      if (x.first_token != y.first_token) return x.first_token < y.first_token;
      return a < b;
    });
    for (NodeId candidate : candidates) {
      Meaning m = MeaningOf(candidate);
      if (!m.ActorCodes().empty()) {
        Note(word, "pronoun " + node.token + " binds " + Describe(candidate) +
                       " -> " + Join(m.ActorCodes()));
        return m;
      }
    }
    Note(word, "pronoun " + node.token + " unresolved");
    return Meaning{};
  }

  // Source actors from the subject specifier of a VP.
  std::vector<std::string> UpperActors(NodeId vp) {
    auto subject = tree_.SubjectOf(vp);
    if (!subject) return {};
    return MeaningOf(*subject).ActorCodes();
  }

  // What the complements of a VP mean: a child VP (auxiliary or modal
  // chains, where negation is flagged) or clause, else coded actors in child
  // NPs, else in child PPs.
  Meaning LowerMeaning(NodeId vp, std::optional<NodeId> exclude = {}) {
    Meaning lower;
    std::vector<NodeId> verb_phrases, clauses, nouns, preps;
    for (NodeId child : tree_.children(vp)) {
      if (exclude && child == *exclude) continue;
      const ParseNode &c = tree_.node(child);
      switch (c.kind) {
        case NodeKind::kWord:
          if (IsNegationToken(c.token)) lower.negated = true;
          break;
        case NodeKind::kVP:
          verb_phrases.push_back(child);
          break;
        case NodeKind::kS:
          clauses.push_back(child);
          break;
        case NodeKind::kNP:
          nouns.push_back(child);
          break;
        case NodeKind::kPP:
          preps.push_back(child);
          break;
        case NodeKind::kOther:
          break;
      }
    }
    if (lower.negated) Note(vp, "negated");

    if (!verb_phrases.empty()) {
      std::vector<std::string> actors;
      for (NodeId child : verb_phrases) {
        Meaning m = MeaningOf(child);
        Append(&lower.events, m.events);
        Append(&actors, m.ActorCodes());
      }
      if (lower.events.empty()) lower.actors = std::move(actors);
      return lower;
    }
    for (NodeId child : clauses) Append(&lower.events, MeaningOf(child).events);
    if (!lower.events.empty()) return lower;

    for (const auto *group : {&nouns, &preps}) {
      for (NodeId child : *group) {
        Meaning m = MeaningOf(child);
        std::vector<std::string> codes = m.ActorCodes();
        if (codes.empty()) continue;
        std::string how = tree_.kind(child) == NodeKind::kPP
                              ? "from " + tree_.PrepositionOf(child) + "-PP"
                              : "from object " + Describe(child);
        Note(vp, "target " + Join(codes) + " " + how);
        Append(&lower.actors, codes);
      }
      if (!lower.actors.empty()) break;
    }
    return lower;
  }

  // Passive: a participle whose verb chain rises through a form of BE.
  bool IsPassive(NodeId vp) const {
    auto verb = tree_.VerbOf(vp);
    if (!verb || tree_.node(*verb).category != "VBN") return false;
    for (auto p = tree_.parent(vp); p && tree_.kind(*p) == NodeKind::kVP;
         p = tree_.parent(*p)) {
      if (auto aux = tree_.VerbOf(*p)) return IsBeForm(tree_.node(*aux).token);
    }
    return false;
  }

  // False for a past participle misparsed as a verb phrase when it modifies
  // a noun: a VBN directly under an NP, followed by a noun, with no auxiliary
  // above it.
  bool IsValidVerbPhrase(NodeId vp) const {
    auto verb = tree_.VerbOf(vp);
    if (!verb || tree_.node(*verb).category != "VBN") return true;
    auto parent = tree_.parent(vp);
    if (!parent || tree_.kind(*parent) != NodeKind::kNP) return true;
    const auto &kids = tree_.children(vp);
    if (kids.front() != *verb) return true;
    auto is_nominal = [&](NodeId id) {
      const ParseNode &n = tree_.node(id);
      return n.kind == NodeKind::kNP || (n.is_word() && IsNounTag(n.category));
    };
    if (kids.size() == 2) return !is_nominal(kids[1]);
    if (kids.size() == 1) {
      const auto &siblings = tree_.children(*parent);
      uint32_t next = tree_.node(vp).index + 1;
      return !(next < siblings.size() && is_nominal(siblings[next]));
    }
    return true;
  }

  // Dictionary pattern lookup for the verb of a VP. The most specific
  // matching pattern wins (more parts, then more words, then file order);
  // with no match the verb's base code is used.
  std::optional<CodeMatch> MatchVerbCode(NodeId vp) {
    auto verb_word = tree_.VerbOf(vp);
    if (!verb_word) return std::nullopt;
    const std::string &form = tree_.node(*verb_word).token;
    const VerbEntry *entry = store_.FindVerb(form);
    if (!entry) {
      Note(vp, "verb " + form + " not in dictionary");
      return std::nullopt;
    }
    bool passive = IsPassive(vp);
    Note(vp, "verb " + entry->lemma + " (" + form + "), " +
                 (passive ? "passive" : "active"));

    PatternSites sites = CollectSites(vp, passive);
    const VerbPattern *best = nullptr;
    for (size_t i = 0; i < entry->patterns.size(); ++i) {
      const VerbPattern &pattern = entry->patterns[i];
      std::string failed = FailingPart(pattern, sites);
      std::string origin = i < entry->pattern_origins.size()
                               ? " (" + entry->pattern_origins[i].ToString() +
                                     ")"
                               : "";
      if (!failed.empty()) {
        Note(vp, "pattern \"" + pattern.source_text + "\"" + origin +
                     " failed at " + failed);
        continue;
      }
      Note(vp, "pattern \"" + pattern.source_text + "\"" + origin +
                   " matched");
      if (!best || std::pair(pattern.PartCount(), pattern.TokenCount()) >
                       std::pair(best->PartCount(), best->TokenCount())) {
        best = &pattern;
      }
    }
    if (best) {
      Note(vp, "code " + best->code.ToString() + " from pattern \"" +
                   best->source_text + "\"");
      return CodeMatch{best->code, entry, best};
    }
    if (entry->base_code) {
      Note(vp, "code " + entry->base_code->ToString() + " from base entry " +
                   entry->lemma);
      return CodeMatch{*entry->base_code, entry, nullptr};
    }
    Note(vp, "no pattern matched and " + entry->lemma + " has no base code");
    return std::nullopt;
  }

  // Combines source, verb code and complements into events, or passes
  // actors upward when the verb codes nothing.
  Meaning VerbPhraseMeaning(NodeId vp) {
    bool passive = IsPassive(vp);
    auto code = MatchVerbCode(vp);

    std::vector<std::string> sources;
    std::optional<NodeId> agent_phrase;
    if (passive) {
      for (std::string_view prep : {"BY", "FROM", "IN"}) {
        for (NodeId child : tree_.children(vp)) {
          if (agent_phrase) break;
          if (tree_.kind(child) != NodeKind::kPP ||
              tree_.PrepositionOf(child) != prep) {
            continue;
          }
          std::vector<std::string> codes = MeaningOf(child).ActorCodes();
          if (codes.empty()) continue;
          agent_phrase = child;
          sources = codes;
          Note(vp, "source " + Join(codes) + " from " + std::string(prep) +
                       "-PP (passive agent)");
        }
      }
      if (!agent_phrase) Note(vp, "passive verb left without a subject");
    } else {
      sources = UpperActors(vp);
      if (!sources.empty()) {
        Note(vp, "source " + Join(sources) + " from subject " +
                     Describe(*tree_.SubjectOf(vp)));
      }
    }

    Meaning lower = LowerMeaning(vp, agent_phrase);
    std::vector<std::string> targets = lower.actors;
    if (passive) {
      std::vector<std::string> subject = UpperActors(vp);
      if (!subject.empty()) {
        Note(vp, "target " + Join(subject) + " from surface subject");
        targets = subject;
      }
    }
    if (sources.empty()) sources.push_back(std::string(kUnbound));

    Meaning meaning;
    if (code) {
      const std::string &lemma = code->verb->lemma;
      if (!lower.events.empty()) {
        for (const Event &inner : lower.events) {
          for (const auto &source : sources) {
            AddUpperEvent(vp, source, *code, inner, &meaning.events);
          }
        }
      } else if (!targets.empty()) {
        for (const auto &source : sources) {
          for (const auto &target : targets) {
            meaning.events.push_back(MakeEvent(source, target, code->code,
                                               lemma, vp));
          }
        }
      } else {
        for (const auto &source : sources) {
          meaning.events.push_back(MakeEvent(source, std::string(kUnbound),
                                             code->code, lemma, vp));
        }
      }
    } else if (!lower.events.empty()) {
      // Fill in subjects the lower clause could not find.
      for (const Event &inner : lower.events) {
        if (inner.source != kUnbound) {
          meaning.events.push_back(inner);
          continue;
        }
        if (inner.origin && IsPassive(*inner.origin)) {
          Note(vp, "passive agent of " + Describe(*inner.origin) +
                       " stays unbound");
          meaning.events.push_back(inner);
          continue;
        }
        for (const auto &source : sources) {
          Event filled = inner;
          filled.source = source;
          meaning.events.push_back(std::move(filled));
        }
      }
    } else {
      meaning.actors = lower.actors;
    }

    if (lower.negated) {
      for (Event &event : meaning.events) {
        if (!event.code) continue;
        try {
          InternalCode flipped = ToggleNegation(*event.code);
          Note(vp, "negation " + event.code->ToString() + " -> " +
                       flipped.ToString());
          event.code = flipped;
        } catch (const CodeError &e) {
          Note(vp, std::string("negation not applied: ") + e.what());
        }
      }
    }
    for (const Event &event : meaning.events) {
      Note(vp, "event " + FormatEvent(event));
    }
    return meaning;
  }

 private:
  struct PatternSites {
    std::vector<NodeId> pre_heads;   // part 1
    std::vector<NodeId> pre_preps;   // part 2
    std::vector<NodeId> post_heads;  // part 3
    std::vector<NodeId> post_preps;  // part 4
  };

  PatternSites CollectSites(NodeId vp, bool passive) const {
    PatternSites sites;
    auto subject = tree_.SubjectOf(vp);
    std::vector<NodeId> subject_heads;
    if (subject) {
      if (auto head = tree_.FindHead(*subject)) subject_heads.push_back(*head);
    }
    std::vector<NodeId> object_heads;
    for (NodeId child : tree_.children(vp)) {
      const ParseNode &c = tree_.node(child);
      if (c.kind == NodeKind::kNP) {
        if (auto head = tree_.FindHead(child)) object_heads.push_back(*head);
      } else if (c.kind == NodeKind::kPP) {
        sites.post_preps.push_back(child);
      } else if (c.is_word() && c.category == "RP") {
        object_heads.push_back(child);
      } else if (c.category == "PRT") {
        for (NodeId w : c.children) object_heads.push_back(w);
      }
    }
    if (passive) {
      for (std::string_view prep : {"BY", "FROM", "IN"}) {
        for (NodeId pp : sites.post_preps) {
          if (tree_.PrepositionOf(pp) != prep) continue;
          for (NodeId child : tree_.children(pp)) {
            if (tree_.kind(child) != NodeKind::kNP) continue;
            if (auto head = tree_.FindHead(child)) {
              sites.pre_heads.push_back(*head);
            }
          }
        }
      }
      sites.post_heads = subject_heads;
      for (NodeId head : object_heads) {
        if (tree_.node(head).category == "RP") sites.post_heads.push_back(head);
      }
    } else {
      sites.pre_heads = subject_heads;
      sites.post_heads = object_heads;
    }
    NodeId top = tree_.TopOfVerbChain(vp);
    if (auto clause = tree_.parent(top);
        clause && tree_.kind(*clause) == NodeKind::kS) {
      for (NodeId child : tree_.children(*clause)) {
        if (tree_.node(child).index >= tree_.node(top).index) break;
        if (tree_.kind(child) == NodeKind::kPP) sites.pre_preps.push_back(child);
      }
    }
    return sites;
  }

  // A head word matches a noun spec when its token matches the spec head and
  // the spec's other words appear, in order, earlier in the head's phrase.
  bool NounMatches(const NounSpec &spec, NodeId head) const {
    const ParseNode &word = tree_.node(head);
    if (!store_.TokenMatches(spec.head, word.token)) return false;
    if (spec.extra.empty()) return true;
    auto phrase = word.parent;
    if (!phrase) return false;
    const auto &leaves = tree_.leaves();
    size_t next = 0;
    for (uint32_t i = tree_.node(*phrase).first_token;
         i < word.first_token && next < spec.extra.size(); ++i) {
      if (store_.TokenMatches(spec.extra[next], tree_.node(leaves[i]).token)) {
        ++next;
      }
    }
    return next == spec.extra.size();
  }

  bool PrepMatches(const PrepSpec &spec, NodeId pp) const {
    if (!store_.TokenMatches(spec.prep, tree_.PrepositionOf(pp))) return false;
    for (NodeId child : tree_.children(pp)) {
      if (tree_.kind(child) != NodeKind::kNP) continue;
      auto head = tree_.FindHead(child);
      if (head && NounMatches(spec.noun, *head)) return true;
    }
    return false;
  }

  // Each spec must claim a distinct site.
  template <typename Spec, typename Matches>
  static bool AssignAll(const std::vector<Spec> &specs,
                        const std::vector<NodeId> &sites, Matches matches) {
    std::vector<bool> used(sites.size(), false);
    for (const Spec &spec : specs) {
      bool found = false;
      for (size_t i = 0; i < sites.size() && !found; ++i) {
        if (!used[i] && matches(spec, sites[i])) used[i] = found = true;
      }
      if (!found) return false;
    }
    return true;
  }

  // Empty when the pattern matches, else the name of the first failing part.
  std::string FailingPart(const VerbPattern &pattern,
                          const PatternSites &sites) const {
    auto noun = [this](const NounSpec &s, NodeId n) { return NounMatches(s, n); };
    auto prep = [this](const PrepSpec &s, NodeId n) { return PrepMatches(s, n); };
    if (!AssignAll(pattern.pre_nouns, sites.pre_heads, noun)) {
      return "pre-verb nouns";
    }
    if (!AssignAll(pattern.pre_preps, sites.pre_preps, prep)) {
      return "pre-verb prepositions";
    }
    if (!AssignAll(pattern.post_nouns, sites.post_heads, noun)) {
      return "post-verb nouns";
    }
    if (!AssignAll(pattern.post_preps, sites.post_preps, prep)) {
      return "post-verb prepositions";
    }
    return "";
  }

  void AddUpperEvent(NodeId vp, const std::string &source,
                     const CodeMatch &code, const Event &inner,
                     std::vector<Event> *out) {
    size_t rule_index = 0;
    if (auto transformed =
            MatchTransform(source, code.code, code.verb->lemma, inner,
                           store_.transforms(), &rule_index)) {
      std::string where;
      if (rule_index < store_.transform_origins().size()) {
        where = " (" + store_.transform_origins()[rule_index].ToString() + ")";
      }
      Note(vp, "transformation \"" +
                   store_.transforms()[rule_index].source_text + "\"" + where +
                   " applied to " + FormatEvent(inner) + " -> " +
                   FormatEvent(*transformed));
      out->push_back(std::move(*transformed));
      return;
    }
    if (!inner.code) {
      out->push_back(MakeEvent(source, inner.target, code.code,
                               code.verb->lemma, vp));
      return;
    }
    try {
      InternalCode combined = Combine(code.code, *inner.code);
      Note(vp, "combination " + code.code.ToString() + " + " +
                   inner.code->ToString() + " = " + combined.ToString());
      out->push_back(
          MakeEvent(source, inner.target, combined, code.verb->lemma, vp));
    } catch (const CodeError &e) {
      Note(vp, std::string("combination failed: ") + e.what());
      out->push_back(inner);
      out->push_back(MakeEvent(source, std::string(kUnbound), code.code,
                               code.verb->lemma, vp));
    }
  }

  static Event MakeEvent(const std::string &source, const std::string &target,
                         InternalCode code, const std::string &verb,
                         NodeId origin) {
    Event event;
    event.source = source;
    event.target = target;
    event.code = code;
    event.verb = verb;
    event.origin = origin;
    return event;
  }

  Meaning NounLikeMeaning(NodeId id) {
    Meaning meaning;
    std::vector<std::string> words;
    std::optional<NodeId> pronoun;
    for (NodeId child : tree_.children(id)) {
      const ParseNode &c = tree_.node(child);
      if (!c.is_word() || c.category == "DT") continue;
      if (IsPronounTag(c.category)) {
        if (!pronoun) pronoun = child;
        continue;
      }
      words.push_back(c.token);
    }

    std::optional<std::string> agent;
    if (!words.empty()) {
      if (auto match = store_.MatchAgentEntry(words)) {
        agent = match->entry->code;
        Note(id, "agent " + Join(match->entry->phrase) + " -> " + *agent +
                     " (" + match->entry->origin.ToString() + ")");
      }
      if (auto match = store_.MatchActor(words, tree_.date())) {
        if (match->code) {
          Note(id, "actor " + Join(match->entry->phrase) + " -> " +
                       *match->code + " (" + match->entry->origin.ToString() +
                       ")");
          meaning.actors.push_back(*match->code + agent.value_or(""));
          return meaning;
        }
        Note(id, "actor " + Join(match->entry->phrase) + " has no code on " +
                     tree_.date().ToString());
      }
    }
    if (pronoun) {
      Meaning bound = MeaningOf(*pronoun);
      if (!bound.actors.empty()) {
        for (const auto &actor : bound.actors) {
          meaning.actors.push_back(actor + agent.value_or(""));
        }
        return meaning;
      }
    }

    for (NodeKind kind : {NodeKind::kNP, NodeKind::kPP, NodeKind::kVP}) {
      std::vector<std::string> actors;
      for (NodeId child : tree_.children(id)) {
        if (tree_.kind(child) != kind) continue;
        Meaning m = MeaningOf(child);
        if (!m.actors.empty()) {
          Append(&actors, m.actors);
        } else if (m.agent && !agent) {
          agent = m.agent;
        }
      }
      if (!actors.empty()) {
        for (auto &actor : actors) actor += agent.value_or("");
        meaning.actors = std::move(actors);
        return meaning;
      }
    }
    meaning.agent = agent;
    return meaning;
  }

  Meaning WordMeaning(NodeId word) {
    const ParseNode &w = tree_.node(word);
    if (IsPronounTag(w.category)) return ResolvePronoun(word);
    if (!IsNounTag(w.category)) return Meaning{};
    Meaning meaning;
    std::vector<std::string> tokens = {w.token};
    if (auto match = store_.MatchActor(tokens, tree_.date());
        match && match->code) {
      meaning.actors.push_back(*match->code);
    } else if (auto agent = store_.MatchAgentEntry(tokens)) {
      meaning.agent = agent->entry->code;
    }
    return meaning;
  }

  // A clause means the events of its verb phrases (and of nested clauses);
  // failing that, the actors its verb phrases pass up.
  Meaning ClauseMeaning(NodeId s) {
    Meaning meaning;
    std::vector<std::string> actors;
    for (NodeId child : tree_.children(s)) {
      NodeKind kind = tree_.kind(child);
      if (kind != NodeKind::kVP && kind != NodeKind::kS) continue;
      Meaning m = MeaningOf(child);
      Append(&meaning.events, m.events);
      if (kind == NodeKind::kVP) Append(&actors, m.actors);
    }
    if (meaning.events.empty()) meaning.actors = std::move(actors);
    return meaning;
  }

  // Containers with no coding role of their own (ADJP, PRN, ROOT, ...).
  Meaning TransparentMeaning(NodeId id) {
    Meaning meaning;
    for (NodeId child : tree_.children(id)) {
      NodeKind kind = tree_.kind(child);
      if (kind == NodeKind::kS || kind == NodeKind::kVP) {
        Append(&meaning.events, MeaningOf(child).events);
      }
    }
    if (!meaning.events.empty()) return meaning;
    return NounLikeMeaning(id);
  }

  template <typename T>
  static void Append(std::vector<T> *to, const std::vector<T> &from) {
    to->insert(to->end(), from.begin(), from.end());
  }

  static std::string Join(const std::vector<std::string> &parts,
                          std::string_view separator = " ") {
    std::string out;
    for (const auto &part : parts) {
      if (!out.empty()) out += separator;
      out += part;
    }
    return out;
  }

  std::string FormatEvent(const Event &event) const {
    std::string code = event.code ? event.code->ToString() : "---";
    return "(" + event.source + " " + event.target + " " + code + ")";
  }

  std::string Describe(NodeId id) const {
    std::string text = tree_.Text(id);
    if (text.size() > 40) text = text.substr(0, 37) + "...";
    return tree_.node(id).category + " \"" + text + "\"";
  }

  void Note(NodeId id, const std::string &message) {
    if (trace_) trace_->Add("[" + Describe(id) + "] " + message);
  }

  const ParseTree &tree_;
  const DictionaryStore &store_;
  Trace *trace_;
  std::unordered_map<NodeId, Meaning> cache_;
  std::unordered_set<NodeId> in_progress_;
};

}  // namespace treecoder
