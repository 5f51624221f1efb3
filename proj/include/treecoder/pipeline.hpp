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

// Sentence-level coding: discard filtering, the top-level meaning call,
// completeness filtering and CAMEO conversion. Also the record formats read
// and written by the command line tool.

#pragma once

#include <algorithm>
#include <exception>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "json.hpp"
#include "treecoder/code_algebra.hpp"
#include "treecoder/date.hpp"
#include "treecoder/dictionary.hpp"
#include "treecoder/semantics.hpp"
#include "treecoder/trace.hpp"
#include "treecoder/tree.hpp"

namespace treecoder {

enum class SentenceStatus { kCoded, kNoEvents, kDiscarded, kParseError };

inline std::string_view StatusName(SentenceStatus status) {
  switch (status) {
    case SentenceStatus::kCoded:
      return "coded";
    case SentenceStatus::kNoEvents:
      return "no_events";
    case SentenceStatus::kDiscarded:
      return "discarded";
    case SentenceStatus::kParseError:
      return "parse_error";
  }
  return "";
}

struct CodedEvent {
  std::string source;
  std::string target;
  std::string cameo;

  friend bool operator==(const CodedEvent &, const CodedEvent &) = default;
};

struct CodedSentence {
  std::string sentence_id;
  std::string date;  // YYYYMMDD as given
  std::vector<CodedEvent> events;
  SentenceStatus status = SentenceStatus::kNoEvents;
  std::string error;  // set for kParseError
  std::vector<std::string> trace;
};

struct CodingOptions {
  bool require_source = true;
  bool require_target = true;
};

// Verb phrases whose meanings code the sentence: the first VP child of the
// root clause, or of each top-level clause when clauses are coordinated.
inline std::vector<NodeId> TopVerbPhrases(const ParseTree &tree) {
  NodeId node = tree.root();
  // Step through wrappers such as ROOT or the empty PTB label.
  while (tree.kind(node) == NodeKind::kOther) {
    std::optional<NodeId> next;
    for (NodeId child : tree.children(node)) {
      if (tree.kind(child) == NodeKind::kS ||
          tree.kind(child) == NodeKind::kOther) {
        next = child;
        break;
      }
    }
    if (!next) return {};
    node = *next;
  }
  if (tree.kind(node) != NodeKind::kS) return {};

  std::vector<NodeId> clauses;
  for (NodeId child : tree.children(node)) {
    if (tree.kind(child) == NodeKind::kS) clauses.push_back(child);
  }
  if (clauses.empty()) clauses.push_back(node);

  std::vector<NodeId> phrases;
  for (NodeId clause : clauses) {
    for (NodeId child : tree.children(clause)) {
      if (tree.kind(child) == NodeKind::kVP) {
        phrases.push_back(child);
        break;
      }
    }
  }
  return phrases;
}

// Codes one parsed sentence.
inline CodedSentence CodeSentence(const ParseTree &tree,
                                  const DictionaryStore &store,
                                  const CodingOptions &options = {},
                                  Trace *trace = nullptr) {
  CodedSentence result;
  result.sentence_id = tree.sentence_id();
  result.date = tree.date().ToString();
  if (store.IsDiscard(tree)) {
    if (trace) trace->Add("sentence contains a discard phrase");
    result.status = SentenceStatus::kDiscarded;
    return result;
  }

  Analyzer analyzer(tree, store, trace);
  std::vector<Event> events;
  for (NodeId vp : TopVerbPhrases(tree)) {
    Meaning meaning = analyzer.MeaningOf(vp);
    events.insert(events.end(), meaning.events.begin(), meaning.events.end());
  }

  for (const Event &event : events) {
    if (!event.code) continue;
    if (options.require_source && event.source == kUnbound) continue;
    if (options.require_target && event.target == kUnbound) continue;
    if (event.source == event.target && !event.transformed) {
      if (trace) trace->Add("self event dropped: " + event.source);
      continue;
    }
    CodedEvent coded{event.source, event.target, ""};
    try {
      coded.cameo = store.codes().ToCameo(*event.code);
    } catch (const CodeError &e) {
      if (trace) trace->Add(std::string("event dropped: ") + e.what());
      continue;
    }
    if (std::find(result.events.begin(), result.events.end(), coded) ==
        result.events.end()) {
      if (trace) {
        trace->Add("final event " + coded.source + " " + coded.target + " " +
                   coded.cameo);
      }
      result.events.push_back(std::move(coded));
    }
  }
  result.status = result.events.empty() ? SentenceStatus::kNoEvents
                                        : SentenceStatus::kCoded;
  return result;
}

// One input line: a JSON record {id, date, parse} when it starts with '{',
// otherwise a bare bracketed tree. Never throws; failures become
// kParseError records.
inline CodedSentence CodeRecord(std::string_view line, size_t line_number,
                                Date default_date, const DictionaryStore &store,
                                const CodingOptions &options = {},
                                bool want_trace = false) {
  CodedSentence result;
  result.sentence_id = "line-" + std::to_string(line_number);
  result.date = default_date.ToString();
  std::string parse;
  try {
    std::string_view trimmed = detail::Trim(line);
    if (trimmed.starts_with("{")) {
      auto record = nlohmann::json::parse(trimmed);
      if (!record.is_object()) throw std::invalid_argument("not an object");
      if (record.contains("id")) {
        const auto &id = record["id"];
        result.sentence_id = id.is_string() ? id.get<std::string>() : id.dump();
      }
      if (record.contains("date")) {
        const auto &date = record["date"];
        result.date = date.is_string() ? date.get<std::string>() : date.dump();
      }
      if (!record.contains("parse") || !record["parse"].is_string()) {
        throw std::invalid_argument("record has no string field 'parse'");
      }
      parse = record["parse"].get<std::string>();
    } else {
      parse = std::string(trimmed);
    }
    auto date = Date::Parse(result.date);
    if (!date) throw std::invalid_argument("bad date '" + result.date + "'");
    ParseTree tree = ParseTree::Parse(parse, result.sentence_id, *date);
    Trace trace;
    result = CodeSentence(tree, store, options, want_trace ? &trace : nullptr);
    result.trace = trace.lines();
    return result;
  } catch (const std::exception &e) {
    result.status = SentenceStatus::kParseError;
    result.error = e.what();
    result.events.clear();
    return result;
  }
}

inline std::string ToJsonLine(const CodedSentence &sentence) {
  nlohmann::ordered_json out;
  out["id"] = sentence.sentence_id;
  out["date"] = sentence.date;
  out["status"] = StatusName(sentence.status);
  out["events"] = nlohmann::ordered_json::array();
  for (const auto &event : sentence.events) {
    nlohmann::ordered_json e;
    e["source"] = event.source;
    e["target"] = event.target;
    e["code"] = event.cameo;
    out["events"].push_back(std::move(e));
  }
  if (sentence.status == SentenceStatus::kParseError) {
    out["error"] = sentence.error;
  }
  return out.dump();
}

inline constexpr std::string_view kCsvHeader = "id,date,source,target,code";

inline std::string CsvField(std::string_view field) {
  if (field.find_first_of(",\"\n\r") == std::string_view::npos) {
    return std::string(field);
  }
  std::string quoted = "\"";
  for (char c : field) {
    if (c == '"') quoted += '"';
    quoted += c;
  }
  return quoted + "\"";
}

// One row per event, newline-terminated; empty for records with no events.
inline std::string ToCsvRows(const CodedSentence &sentence) {
  std::string out;
  for (const auto &event : sentence.events) {
    out += CsvField(sentence.sentence_id) + "," + CsvField(sentence.date) +
           "," + CsvField(event.source) + "," + CsvField(event.target) + "," +
           CsvField(event.cameo) + "\n";
  }
  return out;
}

}  // namespace treecoder
