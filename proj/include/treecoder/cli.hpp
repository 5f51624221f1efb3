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

// Batch driver: streams records through the coder with a worker pool and
// writes results in input order.

#pragma once

#include <algorithm>
#include <atomic>
#include <fstream>
#include <iostream>
#include <set>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "treecoder/date.hpp"
#include "treecoder/dictionary.hpp"
#include "treecoder/pipeline.hpp"

namespace treecoder {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class OutputFormat { kJsonLines, kCsv };

struct RunConfig {
  std::vector<std::string> inputs;  // "-" reads stdin
  std::string output = "-";         // "-" writes stdout
  DictionaryPaths dictionaries;
  std::string default_date = "19700101";
  OutputFormat format = OutputFormat::kJsonLines;
  CodingOptions filters;
  int workers = 1;
  bool trace = false;
  std::set<std::string> trace_ids;  // empty traces every record
  size_t chunk_size = 1024;
};

struct RunSummary {
  size_t coded = 0;
  size_t no_events = 0;
  size_t discarded = 0;
  size_t parse_errors = 0;

  size_t total() const { return coded + no_events + discarded + parse_errors; }

  void Count(SentenceStatus status) {
    switch (status) {
      case SentenceStatus::kCoded:
        ++coded;
        break;
      case SentenceStatus::kNoEvents:
        ++no_events;
        break;
      case SentenceStatus::kDiscarded:
        ++discarded;
        break;
      case SentenceStatus::kParseError:
        ++parse_errors;
        break;
    }
  }

  std::string ToString() const {
    return "coded=" + std::to_string(coded) +
           " no_events=" + std::to_string(no_events) +
           " discarded=" + std::to_string(discarded) +
           " parse_error=" + std::to_string(parse_errors) +
           " total=" + std::to_string(total());
  }
};

// Fills unset dictionary paths from a directory holding the standard file
// names. Agents and discard files are optional there.
inline void ApplyDictionaryDirectory(const std::string &dir,
                                     DictionaryPaths *paths) {
  if (dir.empty()) return;
  auto in_dir = [&](const char *name) { return dir + "/" + name; };
  auto exists = [](const std::string &path) {
    return static_cast<bool>(std::ifstream(path));
  };
  if (paths->actors.empty()) paths->actors = in_dir("actors.txt");
  if (paths->verbs.empty()) paths->verbs = in_dir("verbs.txt");
  if (paths->code_map.empty()) paths->code_map = in_dir("cameo_map.tsv");
  if (paths->agents.empty() && exists(in_dir("agents.txt"))) {
    paths->agents = in_dir("agents.txt");
  }
  if (paths->discard.empty() && exists(in_dir("discard.txt"))) {
    paths->discard = in_dir("discard.txt");
  }
}

inline void ValidateConfig(const RunConfig &config) {
  if (config.workers < 1) throw ConfigError("--workers must be at least 1");
  if (config.chunk_size < 1) throw ConfigError("chunk size must be positive");
  if (!Date::Parse(config.default_date)) {
    throw ConfigError("--default-date must be a valid YYYYMMDD date, got '" +
                      config.default_date + "'");
  }
  if (config.dictionaries.actors.empty()) throw ConfigError("--actors is required");
  if (config.dictionaries.verbs.empty()) throw ConfigError("--verbs is required");
  if (config.dictionaries.code_map.empty()) {
    throw ConfigError("--code-map is required");
  }
}

// Codes every record of the configured inputs with a preloaded store.
// Returns the summary; per-record failures are counted, not thrown.
inline RunSummary RunWithStore(const RunConfig &config,
                               const DictionaryStore &store, std::ostream &out,
                               std::ostream &trace_out) {
  Date default_date = Date::FromString(config.default_date);
  RunSummary summary;
  if (config.format == OutputFormat::kCsv) out << kCsvHeader << '\n';

  struct Pending {
    std::string line;
    size_t number;
  };
  std::vector<Pending> chunk;
  std::vector<CodedSentence> results;
  size_t line_number = 0;

  auto flush = [&] {
    results.assign(chunk.size(), CodedSentence{});
    std::atomic<size_t> next{0};
    auto work = [&] {
      for (size_t i = next++; i < chunk.size(); i = next++) {
        results[i] = CodeRecord(chunk[i].line, chunk[i].number, default_date,
                                store, config.filters, config.trace);
        if (!config.trace_ids.empty() &&
            !config.trace_ids.count(results[i].sentence_id)) {
          results[i].trace.clear();
        }
      }
    };
    size_t threads = std::min<size_t>(config.workers, chunk.size());
    if (threads <= 1) {
      work();
    } else {
      std::vector<std::thread> pool;
      for (size_t t = 0; t < threads; ++t) pool.emplace_back(work);
      for (auto &thread : pool) thread.join();
    }
    for (const CodedSentence &result : results) {
      summary.Count(result.status);
      if (config.format == OutputFormat::kCsv) {
        out << ToCsvRows(result);
      } else {
        out << ToJsonLine(result) << '\n';
      }
      if (config.trace && !result.trace.empty()) {
        trace_out << "== " << result.sentence_id << '\n';
        for (const auto &line : result.trace) trace_out << line << '\n';
      }
    }
    chunk.clear();
  };

  auto consume = [&](std::istream &in) {
    std::string line;
    while (std::getline(in, line)) {
      ++line_number;
      if (detail::Trim(line).empty()) continue;
      chunk.push_back({std::move(line), line_number});
      if (chunk.size() >= config.chunk_size) flush();
    }
  };

  std::vector<std::string> inputs = config.inputs;
  if (inputs.empty()) inputs.push_back("-");
  for (const auto &path : inputs) {
    if (path == "-") {
      consume(std::cin);
      continue;
    }
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open input '" + path + "'");
    consume(in);
  }
  if (!chunk.empty()) flush();
  out.flush();
  return summary;
}

// Loads dictionaries, then codes every record. Throws ConfigError or
// DictionaryError before any input is read.
inline RunSummary Run(const RunConfig &config, std::ostream &out,
                      std::ostream &trace_out) {
  ValidateConfig(config);
  for (const auto &path : config.inputs) {
    if (path != "-" && !std::ifstream(path)) {
      throw ConfigError("cannot open input '" + path + "'");
    }
  }
  DictionaryStore store = DictionaryStore::Load(config.dictionaries);
  return RunWithStore(config, store, out, trace_out);
}

// Same, writing to config.output ("-" for stdout).
inline RunSummary Run(const RunConfig &config, std::ostream &trace_out) {
  if (config.output == "-") return Run(config, std::cout, trace_out);
  ValidateConfig(config);
  DictionaryStore store = DictionaryStore::Load(config.dictionaries);
  std::ofstream out(config.output, std::ios::binary);
  if (!out) throw ConfigError("cannot open output '" + config.output + "'");
  for (const auto &path : config.inputs) {
    if (path != "-" && !std::ifstream(path)) {
      throw ConfigError("cannot open input '" + path + "'");
    }
  }
  return RunWithStore(config, store, out, trace_out);
}

}  // namespace treecoder
