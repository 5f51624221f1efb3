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

// Codes parsed sentences into event triples.
//
//   treecoder --input parses.jsonl --output events.jsonl
//       --actors actors.txt --agents agents.txt --verbs verbs.txt
//       --discard discard.txt --code-map cameo_map.tsv --workers 8

#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "treecoder/cli.hpp"

int main(int argc, char **argv) {
  treecoder::RunConfig config;
  std::vector<std::string> trace_ids;
  std::string format = "jsonl";

  CLI::App app{"Codes parsed news sentences into source/target/CAMEO events."};
  app.set_config("--config", "", "Read flags from a TOML/INI file")
      ->check(CLI::ExistingFile);
  app.add_option("--input", config.inputs,
                 "Input file(s) of JSON records or bare trees; '-' for stdin");
  app.add_option("--output", config.output, "Output file; '-' for stdout")
      ->capture_default_str();
  app.add_option("--actors", config.dictionaries.actors, "Actors dictionary");
  app.add_option("--agents", config.dictionaries.agents, "Agents dictionary");
  app.add_option("--verbs", config.dictionaries.verbs, "Verbs dictionary");
  app.add_option("--discard", config.dictionaries.discard,
                 "Discard phrase list");
  app.add_option("--code-map", config.dictionaries.code_map,
                 "CAMEO to internal code table");
  app.add_option("--default-date", config.default_date,
                 "Date for records without one (YYYYMMDD)")
      ->capture_default_str();
  app.add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"jsonl", "csv"}))
      ->capture_default_str();
  app.add_option("--workers", config.workers, "Worker threads")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--require-source", config.filters.require_source,
                 "Drop events without a source")
      ->capture_default_str();
  app.add_option("--require-target", config.filters.require_target,
                 "Drop events without a target")
      ->capture_default_str();
  app.add_flag("--trace", config.trace, "Write derivations to stderr");
  app.add_option("--trace-id", trace_ids,
                 "Only trace these sentence ids (implies --trace)");

  CLI11_PARSE(app, argc, argv);

  config.format = format == "csv" ? treecoder::OutputFormat::kCsv
                                  : treecoder::OutputFormat::kJsonLines;
  config.trace_ids.insert(trace_ids.begin(), trace_ids.end());
  if (!trace_ids.empty()) config.trace = true;
  if (const char *dir = std::getenv("TREECODER_DICTS")) {
    treecoder::ApplyDictionaryDirectory(dir, &config.dictionaries);
  }

  try {
    treecoder::RunSummary summary = treecoder::Run(config, std::cerr);
    std::cerr << summary.ToString() << '\n';
  } catch (const treecoder::ConfigError &e) {
    std::cerr << "treecoder: " << e.what() << '\n';
    return 2;
  } catch (const treecoder::DictionaryError &e) {
    std::cerr << "treecoder: " << e.what() << '\n';
    return 3;
  }
  return 0;
}
