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

#include <gtest/gtest.h>
#include <sys/wait.h>
#include <unistd.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "json.hpp"

namespace treecoder {
namespace {

namespace fs = std::filesystem;
using testing::DataPath;
using testing::ReadAll;

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("treecoder_cli_" + std::to_string(::getpid()) + "_" +
            ::testing::UnitTest::GetInstance()->current_test_info()->name());
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string Path(const std::string &name) const {
    return (dir_ / name).string();
  }

  void Write(const std::string &name, const std::string &text) const {
    std::ofstream(Path(name), std::ios::binary) << text;
  }

  // Runs the tool with the sample dictionaries; returns the exit status.
  int RunTool(const std::string &args, bool with_dicts = true) const {
    std::string cmd = std::string(TREECODER_CLI) + " " + args;
    if (with_dicts) {
      cmd += " --actors " + DataPath("actors.txt") + " --agents " +
             DataPath("agents.txt") + " --verbs " + DataPath("verbs.txt") +
             " --discard " + DataPath("discard.txt") + " --code-map " +
             DataPath("cameo_map.tsv");
    }
    cmd += " 2> " + Path("stderr.txt");
    int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  }

  std::string FiveRecords() const {
    auto record = [](const std::string &id, const std::string &parse) {
      nlohmann::ordered_json j = {
          {"id", id}, {"date", "20140101"}, {"parse", parse}};
      return j.dump() + "\n";
    };
    return record("golden", testing::kGoldenTree) +
           record("active", testing::kActiveMonument) +
           record("discard",
                  "(S (NP (NNP Egypt)) (VP (VBD won) (NP (DT the) (NNP World) "
                  "(NNP Cup))))") +
           record("broken", "(S (NP (NNP Egypt))") +
           record("quiet", "(S (NP (NNP Egypt)) (VP (VBD slept)))");
  }

  fs::path dir_;
};

TEST_F(CliTest, FiveRecordCorpus) {
  Write("in.jsonl", FiveRecords());
  ASSERT_EQ(RunTool("--input " + Path("in.jsonl") + " --output " +
                    Path("out.jsonl")),
            0);
  std::istringstream out(ReadAll(Path("out.jsonl")));
  std::vector<std::string> statuses;
  for (std::string line; std::getline(out, line);) {
    statuses.push_back(nlohmann::json::parse(line)["status"]);
  }
  EXPECT_EQ(statuses, (std::vector<std::string>{"coded", "coded", "discarded",
                                                "parse_error", "no_events"}));
  std::string summary = ReadAll(Path("stderr.txt"));
  EXPECT_NE(summary.find("coded=2 no_events=1 discarded=1 parse_error=1 "
                         "total=5"),
            std::string::npos)
      << summary;
}

TEST_F(CliTest, MissingVerbsFileFailsBeforeReading) {
  Write("in.jsonl", FiveRecords());
  std::string args = "--input " + Path("in.jsonl") + " --output " +
                     Path("out.jsonl") + " --actors " + DataPath("actors.txt") +
                     " --verbs " + Path("missing.txt") + " --code-map " +
                     DataPath("cameo_map.tsv");
  EXPECT_NE(RunTool(args, false), 0);
  EXPECT_FALSE(fs::exists(Path("out.jsonl")));
  EXPECT_NE(ReadAll(Path("stderr.txt")).find("missing.txt"), std::string::npos);
}

TEST_F(CliTest, EmptyInput) {
  Write("empty.jsonl", "");
  ASSERT_EQ(RunTool("--input " + Path("empty.jsonl") + " --output " +
                    Path("out.jsonl")),
            0);
  EXPECT_EQ(ReadAll(Path("out.jsonl")), "");
  EXPECT_NE(ReadAll(Path("stderr.txt"))
                .find("coded=0 no_events=0 discarded=0 parse_error=0 total=0"),
            std::string::npos);
}

TEST_F(CliTest, CsvAndJsonlAgree) {
  Write("in.jsonl", FiveRecords());
  ASSERT_EQ(RunTool("--input " + Path("in.jsonl") + " --output " +
                    Path("out.jsonl")),
            0);
  ASSERT_EQ(RunTool("--input " + Path("in.jsonl") + " --output " +
                    Path("out.csv") + " --format csv"),
            0);
  std::vector<std::string> from_json;
  std::istringstream json_lines(ReadAll(Path("out.jsonl")));
  for (std::string line; std::getline(json_lines, line);) {
    auto j = nlohmann::json::parse(line);
    for (const auto &e : j["events"]) {
      from_json.push_back(j["id"].get<std::string>() + "," +
                          j["date"].get<std::string>() + "," +
                          e["source"].get<std::string>() + "," +
                          e["target"].get<std::string>() + "," +
                          e["code"].get<std::string>());
    }
  }
  std::vector<std::string> from_csv;
  std::istringstream csv(ReadAll(Path("out.csv")));
  std::string header;
  std::getline(csv, header);
  EXPECT_EQ(header, "id,date,source,target,code");
  for (std::string line; std::getline(csv, line);) from_csv.push_back(line);
  std::sort(from_json.begin(), from_json.end());
  std::sort(from_csv.begin(), from_csv.end());
  EXPECT_EQ(from_json, from_csv);
  EXPECT_EQ(from_csv.size(), 2u);
}

TEST_F(CliTest, PlainTreesConfigFileAndEnvironment) {
  Write("in.txt", std::string(testing::kGoldenTree) + "\n\n" +
                      testing::kActiveMonument + "\n");
  Write("run.ini", "output=" + Path("out.jsonl") +
                       "\ndefault-date=20140101\nworkers=2\n");
  std::string cmd = "TREECODER_DICTS=" + std::string(TREECODER_DATA_DIR) +
                    " " + TREECODER_CLI + " --config " + Path("run.ini") +
                    " --input " + Path("in.txt") + " 2> " +
                    Path("stderr.txt");
  int status = std::system(cmd.c_str());
  ASSERT_TRUE(WIFEXITED(status));
  ASSERT_EQ(WEXITSTATUS(status), 0) << ReadAll(Path("stderr.txt"));
  std::istringstream out(ReadAll(Path("out.jsonl")));
  std::string first, second;
  std::getline(out, first);
  std::getline(out, second);
  auto a = nlohmann::json::parse(first);
  auto b = nlohmann::json::parse(second);
  EXPECT_EQ(a["id"], "line-1");
  EXPECT_EQ(a["date"], "20140101");
  EXPECT_EQ(a["events"][0]["code"], "112");
  EXPECT_EQ(b["id"], "line-3");
  EXPECT_EQ(b["events"][0]["code"], "145");
}

TEST_F(CliTest, TraceGoesToStderr) {
  Write("in.jsonl", FiveRecords());
  ASSERT_EQ(RunTool("--input " + Path("in.jsonl") + " --output " +
                    Path("out.jsonl") + " --trace-id golden"),
            0);
  std::string trace = ReadAll(Path("stderr.txt"));
  EXPECT_NE(trace.find("== golden"), std::string::npos);
  EXPECT_NE(trace.find("passive"), std::string::npos);
  EXPECT_NE(trace.find("transformation"), std::string::npos);
  EXPECT_EQ(trace.find("== active"), std::string::npos);
}

TEST_F(CliTest, BadFlags) {
  EXPECT_NE(RunTool("--workers 0 --input " + Path("none")), 0);
  EXPECT_NE(RunTool("--format xml"), 0);
  EXPECT_NE(RunTool("--default-date 2014"), 0);
}

TEST(RunTest, InProcessRun) {
  RunConfig config;
  config.dictionaries = testing::SamplePaths();
  config.workers = 3;
  config.chunk_size = 2;
  std::string in_path =
      (fs::temp_directory_path() / "treecoder_run_test.txt").string();
  std::ofstream(in_path) << testing::kGoldenTree << "\n"
                         << testing::kPassiveMonument << "\n(S (NP\n";
  config.inputs = {in_path};
  std::ostringstream out, trace;
  RunSummary summary = treecoder::Run(config, out, trace);
  fs::remove(in_path);
  EXPECT_EQ(summary.coded, 2u);
  EXPECT_EQ(summary.parse_errors, 1u);
  EXPECT_EQ(summary.total(), 3u);
  std::string written = out.str();
  EXPECT_EQ(std::count(written.begin(), written.end(), '\n'), 3);
  config.workers = 0;
  EXPECT_THROW(treecoder::Run(config, out, trace), ConfigError);
}

}  // namespace
}  // namespace treecoder
