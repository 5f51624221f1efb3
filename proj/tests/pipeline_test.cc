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

#include <string>
#include <vector>

#include "fixtures.hpp"
#include "json.hpp"

namespace treecoder {
namespace {

using testing::SampleStore;
using testing::Tree;

CodedSentence Code(const std::string &text, CodingOptions options = {}) {
  return CodeSentence(Tree(text), SampleStore(), options);
}

TEST(PipelineTest, GoldenSentence) {
  CodedSentence result = Code(testing::kGoldenTree);
  EXPECT_EQ(result.status, SentenceStatus::kCoded);
  ASSERT_EQ(result.events.size(), 1u);
  EXPECT_EQ(result.events[0], (CodedEvent{"ISR", "PSEGZA", "112"}));
}

TEST(PipelineTest, ProtestersDestroyMonument) {
  for (const char *text :
       {testing::kActiveMonument, testing::kPassiveMonument}) {
    CodedSentence result = Code(text);
    ASSERT_EQ(result.events.size(), 1u) << text;
    EXPECT_EQ(result.events[0], (CodedEvent{"---OPP", "HST", "145"}));
  }
}

TEST(PipelineTest, Statuses) {
  EXPECT_EQ(Code("(S (NP (NNP Israel)) (. .))").status,
            SentenceStatus::kNoEvents);
  EXPECT_EQ(Code("(NP (NNP Israel))").status, SentenceStatus::kNoEvents);
  EXPECT_EQ(Code("(S (NP (NNP Egypt)) (VP (VBD won) (NP (DT the) (NNP World) "
                 "(NNP Cup))))")
                .status,
            SentenceStatus::kDiscarded);
}

TEST(PipelineTest, SelfEventsAreDropped) {
  CodedSentence result = Code(testing::kReflexive);
  for (const auto &event : result.events) {
    EXPECT_NE(event.source, event.target);
  }
}

TEST(PipelineTest, IncompleteEventsFiltered) {
  const char *text =
      "(S (NP (DT the) (NN monument)) (VP (VBD was) (VP (VBN destroyed))))";
  EXPECT_EQ(Code(text).status, SentenceStatus::kNoEvents);
  CodingOptions relaxed;
  relaxed.require_source = false;
  CodedSentence result = Code(text, relaxed);
  ASSERT_EQ(result.events.size(), 1u);
  EXPECT_EQ(result.events[0], (CodedEvent{"---", "HST", "180"}));
}

TEST(PipelineTest, CoordinatedClauses) {
  CodedSentence result = Code(
      "(S (S (NP (NNP Egypt)) (VP (VBD met) (NP (NNP Israel)))) (, ,) "
      "(CC and) (S (NP (NNP Iraq)) (VP (VBD attacked) (NP (NNP Israel)))) "
      "(. .))");
  ASSERT_EQ(result.events.size(), 2u);
  EXPECT_EQ(result.events[0], (CodedEvent{"EGY", "ISR", "040"}));
  EXPECT_EQ(result.events[1], (CodedEvent{"IRQ", "ISR", "190"}));
}

TEST(PipelineTest, FanOutAndDedup) {
  CodedSentence result = Code(
      "(S (NP (NNP Egypt)) (VP (VBD met) (NP (NP (NNP Israel)) (CC and) "
      "(NP (NNP Iraq)) (CC and) (NP (NNP Israel)))))");
  ASSERT_EQ(result.events.size(), 2u);
  EXPECT_EQ(result.events[0], (CodedEvent{"EGY", "ISR", "040"}));
  EXPECT_EQ(result.events[1], (CodedEvent{"EGY", "IRQ", "040"}));
}

TEST(PipelineTest, RecordsAndFormats) {
  Date fallback = Date::FromString("20140101");
  nlohmann::json record = {
      {"id", "s1"}, {"date", "20140102"}, {"parse", testing::kGoldenTree}};
  CodedSentence coded = CodeRecord(record.dump(), 1, fallback, SampleStore());
  EXPECT_EQ(coded.sentence_id, "s1");
  EXPECT_EQ(coded.date, "20140102");
  EXPECT_EQ(ToJsonLine(coded),
            "{\"id\":\"s1\",\"date\":\"20140102\",\"status\":\"coded\","
            "\"events\":[{\"source\":\"ISR\",\"target\":\"PSEGZA\","
            "\"code\":\"112\"}]}");
  EXPECT_EQ(ToCsvRows(coded), "s1,20140102,ISR,PSEGZA,112\n");

  CodedSentence bare = CodeRecord(testing::kGoldenTree, 7, fallback,
                                  SampleStore());
  EXPECT_EQ(bare.sentence_id, "line-7");
  EXPECT_EQ(bare.date, "20140101");
  EXPECT_EQ(bare.status, SentenceStatus::kCoded);

  CodedSentence broken =
      CodeRecord("{\"id\":\"x\",\"parse\":\"(S (NP\"}", 3, fallback,
                 SampleStore());
  EXPECT_EQ(broken.status, SentenceStatus::kParseError);
  EXPECT_EQ(broken.sentence_id, "x");
  auto json = nlohmann::json::parse(ToJsonLine(broken));
  EXPECT_EQ(json["status"], "parse_error");
  EXPECT_TRUE(json["events"].empty());
  EXPECT_FALSE(json["error"].get<std::string>().empty());
  EXPECT_EQ(ToCsvRows(broken), "");

  EXPECT_EQ(CodeRecord("{not json", 4, fallback, SampleStore()).status,
            SentenceStatus::kParseError);
  EXPECT_EQ(CodeRecord("{\"id\":\"d\",\"date\":\"20141340\",\"parse\":\"(S)\"}",
                       5, fallback, SampleStore())
                .status,
            SentenceStatus::kParseError);
  EXPECT_EQ(CsvField("a,b"), "\"a,b\"");
}

TEST(PipelineTest, TraceRecordsOnlyWhenAsked) {
  Date fallback = Date::FromString("20140101");
  EXPECT_TRUE(
      CodeRecord(testing::kGoldenTree, 1, fallback, SampleStore()).trace.empty());
  CodedSentence traced = CodeRecord(testing::kGoldenTree, 1, fallback,
                                    SampleStore(), {}, true);
  EXPECT_FALSE(traced.trace.empty());
  CodedSentence one_word =
      CodeRecord("(NP (NNP Tuesday))", 2, fallback, SampleStore(), {}, true);
  for (const auto &line : one_word.trace) {
    EXPECT_EQ(line.find("verb "), std::string::npos) << line;
  }
}

}  // namespace
}  // namespace treecoder
