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

#include <optional>
#include <string>
#include <vector>

#include "fixtures.hpp"
#include "oracles.hpp"

namespace treecoder {
namespace {

using testing::Tree;

std::optional<NodeId> FindByText(const ParseTree &tree, NodeKind kind,
                                 const std::string &text) {
  for (NodeId id = 0; id < tree.size(); ++id) {
    if (tree.kind(id) == kind && tree.Text(id) == text) return id;
  }
  return std::nullopt;
}

TEST(ParseTreeTest, ParsesGoldenTree) {
  ParseTree tree = Tree(testing::kGoldenTree);
  EXPECT_EQ(tree.kind(tree.root()), NodeKind::kS);
  std::vector<std::string> tokens = tree.Tokens();
  ASSERT_EQ(tokens.size(), 16u);
  EXPECT_EQ(tokens.front(), "ISRAEL");
  EXPECT_EQ(tokens[14], "TUESDAY");
  EXPECT_EQ(tokens.back(), ".");
  for (NodeId id = 0; id < tree.size(); ++id) {
    const ParseNode &n = tree.node(id);
    if (id != tree.root()) {
      ASSERT_TRUE(n.parent.has_value());
      EXPECT_EQ(tree.children(*n.parent)[n.index], id);
    }
    EXPECT_EQ(n.kind, ClassifyLabel(n.label));
    EXPECT_LT(n.first_token, n.end_token);
  }
}

TEST(ParseTreeTest, ClassifiesLabels) {
  EXPECT_EQ(ClassifyLabel("NP-SBJ"), NodeKind::kNP);
  EXPECT_EQ(ClassifyLabel("NP=2"), NodeKind::kNP);
  EXPECT_EQ(ClassifyLabel("VP"), NodeKind::kVP);
  EXPECT_EQ(ClassifyLabel("PP-LOC"), NodeKind::kPP);
  EXPECT_EQ(ClassifyLabel("SBAR"), NodeKind::kS);
  EXPECT_EQ(ClassifyLabel("SINV"), NodeKind::kS);
  EXPECT_EQ(ClassifyLabel("NN"), NodeKind::kWord);
  EXPECT_EQ(ClassifyLabel("-LRB-"), NodeKind::kWord);
  EXPECT_EQ(ClassifyLabel("ADJP"), NodeKind::kOther);
  EXPECT_EQ(ClassifyLabel("ROOT"), NodeKind::kOther);
  EXPECT_EQ(ClassifyLabel(""), NodeKind::kOther);
}

TEST(ParseTreeTest, AcceptsRootWrappers) {
  ParseTree a = Tree("(ROOT (S (NP (NNP Israel)) (VP (VBD said))))");
  EXPECT_EQ(a.kind(a.root()), NodeKind::kOther);
  ParseTree b = Tree("( (S (NP (NNP Israel)) (VP (VBD said))))");
  EXPECT_EQ(b.kind(b.root()), NodeKind::kOther);
  EXPECT_EQ(b.Tokens().size(), 2u);
}

TEST(ParseTreeTest, ReportsErrors) {
  auto kind_of = [](const std::string &text) {
    try {
      Tree(text);
    } catch (const TreeError &e) {
      return std::optional<TreeErrorKind>(e.kind());
    }
    return std::optional<TreeErrorKind>();
  };
  EXPECT_EQ(kind_of("(S (NP (NN a))"), TreeErrorKind::kUnbalancedParens);
  EXPECT_EQ(kind_of("(S (NP (NN a))))"), TreeErrorKind::kUnbalancedParens);
  EXPECT_EQ(kind_of(""), TreeErrorKind::kEmptyTree);
  EXPECT_EQ(kind_of("   "), TreeErrorKind::kEmptyTree);
  EXPECT_EQ(kind_of("(S (NN a)) (S (NN b))"), TreeErrorKind::kMultipleRoots);
  EXPECT_EQ(kind_of("(S (FOO a))"), TreeErrorKind::kBadPreterminal);
  EXPECT_FALSE(kind_of("(S (NN a))").has_value());
}

TEST(ParseTreeTest, SexprRoundTrip) {
  ParseTree tree = Tree(testing::kGoldenTree);
  ParseTree again = Tree(tree.ToSexpr());
  EXPECT_EQ(again.ToSexpr(), tree.ToSexpr());
  EXPECT_EQ(again.Tokens(), tree.Tokens());
}

TEST(ParseTreeTest, FindHeadExamples) {
  ParseTree tree = Tree(testing::kGoldenTree);
  auto np = FindByText(tree, NodeKind::kNP, "THE GAZA STRIP ON TUESDAY");
  ASSERT_TRUE(np);
  auto head = tree.FindHead(*np);
  ASSERT_TRUE(head);
  EXPECT_EQ(tree.node(*head).token, "STRIP");

  auto bomb = FindByText(tree, NodeKind::kNP, "A MORTAR BOMB");
  ASSERT_TRUE(bomb);
  EXPECT_EQ(tree.node(*tree.FindHead(*bomb)).token, "BOMB");

  auto vp = FindByText(tree, NodeKind::kVP,
                       "WAS LAUNCHED AT IT FROM THE GAZA STRIP ON TUESDAY");
  ASSERT_TRUE(vp);
  EXPECT_EQ(tree.node(*tree.FindHead(*vp)).token, "LAUNCHED");

  auto pp = FindByText(tree, NodeKind::kPP, "AT IT");
  ASSERT_TRUE(pp);
  EXPECT_EQ(tree.node(*tree.FindHead(*pp)).token, "AT");

  auto pronoun_np = FindByText(tree, NodeKind::kNP, "IT");
  ASSERT_TRUE(pronoun_np);
  EXPECT_FALSE(tree.FindHead(*pronoun_np).has_value());
}

TEST(ParseTreeTest, SubjectAndClause) {
  ParseTree tree = Tree(testing::kGoldenTree);
  auto launched = FindByText(tree, NodeKind::kVP,
                             "LAUNCHED AT IT FROM THE GAZA STRIP ON TUESDAY");
  ASSERT_TRUE(launched);
  auto subject = tree.SubjectOf(*launched);
  ASSERT_TRUE(subject);
  EXPECT_EQ(tree.Text(*subject), "A MORTAR BOMB");
  auto clause = tree.ClauseOf(*launched);
  ASSERT_TRUE(clause);
  EXPECT_EQ(tree.node(*clause).category, "S");
  EXPECT_EQ(tree.node(tree.TopOfVerbChain(*launched)).first_token, 5u);

  ParseTree bare = Tree("(S (VP (VB go) (NP (NN home))))");
  auto vp = FindByText(bare, NodeKind::kVP, "GO HOME");
  ASSERT_TRUE(vp);
  EXPECT_FALSE(bare.SubjectOf(*vp).has_value());
}

TEST(ParseTreeTest, FindHeadMatchesOracleOnRandomTrees) {
  testing::TreeGenerator generator(20260101);
  size_t checked = 0;
  for (int i = 0; i < 1000; ++i) {
    ParseTree tree = Tree(generator.Generate(6, 4));
    for (NodeId id = 0; id < tree.size(); ++id) {
      ASSERT_EQ(tree.FindHead(id), testing::OracleHead(tree, id))
          << tree.ToSexpr() << " node " << id;
      ++checked;
    }
    EXPECT_EQ(Tree(tree.ToSexpr()).ToSexpr(), tree.ToSexpr());
  }
  EXPECT_GT(checked, 1000u);
}

}  // namespace
}  // namespace treecoder
