#include <gtest/gtest.h>

#include "gopt/diff.hpp"
#include "gopt/grammar.hpp"
#include "support.hpp"

using namespace gopt;

namespace {

std::vector<std::string> v(std::initializer_list<const char*> items) { return {items.begin(), items.end()}; }

const char* kGeneratedNodeStmt =
    "NodeStmt returns NodeStmt:\n"
    "\t{NodeStmt}\n\t'NodeStmt'\n\t'{'\n"
    "\t('node' node=NodeId)?\n"
    "\t('attrLists' '{' attrLists+=AttrList ( \",\" attrLists+=AttrList)* '}' )?\n"
    "\t'}';\n";

const char* kOptimizedNodeStmt =
    "NodeStmt returns NodeStmt:\n"
    "    {NodeStmt}\n\n\n"
    "         node=NodeId\n"
    "          (attrLists+=AttrList)*  \n"
    "    ;\n";

}  // namespace

TEST(Lcs, Basics) {
  EXPECT_EQ(lcs_length(v({}), v({})), 0u);
  EXPECT_EQ(lcs_length(v({"a", "b", "c"}), v({"a", "b", "c"})), 3u);
  EXPECT_EQ(lcs_length(v({"a", "b", "c", "d"}), v({"b", "d"})), 2u);
  EXPECT_EQ(lcs_length(v({"x"}), v({"y"})), 0u);
}

TEST(LineChanges, PairsDeletionsWithInsertionsAsModifications) {
  EXPECT_EQ(count_line_changes(v({"a", "b"}), v({"a", "c"})), (LineCounts{1, 0, 0}));
  EXPECT_EQ(count_line_changes(v({"a"}), v({"a", "b", "c"})), (LineCounts{0, 2, 0}));
  EXPECT_EQ(count_line_changes(v({"a", "b", "c"}), v({"c"})), (LineCounts{0, 0, 2}));
  EXPECT_EQ(count_line_changes(v({"a", "b", "c"}), v({"x", "c"})), (LineCounts{1, 0, 1}));
}

TEST(LineScript, ReplaysToTarget) {
  const auto a = v({"a", "b", "c", "d"});
  const auto b = v({"b", "x", "d", "e"});
  std::vector<std::string> from_a, to_b;
  for (const auto& e : line_script(a, b)) {
    if (e.kind != EditKind::Insert) from_a.push_back(e.text);
    if (e.kind != EditKind::Delete) to_b.push_back(e.text);
  }
  EXPECT_EQ(from_a, a);
  EXPECT_EQ(to_b, b);
}

TEST(DiffGrammars, Reflexive) {
  const Grammar g = parse_grammar(gopt::testing::read_data("corpus/dot.xtext"));
  const GrammarDiff d = diff_grammars(g, g);
  EXPECT_TRUE(d.empty());
  EXPECT_EQ(d.lines, LineCounts{});
  EXPECT_EQ(d.rules, RuleCounts{});
}

TEST(DiffGrammars, GeneratedAgainstOptimizedNodeStmt) {
  const GrammarDiff d = diff_grammars(parse_grammar(kGeneratedNodeStmt), parse_grammar(kOptimizedNodeStmt));
  EXPECT_EQ(d.rules, (RuleCounts{1, 0, 0}));
  EXPECT_TRUE(d.only_in_a.empty());
  EXPECT_TRUE(d.only_in_b.empty());
  // 7 comparable lines become 3: two feature lines rewritten, keyword and both braces gone
  EXPECT_EQ(d.lines, (LineCounts{2, 0, 3}));
  EXPECT_GE(d.lines.del, 2u);
}

TEST(DiffGrammars, DisjointRules) {
  const Grammar a = parse_grammar("X: x=ID;\nY: y=ID;\n");
  const Grammar b = parse_grammar("Y: y=ID;\n");
  const GrammarDiff d = diff_grammars(a, b);
  EXPECT_EQ(d.only_in_a, std::vector<std::string>{"X"});
  EXPECT_EQ(d.rules, (RuleCounts{0, 0, 1}));
  EXPECT_EQ(d.lines, (LineCounts{0, 0, 2}));
}

TEST(DiffGrammars, SymmetricUnderSwap) {
  const Grammar a = parse_grammar(gopt::testing::read_data("corpus/dot.xtext"));
  const Grammar b = parse_grammar(kOptimizedNodeStmt);
  const GrammarDiff ab = diff_grammars(a, b);
  const GrammarDiff ba = diff_grammars(b, a);
  EXPECT_EQ(ab.lines.mod, ba.lines.mod);
  EXPECT_EQ(ab.lines.add, ba.lines.del);
  EXPECT_EQ(ab.lines.del, ba.lines.add);
  EXPECT_EQ(ab.rules.add, ba.rules.del);
  EXPECT_EQ(ab.only_in_a, ba.only_in_b);
}

TEST(DiffGrammars, HeaderChangesAreCounted) {
  const GrammarDiff d = diff_grammars(parse_grammar("grammar a\nA: x=ID;\n"),
                                      parse_grammar("grammar a\nimport \"u\"\nA: x=ID;\n"));
  EXPECT_EQ(d.header, (LineCounts{0, 1, 0}));
  EXPECT_EQ(d.lines, (LineCounts{0, 1, 0}));
  EXPECT_EQ(d.rules, RuleCounts{});
}

TEST(DiffGrammars, TerminalsCompareWithoutTerminator) {
  const GrammarDiff d = diff_grammars(parse_grammar("terminal T:\n\t'a';\n"),
                                      parse_grammar("terminal T:\n\t'a'\n\t| 'b';\n"));
  EXPECT_EQ(d.lines, (LineCounts{0, 1, 0}));
}

TEST(FormatDiff, ListsChangedRules) {
  const std::string text = format_diff(diff_grammars(parse_grammar(kGeneratedNodeStmt), parse_grammar(kOptimizedNodeStmt)));
  EXPECT_NE(text.find("@@ NodeStmt"), std::string::npos);
  EXPECT_NE(text.find("- '{'"), std::string::npos);
  EXPECT_NE(text.find("+ node=NodeId"), std::string::npos);
}
