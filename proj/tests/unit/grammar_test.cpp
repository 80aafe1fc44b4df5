#include <gtest/gtest.h>

#include "gopt/error.hpp"
#include "gopt/grammar.hpp"
#include "support.hpp"

using namespace gopt;
using gopt::testing::normalize;
using gopt::testing::read_data;

namespace {

const char* kGeneratedNodeStmt =
    "NodeStmt returns NodeStmt:\n"
    "        {NodeStmt}\n"
    "        'NodeStmt'\n"
    "        '{'\n"
    "                ('node' node=NodeId)?\n"
    "                ('attrLists' '{' attrLists+=AttrList ( \",\" attrLists+=AttrList)* '}' )?\n"
    "        '}';\n";

ErrorCode code_of(std::string_view text) {
  try {
    parse_grammar(text);
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an error";
  return ErrorCode::Io;
}

}  // namespace

TEST(ParseGrammar, GeneratedNodeStmtStructure) {
  const Grammar g = parse_grammar(kGeneratedNodeStmt);
  ASSERT_EQ(g.rules.size(), 1u);
  const GrammarRule& r = g.rules[0];
  EXPECT_EQ(r.name, "NodeStmt");
  EXPECT_EQ(r.returns_type, "NodeStmt");
  ASSERT_EQ(r.lines.size(), 6u);
  EXPECT_EQ(r.lines[0].content, "{NodeStmt}");
  EXPECT_EQ(r.lines[3].content, "('node' node=NodeId)?");
  EXPECT_EQ(r.lines[5].content, "'}'");
}

TEST(ParseGrammar, AttributeNamesOnlyOnAssigningLines) {
  const Grammar g = parse_grammar(kGeneratedNodeStmt);
  const GrammarRule& r = g.rules[0];
  EXPECT_EQ(r.lines[0].attr_name, std::nullopt);
  EXPECT_EQ(r.lines[1].attr_name, std::nullopt);
  EXPECT_EQ(r.lines[2].attr_name, std::nullopt);
  EXPECT_EQ(r.lines[3].attr_name, "node");
  EXPECT_EQ(r.lines[4].attr_name, "attrLists");
  for (const auto& line : r.lines) {
    if (line.attr_name) EXPECT_NE(line.content.find(*line.attr_name), std::string::npos);
  }
}

TEST(ParseGrammar, EmptyTextGivesEmptyGrammar) {
  const Grammar g = parse_grammar("");
  EXPECT_TRUE(g.rules.empty());
  EXPECT_TRUE(g.header.empty());
  EXPECT_EQ(serialize_grammar(g), "");
}

TEST(ParseGrammar, EmptyBodyRule) {
  const Grammar g = parse_grammar("Empty:\n;\n");
  ASSERT_EQ(g.rules.size(), 1u);
  EXPECT_TRUE(g.rules[0].lines.empty());
  EXPECT_EQ(serialize_grammar(g), "Empty:\n\t;\n");
}

TEST(ParseGrammar, HeaderAndImports) {
  const Grammar g = parse_grammar(
      "grammar a.B with org.eclipse.xtext.common.Terminals\n"
      "import \"http://x\"\n"
      "import \"http://www.eclipse.org/emf/2002/Ecore\" as ecore\n"
      "generate b \"http://b\"\n\n"
      "M: x=ID;\n");
  EXPECT_EQ(g.header.size(), 4u);
  const auto imports = g.imports();
  ASSERT_EQ(imports.size(), 2u);
  EXPECT_EQ(imports[0].uri, "http://x");
  EXPECT_EQ(imports[0].alias, std::nullopt);
  EXPECT_EQ(imports[1].alias, "ecore");
}

TEST(ParseGrammar, EnumFragmentAndHiddenDeclarations) {
  const Grammar g = parse_grammar(
      "enum Color returns Color: red='red' | blue='blue';\n"
      "fragment Named: name=ID;\n"
      "Model hidden(WS, SL_COMMENT): items+=Item*;\n");
  ASSERT_EQ(g.rules.size(), 3u);
  EXPECT_EQ(g.rules[0].type, RuleType::Enum);
  EXPECT_EQ(g.rules[0].declaration(), "enum Color returns Color:");
  EXPECT_TRUE(g.rules[1].fragment);
  EXPECT_EQ(g.rules[1].declaration(), "fragment Named:");
  EXPECT_EQ(g.rules[2].hidden, "WS, SL_COMMENT");
}

TEST(ParseGrammar, TerminalsAreKeptVerbatim) {
  const Grammar g = parse_grammar(
      "M: v=NUMBER;\n"
      "terminal NUMBER returns ecore::EBigDecimal:\n"
      "  ('0'..'9')+;\n"
      "EString returns ecore::EString:\n\tSTRING | ID;\n"
      "QUALIFIED:\n\tID ('.' ID)*;\n");
  ASSERT_EQ(g.rules.size(), 1u);
  ASSERT_EQ(g.terminals.size(), 3u);
  EXPECT_EQ(g.terminals[0].name, "NUMBER");
  EXPECT_NE(g.terminals[0].text.find("('0'..'9')+;"), std::string::npos);
  EXPECT_TRUE(g.has_name("EString"));
  EXPECT_NE(g.find_terminal("QUALIFIED"), nullptr);
}

TEST(ParseGrammar, AllCapsRuleWithReturnsIsAParserRule) {
  const Grammar g = parse_grammar("DOT returns DOT:\n\t{DOT} 'dot';\n");
  ASSERT_EQ(g.rules.size(), 1u);
  EXPECT_TRUE(g.terminals.empty());
}

TEST(ParseGrammar, CommentsTravelWithRules) {
  const Grammar g = parse_grammar(
      "// leading\n"
      "/* block\n"
      " * more */\n"
      "A:\n"
      "\t// inside\n"
      "\tx=ID;\n"
      "// trailing\n");
  ASSERT_EQ(g.rules.size(), 1u);
  EXPECT_EQ(g.rules[0].preamble.size(), 3u);
  EXPECT_EQ(g.rules[0].lines.size(), 2u);
  EXPECT_EQ(g.rules[0].lines[0].attr_name, std::nullopt);
  EXPECT_EQ(g.trailer, std::vector<std::string>{"// trailing"});
}

TEST(ParseGrammar, SemicolonInsideQuotesDoesNotEndRule) {
  const Grammar g = parse_grammar("A:\n\t'let' name=ID ';'\n\t;\n");
  ASSERT_EQ(g.rules[0].lines.size(), 1u);
  EXPECT_EQ(g.rules[0].lines[0].content, "'let' name=ID ';'");
}

TEST(ParseGrammar, Errors) {
  EXPECT_EQ(code_of("A:\n\tx=ID\n"), ErrorCode::UnterminatedRule);
  EXPECT_EQ(code_of("A: x=ID;\nA: y=ID;\n"), ErrorCode::DuplicateRuleName);
  EXPECT_EQ(code_of("A x y\n"), ErrorCode::MalformedRule);
  EXPECT_EQ(code_of("A: x=ID; B\n"), ErrorCode::MalformedRule);
}

TEST(ParseGrammar, ErrorsCarryLineNumbers) {
  try {
    parse_grammar("A: x=ID;\n\nA: y=ID;\n");
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.line(), 3u);
  }
}

TEST(SerializeGrammar, CanonicalLayout) {
  const Grammar g = parse_grammar("grammar x\n\n\nA :   x=ID\n\n  ;\nB:\n  // note\n;\n");
  EXPECT_EQ(serialize_grammar(g), "grammar x\n\nA:\n\tx=ID;\n\nB:\n\t// note\n\t;\n");
}

TEST(SerializeGrammar, IsIdempotent) {
  for (const char* name : {"corpus/arithmetics.xtext", "corpus/dot.xtext", "corpus/statemachine_hand.xtext"}) {
    const std::string once = serialize_grammar(parse_grammar(read_data(name)));
    EXPECT_EQ(serialize_grammar(parse_grammar(once)), once) << name;
  }
}

TEST(SerializeGrammar, RoundTripMatchesNormalizedInput) {
  for (const char* name : {"corpus/entities.xtext", "corpus/tasks.xtext", "corpus/expressions.xtext"}) {
    const std::string text = read_data(name);
    EXPECT_EQ(normalize(serialize_grammar(parse_grammar(text))), normalize(text)) << name;
  }
}

TEST(SerializeGrammar, ReparsesToEqualGrammar) {
  const Grammar g = parse_grammar(read_data("corpus/secrets.xtext"));
  EXPECT_EQ(parse_grammar(serialize_grammar(g)), g);
}

TEST(ImportStatement, ParseAndFormat) {
  auto imp = parse_import("import \"http://www.eclipse.org/emf/2002/Ecore\" as ecore");
  ASSERT_TRUE(imp);
  EXPECT_EQ(imp->alias, "ecore");
  EXPECT_EQ(format_import(*imp), "import \"http://www.eclipse.org/emf/2002/Ecore\" as ecore");
  EXPECT_FALSE(parse_import("grammar x"));
  EXPECT_EQ(format_import({"u", std::nullopt}), "import \"u\"");
}

TEST(GrammarRule, SetLineRefreshesAttribute) {
  Grammar g = parse_grammar("A:\n\t('x' x=ID)?;\n");
  GrammarRule& r = g.rules[0];
  r.set_line(0, "y=ID");
  EXPECT_EQ(r.lines[0].attr_name, "y");
  r.set_line(0, "'kw'");
  EXPECT_EQ(r.lines[0].attr_name, std::nullopt);
}

TEST(TerminalLike, Heuristic) {
  EXPECT_TRUE(is_terminal_like("ID", "", true));
  EXPECT_TRUE(is_terminal_like("EString", "ecore::EString", false));
  EXPECT_TRUE(is_terminal_like("QUALIFIED", "", false));
  EXPECT_FALSE(is_terminal_like("DOT", "DOT", false));
  EXPECT_FALSE(is_terminal_like("X", "", false));
  EXPECT_FALSE(is_terminal_like("Model", "", false));
}
