#include <gtest/gtest.h>

#include "gopt/engine.hpp"
#include "gopt/error.hpp"
#include "support.hpp"

using namespace gopt;
using gopt::testing::normalize;
using gopt::testing::read_data;

namespace {

ErrorCode parse_error(std::string_view text, std::size_t* line = nullptr) {
  try {
    parse_configuration(text);
  } catch (const Error& e) {
    if (line) *line = e.line();
    return e.code();
  }
  ADD_FAILURE() << "no error for: " << text;
  return ErrorCode::Io;
}

}  // namespace

TEST(ParseConfiguration, NodeStmtConfiguration) {
  const Configuration c = parse_configuration(read_data("dot/nodestmt.gopt"));
  ASSERT_EQ(c.applications.size(), 4u);
  EXPECT_EQ(c.applications[0], (RuleApplication{"removeBraces", "NodeStmt", {}, {}, {}, 2}));
  EXPECT_EQ(c.applications[3], (RuleApplication{"convert1ToStarToStar", "NodeStmt", "attrLists", {}, {}, 5}));
}

TEST(ParseConfiguration, EmptyAndCommentOnly) {
  EXPECT_TRUE(parse_configuration("").applications.empty());
  EXPECT_TRUE(parse_configuration("# nothing\n\n   \n").applications.empty());
}

TEST(ParseConfiguration, ScopesExclusionsAndArgs) {
  const Configuration c = parse_configuration(
      "removeBraces rule=* except=A,B   # trailing comment\n"
      "renameKeyword rule=Port args: page, \"go to\"\n"
      "addKeywordToLine rule=X args: \"a,b#c\", 2\n");
  ASSERT_EQ(c.applications.size(), 3u);
  EXPECT_EQ(c.applications[0].rule, std::nullopt);
  EXPECT_EQ(c.applications[0].exclusions, (std::vector<std::string>{"A", "B"}));
  EXPECT_EQ(c.applications[1].args, (std::vector<std::string>{"page", "go to"}));
  EXPECT_EQ(c.applications[2].args, (std::vector<std::string>{"a,b#c", "2"}));
}

TEST(ParseConfiguration, KindIsCaseInsensitive) {
  EXPECT_EQ(parse_configuration("REMOVEBRACES rule=A").applications.size(), 1u);
}

TEST(ParseConfiguration, ErrorsCarryLineNumbers) {
  std::size_t line = 0;
  EXPECT_EQ(parse_error("removeBraces rule=A\nfrobnicate rule=A\n", &line), ErrorCode::UnknownRuleKind);
  EXPECT_EQ(line, 2u);
  EXPECT_EQ(parse_error("\n\nrenameKeyword rule=A args: x\n", &line), ErrorCode::BadArity);
  EXPECT_EQ(line, 3u);
  EXPECT_EQ(parse_error("removeAttribute rule=A"), ErrorCode::BadArity);
  EXPECT_EQ(parse_error("removeBraces rule=A bogus"), ErrorCode::MalformedLine);
  EXPECT_EQ(parse_error("renameKeyword rule=A args: \"x, y"), ErrorCode::MalformedLine);
}

TEST(FormatConfiguration, RoundTrips) {
  const Configuration c = parse_configuration(
      "removeBraces rule=* except=A,B\n"
      "renameKeyword rule=Port attr=p args: page, \"go to\"\n"
      "addImport args: http://x/y, x\n");
  const Configuration again = parse_configuration(format_configuration(c));
  ASSERT_EQ(again.applications.size(), c.applications.size());
  for (std::size_t i = 0; i < c.applications.size(); ++i) {
    auto a = c.applications[i], b = again.applications[i];
    a.source_line = b.source_line = 0;
    EXPECT_EQ(a, b);
  }
}

TEST(Optimize, NodeStmtGolden) {
  const Grammar in = parse_grammar(read_data("dot/nodestmt_generated.xtext"));
  const OptimizeResult r = optimize(in, parse_configuration(read_data("dot/nodestmt.gopt")));
  EXPECT_EQ(normalize(serialize_grammar(r.grammar)), normalize(read_data("dot/nodestmt_optimized.xtext")));
  EXPECT_EQ(r.report.gora, 4u);
  EXPECT_TRUE(r.report.diagnostics.empty());
  EXPECT_EQ(r.report.rules, (RuleCounts{1, 0, 0}));
  EXPECT_EQ(r.report.lines, (LineCounts{2, 0, 3}));
}

TEST(Optimize, EmptyConfigurationIsIdentity) {
  const Grammar in = parse_grammar(read_data("corpus/dot.xtext"));
  const OptimizeResult r = optimize(in, Configuration{});
  EXPECT_EQ(r.grammar, in);
  EXPECT_EQ(r.report.gora, 0u);
  EXPECT_EQ(r.report.lines, LineCounts{});
  EXPECT_EQ(r.report.rules, RuleCounts{});
  EXPECT_EQ(r.report.result, grammar_metrics(in));
}

TEST(Optimize, MissingScopeIsReportedAndPipelineContinues) {
  const Grammar in = parse_grammar(read_data("corpus/dot.xtext"));
  const Configuration c = parse_configuration(
      "removeBraces rule=NodeStmt\n"
      "removeBraces rule=Ghost\n"
      "removeKeyword rule=NodeStmt\n");
  const OptimizeResult r = optimize(in, c);
  ASSERT_EQ(r.report.diagnostics.size(), 1u);
  EXPECT_EQ(r.report.diagnostics[0].index, 2u);
  EXPECT_EQ(r.report.diagnostics[0].source_line, 2u);
  EXPECT_EQ(r.report.diagnostics[0].status, Status::ScopeNotFound);
  EXPECT_TRUE(r.report.has_failures());
  EXPECT_EQ(r.report.count(Status::ScopeNotFound), 1u);
  const auto* node = r.grammar.find_rule("NodeStmt");
  for (const auto& l : node->lines) {
    EXPECT_EQ(l.content.find("'{'"), std::string::npos);
    EXPECT_EQ(l.content.find("'NodeStmt'"), std::string::npos);
  }
}

TEST(Optimize, NoOpIsNotAFailure) {
  const Grammar in = parse_grammar("A: x=ID;");
  const ChangeReport r = dry_run(in, parse_configuration("removeBraces rule=A"));
  ASSERT_EQ(r.diagnostics.size(), 1u);
  EXPECT_EQ(r.diagnostics[0].status, Status::NoOp);
  EXPECT_FALSE(r.has_failures());
}

TEST(Optimize, DeterministicAndOrderSensitive) {
  const Grammar in = parse_grammar(read_data("corpus/dot.xtext"));
  const Configuration ab = parse_configuration("changeBracesToAngle rule=*\nchangeBracesToSquare rule=*\n");
  const Configuration ba = parse_configuration("changeBracesToSquare rule=*\nchangeBracesToAngle rule=*\n");
  const std::string first = serialize_grammar(optimize(in, ab).grammar);
  for (int i = 0; i < 3; ++i) EXPECT_EQ(serialize_grammar(optimize(in, ab).grammar), first);
  const std::string other = serialize_grammar(optimize(in, ba).grammar);
  EXPECT_NE(first, other);
  // the later brace rewrite decides
  EXPECT_NE(first.find("'['"), std::string::npos);
  EXPECT_EQ(first.find("'<'"), std::string::npos);
  EXPECT_NE(other.find("'<'"), std::string::npos);
  EXPECT_EQ(other.find("'['"), std::string::npos);
}

TEST(DryRun, EvolutionFlagsTheRenamedAttributeOnly) {
  const Grammar v2 = parse_grammar(read_data("evolution/qvto_v2.xtext"));
  const Configuration c = parse_configuration(
      "removeAttribute rule=VarParameter attr=bindParameter\n"
      "removeBraces rule=VarParameter\n");
  const ChangeReport r = dry_run(v2, c);
  EXPECT_EQ(r.count(Status::ScopeNotFound), 1u);
  EXPECT_EQ(r.count(Status::Failed), 0u);
  ASSERT_EQ(r.diagnostics.size(), 1u);
  EXPECT_EQ(r.diagnostics[0].index, 1u);

  const ChangeReport fixed = dry_run(v2, parse_configuration(
      "removeAttribute rule=VarParameter attr=representedParameter\nremoveBraces rule=VarParameter\n"));
  EXPECT_TRUE(fixed.diagnostics.empty());
}

TEST(Reports, HumanAndMachineFormats) {
  const Grammar in = parse_grammar(read_data("dot/nodestmt_generated.xtext"));
  const Configuration c = parse_configuration("removeBraces rule=NodeStmt\nremoveBraces rule=Ghost\n");
  const ChangeReport r = dry_run(in, c);

  const std::string human = format_report(r);
  EXPECT_EQ(human.rfind("report-version: 1\n", 0), 0u);
  EXPECT_NE(human.find("changed rules: mod 1, add 0, del 0"), std::string::npos);
  EXPECT_NE(human.find("#2 (line 2) removeBraces: scope-not-found"), std::string::npos);
  EXPECT_EQ(human.find("\x1b["), std::string::npos);
  EXPECT_NE(format_report(r, true).find("\x1b["), std::string::npos);

  const std::string machine = format_report_machine(r);
  EXPECT_NE(machine.find("gora: 2\n"), std::string::npos);
  EXPECT_NE(machine.find("status.scope-not-found: 1\n"), std::string::npos);
  EXPECT_NE(machine.find("diagnostic.0: index=2 line=2 kind=removeBraces status=scope-not-found"), std::string::npos);
  EXPECT_EQ(format_report_machine(dry_run(in, c)), machine);
}
