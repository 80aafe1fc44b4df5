#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "gopt/diff.hpp"
#include "gopt/generator.hpp"
#include "gopt/grammar.hpp"
#include "gopt/rules.hpp"

namespace gopt {

/// Ordered rule applications; order is semantic.
struct Configuration {
  std::vector<RuleApplication> applications;
  std::string source;
};

/// Line format, one application per line, `#` starts a comment:
///
///   <ruleKind> [rule=<name>|rule=*] [attr=<name>] [except=<n1,n2>] [args: a1, a2]
///
/// Arguments containing spaces, commas or `#` are written in double quotes.
/// Throws gopt::Error (UnknownRuleKind, BadArity, MalformedLine) with the
/// 1-based line number.
Configuration parse_configuration(std::string_view text, const RuleRegistry& registry = RuleRegistry::builtin());

std::string format_application(const RuleApplication& app);
std::string format_configuration(const Configuration& config);

/// Non-clean outcome of one application; `index` is 1-based.
struct Diagnostic {
  std::size_t index = 0;
  std::size_t source_line = 0;
  std::string kind;
  Status status = Status::Applied;
  std::string message;
  std::vector<std::string> warnings;
};

struct ChangeReport {
  std::size_t gora = 0;  // applications attempted
  RuleCounts rules;
  LineCounts lines;
  GrammarMetrics result;
  std::vector<Diagnostic> diagnostics;

  std::size_t count(Status status) const;
  /// Any scope-not-found or failed application.
  bool has_failures() const;
};

struct OptimizeResult {
  Grammar grammar;
  ChangeReport report;
};

/// Runs every application in order; a failing application leaves the grammar
/// as it was and the pipeline continues. Counts are taken against `input`.
OptimizeResult optimize(const Grammar& input, const Configuration& config,
                        const RuleRegistry& registry = RuleRegistry::builtin());

/// optimize() without keeping the grammar.
ChangeReport dry_run(const Grammar& input, const Configuration& config,
                     const RuleRegistry& registry = RuleRegistry::builtin());

/// Human-readable report; `color` adds ANSI escapes to statuses.
std::string format_report(const ChangeReport& report, bool color = false);

/// `key: value` lines for CI consumption.
std::string format_report_machine(const ChangeReport& report);

}  // namespace gopt
