#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gopt/error.hpp"
#include "gopt/grammar.hpp"

namespace gopt {

enum class RuleKind {
  // keywords
  AddKeywordToAttr,
  AddKeywordToRule,
  AddKeywordToLine,
  RenameKeyword,
  AddAlternativeKeyword,
  RemoveKeyword,
  // rules
  RemoveRule,
  RenameRule,
  AddSymbolToRule,
  // optionality
  AddOptionalityToAttr,
  AddOptionalityToKeyword,
  RemoveOptionality,
  // imports
  AddImport,
  RemoveImport,
  // braces
  ChangeBracesToParentheses,
  ChangeBracesToSquare,
  ChangeBracesToAngle,
  RemoveBraces,
  // multiplicity
  Convert1ToStarToStar,
  // attributes
  RemoveAttribute,
  AddSquareBracketsToAttr,
  RepositionAttribute,
  // symbols
  RemoveCommas,
  // types
  RemovePrimitiveTypeRule,
  // whitespace-aware blocks
  AddTerminal,
  ChangeBracesToSynthetic,
};

inline constexpr RuleKind kAllRuleKinds[] = {
    RuleKind::AddKeywordToAttr,        RuleKind::AddKeywordToRule,
    RuleKind::AddKeywordToLine,        RuleKind::RenameKeyword,
    RuleKind::AddAlternativeKeyword,   RuleKind::RemoveKeyword,
    RuleKind::RemoveRule,              RuleKind::RenameRule,
    RuleKind::AddSymbolToRule,         RuleKind::AddOptionalityToAttr,
    RuleKind::AddOptionalityToKeyword, RuleKind::RemoveOptionality,
    RuleKind::AddImport,               RuleKind::RemoveImport,
    RuleKind::ChangeBracesToParentheses, RuleKind::ChangeBracesToSquare,
    RuleKind::ChangeBracesToAngle,     RuleKind::RemoveBraces,
    RuleKind::Convert1ToStarToStar,    RuleKind::RemoveAttribute,
    RuleKind::AddSquareBracketsToAttr, RuleKind::RepositionAttribute,
    RuleKind::RemoveCommas,            RuleKind::RemovePrimitiveTypeRule,
    RuleKind::AddTerminal,             RuleKind::ChangeBracesToSynthetic,
};

/// Configuration spelling, e.g. "removeBraces".
std::string_view config_name(RuleKind kind) noexcept;

/// Case-insensitive lookup of a built-in kind.
std::optional<RuleKind> rule_kind_from_name(std::string_view name);

/// One configured rule invocation. An absent `rule` means global scope; an
/// absent `attr` means every line in scope. `exclusions` name rules when the
/// scope is global, attributes when the scope is a single rule.
struct RuleApplication {
  std::string kind;
  std::optional<std::string> rule;
  std::optional<std::string> attr;
  std::vector<std::string> exclusions;
  std::vector<std::string> args;
  std::size_t source_line = 0;

  bool operator==(const RuleApplication&) const = default;
};

enum class Status { Applied, NoOp, ScopeNotFound, Failed };

std::string_view to_string(Status status) noexcept;

struct RuleOutcome {
  Status status = Status::Applied;
  std::optional<ErrorCode> code;
  std::string message;
  std::vector<std::string> warnings;

  bool clean() const { return status == Status::Applied && warnings.empty(); }
};

struct RuleResult {
  Grammar grammar;
  RuleOutcome outcome;
};

/// Rewrites the grammar in place. The registry discards the edits when the
/// returned status is not Applied.
using RewriteFn = std::function<RuleOutcome(Grammar&, const RuleApplication&)>;

struct RuleSignature {
  std::size_t min_args = 0;
  std::size_t max_args = 0;
  bool requires_rule = false;
  bool requires_attr = false;
};

struct RuleDescriptor {
  std::string name;
  RuleSignature signature;
  RewriteFn rewrite;
};

/// Name -> rewrite table. Custom rewrites register under new names and are
/// then usable from configuration files like the built-ins.
class RuleRegistry {
 public:
  RuleRegistry() = default;

  static const RuleRegistry& builtin();

  /// Throws gopt::Error(InvalidArgument) when the name is taken.
  void add(RuleDescriptor descriptor);

  const RuleDescriptor* find(std::string_view name) const;
  std::vector<std::string> names() const;

  /// Checks arity and required scope fields; empty string when valid.
  std::string check(const RuleApplication& app) const;

  RuleResult apply(const Grammar& grammar, const RuleApplication& app) const;

 private:
  std::vector<RuleDescriptor> rules_;
};

/// Applies one built-in application.
RuleResult apply_rule(const Grammar& grammar, const RuleApplication& app);

/// Removes the given token spans from a line, dropping one adjacent blank run
/// per removal and any group left empty, e.g. `()?`.
std::string erase_spans(std::string_view line, std::vector<std::pair<std::size_t, std::size_t>> spans);

}  // namespace gopt
