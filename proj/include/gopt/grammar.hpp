#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace gopt {

/// One body line of a grammar rule. `attr_name` is the first attribute
/// assigned on the line; structural lines (actions, keyword-only lines,
/// comments) have none.
struct LineEntry {
  std::string content;
  std::optional<std::string> attr_name;
  // Set by the brace-changing rewrites: the tokens that now stand where the
  // quoted braces were, so a later brace rewrite can find them again. Lost on
  // serialization and ignored by ==.
  std::optional<std::pair<std::string, std::string>> brace_tokens;

  bool operator==(const LineEntry& o) const { return content == o.content && attr_name == o.attr_name; }
};

enum class RuleType { Parser, Enum };

struct GrammarRule {
  std::string name;
  std::optional<std::string> returns_type;
  RuleType type = RuleType::Parser;
  bool fragment = false;
  std::optional<std::string> hidden;  // token list of a `hidden(...)` clause
  std::vector<std::string> preamble;  // comment and annotation lines directly above the rule
  std::vector<LineEntry> lines;

  /// Builds a line entry, deriving attr_name from the content.
  LineEntry make_line(std::string content) const;

  /// Sets the content of line `i` and refreshes its attr_name.
  void set_line(std::size_t i, std::string content);

  /// Declaration line, e.g. `enum Color returns Color:`.
  std::string declaration() const;

  bool operator==(const GrammarRule&) const = default;
};

/// Terminal and datatype rules, kept verbatim (including their `;`).
struct TerminalRule {
  std::string name;
  std::string text;

  bool operator==(const TerminalRule&) const = default;
};

struct ImportStatement {
  std::string uri;
  std::optional<std::string> alias;
};

struct Grammar {
  std::vector<std::string> header;
  std::vector<GrammarRule> rules;
  std::vector<TerminalRule> terminals;
  std::vector<std::string> trailer;  // comments after the last rule

  GrammarRule* find_rule(std::string_view name);
  const GrammarRule* find_rule(std::string_view name) const;
  const TerminalRule* find_terminal(std::string_view name) const;
  bool has_name(std::string_view name) const;

  std::vector<ImportStatement> imports() const;

  bool operator==(const Grammar&) const = default;
};

/// Parses Xtext-style grammar text. Throws gopt::Error (UnterminatedRule,
/// DuplicateRuleName, MalformedRule).
Grammar parse_grammar(std::string_view text);

/// Canonical text: header, then rules, then terminals, blocks separated by one
/// blank line, body lines indented by one tab, `;` attached to the last line.
std::string serialize_grammar(const Grammar& grammar);

/// Serialized text of one rule block (no trailing blank line).
std::string serialize_rule(const GrammarRule& rule);

/// Parses `import "uri" [as alias]`; nullopt for other lines.
std::optional<ImportStatement> parse_import(std::string_view line);

std::string format_import(const ImportStatement& import);

/// Heuristic used when parsing: terminal/datatype rules are declared with the
/// `terminal` keyword, return an `ecore::` type, or have an all-caps name
/// and no `returns` clause.
bool is_terminal_like(std::string_view name, std::string_view returns_type, bool terminal_keyword);

}  // namespace gopt
