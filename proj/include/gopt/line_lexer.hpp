#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace gopt {

// Lexical view of a single grammar line. Rewrites work on token spans so that
// the untouched parts of a line keep their exact spelling.

enum class TokenKind {
  Quoted,   // 'kw' or "kw"
  Ident,    // name, ecore::EString, ^escaped
  Assign,   // =  +=  ?=
  Punct,    // ( ) [ ] { } | * + ? , ; : => -> ...
  Comment,  // // to end of line
};

struct Token {
  TokenKind kind;
  std::size_t begin;
  std::size_t end;
  std::string_view text;
};

/// Tokenizes one line. Unterminated quotes run to the end of the line.
std::vector<Token> lex_line(std::string_view line);

/// Inner text of a quoted token, with escapes resolved.
std::string unquote(std::string_view quoted);

/// Single-quoted keyword literal for `text`.
std::string quote(std::string_view text);

/// True for `'{'`, `'}'`, `'('`, `')'`, `'['`, `']'`, `','`, `';'`.
bool is_symbol_literal(std::string_view inner);

/// A quoted token counts as a keyword unless it is a symbol literal or the
/// right-hand side of an assignment (`flag?='kw'`, enum `lit='lit'`).
bool is_keyword_token(const std::vector<Token>& tokens, std::size_t index);

/// Index of the token matching the bracket at `open` (any of `( [ {`), or npos.
std::size_t matching_close(const std::vector<Token>& tokens, std::size_t open);

/// Names assigned on the line (`a=`, `a+=`, `a?=`) outside unquoted actions,
/// in source order.
std::vector<std::string> assigned_attributes(std::string_view line);

std::optional<std::string> first_assigned_attribute(std::string_view line);

/// `{Type}` or `{Type.feature=current}`.
bool is_action_line(std::string_view line);

bool is_comment_line(std::string_view line);

/// Identifiers in call position: not assigned to, not inside an action, not a
/// keyword. Includes both halves of `[Target|EString]`.
std::vector<std::string> called_names(std::string_view line);

/// The tokens behind called_names(), with their spans.
std::vector<Token> call_tokens(std::string_view line);

bool is_identifier(std::string_view text);

std::string_view trim(std::string_view text);
std::string_view trim_right(std::string_view text);

}  // namespace gopt
