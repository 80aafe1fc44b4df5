#include "gopt/line_lexer.hpp"

#include <cctype>

namespace gopt {

namespace {

bool ident_start(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '^';
}

bool ident_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_';
}

bool is_open(std::string_view t) { return t == "(" || t == "[" || t == "{"; }
bool is_close(std::string_view t) { return t == ")" || t == "]" || t == "}"; }

}  // namespace

std::vector<Token> lex_line(std::string_view line) {
  std::vector<Token> out;
  std::size_t i = 0;
  const std::size_t n = line.size();
  auto push = [&](TokenKind kind, std::size_t b, std::size_t e) {
    out.push_back(Token{kind, b, e, line.substr(b, e - b)});
  };
  while (i < n) {
    const char c = line[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      continue;
    }
    const std::size_t b = i;
    if (c == '\'' || c == '"') {
      ++i;
      while (i < n && line[i] != c) {
        if (line[i] == '\\' && i + 1 < n) ++i;
        ++i;
      }
      if (i < n) ++i;
      push(TokenKind::Quoted, b, i);
    } else if (c == '/' && i + 1 < n && line[i + 1] == '/') {
      push(TokenKind::Comment, b, n);
      i = n;
    } else if (ident_start(c)) {
      ++i;
      while (i < n) {
        if (ident_char(line[i])) {
          ++i;
        } else if (line[i] == ':' && i + 2 < n && line[i + 1] == ':' && ident_start(line[i + 2])) {
          i += 3;
        } else {
          break;
        }
      }
      push(TokenKind::Ident, b, i);
    } else if ((c == '+' || c == '?') && i + 1 < n && line[i + 1] == '=') {
      i += 2;
      push(TokenKind::Assign, b, i);
    } else if (c == '=' && i + 1 < n && line[i + 1] == '>') {
      i += 2;
      push(TokenKind::Punct, b, i);
    } else if (c == '-' && i + 1 < n && line[i + 1] == '>') {
      i += 2;
      push(TokenKind::Punct, b, i);
    } else if (c == '=') {
      ++i;
      push(TokenKind::Assign, b, i);
    } else {
      ++i;
      push(TokenKind::Punct, b, i);
    }
  }
  return out;
}

std::string unquote(std::string_view quoted) {
  if (quoted.size() < 2) return std::string(quoted);
  std::string out;
  const char q = quoted.front();
  std::size_t end = quoted.back() == q ? quoted.size() - 1 : quoted.size();
  for (std::size_t i = 1; i < end; ++i) {
    if (quoted[i] == '\\' && i + 1 < end) ++i;
    out.push_back(quoted[i]);
  }
  return out;
}

std::string quote(std::string_view text) {
  std::string out = "'";
  for (char c : text) {
    if (c == '\'' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  out.push_back('\'');
  return out;
}

bool is_symbol_literal(std::string_view inner) {
  return inner == "{" || inner == "}" || inner == "(" || inner == ")" || inner == "[" ||
         inner == "]" || inner == "," || inner == ";";
}

bool is_keyword_token(const std::vector<Token>& tokens, std::size_t index) {
  const Token& t = tokens[index];
  if (t.kind != TokenKind::Quoted) return false;
  if (is_symbol_literal(unquote(t.text))) return false;
  if (index > 0 && tokens[index - 1].kind == TokenKind::Assign) return false;
  return true;
}

std::size_t matching_close(const std::vector<Token>& tokens, std::size_t open) {
  if (open >= tokens.size() || tokens[open].kind != TokenKind::Punct || !is_open(tokens[open].text)) {
    return std::string_view::npos;
  }
  int depth = 0;
  for (std::size_t i = open; i < tokens.size(); ++i) {
    if (tokens[i].kind != TokenKind::Punct) continue;
    if (is_open(tokens[i].text)) ++depth;
    if (is_close(tokens[i].text) && --depth == 0) return i;
  }
  return std::string_view::npos;
}

namespace {

// Visits tokens outside unquoted action braces.
template <typename Fn>
void for_each_outside_action(const std::vector<Token>& tokens, Fn&& fn) {
  int action_depth = 0;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    const Token& t = tokens[i];
    if (t.kind == TokenKind::Punct && t.text == "{") {
      ++action_depth;
      continue;
    }
    if (t.kind == TokenKind::Punct && t.text == "}") {
      if (action_depth > 0) --action_depth;
      continue;
    }
    if (action_depth == 0) fn(i);
  }
}

}  // namespace

std::vector<std::string> assigned_attributes(std::string_view line) {
  const auto tokens = lex_line(line);
  std::vector<std::string> out;
  for_each_outside_action(tokens, [&](std::size_t i) {
    if (tokens[i].kind == TokenKind::Ident && i + 1 < tokens.size() &&
        tokens[i + 1].kind == TokenKind::Assign) {
      std::string_view name = tokens[i].text;
      if (!name.empty() && name.front() == '^') name.remove_prefix(1);
      out.emplace_back(name);
    }
  });
  return out;
}

std::optional<std::string> first_assigned_attribute(std::string_view line) {
  auto all = assigned_attributes(line);
  if (all.empty()) return std::nullopt;
  return all.front();
}

bool is_action_line(std::string_view line) {
  line = trim(line);
  if (line.size() < 3 || line.front() != '{' || line.back() != '}') return false;
  return ident_start(line[1]) && line.find('{', 1) == std::string_view::npos;
}

bool is_comment_line(std::string_view line) {
  line = trim(line);
  return line.starts_with("//") || line.starts_with("/*") || line.starts_with("*");
}

std::vector<Token> call_tokens(std::string_view line) {
  const auto tokens = lex_line(line);
  std::vector<Token> out;
  for_each_outside_action(tokens, [&](std::size_t i) {
    const Token& t = tokens[i];
    if (t.kind != TokenKind::Ident) return;
    if (i + 1 < tokens.size() && tokens[i + 1].kind == TokenKind::Assign) return;
    if (t.text == "current") return;
    out.push_back(t);
  });
  return out;
}

std::vector<std::string> called_names(std::string_view line) {
  std::vector<std::string> out;
  for (const Token& t : call_tokens(line)) out.emplace_back(t.text);
  return out;
}

bool is_identifier(std::string_view text) {
  if (text.empty() || !ident_start(text.front())) return false;
  for (std::size_t i = 1; i < text.size(); ++i) {
    if (!ident_char(text[i])) return false;
  }
  return true;
}

std::string_view trim(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  return trim_right(text);
}

std::string_view trim_right(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  return text;
}

}  // namespace gopt
