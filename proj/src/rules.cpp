#include "gopt/rules.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <regex>
#include <set>

#include "gopt/line_lexer.hpp"

namespace gopt {

namespace {

struct KindInfo {
  RuleKind kind;
  const char* name;
  RuleSignature signature;
};

// clang-format off
constexpr KindInfo kKinds[] = {
    {RuleKind::AddKeywordToAttr,          "addKeywordToAttr",          {1, 1, false, true}},
    {RuleKind::AddKeywordToRule,          "addKeywordToRule",          {1, 1, false, false}},
    {RuleKind::AddKeywordToLine,          "addKeywordToLine",          {2, 2, true, false}},
    {RuleKind::RenameKeyword,             "renameKeyword",             {2, 2, false, false}},
    {RuleKind::AddAlternativeKeyword,     "addAlternativeKeyword",     {2, 2, false, false}},
    {RuleKind::RemoveKeyword,             "removeKeyword",             {0, 1, false, false}},
    {RuleKind::RemoveRule,                "removeRule",                {0, 0, true, false}},
    {RuleKind::RenameRule,                "renameRule",                {1, 1, true, false}},
    {RuleKind::AddSymbolToRule,           "addSymbolToRule",           {1, 2, true, false}},
    {RuleKind::AddOptionalityToAttr,      "addOptionalityToAttr",      {0, 0, false, true}},
    {RuleKind::AddOptionalityToKeyword,   "addOptionalityToKeyword",   {1, 1, false, false}},
    {RuleKind::RemoveOptionality,         "removeOptionality",         {0, 0, false, false}},
    {RuleKind::AddImport,                 "addImport",                 {1, 2, false, false}},
    {RuleKind::RemoveImport,              "removeImport",              {1, 1, false, false}},
    {RuleKind::ChangeBracesToParentheses, "changeBracesToParentheses", {0, 0, false, false}},
    {RuleKind::ChangeBracesToSquare,      "changeBracesToSquare",      {0, 0, false, false}},
    {RuleKind::ChangeBracesToAngle,       "changeBracesToAngle",       {0, 0, false, false}},
    {RuleKind::RemoveBraces,              "removeBraces",              {0, 0, false, false}},
    {RuleKind::Convert1ToStarToStar,      "convert1ToStarToStar",      {0, 0, false, false}},
    {RuleKind::RemoveAttribute,           "removeAttribute",           {0, 0, false, true}},
    {RuleKind::AddSquareBracketsToAttr,   "addSquareBracketsToAttr",   {0, 0, false, true}},
    {RuleKind::RepositionAttribute,       "repositionAttribute",       {0, 0, false, true}},
    {RuleKind::RemoveCommas,              "removeCommas",              {0, 0, false, false}},
    {RuleKind::RemovePrimitiveTypeRule,   "removePrimitiveTypeRule",   {0, 0, true, false}},
    {RuleKind::AddTerminal,               "addTerminal",               {2, 2, false, false}},
    {RuleKind::ChangeBracesToSynthetic,   "changeBracesToSynthetic",   {0, 2, false, false}},
};
// clang-format on

bool iequals(std::string_view a, std::string_view b) {
  return a.size() == b.size() && std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
           return std::tolower(static_cast<unsigned char>(x)) == std::tolower(static_cast<unsigned char>(y));
         });
}

RuleOutcome applied(std::string message = {}) { return {Status::Applied, std::nullopt, std::move(message), {}}; }
RuleOutcome noop(std::string message) { return {Status::NoOp, std::nullopt, std::move(message), {}}; }
RuleOutcome not_found(ErrorCode code, std::string message) {
  return {Status::ScopeNotFound, code, std::move(message), {}};
}
RuleOutcome failed(ErrorCode code, std::string message) { return {Status::Failed, code, std::move(message), {}}; }

bool contains(const std::vector<std::string>& v, std::string_view s) {
  return std::find(v.begin(), v.end(), s) != v.end();
}

// ---------------------------------------------------------------------------
// scope resolution

struct Scope {
  std::vector<GrammarRule*> rules;
  std::optional<RuleOutcome> failure;
};

Scope resolve_rules(Grammar& g, const RuleApplication& app) {
  Scope s;
  if (app.rule) {
    GrammarRule* r = g.find_rule(*app.rule);
    if (r == nullptr) {
      s.failure = not_found(ErrorCode::ScopeNotFound, "rule '" + *app.rule + "' not found");
    } else {
      s.rules.push_back(r);
    }
    return s;
  }
  for (auto& r : g.rules) {
    if (!contains(app.exclusions, r.name)) s.rules.push_back(&r);
  }
  return s;
}

bool assigns(std::string_view content, std::string_view attr) {
  return contains(assigned_attributes(content), attr);
}

bool editable(const LineEntry& line) { return !is_action_line(line.content) && !is_comment_line(line.content); }

bool line_in_scope(const LineEntry& line, const RuleApplication& app) {
  if (!editable(line)) return false;
  if (app.attr) return assigns(line.content, *app.attr);
  if (app.rule) {
    for (const auto& ex : app.exclusions) {
      if (assigns(line.content, ex)) return false;
    }
  }
  return true;
}

std::optional<RuleOutcome> check_attr(const Scope& scope, const RuleApplication& app) {
  if (!app.attr) return std::nullopt;
  for (const GrammarRule* r : scope.rules) {
    for (const auto& l : r->lines) {
      if (line_in_scope(l, app)) return std::nullopt;
    }
  }
  std::string where = app.rule ? "rule '" + *app.rule + "'" : std::string("any rule");
  return not_found(ErrorCode::ScopeNotFound, "attribute '" + *app.attr + "' not found in " + where);
}

using LineFn = std::function<std::optional<std::string>(const GrammarRule&, const std::string&)>;

// Runs `fn` over every in-scope line; an empty result removes the line.
RuleOutcome rewrite_lines(Grammar& g, const RuleApplication& app, const LineFn& fn) {
  Scope scope = resolve_rules(g, app);
  if (scope.failure) return *scope.failure;
  if (auto f = check_attr(scope, app)) return *f;
  bool changed = false;
  for (GrammarRule* r : scope.rules) {
    for (std::size_t i = 0; i < r->lines.size();) {
      const LineEntry& line = r->lines[i];
      if (!line_in_scope(line, app)) {
        ++i;
        continue;
      }
      auto next = fn(*r, line.content);
      if (!next || *next == line.content) {
        ++i;
        continue;
      }
      changed = true;
      std::string_view t = trim(*next);
      if (t.empty()) {
        r->lines.erase(r->lines.begin() + static_cast<std::ptrdiff_t>(i));
        continue;
      }
      r->set_line(i, std::string(t));
      ++i;
    }
  }
  return changed ? applied() : noop("nothing to change in scope");
}

// ---------------------------------------------------------------------------
// token editing

using Span = std::pair<std::size_t, std::size_t>;

void erase_one(std::string& s, std::size_t b, std::size_t e) {
  std::size_t ws_end = e;
  while (ws_end < s.size() && std::isspace(static_cast<unsigned char>(s[ws_end]))) ++ws_end;
  const bool prev_sep = b == 0 || std::isspace(static_cast<unsigned char>(s[b - 1])) || s[b - 1] == '(' || s[b - 1] == '[';
  s.erase(b, (prev_sep ? ws_end : e) - b);
}

bool remove_one_empty_group(std::string& s) {
  const auto tokens = lex_line(s);
  for (std::size_t i = 0; i + 1 < tokens.size(); ++i) {
    if (tokens[i].kind == TokenKind::Punct && tokens[i].text == "(" && tokens[i + 1].kind == TokenKind::Punct &&
        tokens[i + 1].text == ")") {
      std::size_t end = tokens[i + 1].end;
      if (i + 2 < tokens.size() && tokens[i + 2].begin == end && tokens[i + 2].kind == TokenKind::Punct &&
          (tokens[i + 2].text == "?" || tokens[i + 2].text == "*" || tokens[i + 2].text == "+")) {
        end = tokens[i + 2].end;
      }
      erase_one(s, tokens[i].begin, end);
      return true;
    }
  }
  return false;
}

std::string replace_spans(std::string_view line, std::vector<std::pair<Span, std::string>> edits) {
  std::string s(line);
  std::sort(edits.begin(), edits.end(), [](const auto& a, const auto& b) { return a.first.first > b.first.first; });
  for (const auto& [span, text] : edits) s.replace(span.first, span.second - span.first, text);
  return s;
}

std::string requote(std::string_view original_token, std::string_view inner) {
  const char q = original_token.empty() ? '\'' : original_token.front();
  std::string out(1, q);
  for (char c : inner) {
    if (c == q || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  out.push_back(q);
  return out;
}

// Index of the `(` whose matching `)` is `close`, or npos.
std::size_t matching_open(const std::vector<Token>& tokens, std::size_t close) {
  for (std::size_t k = 0; k < close; ++k) {
    if (tokens[k].kind == TokenKind::Punct && tokens[k].text == "(" && matching_close(tokens, k) == close) return k;
  }
  return std::string_view::npos;
}

bool has_top_level_alternative(const std::vector<Token>& tokens, std::size_t from, std::size_t to) {
  int depth = 0;
  for (std::size_t k = from; k < to; ++k) {
    const Token& t = tokens[k];
    if (t.kind != TokenKind::Punct) continue;
    if (t.text == "(" || t.text == "[" || t.text == "{") ++depth;
    if (t.text == ")" || t.text == "]" || t.text == "}") --depth;
    if (t.text == "|" && depth == 0) return true;
  }
  return false;
}

struct WholeGroup {
  std::string inner;
  std::string cardinality;
};

// `( inner )?` spanning the whole line.
std::optional<WholeGroup> whole_group(std::string_view content) {
  const auto tokens = lex_line(content);
  const std::size_t n = tokens.size();
  if (n < 3) return std::nullopt;
  const Token& last = tokens[n - 1];
  if (last.kind != TokenKind::Punct || (last.text != "?" && last.text != "*" && last.text != "+")) return std::nullopt;
  if (tokens[n - 2].text != ")" || matching_open(tokens, n - 2) != 0) return std::nullopt;
  return WholeGroup{std::string(trim(content.substr(tokens[0].end, tokens[n - 2].begin - tokens[0].end))),
                    std::string(last.text)};
}

bool is_optional_line(std::string_view content) {
  auto g = whole_group(content);
  if (g && (g->cardinality == "?" || g->cardinality == "*")) return true;
  const auto tokens = lex_line(content);
  return !tokens.empty() && tokens.back().kind == TokenKind::Punct && tokens.back().text == "?" &&
         tokens.size() == 2;
}

using TokenPick = std::function<bool(const std::vector<Token>&, std::size_t)>;

// Removes picked tokens from every in-scope line; counts matches.
RuleOutcome remove_tokens(Grammar& g, const RuleApplication& app, const TokenPick& pick, std::size_t& matches) {
  return rewrite_lines(g, app, [&](const GrammarRule&, const std::string& content) -> std::optional<std::string> {
    const auto tokens = lex_line(content);
    std::vector<Span> spans;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
      if (pick(tokens, i)) spans.emplace_back(tokens[i].begin, tokens[i].end);
    }
    if (spans.empty()) return std::nullopt;
    matches += spans.size();
    return erase_spans(content, spans);
  });
}

using TokenReplace = std::function<std::optional<std::string>(const std::vector<Token>&, std::size_t)>;

RuleOutcome replace_tokens(Grammar& g, const RuleApplication& app, const TokenReplace& make, std::size_t& matches) {
  return rewrite_lines(g, app, [&](const GrammarRule&, const std::string& content) -> std::optional<std::string> {
    const auto tokens = lex_line(content);
    std::vector<std::pair<Span, std::string>> edits;
    for (std::size_t i = 0; i < tokens.size(); ++i) {
      if (auto text = make(tokens, i)) edits.push_back({{tokens[i].begin, tokens[i].end}, std::move(*text)});
    }
    if (edits.empty()) return std::nullopt;
    matches += edits.size();
    return replace_spans(content, std::move(edits));
  });
}

bool quoted_is(const Token& t, std::string_view inner) { return t.kind == TokenKind::Quoted && unquote(t.text) == inner; }

// ---------------------------------------------------------------------------
// braces, commas, keywords

// A brace token is a quoted `{`/`}` or whatever an earlier brace rewrite put
// in its place on this line, so the last brace rewrite wins.
enum class BraceSide { None, Open, Close };

bool token_matches(const Token& t, std::string_view spelled) {
  if (spelled.size() >= 2 && (spelled.front() == '\'' || spelled.front() == '"')) {
    return quoted_is(t, unquote(spelled));
  }
  return t.kind == TokenKind::Ident && t.text == spelled;
}

BraceSide brace_side(const LineEntry& line, const Token& t) {
  if (quoted_is(t, "{")) return BraceSide::Open;
  if (quoted_is(t, "}")) return BraceSide::Close;
  if (line.brace_tokens) {
    if (token_matches(t, line.brace_tokens->first)) return BraceSide::Open;
    if (token_matches(t, line.brace_tokens->second)) return BraceSide::Close;
  }
  return BraceSide::None;
}

// Rewrites brace tokens of every in-scope line. `open`/`close` empty means
// removal.
RuleOutcome rewrite_braces(Grammar& g, const RuleApplication& app, const std::string& open, const std::string& close,
                           bool quoted) {
  Scope scope = resolve_rules(g, app);
  if (scope.failure) return *scope.failure;
  if (auto f = check_attr(scope, app)) return *f;
  const bool removing = open.empty();
  bool changed = false;
  for (GrammarRule* r : scope.rules) {
    for (std::size_t i = 0; i < r->lines.size();) {
      const LineEntry& line = r->lines[i];
      if (!line_in_scope(line, app)) {
        ++i;
        continue;
      }
      const auto tokens = lex_line(line.content);
      std::vector<std::pair<Span, std::string>> edits;
      for (const Token& t : tokens) {
        const BraceSide side = brace_side(line, t);
        if (side == BraceSide::None) continue;
        std::string text;
        if (!removing) {
          const std::string& inner = side == BraceSide::Open ? open : close;
          text = quoted ? requote(t.kind == TokenKind::Quoted ? t.text : "'", inner) : inner;
        }
        edits.push_back({{t.begin, t.end}, std::move(text)});
      }
      std::string next;
      if (removing) {
        std::vector<Span> spans;
        for (const auto& e : edits) spans.push_back(e.first);
        next = spans.empty() ? line.content : erase_spans(line.content, spans);
      } else {
        next = edits.empty() ? line.content : replace_spans(line.content, std::move(edits));
      }
      if (next == line.content) {
        ++i;
        continue;
      }
      changed = true;
      const std::string_view t = trim(next);
      if (t.empty()) {
        r->lines.erase(r->lines.begin() + static_cast<std::ptrdiff_t>(i));
        continue;
      }
      r->set_line(i, std::string(t));
      if (!removing) {
        r->lines[i].brace_tokens = quoted ? std::pair(requote("'", open), requote("'", close)) : std::pair(open, close);
      }
      ++i;
    }
  }
  return changed ? applied() : noop("nothing to change in scope");
}

RuleOutcome remove_braces(Grammar& g, const RuleApplication& app) { return rewrite_braces(g, app, "", "", true); }

RuleOutcome change_braces(Grammar& g, const RuleApplication& app, std::string open, std::string close, bool quoted) {
  return rewrite_braces(g, app, open, close, quoted);
}

RuleOutcome remove_commas(Grammar& g, const RuleApplication& app) {
  std::size_t matches = 0;
  return remove_tokens(g, app, [](const auto& t, std::size_t i) { return quoted_is(t[i], ","); }, matches);
}

RuleOutcome remove_keyword(Grammar& g, const RuleApplication& app) {
  const std::optional<std::string> target = app.args.empty() ? std::nullopt : std::optional(app.args[0]);
  std::size_t matches = 0;
  RuleOutcome out = remove_tokens(
      g, app,
      [&](const std::vector<Token>& t, std::size_t i) {
        return is_keyword_token(t, i) && (!target || unquote(t[i].text) == *target);
      },
      matches);
  if (out.status == Status::NoOp && target && matches == 0) {
    return not_found(ErrorCode::KeywordNotFound, "keyword '" + *target + "' not found in scope");
  }
  return out;
}

RuleOutcome rename_keyword(Grammar& g, const RuleApplication& app) {
  const std::string& from = app.args[0];
  const std::string& to = app.args[1];
  std::size_t matches = 0;
  RuleOutcome out = replace_tokens(
      g, app,
      [&](const std::vector<Token>& t, std::size_t i) -> std::optional<std::string> {
        if (t[i].kind == TokenKind::Quoted && unquote(t[i].text) == from) return requote(t[i].text, to);
        return std::nullopt;
      },
      matches);
  if (out.status == Status::NoOp && matches == 0) {
    return not_found(ErrorCode::KeywordNotFound, "keyword '" + from + "' not found in scope");
  }
  return out;
}

RuleOutcome add_alternative_keyword(Grammar& g, const RuleApplication& app) {
  const std::string& existing = app.args[0];
  const std::string& alternative = app.args[1];
  std::size_t matches = 0;
  RuleOutcome out = replace_tokens(
      g, app,
      [&](const std::vector<Token>& t, std::size_t i) -> std::optional<std::string> {
        if (!is_keyword_token(t, i) || unquote(t[i].text) != existing) return std::nullopt;
        return "(" + std::string(t[i].text) + " | " + requote(t[i].text, alternative) + ")";
      },
      matches);
  if (matches == 0) return not_found(ErrorCode::KeywordNotFound, "keyword '" + existing + "' not found in scope");
  if (existing == alternative) out.warnings.push_back("alternative keyword equals the existing keyword '" + existing + "'");
  return out;
}

bool keyword_already_optional(const std::vector<Token>& t, std::size_t i) {
  auto punct = [&](std::size_t k, std::string_view s) {
    return k < t.size() && t[k].kind == TokenKind::Punct && t[k].text == s;
  };
  if (punct(i + 1, "?") || punct(i + 1, "*")) return true;
  return i > 0 && punct(i - 1, "(") && punct(i + 1, ")") && (punct(i + 2, "?") || punct(i + 2, "*"));
}

RuleOutcome add_optionality_to_keyword(Grammar& g, const RuleApplication& app) {
  const std::string& kw = app.args[0];
  std::size_t found = 0;
  std::size_t matches = 0;
  RuleOutcome out = replace_tokens(
      g, app,
      [&](const std::vector<Token>& t, std::size_t i) -> std::optional<std::string> {
        if (!is_keyword_token(t, i) || unquote(t[i].text) != kw) return std::nullopt;
        ++found;
        if (keyword_already_optional(t, i)) return std::nullopt;
        return "(" + std::string(t[i].text) + ")?";
      },
      matches);
  if (found == 0) return not_found(ErrorCode::KeywordNotFound, "keyword '" + kw + "' not found in scope");
  if (out.status == Status::NoOp) out.warnings.push_back("keyword '" + kw + "' is already optional");
  return out;
}

// ---------------------------------------------------------------------------
// optionality, multiplicity, attributes

RuleOutcome remove_optionality(Grammar& g, const RuleApplication& app) {
  return rewrite_lines(g, app, [](const GrammarRule&, const std::string& content) -> std::optional<std::string> {
    if (assigned_attributes(content).empty()) return std::nullopt;
    const auto tokens = lex_line(content);
    const std::size_t n = tokens.size();
    if (n < 3 || tokens[n - 1].text != "?" || tokens[n - 1].kind != TokenKind::Punct || tokens[n - 2].text != ")") {
      return std::nullopt;
    }
    const std::size_t open = matching_open(tokens, n - 2);
    if (open == std::string_view::npos) return std::nullopt;
    if (open == 0 && !has_top_level_alternative(tokens, 1, n - 2)) {
      return std::string(trim(std::string_view(content).substr(tokens[0].end, tokens[n - 2].begin - tokens[0].end)));
    }
    return content.substr(0, tokens[n - 1].begin) + content.substr(tokens[n - 1].end);
  });
}

RuleOutcome convert_1_to_star_to_star(Grammar& g, const RuleApplication& app) {
  static const std::regex re(
      R"re((\^?\w+)\s*\+=\s*(\[[^\]]*\]|[\w:.^]+)\s*\(\s*(?:(?:"[,]"|'[,]')\s*)?\1\s*\+=\s*\2\s*\)\s*\*)re");
  RuleOutcome out = rewrite_lines(g, app, [](const GrammarRule&, const std::string& content) -> std::optional<std::string> {
    if (!std::regex_search(content, re)) return std::nullopt;
    return std::regex_replace(content, re, "($1+=$2)*");
  });
  if (out.status == Status::NoOp) {
    return failed(ErrorCode::PatternNotFound, "no `F+=T ( \",\" F+=T)*` list found in scope");
  }
  return out;
}

RuleOutcome remove_attribute(Grammar& g, const RuleApplication& app) {
  return rewrite_lines(g, app, [](const GrammarRule&, const std::string&) { return std::optional<std::string>(""); });
}

std::string wrap_inside_group(const std::string& content, const std::function<std::string(const std::string&)>& wrap) {
  if (auto group = whole_group(content)) return "(" + wrap(group->inner) + ")" + group->cardinality;
  return wrap(content);
}

RuleOutcome add_square_brackets_to_attr(Grammar& g, const RuleApplication& app) {
  return rewrite_lines(g, app, [](const GrammarRule&, const std::string& content) -> std::optional<std::string> {
    return wrap_inside_group(content, [](const std::string& inner) { return "'[' " + inner + " ']'"; });
  });
}

RuleOutcome add_optionality_to_attr(Grammar& g, const RuleApplication& app) {
  std::size_t already = 0;
  RuleOutcome out = rewrite_lines(g, app, [&](const GrammarRule&, const std::string& content) -> std::optional<std::string> {
    if (is_optional_line(content)) {
      ++already;
      return std::nullopt;
    }
    return "(" + content + ")?";
  });
  if (out.status == Status::NoOp && already > 0) out.warnings.push_back("attribute '" + *app.attr + "' is already optional");
  return out;
}

RuleOutcome add_keyword_to_attr(Grammar& g, const RuleApplication& app) {
  const std::string kw = quote(app.args[0]);
  return rewrite_lines(g, app, [&](const GrammarRule&, const std::string& content) -> std::optional<std::string> {
    return kw + " " + content;
  });
}

std::size_t after_action(const GrammarRule& r) {
  for (std::size_t i = 0; i < r.lines.size(); ++i) {
    if (is_action_line(r.lines[i].content)) return i + 1;
    if (!is_comment_line(r.lines[i].content)) break;
  }
  return 0;
}

RuleOutcome add_keyword_to_rule(Grammar& g, const RuleApplication& app) {
  Scope scope = resolve_rules(g, app);
  if (scope.failure) return *scope.failure;
  if (scope.rules.empty()) return noop("no rule in scope");
  for (GrammarRule* r : scope.rules) {
    const auto at = static_cast<std::ptrdiff_t>(after_action(*r));
    r->lines.insert(r->lines.begin() + at, r->make_line(quote(app.args[0])));
  }
  return applied();
}

RuleOutcome add_keyword_to_line(Grammar& g, const RuleApplication& app) {
  GrammarRule* r = g.find_rule(*app.rule);
  if (r == nullptr) return not_found(ErrorCode::ScopeNotFound, "rule '" + *app.rule + "' not found");
  std::size_t index = 0;
  const std::string& text = app.args[1];
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), index);
  if (ec != std::errc() || ptr != text.data() + text.size()) {
    return failed(ErrorCode::InvalidArgument, "line index '" + text + "' is not a non-negative integer");
  }
  if (index >= r->lines.size()) {
    return failed(ErrorCode::LineIndexOutOfRange,
                  "line " + text + " out of range; rule '" + r->name + "' has " + std::to_string(r->lines.size()) + " lines");
  }
  if (!editable(r->lines[index])) {
    return failed(ErrorCode::InvalidArgument, "line " + text + " of rule '" + r->name + "' is an action or comment line");
  }
  r->set_line(index, quote(app.args[0]) + " " + r->lines[index].content);
  return applied();
}

RuleOutcome add_symbol_to_rule(Grammar& g, const RuleApplication& app) {
  GrammarRule* r = g.find_rule(*app.rule);
  if (r == nullptr) return not_found(ErrorCode::ScopeNotFound, "rule '" + *app.rule + "' not found");
  const std::string position = app.args.size() > 1 ? app.args[1] : "end-of-body";
  LineEntry line = r->make_line(quote(app.args[0]));
  if (position == "end-of-body") {
    r->lines.push_back(std::move(line));
  } else if (position == "after-action") {
    r->lines.insert(r->lines.begin() + static_cast<std::ptrdiff_t>(after_action(*r)), std::move(line));
  } else {
    return failed(ErrorCode::InvalidArgument, "position must be end-of-body or after-action, got '" + position + "'");
  }
  return applied();
}

// ---------------------------------------------------------------------------
// rules and imports

RuleOutcome remove_rule(Grammar& g, const RuleApplication& app) {
  const std::string& name = *app.rule;
  auto rit = std::find_if(g.rules.begin(), g.rules.end(), [&](const GrammarRule& r) { return r.name == name; });
  if (rit != g.rules.end()) {
    g.rules.erase(rit);
  } else {
    auto tit = std::find_if(g.terminals.begin(), g.terminals.end(), [&](const TerminalRule& t) { return t.name == name; });
    if (tit == g.terminals.end()) return not_found(ErrorCode::RuleNotFound, "rule '" + name + "' not found");
    g.terminals.erase(tit);
  }
  RuleOutcome out = applied();
  for (const auto& r : g.rules) {
    for (const auto& l : r.lines) {
      if (!editable(l)) continue;
      if (contains(called_names(l.content), name)) {
        out.warnings.push_back("dangling call to '" + name + "' in rule '" + r.name + "'");
        break;
      }
    }
  }
  return out;
}

RuleOutcome rename_rule(Grammar& g, const RuleApplication& app) {
  const std::string& from = *app.rule;
  const std::string& to = app.args[0];
  GrammarRule* target = g.find_rule(from);
  if (target == nullptr) return not_found(ErrorCode::RuleNotFound, "rule '" + from + "' not found");
  if (!is_identifier(to)) return failed(ErrorCode::InvalidArgument, "'" + to + "' is not a valid rule name");
  if (from == to) return noop("rule already named '" + to + "'");
  if (g.has_name(to)) return failed(ErrorCode::DuplicateRuleName, "a rule named '" + to + "' already exists");
  target->name = to;
  if (target->returns_type == from) target->returns_type = to;
  std::size_t updates = 1;
  for (auto& r : g.rules) {
    for (std::size_t i = 0; i < r.lines.size(); ++i) {
      if (!editable(r.lines[i])) continue;
      std::vector<std::pair<Span, std::string>> edits;
      for (const Token& t : call_tokens(r.lines[i].content)) {
        if (t.text == from) edits.push_back({{t.begin, t.end}, to});
      }
      if (edits.empty()) continue;
      updates += edits.size();
      r.set_line(i, replace_spans(r.lines[i].content, std::move(edits)));
    }
  }
  return applied(std::to_string(updates) + " textual updates");
}

RuleOutcome add_import(Grammar& g, const RuleApplication& app) {
  ImportStatement imp{app.args[0], std::nullopt};
  if (imp.uri.empty()) return failed(ErrorCode::InvalidArgument, "import uri must not be empty");
  if (app.args.size() > 1 && !app.args[1].empty()) imp.alias = app.args[1];
  for (const auto& existing : g.imports()) {
    if (existing.uri == imp.uri) return noop("import '" + imp.uri + "' already present");
  }
  std::size_t at = 0;
  bool have_import = false;
  for (std::size_t i = 0; i < g.header.size(); ++i) {
    if (parse_import(g.header[i])) {
      at = i + 1;
      have_import = true;
    }
  }
  if (!have_import) {
    for (std::size_t i = 0; i < g.header.size(); ++i) {
      if (trim(g.header[i]).starts_with("grammar")) {
        at = i + 1;
        while (at < g.header.size() && !g.header[at].empty() && std::isspace(static_cast<unsigned char>(g.header[at][0]))) ++at;
        break;
      }
    }
  }
  g.header.insert(g.header.begin() + static_cast<std::ptrdiff_t>(at), format_import(imp));
  return applied();
}

RuleOutcome remove_import(Grammar& g, const RuleApplication& app) {
  for (auto it = g.header.begin(); it != g.header.end(); ++it) {
    auto imp = parse_import(*it);
    if (imp && imp->uri == app.args[0]) {
      g.header.erase(it);
      return applied();
    }
  }
  return not_found(ErrorCode::ImportNotFound, "import '" + app.args[0] + "' not found");
}

// ---------------------------------------------------------------------------
// reposition, terminals

std::optional<std::string> assignment_fragment(std::string_view content, std::string_view attr) {
  const auto tokens = lex_line(content);
  for (std::size_t i = 0; i + 2 < tokens.size(); ++i) {
    if (tokens[i].kind != TokenKind::Ident || tokens[i + 1].kind != TokenKind::Assign) continue;
    std::string_view name = tokens[i].text;
    if (name.starts_with('^')) name.remove_prefix(1);
    if (name != attr) continue;
    std::size_t last = i + 2;
    if (tokens[last].kind == TokenKind::Punct && (tokens[last].text == "[" || tokens[last].text == "(")) {
      last = matching_close(tokens, last);
      if (last == std::string_view::npos) return std::nullopt;
    }
    return std::string(content.substr(tokens[i].begin, tokens[last].end - tokens[i].begin));
  }
  return std::nullopt;
}

// First editable line that starts with a keyword, e.g. `'SoftwareComponent'`.
std::optional<std::size_t> keyword_line(const GrammarRule& r) {
  for (std::size_t i = 0; i < r.lines.size(); ++i) {
    if (!editable(r.lines[i])) continue;
    const auto tokens = lex_line(r.lines[i].content);
    if (!tokens.empty() && is_keyword_token(tokens, 0)) return i;
  }
  return std::nullopt;
}

RuleOutcome reposition_attribute(Grammar& g, const RuleApplication& app) {
  Scope scope = resolve_rules(g, app);
  if (scope.failure) return *scope.failure;
  if (auto f = check_attr(scope, app)) return *f;
  const std::string& attr = *app.attr;
  bool changed = false;
  RuleOutcome out = applied();
  for (GrammarRule* r : scope.rules) {
    auto attr_it = std::find_if(r->lines.begin(), r->lines.end(),
                                [&](const LineEntry& l) { return editable(l) && assigns(l.content, attr); });
    if (attr_it == r->lines.end()) continue;
    const std::size_t attr_index = static_cast<std::size_t>(attr_it - r->lines.begin());
    const auto kw_index = keyword_line(*r);
    if (!kw_index) {
      out.warnings.push_back("rule '" + r->name + "' has no keyword line");
      continue;
    }
    if (*kw_index == attr_index) {
      out.warnings.push_back("attribute '" + attr + "' already on the keyword line of '" + r->name + "'");
      continue;
    }
    auto fragment = assignment_fragment(r->lines[attr_index].content, attr);
    if (!fragment) {
      out.warnings.push_back("cannot isolate the assignment of '" + attr + "' in rule '" + r->name + "'");
      continue;
    }
    const std::string& kw_content = r->lines[*kw_index].content;
    const auto kw_tokens = lex_line(kw_content);
    const std::size_t at = kw_tokens[0].end;
    std::string moved = kw_content.substr(0, at) + " " + *fragment + kw_content.substr(at);
    r->set_line(*kw_index, std::move(moved));
    r->lines.erase(r->lines.begin() + static_cast<std::ptrdiff_t>(attr_index));
    changed = true;
  }
  if (!changed) {
    out.status = Status::NoOp;
    out.message = "attribute '" + attr + "' not moved";
  }
  return out;
}

RuleOutcome add_terminal(Grammar& g, const RuleApplication& app) {
  const std::string& name = app.args[0];
  if (!is_identifier(name)) return failed(ErrorCode::InvalidArgument, "'" + name + "' is not a valid terminal name");
  const std::string text = "terminal " + name + ":\n\t" + app.args[1] + ";";
  if (const TerminalRule* t = g.find_terminal(name)) {
    if (t->text == text) return noop("terminal '" + name + "' already present");
    return failed(ErrorCode::DuplicateRuleName, "a different terminal named '" + name + "' exists");
  }
  if (g.find_rule(name)) return failed(ErrorCode::DuplicateRuleName, "a rule named '" + name + "' exists");
  g.terminals.push_back(TerminalRule{name, text});
  return applied();
}

RewriteFn rewrite_for(RuleKind kind) {
  switch (kind) {
    case RuleKind::AddKeywordToAttr: return add_keyword_to_attr;
    case RuleKind::AddKeywordToRule: return add_keyword_to_rule;
    case RuleKind::AddKeywordToLine: return add_keyword_to_line;
    case RuleKind::RenameKeyword: return rename_keyword;
    case RuleKind::AddAlternativeKeyword: return add_alternative_keyword;
    case RuleKind::RemoveKeyword: return remove_keyword;
    case RuleKind::RemoveRule:
    case RuleKind::RemovePrimitiveTypeRule: return remove_rule;
    case RuleKind::RenameRule: return rename_rule;
    case RuleKind::AddSymbolToRule: return add_symbol_to_rule;
    case RuleKind::AddOptionalityToAttr: return add_optionality_to_attr;
    case RuleKind::AddOptionalityToKeyword: return add_optionality_to_keyword;
    case RuleKind::RemoveOptionality: return remove_optionality;
    case RuleKind::AddImport: return add_import;
    case RuleKind::RemoveImport: return remove_import;
    case RuleKind::ChangeBracesToParentheses:
      return [](Grammar& g, const RuleApplication& a) { return change_braces(g, a, "(", ")", true); };
    case RuleKind::ChangeBracesToSquare:
      return [](Grammar& g, const RuleApplication& a) { return change_braces(g, a, "[", "]", true); };
    case RuleKind::ChangeBracesToAngle:
      return [](Grammar& g, const RuleApplication& a) { return change_braces(g, a, "<", ">", true); };
    case RuleKind::ChangeBracesToSynthetic:
      return [](Grammar& g, const RuleApplication& a) {
        return change_braces(g, a, a.args.size() > 0 ? a.args[0] : "BEGIN", a.args.size() > 1 ? a.args[1] : "END", false);
      };
    case RuleKind::RemoveBraces: return remove_braces;
    case RuleKind::Convert1ToStarToStar: return convert_1_to_star_to_star;
    case RuleKind::RemoveAttribute: return remove_attribute;
    case RuleKind::AddSquareBracketsToAttr: return add_square_brackets_to_attr;
    case RuleKind::RepositionAttribute: return reposition_attribute;
    case RuleKind::RemoveCommas: return remove_commas;
    case RuleKind::AddTerminal: return add_terminal;
  }
  return {};
}

}  // namespace

std::string erase_spans(std::string_view line, std::vector<std::pair<std::size_t, std::size_t>> spans) {
  std::string s(line);
  std::sort(spans.begin(), spans.end(), [](const Span& a, const Span& b) { return a.first > b.first; });
  for (const auto& [b, e] : spans) erase_one(s, b, e);
  while (remove_one_empty_group(s)) {
  }
  return std::string(trim(s));
}

std::string_view config_name(RuleKind kind) noexcept {
  for (const auto& k : kKinds) {
    if (k.kind == kind) return k.name;
  }
  return "unknown";
}

std::optional<RuleKind> rule_kind_from_name(std::string_view name) {
  for (const auto& k : kKinds) {
    if (iequals(k.name, name)) return k.kind;
  }
  return std::nullopt;
}

std::string_view to_string(Status status) noexcept {
  switch (status) {
    case Status::Applied: return "applied";
    case Status::NoOp: return "no-op";
    case Status::ScopeNotFound: return "scope-not-found";
    case Status::Failed: return "failed";
  }
  return "unknown";
}

const RuleRegistry& RuleRegistry::builtin() {
  static const RuleRegistry registry = [] {
    RuleRegistry r;
    for (const auto& k : kKinds) r.add(RuleDescriptor{k.name, k.signature, rewrite_for(k.kind)});
    return r;
  }();
  return registry;
}

void RuleRegistry::add(RuleDescriptor descriptor) {
  if (find(descriptor.name) != nullptr) {
    throw Error(ErrorCode::InvalidArgument, "rule kind '" + descriptor.name + "' is already registered");
  }
  rules_.push_back(std::move(descriptor));
}

const RuleDescriptor* RuleRegistry::find(std::string_view name) const {
  auto it = std::find_if(rules_.begin(), rules_.end(), [&](const RuleDescriptor& d) { return iequals(d.name, name); });
  return it == rules_.end() ? nullptr : &*it;
}

std::vector<std::string> RuleRegistry::names() const {
  std::vector<std::string> out;
  for (const auto& d : rules_) out.push_back(d.name);
  return out;
}

std::string RuleRegistry::check(const RuleApplication& app) const {
  const RuleDescriptor* d = find(app.kind);
  if (d == nullptr) return "unknown rule kind '" + app.kind + "'";
  const auto& sig = d->signature;
  if (app.args.size() < sig.min_args || app.args.size() > sig.max_args) {
    std::string expected = sig.min_args == sig.max_args
                               ? std::to_string(sig.min_args)
                               : std::to_string(sig.min_args) + ".." + std::to_string(sig.max_args);
    return d->name + " takes " + expected + " argument(s), got " + std::to_string(app.args.size());
  }
  if (sig.requires_rule && (!app.rule || app.rule->empty())) return d->name + " requires rule=<name>";
  if (sig.requires_attr && (!app.attr || app.attr->empty())) return d->name + " requires attr=<name>";
  return {};
}

RuleResult RuleRegistry::apply(const Grammar& grammar, const RuleApplication& app) const {
  const RuleDescriptor* d = find(app.kind);
  if (d == nullptr) return {grammar, failed(ErrorCode::UnknownRuleKind, "unknown rule kind '" + app.kind + "'")};
  if (auto problem = check(app); !problem.empty()) return {grammar, failed(ErrorCode::BadArity, problem)};
  Grammar work = grammar;
  RuleOutcome outcome = d->rewrite(work, app);
  if (outcome.status == Status::Applied) return {std::move(work), std::move(outcome)};
  return {grammar, std::move(outcome)};
}

RuleResult apply_rule(const Grammar& grammar, const RuleApplication& app) {
  return RuleRegistry::builtin().apply(grammar, app);
}

}  // namespace gopt
