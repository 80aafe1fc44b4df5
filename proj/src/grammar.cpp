#include "gopt/grammar.hpp"

#include <algorithm>
#include <cctype>
#include <regex>
#include <set>

#include "gopt/error.hpp"
#include "gopt/line_lexer.hpp"

namespace gopt {

LineEntry GrammarRule::make_line(std::string content) const {
  LineEntry entry{std::move(content), std::nullopt, std::nullopt};
  if (type == RuleType::Parser && !is_comment_line(entry.content) && !is_action_line(entry.content)) {
    entry.attr_name = first_assigned_attribute(entry.content);
  }
  return entry;
}

void GrammarRule::set_line(std::size_t i, std::string content) {
  auto marker = std::move(lines.at(i).brace_tokens);
  lines.at(i) = make_line(std::move(content));
  lines.at(i).brace_tokens = std::move(marker);
}

GrammarRule* Grammar::find_rule(std::string_view name) {
  auto it = std::find_if(rules.begin(), rules.end(), [&](const GrammarRule& r) { return r.name == name; });
  return it == rules.end() ? nullptr : &*it;
}

const GrammarRule* Grammar::find_rule(std::string_view name) const {
  return const_cast<Grammar*>(this)->find_rule(name);
}

const TerminalRule* Grammar::find_terminal(std::string_view name) const {
  auto it = std::find_if(terminals.begin(), terminals.end(),
                         [&](const TerminalRule& t) { return t.name == name; });
  return it == terminals.end() ? nullptr : &*it;
}

bool Grammar::has_name(std::string_view name) const {
  return find_rule(name) != nullptr || find_terminal(name) != nullptr;
}

std::vector<ImportStatement> Grammar::imports() const {
  std::vector<ImportStatement> out;
  for (const auto& line : header) {
    if (auto imp = parse_import(line)) out.push_back(std::move(*imp));
  }
  return out;
}

std::optional<ImportStatement> parse_import(std::string_view line) {
  static const std::regex re(R"(^\s*import\s+(["'])([^"']+)\1(?:\s+as\s+([A-Za-z_][\w]*))?\s*;?\s*$)");
  std::match_results<std::string_view::const_iterator> m;
  if (!std::regex_match(line.begin(), line.end(), m, re)) return std::nullopt;
  ImportStatement imp{m[2].str(), std::nullopt};
  if (m[3].matched) imp.alias = m[3].str();
  return imp;
}

std::string format_import(const ImportStatement& import) {
  std::string out = "import \"" + import.uri + "\"";
  if (import.alias) out += " as " + *import.alias;
  return out;
}

bool is_terminal_like(std::string_view name, std::string_view returns_type, bool terminal_keyword) {
  if (terminal_keyword) return true;
  if (returns_type.starts_with("ecore::")) return true;
  if (!returns_type.empty()) return false;
  int letters = 0;
  for (char c : name) {
    if (std::islower(static_cast<unsigned char>(c))) return false;
    if (std::isalpha(static_cast<unsigned char>(c))) ++letters;
  }
  return letters >= 2;
}

namespace {

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t nl = text.find('\n', start);
    std::string_view line = text.substr(start, nl == std::string_view::npos ? std::string_view::npos : nl - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    out.push_back(line);
    if (nl == std::string_view::npos) break;
    start = nl + 1;
  }
  if (!out.empty() && out.back().empty()) out.pop_back();
  return out;
}

bool is_header_statement(std::string_view trimmed) {
  auto starts_word = [&](std::string_view w) {
    return trimmed.starts_with(w) && (trimmed.size() == w.size() || std::isspace(static_cast<unsigned char>(trimmed[w.size()])));
  };
  return starts_word("grammar") || starts_word("import") || starts_word("generate");
}

// Position of the first `;` token outside quotes and comments, or npos.
std::size_t find_terminator(std::string_view line) {
  for (const Token& t : lex_line(line)) {
    if (t.kind == TokenKind::Punct && t.text == ";") return t.begin;
  }
  return std::string_view::npos;
}

struct Declaration {
  bool is_enum = false;
  bool is_terminal = false;
  bool is_fragment = false;
  std::string name;
  std::optional<std::string> returns_type;
  std::optional<std::string> hidden;
  std::string rest;
};

std::optional<Declaration> parse_declaration(std::string_view line) {
  static const std::regex re(
      R"(^(enum\s+|terminal\s+(?:fragment\s+)?|fragment\s+)?(\^?[A-Za-z_]\w*)(?:\s+returns\s+(\^?[A-Za-z_]\w*(?:::\^?[A-Za-z_]\w*)?))?(?:\s+hidden\s*\(([^)]*)\))?\s*:(?!:)(.*)$)");
  std::match_results<std::string_view::const_iterator> m;
  if (!std::regex_match(line.begin(), line.end(), m, re)) return std::nullopt;
  Declaration d;
  const std::string prefix = m[1].str();
  d.is_enum = prefix.starts_with("enum");
  d.is_terminal = prefix.starts_with("terminal");
  d.is_fragment = prefix.starts_with("fragment");
  d.name = m[2].str();
  if (m[3].matched) d.returns_type = m[3].str();
  if (m[4].matched) d.hidden = std::string(trim(m[4].str()));
  d.rest = m[5].str();
  return d;
}

// `@Override` and similar rule annotations travel with the rule like comments.
bool is_annotation(std::string_view t) {
  static const std::regex re(R"(^@[A-Za-z_]\w*\s*$)");
  return std::regex_match(t.begin(), t.end(), re);
}

class GrammarParser {
 public:
  explicit GrammarParser(std::string_view text) : lines_(split_lines(text)) {}

  Grammar run() {
    parse_header();
    std::vector<std::string> pending;
    while (pos_ < lines_.size()) {
      std::string_view raw = lines_[pos_];
      std::string_view t = trim(raw);
      if (t.empty()) {
        ++pos_;
        continue;
      }
      if (in_block_comment_ || is_comment_line(t) || is_annotation(t)) {
        pending.emplace_back(trim_right(raw));
        if (!is_annotation(t)) track_block_comment(t);
        ++pos_;
        continue;
      }
      parse_rule(std::move(pending));
      pending.clear();
    }
    grammar_.trailer.insert(grammar_.trailer.end(), pending.begin(), pending.end());
    return std::move(grammar_);
  }

 private:
  void track_block_comment(std::string_view t) {
    if (in_block_comment_) {
      if (t.find("*/") != std::string_view::npos) in_block_comment_ = false;
    } else if (t.starts_with("/*") && t.find("*/", 2) == std::string_view::npos) {
      in_block_comment_ = true;
    }
  }

  void parse_header() {
    while (pos_ < lines_.size()) {
      std::string_view raw = lines_[pos_];
      std::string_view t = trim(raw);
      if (t.empty()) {
        ++pos_;
        continue;
      }
      const bool continuation = !grammar_.header.empty() && std::isspace(static_cast<unsigned char>(raw.front())) &&
                                !is_comment_line(t);
      if (is_header_statement(t) || continuation) {
        grammar_.header.emplace_back(trim_right(raw));
        ++pos_;
        continue;
      }
      if (is_comment_line(t) && comment_run_precedes_header()) {
        while (pos_ < lines_.size() && (trim(lines_[pos_]).empty() || in_block_comment_ || is_comment_line(trim(lines_[pos_])))) {
          std::string_view c = trim(lines_[pos_]);
          if (!c.empty()) {
            grammar_.header.emplace_back(trim_right(lines_[pos_]));
            track_block_comment(c);
          }
          ++pos_;
        }
        continue;
      }
      break;
    }
  }

  bool comment_run_precedes_header() const {
    bool block = false;
    for (std::size_t i = pos_; i < lines_.size(); ++i) {
      std::string_view t = trim(lines_[i]);
      if (t.empty()) continue;
      if (block || is_comment_line(t)) {
        if (block) {
          if (t.find("*/") != std::string_view::npos) block = false;
        } else if (t.starts_with("/*") && t.find("*/", 2) == std::string_view::npos) {
          block = true;
        }
        continue;
      }
      return is_header_statement(t);
    }
    return false;
  }

  void check_unique(const std::string& name, std::size_t line_no) {
    if (!names_.insert(name).second) {
      throw Error(ErrorCode::DuplicateRuleName, "duplicate rule name '" + name + "'", line_no);
    }
  }

  void parse_rule(std::vector<std::string> preamble) {
    const std::size_t start = pos_;
    std::string_view decl_text = trim(lines_[pos_]);
    auto decl = parse_declaration(decl_text);
    if (!decl) {
      throw Error(ErrorCode::MalformedRule, "cannot parse rule declaration: " + std::string(decl_text), start + 1);
    }
    check_unique(decl->name, start + 1);

    if (is_terminal_like(decl->name, decl->returns_type.value_or(""), decl->is_terminal)) {
      parse_terminal(*decl, std::move(preamble), start);
      return;
    }

    GrammarRule rule;
    rule.name = decl->name;
    rule.returns_type = decl->returns_type;
    rule.type = decl->is_enum ? RuleType::Enum : RuleType::Parser;
    rule.fragment = decl->is_fragment;
    rule.hidden = decl->hidden;
    rule.preamble = std::move(preamble);

    bool block = false;
    bool done = false;
    auto consume = [&](std::string_view piece, std::size_t line_no) {
      std::string_view t = trim(piece);
      if (t.empty()) return;
      if (block || is_comment_line(t)) {
        rule.lines.push_back(LineEntry{std::string(t), std::nullopt, std::nullopt});
        if (block) {
          if (t.find("*/") != std::string_view::npos) block = false;
        } else if (t.starts_with("/*") && t.find("*/", 2) == std::string_view::npos) {
          block = true;
        }
        return;
      }
      const std::size_t semi = find_terminator(t);
      if (semi == std::string_view::npos) {
        rule.lines.push_back(rule.make_line(std::string(t)));
        return;
      }
      std::string_view before = trim(t.substr(0, semi));
      std::string_view after = trim(t.substr(semi + 1));
      if (!before.empty()) rule.lines.push_back(rule.make_line(std::string(before)));
      if (!after.empty()) {
        if (!is_comment_line(after)) {
          throw Error(ErrorCode::MalformedRule, "unexpected text after ';' in rule " + rule.name, line_no);
        }
        carry_.emplace_back(after);
      }
      done = true;
    };

    consume(decl->rest, start + 1);
    ++pos_;
    while (!done && pos_ < lines_.size()) {
      consume(lines_[pos_], pos_ + 1);
      ++pos_;
    }
    if (!done) {
      throw Error(ErrorCode::UnterminatedRule, "rule '" + rule.name + "' reaches end of file without ';'", start + 1);
    }
    grammar_.rules.push_back(std::move(rule));
    flush_carry();
  }

  void parse_terminal(const Declaration& decl, std::vector<std::string> preamble, std::size_t start) {
    std::string text;
    for (auto& c : preamble) text += c + "\n";
    bool done = false;
    bool first = true;
    while (!done && pos_ < lines_.size()) {
      std::string_view raw = trim_right(lines_[pos_]);
      std::string_view scan = first ? std::string_view(decl.rest) : raw;
      if (!trim(raw).empty()) {
        if (!first) text += "\n";
        text += std::string(first ? trim(raw) : raw);
        first = false;
      }
      if (find_terminator(scan) != std::string_view::npos) done = true;
      ++pos_;
    }
    if (!done) {
      throw Error(ErrorCode::UnterminatedRule, "rule '" + decl.name + "' reaches end of file without ';'", start + 1);
    }
    grammar_.terminals.push_back(TerminalRule{decl.name, std::move(text)});
  }

  void flush_carry() {
    // comments trailing a `;` belong to whatever follows
    if (carry_.empty()) return;
    grammar_.trailer.insert(grammar_.trailer.end(), carry_.begin(), carry_.end());
    carry_.clear();
  }

  std::vector<std::string_view> lines_;
  std::size_t pos_ = 0;
  bool in_block_comment_ = false;
  Grammar grammar_;
  std::set<std::string, std::less<>> names_;
  std::vector<std::string> carry_;
};

}  // namespace

Grammar parse_grammar(std::string_view text) { return GrammarParser(text).run(); }

std::string GrammarRule::declaration() const {
  std::string out = type == RuleType::Enum ? "enum " : fragment ? "fragment " : "";
  out += name;
  if (returns_type) out += " returns " + *returns_type;
  if (hidden) out += " hidden(" + *hidden + ")";
  return out + ":";
}

std::string serialize_rule(const GrammarRule& rule) {
  std::string out;
  for (const auto& c : rule.preamble) out += c + "\n";
  out += rule.declaration();
  if (rule.lines.empty()) return out + "\n\t;";
  for (std::size_t i = 0; i < rule.lines.size(); ++i) {
    out += "\n\t" + rule.lines[i].content;
  }
  if (is_comment_line(rule.lines.back().content)) {
    out += "\n\t;";
  } else {
    out += ";";
  }
  return out;
}

std::string serialize_grammar(const Grammar& grammar) {
  std::vector<std::string> blocks;
  if (!grammar.header.empty()) {
    std::string h;
    for (std::size_t i = 0; i < grammar.header.size(); ++i) {
      if (i) h += "\n";
      h += grammar.header[i];
    }
    blocks.push_back(std::move(h));
  }
  for (const auto& rule : grammar.rules) blocks.push_back(serialize_rule(rule));
  for (const auto& t : grammar.terminals) blocks.push_back(t.text);
  if (!grammar.trailer.empty()) {
    std::string tr;
    for (std::size_t i = 0; i < grammar.trailer.size(); ++i) {
      if (i) tr += "\n";
      tr += grammar.trailer[i];
    }
    blocks.push_back(std::move(tr));
  }
  std::string out;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    if (i) out += "\n\n";
    out += blocks[i];
  }
  if (!out.empty()) out += "\n";
  return out;
}

}  // namespace gopt
