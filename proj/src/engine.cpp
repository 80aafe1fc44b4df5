#include "gopt/engine.hpp"

#include <algorithm>
#include <sstream>

#include "gopt/error.hpp"
#include "gopt/line_lexer.hpp"

namespace gopt {

namespace {

// Position of `needle` outside double quotes, or npos.
std::size_t find_unquoted(std::string_view text, std::string_view needle, std::size_t from = 0) {
  bool quoted = false;
  for (std::size_t i = from; i < text.size(); ++i) {
    if (quoted && text[i] == '\\') {
      ++i;
      continue;
    }
    if (text[i] == '"') quoted = !quoted;
    if (!quoted && text.substr(i).starts_with(needle)) return i;
  }
  return std::string_view::npos;
}

std::vector<std::string> split_list(std::string_view text) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t comma = text.find(',', start);
    auto part = trim(text.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
    if (!part.empty()) out.emplace_back(part);
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::vector<std::string> parse_args(std::string_view text, std::size_t line_no) {
  std::vector<std::string> out;
  if (trim(text).empty()) return out;
  std::size_t i = 0;
  while (true) {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    std::string arg;
    if (i < text.size() && text[i] == '"') {
      ++i;
      bool closed = false;
      while (i < text.size()) {
        if (text[i] == '\\' && i + 1 < text.size()) {
          arg.push_back(text[i + 1]);
          i += 2;
          continue;
        }
        if (text[i] == '"') {
          closed = true;
          ++i;
          break;
        }
        arg.push_back(text[i++]);
      }
      if (!closed) throw Error(ErrorCode::MalformedLine, "unterminated quoted argument", line_no);
      while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
      if (i < text.size() && text[i] != ',') throw Error(ErrorCode::MalformedLine, "text after quoted argument", line_no);
    } else {
      std::size_t comma = text.find(',', i);
      std::string_view raw = trim(text.substr(i, comma == std::string_view::npos ? std::string_view::npos : comma - i));
      if (raw.empty()) throw Error(ErrorCode::MalformedLine, "empty argument", line_no);
      if (raw.find('"') != std::string_view::npos) {
        throw Error(ErrorCode::MalformedLine, "stray quote in argument '" + std::string(raw) + "'", line_no);
      }
      arg = std::string(raw);
      i = comma == std::string_view::npos ? text.size() : comma;
    }
    out.push_back(std::move(arg));
    if (i >= text.size()) break;
    ++i;  // comma
  }
  return out;
}

RuleApplication parse_line(std::string_view line, std::size_t line_no, const RuleRegistry& registry) {
  std::string_view head = line;
  std::string_view args_text;
  bool has_args = false;
  std::size_t pos = find_unquoted(line, "args:");
  while (pos != std::string_view::npos && pos > 0 && !std::isspace(static_cast<unsigned char>(line[pos - 1]))) {
    pos = find_unquoted(line, "args:", pos + 1);
  }
  if (pos != std::string_view::npos) {
    head = line.substr(0, pos);
    args_text = line.substr(pos + 5);
    has_args = true;
  }

  std::istringstream words{std::string(head)};
  std::string word;
  words >> word;
  RuleApplication app;
  app.source_line = line_no;
  const RuleDescriptor* d = registry.find(word);
  if (d == nullptr) throw Error(ErrorCode::UnknownRuleKind, "unknown rule kind '" + word + "'", line_no);
  app.kind = d->name;

  bool seen_rule = false, seen_attr = false, seen_except = false;
  while (words >> word) {
    const auto eq = word.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 == word.size()) {
      throw Error(ErrorCode::MalformedLine, "expected key=value, got '" + word + "'", line_no);
    }
    const std::string key = word.substr(0, eq);
    const std::string value = word.substr(eq + 1);
    auto once = [&](bool& seen) {
      if (seen) throw Error(ErrorCode::MalformedLine, "duplicate '" + key + "='", line_no);
      seen = true;
    };
    if (key == "rule") {
      once(seen_rule);
      if (value != "*") app.rule = value;
    } else if (key == "attr") {
      once(seen_attr);
      app.attr = value;
    } else if (key == "except") {
      once(seen_except);
      app.exclusions = split_list(value);
    } else {
      throw Error(ErrorCode::MalformedLine, "unknown key '" + key + "'", line_no);
    }
  }
  if (has_args) app.args = parse_args(args_text, line_no);
  if (auto problem = registry.check(app); !problem.empty()) throw Error(ErrorCode::BadArity, problem, line_no);
  return app;
}

bool needs_quotes(std::string_view arg) {
  if (arg.empty() || arg != trim(arg)) return true;
  return arg.find_first_of(" \t,#\"\\") != std::string_view::npos || arg.starts_with("args:");
}

std::string quote_arg(std::string_view arg) {
  if (!needs_quotes(arg)) return std::string(arg);
  std::string out = "\"";
  for (char c : arg) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out + "\"";
}

}  // namespace

Configuration parse_configuration(std::string_view text, const RuleRegistry& registry) {
  Configuration config;
  std::size_t line_no = 0;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t nl = text.find('\n', start);
    std::string_view line = text.substr(start, nl == std::string_view::npos ? std::string_view::npos : nl - start);
    start = nl == std::string_view::npos ? text.size() : nl + 1;
    ++line_no;
    if (auto hash = find_unquoted(line, "#"); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    config.applications.push_back(parse_line(line, line_no, registry));
  }
  return config;
}

std::string format_application(const RuleApplication& app) {
  std::string out = app.kind;
  if (app.rule) out += " rule=" + *app.rule;
  if (app.attr) out += " attr=" + *app.attr;
  if (!app.exclusions.empty()) {
    out += " except=";
    for (std::size_t i = 0; i < app.exclusions.size(); ++i) out += (i ? "," : "") + app.exclusions[i];
  }
  if (!app.args.empty()) {
    out += " args: ";
    for (std::size_t i = 0; i < app.args.size(); ++i) out += (i ? ", " : "") + quote_arg(app.args[i]);
  }
  return out;
}

std::string format_configuration(const Configuration& config) {
  std::string out;
  for (const auto& app : config.applications) out += format_application(app) + "\n";
  return out;
}

std::size_t ChangeReport::count(Status status) const {
  return static_cast<std::size_t>(
      std::count_if(diagnostics.begin(), diagnostics.end(), [&](const Diagnostic& d) { return d.status == status; }));
}

bool ChangeReport::has_failures() const { return count(Status::ScopeNotFound) + count(Status::Failed) > 0; }

OptimizeResult optimize(const Grammar& input, const Configuration& config, const RuleRegistry& registry) {
  OptimizeResult out{input, {}};
  for (std::size_t i = 0; i < config.applications.size(); ++i) {
    const RuleApplication& app = config.applications[i];
    RuleResult r = registry.apply(out.grammar, app);
    if (r.outcome.status == Status::Applied) out.grammar = std::move(r.grammar);
    if (!r.outcome.clean()) {
      out.report.diagnostics.push_back(Diagnostic{i + 1, app.source_line, app.kind, r.outcome.status,
                                                  r.outcome.message, r.outcome.warnings});
    }
  }
  out.report.gora = config.applications.size();
  const GrammarDiff diff = diff_grammars(input, out.grammar);
  out.report.rules = diff.rules;
  out.report.lines = diff.lines;
  out.report.result = grammar_metrics(out.grammar);
  return out;
}

ChangeReport dry_run(const Grammar& input, const Configuration& config, const RuleRegistry& registry) {
  return optimize(input, config, registry).report;
}

namespace {

std::string paint(std::string_view text, Status status, bool color) {
  if (!color) return std::string(text);
  const char* code = status == Status::Applied ? "\033[33m" : status == Status::NoOp ? "\033[36m" : "\033[31m";
  return std::string(code) + std::string(text) + "\033[0m";
}

std::string quote_value(std::string_view text) {
  std::string out = "\"";
  for (char c : text) {
    if (c == '"' || c == '\\') out.push_back('\\');
    if (c == '\n') {
      out += "\\n";
      continue;
    }
    out.push_back(c);
  }
  return out + "\"";
}

}  // namespace

std::string format_report(const ChangeReport& report, bool color) {
  std::ostringstream out;
  const std::size_t bad = report.diagnostics.size();
  out << "report-version: 1\n";
  out << "applications: " << report.gora << " (clean " << report.gora - bad << ", no-op " << report.count(Status::NoOp)
      << ", scope-not-found " << report.count(Status::ScopeNotFound) << ", failed " << report.count(Status::Failed)
      << ")\n";
  out << "changed rules: mod " << report.rules.mod << ", add " << report.rules.add << ", del " << report.rules.del << "\n";
  out << "changed lines: mod " << report.lines.mod << ", add " << report.lines.add << ", del " << report.lines.del << "\n";
  out << "result grammar: lines " << report.result.lines << ", rules " << report.result.rules << ", calls "
      << report.result.calls << "\n";
  if (report.diagnostics.empty()) {
    out << "diagnostics: none\n";
    return out.str();
  }
  out << "diagnostics:\n";
  for (const auto& d : report.diagnostics) {
    out << "  #" << d.index;
    if (d.source_line) out << " (line " << d.source_line << ")";
    out << " " << d.kind << ": " << paint(to_string(d.status), d.status, color);
    if (!d.message.empty()) out << ": " << d.message;
    out << "\n";
    for (const auto& w : d.warnings) out << "      warning: " << w << "\n";
  }
  return out.str();
}

std::string format_report_machine(const ChangeReport& report) {
  std::ostringstream out;
  out << "report-version: 1\n";
  out << "gora: " << report.gora << "\n";
  out << "rules.mod: " << report.rules.mod << "\n";
  out << "rules.add: " << report.rules.add << "\n";
  out << "rules.del: " << report.rules.del << "\n";
  out << "lines.mod: " << report.lines.mod << "\n";
  out << "lines.add: " << report.lines.add << "\n";
  out << "lines.del: " << report.lines.del << "\n";
  out << "result.lines: " << report.result.lines << "\n";
  out << "result.rules: " << report.result.rules << "\n";
  out << "result.calls: " << report.result.calls << "\n";
  out << "status.no-op: " << report.count(Status::NoOp) << "\n";
  out << "status.scope-not-found: " << report.count(Status::ScopeNotFound) << "\n";
  out << "status.failed: " << report.count(Status::Failed) << "\n";
  out << "diagnostics: " << report.diagnostics.size() << "\n";
  for (std::size_t i = 0; i < report.diagnostics.size(); ++i) {
    const auto& d = report.diagnostics[i];
    out << "diagnostic." << i << ": index=" << d.index << " line=" << d.source_line << " kind=" << d.kind
        << " status=" << to_string(d.status) << " message=" << quote_value(d.message) << "\n";
    for (const auto& w : d.warnings) out << "diagnostic." << i << ".warning: " << quote_value(w) << "\n";
  }
  return out.str();
}

}  // namespace gopt
