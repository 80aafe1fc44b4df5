#include "gopt/diff.hpp"

#include <algorithm>
#include <map>
#include <sstream>

#include "gopt/line_lexer.hpp"

namespace gopt {

namespace {

using Table = std::vector<std::vector<std::size_t>>;

// suffix LCS table: t[i][j] = LCS(a[i..], b[j..])
Table lcs_table(std::span<const std::string> a, std::span<const std::string> b) {
  Table t(a.size() + 1, std::vector<std::size_t>(b.size() + 1, 0));
  for (std::size_t i = a.size(); i-- > 0;) {
    for (std::size_t j = b.size(); j-- > 0;) {
      t[i][j] = a[i] == b[j] ? t[i + 1][j + 1] + 1 : std::max(t[i + 1][j], t[i][j + 1]);
    }
  }
  return t;
}

}  // namespace

std::size_t lcs_length(std::span<const std::string> a, std::span<const std::string> b) {
  return lcs_table(a, b)[0][0];
}

std::vector<LineEdit> line_script(std::span<const std::string> a, std::span<const std::string> b) {
  const Table t = lcs_table(a, b);
  std::vector<LineEdit> out;
  std::vector<LineEdit> dels, ins;
  auto flush = [&] {
    out.insert(out.end(), dels.begin(), dels.end());
    out.insert(out.end(), ins.begin(), ins.end());
    dels.clear();
    ins.clear();
  };
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (i < a.size() && j < b.size() && a[i] == b[j]) {
      flush();
      out.push_back({EditKind::Keep, a[i]});
      ++i;
      ++j;
    } else if (j == b.size() || (i < a.size() && t[i + 1][j] >= t[i][j + 1])) {
      dels.push_back({EditKind::Delete, a[i++]});
    } else {
      ins.push_back({EditKind::Insert, b[j++]});
    }
  }
  flush();
  return out;
}

LineCounts count_line_changes(std::span<const std::string> a, std::span<const std::string> b) {
  const std::size_t l = lcs_length(a, b);
  const std::size_t da = a.size() - l;
  const std::size_t db = b.size() - l;
  const std::size_t mod = std::min(da, db);
  return LineCounts{mod, db - mod, da - mod};
}

std::vector<std::string> comparable_lines(const GrammarRule& rule) {
  std::vector<std::string> out;
  for (const auto& c : rule.preamble) out.emplace_back(trim(c));
  out.push_back(rule.declaration());
  for (const auto& line : rule.lines) out.emplace_back(trim(line.content));
  return out;
}

std::vector<std::string> comparable_lines(const TerminalRule& terminal) {
  std::vector<std::string> out;
  std::istringstream in(terminal.text);
  std::string line;
  while (std::getline(in, line)) {
    auto t = trim(line);
    if (!t.empty()) out.emplace_back(t);
  }
  // drop the terminator so terminals compare like parser rules
  if (!out.empty() && out.back().ends_with(';')) {
    out.back().pop_back();
    out.back() = std::string(trim(out.back()));
    if (out.back().empty()) out.pop_back();
  }
  return out;
}

namespace {

struct Unit {
  std::string name;
  std::vector<std::string> lines;
};

std::vector<Unit> units_of(const Grammar& g) {
  std::vector<Unit> out;
  for (const auto& r : g.rules) out.push_back({r.name, comparable_lines(r)});
  for (const auto& t : g.terminals) out.push_back({t.name, comparable_lines(t)});
  return out;
}

std::vector<std::string> header_lines(const Grammar& g) {
  std::vector<std::string> out;
  for (const auto& h : g.header) out.emplace_back(trim(h));
  return out;
}

}  // namespace

GrammarDiff diff_grammars(const Grammar& a, const Grammar& b) {
  GrammarDiff diff;
  const auto ha = header_lines(a);
  const auto hb = header_lines(b);
  diff.header = count_line_changes(ha, hb);
  diff.lines += diff.header;

  const auto ua = units_of(a);
  const auto ub = units_of(b);
  std::map<std::string, const Unit*, std::less<>> index_b;
  for (const auto& u : ub) index_b.emplace(u.name, &u);
  std::map<std::string, const Unit*, std::less<>> index_a;
  for (const auto& u : ua) index_a.emplace(u.name, &u);

  for (const auto& u : ua) {
    auto it = index_b.find(u.name);
    if (it == index_b.end()) {
      diff.only_in_a.push_back(u.name);
      diff.lines.del += u.lines.size();
      ++diff.rules.del;
      continue;
    }
    const Unit& other = *it->second;
    if (u.lines == other.lines) continue;
    RuleDiff rd{u.name, count_line_changes(u.lines, other.lines), line_script(u.lines, other.lines)};
    diff.lines += rd.lines;
    ++diff.rules.mod;
    diff.changed.push_back(std::move(rd));
  }
  for (const auto& u : ub) {
    if (index_a.count(u.name)) continue;
    diff.only_in_b.push_back(u.name);
    diff.lines.add += u.lines.size();
    ++diff.rules.add;
  }
  return diff;
}

std::string format_diff(const GrammarDiff& diff) {
  std::ostringstream out;
  out << "rules: mod " << diff.rules.mod << ", add " << diff.rules.add << ", del " << diff.rules.del << "\n";
  out << "lines: mod " << diff.lines.mod << ", add " << diff.lines.add << ", del " << diff.lines.del << "\n";
  for (const auto& name : diff.only_in_a) out << "only in a: " << name << "\n";
  for (const auto& name : diff.only_in_b) out << "only in b: " << name << "\n";
  if (diff.header.total() != 0) {
    out << "header: mod " << diff.header.mod << ", add " << diff.header.add << ", del " << diff.header.del << "\n";
  }
  for (const auto& rd : diff.changed) {
    out << "@@ " << rd.name << " (mod " << rd.lines.mod << ", add " << rd.lines.add << ", del " << rd.lines.del
        << ")\n";
    for (const auto& e : rd.script) {
      const char mark = e.kind == EditKind::Keep ? ' ' : e.kind == EditKind::Delete ? '-' : '+';
      out << mark << " " << e.text << "\n";
    }
  }
  return out.str();
}

}  // namespace gopt
