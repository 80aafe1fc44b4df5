#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "gopt/grammar.hpp"

namespace gopt {

/// Changed/added/deleted line counts. For one line sequence pair with LCS
/// length L: mod = min(|a|-L, |b|-L), del = |a|-L-mod, add = |b|-L-mod.
struct LineCounts {
  std::size_t mod = 0;
  std::size_t add = 0;
  std::size_t del = 0;

  std::size_t total() const { return mod + add + del; }
  LineCounts& operator+=(const LineCounts& o) {
    mod += o.mod;
    add += o.add;
    del += o.del;
    return *this;
  }
  bool operator==(const LineCounts&) const = default;
};

struct RuleCounts {
  std::size_t mod = 0;
  std::size_t add = 0;
  std::size_t del = 0;

  bool operator==(const RuleCounts&) const = default;
};

enum class EditKind { Keep, Delete, Insert };

struct LineEdit {
  EditKind kind;
  std::string text;
};

struct RuleDiff {
  std::string name;
  LineCounts lines;
  std::vector<LineEdit> script;
};

struct GrammarDiff {
  std::vector<std::string> only_in_a;
  std::vector<std::string> only_in_b;
  std::vector<RuleDiff> changed;  // rules present in both with differing lines
  LineCounts header;
  LineCounts lines;  // header + matched rules + whole added/deleted rules
  RuleCounts rules;

  bool empty() const { return only_in_a.empty() && only_in_b.empty() && changed.empty() && header.total() == 0; }
};

std::size_t lcs_length(std::span<const std::string> a, std::span<const std::string> b);

/// Edit script from one LCS; deletions precede insertions inside a hunk.
std::vector<LineEdit> line_script(std::span<const std::string> a, std::span<const std::string> b);

LineCounts count_line_changes(std::span<const std::string> a, std::span<const std::string> b);

/// Lines compared for a rule: comment lines above it, its declaration, then
/// trimmed body lines. Terminals contribute their non-blank lines. The `;`
/// terminator is excluded in both cases.
std::vector<std::string> comparable_lines(const GrammarRule& rule);
std::vector<std::string> comparable_lines(const TerminalRule& terminal);

/// Matches rules (production and terminal) by name.
GrammarDiff diff_grammars(const Grammar& a, const Grammar& b);

std::string format_diff(const GrammarDiff& diff);

}  // namespace gopt
