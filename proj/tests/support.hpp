#pragma once

#include <fstream>
#include <regex>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace gopt::testing {

inline std::string data_path(std::string_view relative) {
  return std::string(GOPT_TEST_DATA_DIR) + "/" + std::string(relative);
}

inline std::string read_data(std::string_view relative) {
  std::ifstream in(data_path(relative), std::ios::binary);
  if (!in) throw std::runtime_error("missing test data: " + std::string(relative));
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline std::string trimmed(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

inline std::vector<std::string> split_lines(std::string_view text) {
  std::vector<std::string> out;
  std::string line;
  std::istringstream in{std::string(text)};
  while (std::getline(in, line)) out.push_back(line);
  return out;
}

// Layout-insensitive form of grammar text: trimmed non-blank lines, a
// declaration split from any body text on its line, and a lone `;` joined to
// the line above. Written without the library parser on purpose.
inline std::string normalize(std::string_view text) {
  static const std::regex decl(
      R"(^((?:enum\s+|fragment\s+|terminal\s+(?:fragment\s+)?)?\^?\w+(?:\s+returns\s+[\w:^]+)?(?:\s+hidden\s*\([^)]*\))?\s*:)(?!:)\s*(.+)$)");
  std::vector<std::string> lines;
  for (const auto& raw : split_lines(text)) {
    std::string t = trimmed(raw);
    if (t.empty()) continue;
    std::smatch m;
    if (std::regex_match(t, m, decl)) {
      lines.push_back(m[1].str());
      t = trimmed(m[2].str());
    }
    if (t == ";" && !lines.empty()) {
      lines.back() += ";";
      continue;
    }
    lines.push_back(t);
  }
  std::string out;
  for (const auto& l : lines) out += l + "\n";
  return out;
}

}  // namespace gopt::testing
