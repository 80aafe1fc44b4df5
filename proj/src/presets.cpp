#include "gopt/presets.hpp"

#include <algorithm>
#include <regex>
#include <set>

#include "gopt/error.hpp"
#include "gopt/line_lexer.hpp"
#include "preset_data.hpp"

namespace gopt {

namespace {

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (start < text.size()) {
    std::size_t nl = text.find('\n', start);
    if (nl == std::string_view::npos) nl = text.size();
    std::string_view line = text.substr(start, nl - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    out.push_back(line);
    start = nl + 1;
  }
  return out;
}

const PresetParameter* find_param(const Preset& p, std::string_view name) {
  auto it = std::find_if(p.parameters.begin(), p.parameters.end(), [&](const auto& q) { return q.name == name; });
  return it == p.parameters.end() ? nullptr : &*it;
}

const std::regex kPlaceholder(R"(param\(\s*([A-Za-z_]\w*)\s*\))");

std::string substitute(const std::string& line, const std::map<std::string, std::string>& values) {
  std::string out;
  auto begin = std::sregex_iterator(line.begin(), line.end(), kPlaceholder);
  std::size_t last = 0;
  for (auto it = begin; it != std::sregex_iterator(); ++it) {
    const auto& m = *it;
    out.append(line, last, static_cast<std::size_t>(m.position(0)) - last);
    auto v = values.find(m[1].str());
    if (v == values.end()) throw Error(ErrorCode::UnboundParameter, "unknown parameter '" + m[1].str() + "'");
    out += v->second;
    last = static_cast<std::size_t>(m.position(0) + m.length(0));
  }
  out.append(line, last);
  return out;
}

std::vector<std::string> split_items(std::string_view list) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (start <= list.size()) {
    std::size_t comma = list.find(',', start);
    if (comma == std::string_view::npos) comma = list.size();
    auto item = trim(list.substr(start, comma - start));
    if (!item.empty()) out.emplace_back(item);
    start = comma + 1;
  }
  return out;
}

}  // namespace

Preset parse_preset(std::string_view text) {
  static const std::regex param_re(R"(@param\s+([A-Za-z_]\w*)\s*(?:=\s*(.*))?)");
  static const std::regex unless_re(R"(@unless\s+([A-Za-z_]\w*)\s*==\s*(\S+))");
  static const std::regex each_re(R"(@each\s+([A-Za-z_]\w*)\s+in\s+([A-Za-z_]\w*))");
  static const std::regex preset_re(R"(@preset\s+([A-Za-z_][\w-]*))");
  Preset preset;
  std::size_t line_no = 0;
  // text above @preset describes the file and is not part of the template
  const bool has_preamble = text.find("@preset") != std::string_view::npos;
  bool in_body = !has_preamble;
  for (std::string_view raw : split_lines(text)) {
    ++line_no;
    const std::string line(trim(raw));
    std::smatch m;
    if (!in_body && !line.starts_with("@preset")) continue;
    if (line.starts_with("@preset")) {
      in_body = true;
      if (!std::regex_match(line, m, preset_re)) throw Error(ErrorCode::MalformedLine, "bad @preset line", line_no);
      preset.name = m[1].str();
    } else if (line.starts_with("@param")) {
      if (!std::regex_match(line, m, param_re)) throw Error(ErrorCode::MalformedLine, "bad @param line", line_no);
      if (find_param(preset, m[1].str())) {
        throw Error(ErrorCode::MalformedLine, "parameter '" + m[1].str() + "' declared twice", line_no);
      }
      PresetParameter p{m[1].str(), std::nullopt};
      if (m[2].matched) p.default_value = std::string(trim(m[2].str()));
      preset.parameters.push_back(std::move(p));
    } else if (line.starts_with("@unless")) {
      if (!std::regex_match(line, m, unless_re)) throw Error(ErrorCode::MalformedLine, "bad @unless line", line_no);
      preset.template_lines.push_back(line);
    } else if (line.starts_with("@each")) {
      if (!std::regex_match(line, m, each_re)) throw Error(ErrorCode::MalformedLine, "bad @each line", line_no);
      preset.template_lines.push_back(line);
    } else if (line.starts_with("@")) {
      throw Error(ErrorCode::MalformedLine, "unknown directive '" + line + "'", line_no);
    } else {
      preset.template_lines.push_back(line);
    }
  }
  return preset;
}

std::string expand_preset_text(const Preset& preset, const Bindings& bindings) {
  for (const auto& [key, value] : bindings) {
    if (!find_param(preset, key)) throw Error(ErrorCode::InvalidArgument, "preset '" + preset.name + "' has no parameter '" + key + "'");
  }
  std::map<std::string, std::string> values;
  for (const auto& p : preset.parameters) {
    if (auto it = bindings.find(p.name); it != bindings.end()) {
      values[p.name] = it->second;
    } else if (p.default_value) {
      values[p.name] = *p.default_value;
    } else {
      throw Error(ErrorCode::UnboundParameter, "parameter '" + p.name + "' has no value");
    }
  }

  static const std::regex unless_re(R"(@unless\s+(\w+)\s*==\s*(\S+))");
  static const std::regex each_re(R"(@each\s+(\w+)\s+in\s+(\w+))");
  std::string out;
  bool skip_next = false;
  std::optional<std::pair<std::string, std::vector<std::string>>> each;
  auto value_of = [&](const std::string& name) -> const std::string& {
    auto it = values.find(name);
    if (it == values.end()) throw Error(ErrorCode::UnboundParameter, "unknown parameter '" + name + "'");
    return it->second;
  };
  for (const std::string& line : preset.template_lines) {
    std::smatch m;
    if (std::regex_match(line, m, unless_re)) {
      skip_next = value_of(m[1].str()) == m[2].str();
      continue;
    }
    if (std::regex_match(line, m, each_re)) {
      each.emplace(m[1].str(), split_items(value_of(m[2].str())));
      continue;
    }
    if (skip_next) {
      skip_next = false;
      each.reset();
      continue;
    }
    if (each) {
      for (const auto& item : each->second) {
        auto scoped = values;
        scoped[each->first] = item;
        out += substitute(line, scoped) + "\n";
      }
      each.reset();
      continue;
    }
    out += substitute(line, values) + "\n";
  }
  // collapse runs of blank lines left by skipped steps
  std::string collapsed;
  for (std::string_view l : split_lines(out)) {
    if (l.empty() && (collapsed.empty() || collapsed.ends_with("\n\n"))) continue;
    collapsed.append(l);
    collapsed.push_back('\n');
  }
  while (collapsed.ends_with("\n\n")) collapsed.pop_back();
  return collapsed;
}

Configuration expand_preset(const Preset& preset, const Bindings& bindings, const RuleRegistry& registry) {
  Configuration c = parse_configuration(expand_preset_text(preset, bindings), registry);
  c.source = "preset:" + preset.name;
  return c;
}

std::vector<std::string> builtin_preset_names() {
  std::vector<std::string> out;
  for (const auto& entry : detail::kBuiltinPresets) out.push_back(parse_preset(entry).name);
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<Preset> builtin_preset(std::string_view name) {
  for (const auto& entry : detail::kBuiltinPresets) {
    Preset p = parse_preset(entry);
    if (p.name == name) return p;
  }
  return std::nullopt;
}

}  // namespace gopt
