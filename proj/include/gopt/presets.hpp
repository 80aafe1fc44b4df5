#pragma once

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "gopt/engine.hpp"

namespace gopt {

struct PresetParameter {
  std::string name;
  std::optional<std::string> default_value;
};

/// A named configuration template. Template lines use the configuration
/// format plus these directives:
///
///   @preset <name>
///   @param <name> [= <default>]      a missing `=` means the value is required
///   @unless <param> == <value>       guards the next line
///   @each <var> in <param>           repeats the next line per comma-separated item
///
/// and `param(<name>)` placeholders. Comment lines are kept in the expansion.
struct Preset {
  std::string name;
  std::vector<PresetParameter> parameters;
  std::vector<std::string> template_lines;
};

using Bindings = std::map<std::string, std::string>;

/// Throws gopt::Error(MalformedLine) on a bad directive.
Preset parse_preset(std::string_view text);

/// Expands to configuration text. Throws gopt::Error(UnboundParameter) when a
/// required parameter is missing or a placeholder names no parameter, and
/// gopt::Error(InvalidArgument) for bindings of unknown parameters.
std::string expand_preset_text(const Preset& preset, const Bindings& bindings);

/// expand_preset_text() followed by parse_configuration().
Configuration expand_preset(const Preset& preset, const Bindings& bindings,
                            const RuleRegistry& registry = RuleRegistry::builtin());

/// Presets compiled into the library.
std::vector<std::string> builtin_preset_names();
std::optional<Preset> builtin_preset(std::string_view name);

}  // namespace gopt
