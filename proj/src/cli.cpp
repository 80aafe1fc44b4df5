#include "gopt/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>

#include "gopt/diff.hpp"
#include "gopt/engine.hpp"
#include "gopt/error.hpp"
#include "gopt/generator.hpp"
#include "gopt/grammar.hpp"
#include "gopt/metamodel.hpp"
#include "gopt/presets.hpp"

namespace gopt::cli {

namespace {

// Fatal error already formatted with file context.
struct Fatal {
  std::string message;
};

std::string describe(const std::string& path, const Error& e) {
  std::string out = path;
  if (e.line() != 0) out += ":" + std::to_string(e.line());
  out += ": error[" + std::string(to_string(e.code())) + "]: " + e.what();
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Fatal{path + ": error[io]: cannot open file"};
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Fatal{path + ": error[io]: cannot write file"};
  out << text;
  if (!out) throw Fatal{path + ": error[io]: write failed"};
}

template <typename F>
auto with_context(const std::string& path, F&& f) {
  try {
    return f();
  } catch (const Error& e) {
    throw Fatal{describe(path, e)};
  }
}

Grammar load_grammar(const std::string& path) {
  const std::string text = read_file(path);
  return with_context(path, [&] { return parse_grammar(text); });
}

Configuration load_configuration(const std::string& path) {
  const std::string text = read_file(path);
  Configuration c = with_context(path, [&] { return parse_configuration(text); });
  c.source = path;
  return c;
}

Metamodel load_metamodel_file(const std::string& path) {
  const std::string text = read_file(path);
  return with_context(path, [&] { return load_metamodel(text); });
}

bool is_ecore(const std::string& path) { return std::filesystem::path(path).extension() == ".ecore"; }

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err, const Environment& env) {
  CLI::App app{"Optimize generated Xtext grammars with configurable rewrite rules.", "gopt"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "gopt 1.0.0");

  std::string metamodel_path, root, language, output, grammar_path, config_path, report_path, a_path, b_path;
  std::string preset_name, preset_file;
  std::vector<std::string> sets;
  bool machine = false, list_presets = false;

  auto* generate = app.add_subcommand("generate", "Generate the default grammar for a metamodel");
  generate->add_option("--metamodel,-m", metamodel_path, "Ecore metamodel (XMI)")->required();
  generate->add_option("--root,-r", root, "Root class; defaults to the first concrete class");
  generate->add_option("--language,-l", language, "Grammar name; defaults to the package name");
  generate->add_option("-o,--output", output, "Output grammar")->required();

  auto* optimize_cmd = app.add_subcommand("optimize", "Apply a configuration to a grammar");
  optimize_cmd->add_option("-g,--grammar", grammar_path, "Input grammar")->required();
  optimize_cmd->add_option("-c,--config", config_path, "Configuration file")->required();
  optimize_cmd->add_option("-o,--output", output, "Output grammar")->required();
  optimize_cmd->add_option("--report", report_path, "Write the change report here instead of stdout");
  optimize_cmd->add_flag("--machine", machine, "key: value report format");

  auto* dry = app.add_subcommand("dry-run", "Report what a configuration would do without writing a grammar");
  dry->add_option("-g,--grammar", grammar_path, "Input grammar")->required();
  dry->add_option("-c,--config", config_path, "Configuration file")->required();
  dry->add_flag("--machine", machine, "key: value report format");

  auto* diff = app.add_subcommand("diff", "Compare two grammars, or two .ecore metamodels");
  diff->add_option("-a", a_path, "Old file")->required();
  diff->add_option("-b", b_path, "New file")->required();

  auto* metrics = app.add_subcommand("metrics", "Print size metrics of a grammar");
  metrics->add_option("-g,--grammar", grammar_path, "Grammar")->required();

  auto* expand = app.add_subcommand("expand-preset", "Expand a preset into a configuration");
  auto* name_opt = expand->add_option("--name,-n", preset_name, "Built-in preset name");
  auto* file_opt = expand->add_option("--preset-file", preset_file, "Preset data file");
  name_opt->excludes(file_opt);
  expand->add_option("--set", sets, "Parameter binding k=v (repeatable)");
  expand->add_option("-o,--output", output, "Output configuration; stdout when omitted");
  expand->add_flag("--list", list_presets, "List built-in presets");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << "gopt 1.0.0\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return kExitOk;
    }
    err << "gopt: " << e.what() << "\n";
    err << "run 'gopt --help' for usage\n";
    return kExitFatal;
  }

  try {
    if (*generate) {
      const Metamodel mm = load_metamodel_file(metamodel_path);
      GenerationOptions opts;
      if (!root.empty()) opts.root_class = root;
      opts.language_name = language;
      const Grammar g = with_context(metamodel_path, [&] { return generate_grammar(mm, opts); });
      write_file(output, serialize_grammar(g));
      return kExitOk;
    }
    if (*optimize_cmd || *dry) {
      const Grammar g = load_grammar(grammar_path);
      const Configuration c = load_configuration(config_path);
      const OptimizeResult r = optimize(g, c);
      if (*optimize_cmd) write_file(output, serialize_grammar(r.grammar));
      if (!report_path.empty()) {
        write_file(report_path, machine ? format_report_machine(r.report) : format_report(r.report, false));
      } else {
        out << (machine ? format_report_machine(r.report) : format_report(r.report, env.color));
      }
      return r.report.has_failures() ? kExitDiagnostics : kExitOk;
    }
    if (*diff) {
      if (is_ecore(a_path) && is_ecore(b_path)) {
        const auto changes = diff_metamodels(load_metamodel_file(a_path), load_metamodel_file(b_path));
        for (const auto& c : changes) out << format_change(c) << "\n";
        if (changes.empty()) out << "no changes\n";
        return kExitOk;
      }
      out << format_diff(diff_grammars(load_grammar(a_path), load_grammar(b_path)));
      return kExitOk;
    }
    if (*metrics) {
      const GrammarMetrics m = grammar_metrics(load_grammar(grammar_path));
      out << "lines: " << m.lines << "\nrules: " << m.rules << "\ncalls: " << m.calls << "\n";
      return kExitOk;
    }
    if (*expand) {
      if (list_presets) {
        for (const auto& n : builtin_preset_names()) out << n << "\n";
        return kExitOk;
      }
      Preset preset;
      if (!preset_file.empty()) {
        const std::string text = read_file(preset_file);
        preset = with_context(preset_file, [&] { return parse_preset(text); });
      } else if (!preset_name.empty()) {
        auto found = builtin_preset(preset_name);
        if (!found) throw Fatal{"error: unknown preset '" + preset_name + "'"};
        preset = std::move(*found);
      } else {
        throw Fatal{"error: expand-preset needs --name or --preset-file"};
      }
      Bindings bindings;
      for (const auto& s : sets) {
        const auto eq = s.find('=');
        if (eq == std::string::npos || eq == 0) throw Fatal{"error: --set expects k=v, got '" + s + "'"};
        bindings[s.substr(0, eq)] = s.substr(eq + 1);
      }
      const std::string where = preset_file.empty() ? "preset " + preset_name : preset_file;
      const std::string text = with_context(where, [&] {
        std::string t = expand_preset_text(preset, bindings);
        parse_configuration(t);  // reject expansions the engine cannot read
        return t;
      });
      if (output.empty()) {
        out << text;
      } else {
        write_file(output, text);
      }
      return kExitOk;
    }
  } catch (const Fatal& f) {
    err << f.message << "\n";
    return kExitFatal;
  } catch (const Error& e) {
    err << "error[" << to_string(e.code()) << "]: " << e.what() << "\n";
    return kExitFatal;
  }
  return kExitFatal;
}

}  // namespace gopt::cli
