#include "gopt/generator.hpp"

#include <algorithm>
#include <set>
#include <sstream>

#include "gopt/error.hpp"
#include "gopt/line_lexer.hpp"

namespace gopt {

namespace {

std::string value_type(const Feature& f) {
  if (f.kind == FeatureKind::CrossReference) return "[" + f.type_name + "|EString]";
  return f.type_name;
}

std::string datatype_rule_text(std::string_view type) {
  std::string body;
  if (type == "EString") body = "STRING | ID";
  else if (type == "EInt") body = "'-'? INT";
  else if (type == "EBoolean") body = "'true' | 'false'";
  else body = "'-'? INT? '.' INT (('E'|'e') '-'? INT)?";
  return std::string(type) + " returns ecore::" + std::string(type) + ":\n\t" + body + ";";
}

GrammarRule class_rule(const Metamodel& m, const Classifier& c) {
  GrammarRule r;
  r.name = c.name;
  r.returns_type = c.name;
  r.lines.push_back(r.make_line("{" + c.name + "}"));
  r.lines.push_back(r.make_line(quote(c.name)));
  r.lines.push_back(r.make_line("'{'"));
  for (const auto& f : collect_features(m, c)) r.lines.push_back(r.make_line(feature_line(f, m)));
  r.lines.push_back(r.make_line("'}'"));
  return r;
}

}  // namespace

std::string feature_line(const Feature& f, const Metamodel& m) {
  (void)m;
  const std::string kw = quote(f.name);
  std::string inner;
  if (f.kind == FeatureKind::Attribute && f.type_name == "EBoolean" && !f.many()) {
    inner = f.name + "?=" + kw;
  } else if (f.many()) {
    const std::string v = value_type(f);
    const bool parens = f.kind == FeatureKind::CrossReference;
    const std::string open = parens ? "'('" : "'{'";
    const std::string close = parens ? "')'" : "'}'";
    inner = kw + " " + open + " " + f.name + "+=" + v + " ( \",\" " + f.name + "+=" + v + ")* " + close + " ";
  } else {
    inner = kw + " " + f.name + "=" + value_type(f);
  }
  if (f.lower_bound >= 1) return std::string(trim(inner));
  return "(" + inner + ")?";
}

Grammar generate_grammar(const Metamodel& m, const GenerationOptions& options) {
  const Classifier* root = nullptr;
  if (options.root_class) {
    root = m.find(*options.root_class);
    if (root == nullptr || root->kind != ClassifierKind::Class || root->is_abstract) {
      throw Error(ErrorCode::InvalidRoot, "root class '" + *options.root_class + "' is not a concrete class");
    }
  } else {
    auto it = std::find_if(m.classifiers.begin(), m.classifiers.end(),
                           [](const Classifier& c) { return c.kind == ClassifierKind::Class && !c.is_abstract; });
    if (it == m.classifiers.end()) throw Error(ErrorCode::NoRootClass, "metamodel has no concrete class");
    root = &*it;
  }

  Grammar g;
  const std::string lang = options.language_name.empty() ? m.name : options.language_name;
  const std::string uri = options.ns_uri.empty() ? m.ns_uri : options.ns_uri;
  g.header.push_back("grammar " + lang + " with org.eclipse.xtext.common.Terminals");
  g.header.push_back(format_import({uri, std::nullopt}));
  g.header.push_back(format_import({kEcoreUri, std::string("ecore")}));

  std::set<std::string, std::less<>> builtins{"EString"};
  auto note_builtins = [&](const Classifier& c) {
    for (const auto& f : collect_features(m, c)) {
      if (f.kind == FeatureKind::Attribute && is_builtin_type(f.type_name)) builtins.insert(f.type_name);
    }
  };

  g.rules.push_back(class_rule(m, *root));
  note_builtins(*root);
  for (const auto& c : m.classifiers) {
    if (&c == root) continue;
    switch (c.kind) {
      case ClassifierKind::Class:
        if (!c.is_abstract) {
          g.rules.push_back(class_rule(m, c));
          note_builtins(c);
        } else if (auto subs = direct_subclasses(m, c.name); !subs.empty()) {
          GrammarRule r;
          r.name = c.name;
          r.returns_type = c.name;
          std::string alts;
          for (const Classifier* s : subs) alts += (alts.empty() ? "" : " | ") + s->name;
          r.lines.push_back(r.make_line(alts));
          g.rules.push_back(std::move(r));
        }
        break;
      case ClassifierKind::Enum: {
        GrammarRule r;
        r.name = c.name;
        r.returns_type = c.name;
        r.type = RuleType::Enum;
        std::string alts;
        for (const auto& l : c.literals) alts += (alts.empty() ? "" : " | ") + l + "=" + quote(l);
        r.lines.push_back(r.make_line(alts));
        g.rules.push_back(std::move(r));
        break;
      }
      case ClassifierKind::DataType: {
        GrammarRule r;
        r.name = c.name;
        r.returns_type = c.name;
        r.lines.push_back(r.make_line("STRING"));
        g.rules.push_back(std::move(r));
        break;
      }
    }
  }
  for (const char* t : {"EString", "EInt", "EBoolean", "EFloat", "EDouble"}) {
    if (builtins.count(t)) g.terminals.push_back(TerminalRule{t, datatype_rule_text(t)});
  }
  return g;
}

GrammarMetrics grammar_metrics(const Grammar& grammar) {
  GrammarMetrics out;
  std::istringstream in(serialize_grammar(grammar));
  std::string line;
  while (std::getline(in, line)) {
    if (!trim(line).empty()) ++out.lines;
  }
  out.rules = grammar.rules.size();
  for (const auto& r : grammar.rules) {
    for (const auto& l : r.lines) {
      if (is_comment_line(l.content) || is_action_line(l.content)) continue;
      out.calls += called_names(l.content).size();
    }
  }
  return out;
}

}  // namespace gopt
