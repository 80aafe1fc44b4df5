#pragma once

#include <cstddef>
#include <optional>
#include <string>

#include "gopt/grammar.hpp"
#include "gopt/metamodel.hpp"

namespace gopt {

struct GenerationOptions {
  std::optional<std::string> root_class;  // defaults to the first concrete class
  std::string language_name;              // defaults to the metamodel name
  std::string ns_uri;                     // defaults to the metamodel nsURI
};

inline constexpr const char* kEcoreUri = "http://www.eclipse.org/emf/2002/Ecore";

/// Default grammar in the shape the Xtext generator produces: one rule per
/// concrete class (keyword, braces, one line per feature), alternatives for
/// abstract classes, enum rules, and ecore datatype rules.
/// Throws gopt::Error (NoRootClass, InvalidRoot).
Grammar generate_grammar(const Metamodel& metamodel, const GenerationOptions& options = {});

/// Grammar line for one feature, e.g. `('node' node=NodeId)?`.
std::string feature_line(const Feature& feature, const Metamodel& metamodel);

struct GrammarMetrics {
  std::size_t lines = 0;  // non-blank serialized lines
  std::size_t rules = 0;  // production rules (parser and enum)
  std::size_t calls = 0;  // rule names referenced from production rule bodies

  bool operator==(const GrammarMetrics&) const = default;
};

GrammarMetrics grammar_metrics(const Grammar& grammar);

}  // namespace gopt
