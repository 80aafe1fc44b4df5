#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace gopt {

enum class ErrorCode {
  // grammar text
  UnterminatedRule,
  DuplicateRuleName,
  MalformedRule,
  // metamodel input
  MalformedXml,
  MissingNamespace,
  UnresolvedType,
  BidirectionalReference,
  DuplicateClassifier,
  InvalidBounds,
  CyclicInheritance,
  // generation
  NoRootClass,
  InvalidRoot,
  // configuration / presets
  UnknownRuleKind,
  BadArity,
  MalformedLine,
  UnboundParameter,
  // rule application outcomes
  ScopeNotFound,
  KeywordNotFound,
  RuleNotFound,
  ImportNotFound,
  PatternNotFound,
  LineIndexOutOfRange,
  InvalidArgument,
  // io
  Io,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Fatal error raised by parsers and loaders. `line` is 1-based, 0 when unknown.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, std::size_t line = 0)
      : std::runtime_error(message), code_(code), line_(line) {}

  ErrorCode code() const noexcept { return code_; }
  std::size_t line() const noexcept { return line_; }

 private:
  ErrorCode code_;
  std::size_t line_;
};

}  // namespace gopt
