#include "gopt/error.hpp"

namespace gopt {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::UnterminatedRule: return "unterminated-rule";
    case ErrorCode::DuplicateRuleName: return "duplicate-rule-name";
    case ErrorCode::MalformedRule: return "malformed-rule";
    case ErrorCode::MalformedXml: return "malformed-xml";
    case ErrorCode::MissingNamespace: return "missing-namespace";
    case ErrorCode::UnresolvedType: return "unresolved-type";
    case ErrorCode::BidirectionalReference: return "bidirectional-reference";
    case ErrorCode::DuplicateClassifier: return "duplicate-classifier";
    case ErrorCode::InvalidBounds: return "invalid-bounds";
    case ErrorCode::CyclicInheritance: return "cyclic-inheritance";
    case ErrorCode::NoRootClass: return "no-root-class";
    case ErrorCode::InvalidRoot: return "invalid-root";
    case ErrorCode::UnknownRuleKind: return "unknown-rule-kind";
    case ErrorCode::BadArity: return "bad-arity";
    case ErrorCode::MalformedLine: return "malformed-line";
    case ErrorCode::UnboundParameter: return "unbound-parameter";
    case ErrorCode::ScopeNotFound: return "scope-not-found";
    case ErrorCode::KeywordNotFound: return "keyword-not-found";
    case ErrorCode::RuleNotFound: return "rule-not-found";
    case ErrorCode::ImportNotFound: return "import-not-found";
    case ErrorCode::PatternNotFound: return "pattern-not-found";
    case ErrorCode::LineIndexOutOfRange: return "line-index-out-of-range";
    case ErrorCode::InvalidArgument: return "invalid-argument";
    case ErrorCode::Io: return "io";
  }
  return "unknown";
}

}  // namespace gopt
