#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "definiens/definition.hpp"
#include "definiens/method.hpp"
#include "definiens/state.hpp"
#include "definiens/term.hpp"

namespace definiens {

struct SourcePos {
  std::size_t line = 1;
  std::size_t column = 1;
};

// Positions are informational: structural equality ignores them.

struct DataDefinitionDecl {
  std::string name;
  std::vector<Equation> equations;
  SourcePos pos;
  std::vector<SourcePos> equationPos;

  friend bool operator==(const DataDefinitionDecl& a, const DataDefinitionDecl& b) {
    return a.name == b.name && a.equations == b.equations;
  }
};

struct MethodDefinitionDecl {
  std::string name;
  std::vector<std::string> params;
  std::vector<MethodEquation> equations;
  SourcePos pos;
  std::vector<SourcePos> equationPos;

  friend bool operator==(const MethodDefinitionDecl& a, const MethodDefinitionDecl& b) {
    return a.name == b.name && a.params == b.params && a.equations == b.equations;
  }
};

using SourceItem = std::variant<DataDefinitionDecl, MethodDefinitionDecl>;

struct QueryExpr {
  std::string methodName;
  std::vector<std::string> args;
  std::vector<StateEquation> initialState;

  friend bool operator==(const QueryExpr&, const QueryExpr&) = default;
};

enum class ResultType { VarsOnly, Final, Trace };

std::string_view resultTypeName(ResultType kind);

struct ResTypeDirective {
  ResultType kind;
  friend bool operator==(const ResTypeDirective&, const ResTypeDirective&) = default;
};
struct LoadDirective {
  std::string path;
  friend bool operator==(const LoadDirective&, const LoadDirective&) = default;
};
struct HaltDirective {
  friend bool operator==(const HaltDirective&, const HaltDirective&) = default;
};

using Directive = std::variant<ResTypeDirective, LoadDirective, HaltDirective>;

// All parse functions throw ParseError on the first error and reject trailing
// input.
std::vector<SourceItem> parseProgram(std::string_view text);
QueryExpr parseQuery(std::string_view text);
Directive parseDirective(std::string_view text);
Term parseTerm(std::string_view text);
Condition parseCondition(std::string_view text);

/// True when `text` starts with a directive keyword (`restype`, `load`,
/// `halt`).
bool looksLikeDirective(std::string_view text);

std::string print(const Term& t);
std::string print(const Condition& c);
std::string print(const Equation& e);
std::string print(const Step& s);
std::string print(const Guard& g);
std::string print(const MethodEquation& e);
std::string print(const StateDefinition& s);
std::string print(const std::vector<StateEquation>& s);
std::string print(const SourceItem& item);
std::string print(const std::vector<SourceItem>& program);
std::string print(const QueryExpr& q);
std::string print(const Substitution& s);

}  // namespace definiens
