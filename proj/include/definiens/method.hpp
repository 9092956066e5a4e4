#pragma once

#include <map>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "definiens/definition.hpp"
#include "definiens/state.hpp"

namespace definiens {

enum class Side { Left, Right };

/// A method word in a step sequence. Without arguments it denotes the
/// enclosing instance (same bindings) when it names the enclosing method.
struct MethodWord {
  std::string name;
  std::vector<std::string> args;

  friend bool operator==(const MethodWord&, const MethodWord&) = default;
};

/// `r:P`: one computation step on a right-hand side using definition P.
struct SideStep {
  Side side = Side::Right;
  std::string definition;

  friend bool operator==(const SideStep&, const SideStep&) = default;
};

using Step = std::variant<MethodWord, SideStep>;

/// Guard of a method equation: `some p`, `all p`, where p is built from
/// `not(p)` and `r:matches(C)` / `l:matches(C)`. `Always` stands for a missing
/// guard.
class Guard {
 public:
  enum class Kind { Always, Some, All, Not, SideMatches };

  Guard() = default;  // always

  static Guard always() { return Guard(); }
  static Guard some(Guard inner);
  static Guard all(Guard inner);
  static Guard negation(Guard inner);
  static Guard sideMatches(Side side, Condition pattern);

  Kind kind() const { return kind_; }
  /// Only for Some, All and Not.
  const Guard& inner() const { return *inner_; }
  /// Only for SideMatches.
  Side side() const { return side_; }
  const Condition& pattern() const { return pattern_; }

  /// Per-equation predicate (Not / SideMatches).
  bool holdsOn(const StateEquation& eq) const;
  /// Whole-state evaluation; a bare per-equation predicate is read as `all`.
  bool holdsOn(const StateDefinition& state) const;

  friend bool operator==(const Guard& a, const Guard& b);

 private:
  Kind kind_ = Kind::Always;
  std::shared_ptr<const Guard> inner_;
  Side side_ = Side::Right;
  Condition pattern_;
};

bool evalGuard(const Guard& guard, const StateDefinition& state);

struct MethodEquation {
  std::string head;
  std::vector<Step> body;
  Guard guard;

  friend bool operator==(const MethodEquation&, const MethodEquation&) = default;
};

class MethodDefinition {
 public:
  /// Throws std::invalid_argument on duplicate parameters or on an equation
  /// whose head is not the method name.
  MethodDefinition(std::string name, std::vector<std::string> params, std::vector<MethodEquation> equations);

  const std::string& name() const { return name_; }
  const std::vector<std::string>& params() const { return params_; }
  const std::vector<MethodEquation>& equations() const { return equations_; }

  friend bool operator==(const MethodDefinition&, const MethodDefinition&) = default;

 private:
  std::string name_;
  std::vector<std::string> params_;
  std::vector<MethodEquation> equations_;
};

/// Named data definitions and method definitions visible to a query.
class Environment {
 public:
  void addDefinition(std::shared_ptr<const Definition> definition);
  void addMethod(std::shared_ptr<const MethodDefinition> method);

  std::shared_ptr<const Definition> findDefinition(const std::string& name) const;
  std::shared_ptr<const MethodDefinition> findMethod(const std::string& name) const;
  /// Throws UnknownDefinition.
  std::shared_ptr<const Definition> definition(const std::string& name) const;
  std::shared_ptr<const MethodDefinition> method(const std::string& name) const;

  const std::map<std::string, std::shared_ptr<const Definition>>& definitions() const { return definitions_; }
  const std::map<std::string, std::shared_ptr<const MethodDefinition>>& methods() const { return methods_; }

 private:
  std::map<std::string, std::shared_ptr<const Definition>> definitions_;
  std::map<std::string, std::shared_ptr<const MethodDefinition>> methods_;
};

/// A method definition with its definition parameters bound.
class MethodInstance {
 public:
  const MethodDefinition& definition() const { return *method_; }
  std::shared_ptr<const MethodDefinition> definitionPtr() const { return method_; }
  const std::map<std::string, std::shared_ptr<const Definition>>& bindings() const { return bindings_; }

  /// Parameter binding first, then the environment (if any). Throws
  /// UnknownDefinition.
  std::shared_ptr<const Definition> resolve(const std::string& ref, const Environment* env) const;

 private:
  friend MethodInstance instantiate(std::shared_ptr<const MethodDefinition>,
                                    std::vector<std::shared_ptr<const Definition>>);

  std::shared_ptr<const MethodDefinition> method_;
  std::map<std::string, std::shared_ptr<const Definition>> bindings_;
};

/// Throws ArityMismatch.
MethodInstance instantiate(std::shared_ptr<const MethodDefinition> method,
                           std::vector<std::shared_ptr<const Definition>> args);

/// Indices of the equations whose guard holds on `state`, in source order.
std::vector<std::size_t> applicableEquations(const MethodInstance& instance, const StateDefinition& state);

}  // namespace definiens
