#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "definiens/substitution.hpp"
#include "definiens/term.hpp"

namespace definiens {

/// `head = body`; a fact `a.` is stored with body `true`.
struct Equation {
  Term head;
  Condition body;

  friend bool operator==(const Equation&, const Equation&) = default;
};

/// One alternative of a definiens: the renamed clause body with the unifier
/// applied, the unifier restricted to the query atom's variables, and the
/// originating clause.
struct DefiniensElement {
  Condition body;
  Substitution unifier;
  std::size_t clauseId = 0;

  friend bool operator==(const DefiniensElement&, const DefiniensElement&) = default;
};

enum class DefinitionMode { Unify, Match };

/// The contract the machine relies on. Implementations must keep
/// `inDom(a) == !definiens(a).empty()`.
class Definition {
 public:
  virtual ~Definition() = default;

  virtual const std::string& name() const = 0;
  virtual DefinitionMode mode() const = 0;

  /// Elements in clause order. Fresh variables are drawn from `fresh`.
  virtual std::vector<DefiniensElement> definiens(const Term& atom, FreshVariables& fresh,
                                                  UnifyOptions options = {}) const = 0;

  virtual bool inDom(const Term& atom) const;
  /// The co-domain is the whole condition language.
  virtual bool inCom(const Condition& condition) const;
};

/// A definition presented as an ordered system of equations. The definiens of
/// an atom is computed per equation by unification (or one-way matching of
/// the head against the atom in Match mode).
class ClausalDefinition : public Definition {
 public:
  ClausalDefinition(std::string name, std::vector<Equation> equations,
                    DefinitionMode mode = DefinitionMode::Unify, bool is_mutable = false);

  const std::string& name() const override { return name_; }
  DefinitionMode mode() const override { return mode_; }
  bool isMutable() const { return mutable_; }

  /// Clause ids are the positions in this list.
  const std::vector<Equation>& equations() const { return equations_; }

  std::vector<DefiniensElement> definiens(const Term& atom, FreshVariables& fresh,
                                          UnifyOptions options = {}) const override;

  /// Inserts at `position` (appends when absent). Throws ImmutableDefinition.
  void addEquation(Equation equation, std::optional<std::size_t> position = std::nullopt);
  /// Throws ImmutableDefinition or UnknownClause.
  void removeEquation(std::size_t clause_id);

 private:
  std::string name_;
  std::vector<Equation> equations_;
  DefinitionMode mode_;
  bool mutable_;
};

}  // namespace definiens
