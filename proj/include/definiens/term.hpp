#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace definiens {

// Functor and constant used for list sugar: [a,b] is '.'(a, '.'(b, [])).
inline constexpr std::string_view kConsFunctor = ".";
inline constexpr std::string_view kNilName = "[]";
inline constexpr std::string_view kTrueName = "true";

bool isVariableName(std::string_view name);

/// An immutable first-order term: a variable, a constant (identifier or
/// integer literal) or a compound with at least one argument. Copies share
/// structure.
class Term {
 public:
  enum class Kind { Variable, Constant, Compound };

  static Term variable(std::string name);
  static Term constant(std::string name);
  static Term integer(long long value);
  /// Throws std::invalid_argument when `args` is empty.
  static Term compound(std::string functor, std::vector<Term> args);
  static Term nil();
  static Term cons(Term head, Term tail);
  /// Builds `[items...|tail]`; tail defaults to `[]`.
  static Term list(std::vector<Term> items, std::optional<Term> tail = std::nullopt);

  Kind kind() const;
  bool isVariable() const { return kind() == Kind::Variable; }
  bool isConstant() const { return kind() == Kind::Constant; }
  bool isCompound() const { return kind() == Kind::Compound; }
  bool isCons() const;
  bool isNil() const;

  /// Variable name, constant name, or functor.
  const std::string& name() const;
  std::span<const Term> args() const;
  std::size_t arity() const { return args().size(); }

  bool isGround() const;
  /// Appends variable names in first-occurrence order, without duplicates.
  void collectVariables(std::vector<std::string>& out) const;
  std::vector<std::string> variables() const;

  /// Pointer identity, used to short-circuit traversals.
  bool sameNode(const Term& other) const { return node_ == other.node_; }

  friend bool operator==(const Term& a, const Term& b);
  friend bool operator!=(const Term& a, const Term& b) { return !(a == b); }
  friend bool operator<(const Term& a, const Term& b);

 private:
  struct Node;
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

/// A condition: the distinguished `true`, an atom, or an ordered
/// conjunction. Constructors do not canonicalize; `simplify` does.
///
/// An atom whose term is a bare variable is representable so that the machine
/// can detect floundering; the parser never produces one from a fact head.
class Condition {
 public:
  enum class Kind { True, Atom, Conjunction };

  Condition() = default;  // true

  static Condition truth() { return Condition(); }
  static Condition atom(Term term);
  static Condition conjunction(std::vector<Condition> items);
  /// Canonical condition from a flat list of atoms (empty list is true).
  static Condition fromAtoms(std::vector<Term> atoms);

  Kind kind() const { return kind_; }
  bool isTrue() const { return kind_ == Kind::True; }
  bool isAtom() const { return kind_ == Kind::Atom; }
  bool isConjunction() const { return kind_ == Kind::Conjunction; }

  /// Only valid for atoms.
  const Term& term() const;
  /// Only valid for conjunctions.
  std::span<const Condition> items() const { return items_; }

  /// The atoms of the canonical form, left to right.
  std::vector<Term> atoms() const;
  bool isCanonical() const;
  void collectVariables(std::vector<std::string>& out) const;
  std::vector<std::string> variables() const;

  friend bool operator==(const Condition& a, const Condition& b);
  friend bool operator!=(const Condition& a, const Condition& b) { return !(a == b); }

 private:
  Kind kind_ = Kind::True;
  std::optional<Term> term_;
  std::vector<Condition> items_;
};

/// Removes `true` items (including atoms whose term is the constant `true`),
/// flattens nested conjunctions, and collapses empty and singleton
/// conjunctions. Idempotent.
Condition simplify(const Condition& c);

}  // namespace definiens
