#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "definiens/term.hpp"

namespace definiens {

/// Finite map from variable names to terms. Substitutions returned by
/// `unify`, `match` and `compose` are idempotent and never bind a variable to
/// itself.
class Substitution {
 public:
  using Map = std::map<std::string, Term>;

  Substitution() = default;
  explicit Substitution(Map bindings);

  bool empty() const { return bindings_.empty(); }
  std::size_t size() const { return bindings_.size(); }
  const Term* lookup(const std::string& var) const;
  bool binds(const std::string& var) const { return bindings_.contains(var); }
  const Map& bindings() const { return bindings_; }
  Map::const_iterator begin() const { return bindings_.begin(); }
  Map::const_iterator end() const { return bindings_.end(); }

  /// Adds or replaces a binding; a self-binding X -> X is dropped.
  void bind(const std::string& var, Term value);

  /// Keeps only the bindings of the given variables.
  Substitution restrictedTo(const std::vector<std::string>& vars) const;

  bool isIdempotent() const;

  friend bool operator==(const Substitution&, const Substitution&) = default;

 private:
  Map bindings_;
};

/// Simultaneous replacement of bound variables.
Term apply(const Term& t, const Substitution& s);
/// Applies and re-canonicalizes.
Condition apply(const Condition& c, const Substitution& s);

/// apply(t, compose(a, b)) == apply(apply(t, a), b).
Substitution compose(const Substitution& first, const Substitution& second);

struct UnifyOptions {
  bool occursCheck = false;
};

/// Most general unifier, or nullopt. When both sides of a pair are variables
/// the left one is bound.
std::optional<Substitution> unify(const Term& s, const Term& t, UnifyOptions options = {});
/// Conditions unify when their canonical forms have the same shape and the
/// atoms unify pairwise.
std::optional<Substitution> unify(const Condition& s, const Condition& t, UnifyOptions options = {});

/// One-way matching: binds only variables of `pattern`; `subject` is never
/// instantiated. Fails when the pattern would have to bind one variable to two
/// different subterms.
std::optional<Substitution> match(const Term& pattern, const Term& subject);
std::optional<Substitution> match(const Condition& pattern, const Condition& subject);

/// Source of `_G<n>` variables. Each machine owns one.
class FreshVariables {
 public:
  FreshVariables() = default;
  explicit FreshVariables(std::uint64_t next) : next_(next) {}

  Term next();
  std::uint64_t peek() const { return next_; }
  /// Moves the counter past every `_G<n>` name occurring in the variables.
  void reserve(const std::vector<std::string>& vars);

 private:
  std::uint64_t next_ = 1;
};

/// Consistently renames every variable of a clause to fresh ones.
std::pair<Term, Condition> renameApart(const Term& head, const Condition& body, FreshVariables& fresh);

/// True when `a` and `b` are equal up to a bijective renaming of variables.
bool isVariant(const Term& a, const Term& b);
bool isVariant(const Condition& a, const Condition& b);

}  // namespace definiens
