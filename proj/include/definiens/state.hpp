#pragma once

#include <string>
#include <utility>
#include <vector>

#include "definiens/substitution.hpp"
#include "definiens/term.hpp"

namespace definiens {

struct StateEquation {
  Condition left;
  Condition right;

  friend bool operator==(const StateEquation&, const StateEquation&) = default;
};

/// The object of computation: an ordered list of `left = right` equations
/// over canonical conditions.
class StateDefinition {
 public:
  StateDefinition() = default;
  /// Simplifies both sides of every equation.
  explicit StateDefinition(std::vector<StateEquation> equations);

  const std::vector<StateEquation>& equations() const { return equations_; }
  std::size_t size() const { return equations_.size(); }
  bool empty() const { return equations_.empty(); }
  const StateEquation& operator[](std::size_t i) const { return equations_[i]; }

  /// Variables in first-occurrence order, left side before right side.
  std::vector<std::string> variables() const;

  /// Copy with equation `index`'s right side replaced (and simplified).
  StateDefinition withRight(std::size_t index, Condition right) const;

  friend bool operator==(const StateDefinition&, const StateDefinition&) = default;

 private:
  std::vector<StateEquation> equations_;
};

StateDefinition apply(const StateDefinition& state, const Substitution& s);

/// Equality up to a consistent renaming of the variables that do not occur in
/// `fixed`; variables in `fixed` must correspond to themselves.
bool equalUpToFreshVariables(const StateDefinition& a, const StateDefinition& b,
                             const std::vector<std::string>& fixed);

}  // namespace definiens
