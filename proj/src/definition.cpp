#include "definiens/definition.hpp"

#include <stdexcept>

#include "definiens/error.hpp"

namespace definiens {

bool Definition::inDom(const Term& atom) const {
  if (atom.isVariable()) return false;
  FreshVariables fresh;
  fresh.reserve(atom.variables());
  return !definiens(atom, fresh).empty();
}

bool Definition::inCom(const Condition& condition) const {
  for (const Term& a : condition.atoms()) {
    if (a.isVariable()) return false;
  }
  return true;
}

ClausalDefinition::ClausalDefinition(std::string name, std::vector<Equation> equations, DefinitionMode mode,
                                     bool is_mutable)
    : name_(std::move(name)), equations_(std::move(equations)), mode_(mode), mutable_(is_mutable) {
  for (auto& eq : equations_) {
    if (eq.head.isVariable()) throw std::invalid_argument("equation head of '" + name_ + "' is a variable");
    eq.body = simplify(eq.body);
  }
}

std::vector<DefiniensElement> ClausalDefinition::definiens(const Term& atom, FreshVariables& fresh,
                                                           UnifyOptions options) const {
  std::vector<DefiniensElement> out;
  if (atom.isVariable()) return out;
  const std::vector<std::string> atom_vars = atom.variables();
  for (std::size_t id = 0; id < equations_.size(); ++id) {
    const Equation& eq = equations_[id];
    // Cheap pre-filter before spending fresh variables.
    if (eq.head.kind() != atom.kind() || eq.head.name() != atom.name() || eq.head.arity() != atom.arity()) {
      continue;
    }
    auto [head, body] = renameApart(eq.head, eq.body, fresh);
    std::optional<Substitution> sigma =
        mode_ == DefinitionMode::Unify ? unify(head, atom, options) : match(head, atom);
    if (!sigma) continue;
    out.push_back({apply(body, *sigma), sigma->restrictedTo(atom_vars), id});
  }
  return out;
}

void ClausalDefinition::addEquation(Equation equation, std::optional<std::size_t> position) {
  if (!mutable_) throw ImmutableDefinition(name_);
  if (equation.head.isVariable()) throw std::invalid_argument("equation head of '" + name_ + "' is a variable");
  equation.body = simplify(equation.body);
  const std::size_t at = position ? std::min(*position, equations_.size()) : equations_.size();
  equations_.insert(equations_.begin() + static_cast<std::ptrdiff_t>(at), std::move(equation));
}

void ClausalDefinition::removeEquation(std::size_t clause_id) {
  if (!mutable_) throw ImmutableDefinition(name_);
  if (clause_id >= equations_.size()) throw UnknownClause(name_, clause_id);
  equations_.erase(equations_.begin() + static_cast<std::ptrdiff_t>(clause_id));
}

}  // namespace definiens
