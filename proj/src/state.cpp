#include "definiens/state.hpp"

#include <algorithm>
#include <map>

namespace definiens {

StateDefinition::StateDefinition(std::vector<StateEquation> equations) : equations_(std::move(equations)) {
  for (auto& eq : equations_) {
    eq.left = simplify(eq.left);
    eq.right = simplify(eq.right);
  }
}

std::vector<std::string> StateDefinition::variables() const {
  std::vector<std::string> out;
  for (const auto& eq : equations_) {
    eq.left.collectVariables(out);
    eq.right.collectVariables(out);
  }
  return out;
}

StateDefinition StateDefinition::withRight(std::size_t index, Condition right) const {
  StateDefinition copy = *this;
  copy.equations_.at(index).right = simplify(right);
  return copy;
}

StateDefinition apply(const StateDefinition& state, const Substitution& s) {
  std::vector<StateEquation> out;
  out.reserve(state.size());
  for (const auto& eq : state.equations()) out.push_back({apply(eq.left, s), apply(eq.right, s)});
  return StateDefinition(std::move(out));
}

namespace {

bool sameUpTo(const Term& a, const Term& b, const std::vector<std::string>& fixed,
              std::map<std::string, std::string>& forward, std::map<std::string, std::string>& backward) {
  if (a.isVariable() && b.isVariable()) {
    const bool a_fixed = std::find(fixed.begin(), fixed.end(), a.name()) != fixed.end();
    const bool b_fixed = std::find(fixed.begin(), fixed.end(), b.name()) != fixed.end();
    if (a_fixed || b_fixed) return a.name() == b.name();
    auto f = forward.emplace(a.name(), b.name()).first;
    auto r = backward.emplace(b.name(), a.name()).first;
    return f->second == b.name() && r->second == a.name();
  }
  if (a.kind() != b.kind() || a.name() != b.name() || a.arity() != b.arity()) return false;
  for (std::size_t i = 0; i < a.arity(); ++i) {
    if (!sameUpTo(a.args()[i], b.args()[i], fixed, forward, backward)) return false;
  }
  return true;
}

bool sameUpTo(const Condition& a, const Condition& b, const std::vector<std::string>& fixed,
              std::map<std::string, std::string>& forward, std::map<std::string, std::string>& backward) {
  const auto left = a.atoms();
  const auto right = b.atoms();
  if (left.size() != right.size()) return false;
  for (std::size_t i = 0; i < left.size(); ++i) {
    if (!sameUpTo(left[i], right[i], fixed, forward, backward)) return false;
  }
  return true;
}

}  // namespace

bool equalUpToFreshVariables(const StateDefinition& a, const StateDefinition& b,
                             const std::vector<std::string>& fixed) {
  if (a.size() != b.size()) return false;
  std::map<std::string, std::string> forward, backward;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!sameUpTo(a[i].left, b[i].left, fixed, forward, backward) ||
        !sameUpTo(a[i].right, b[i].right, fixed, forward, backward)) {
      return false;
    }
  }
  return true;
}

}  // namespace definiens
