#include "definiens/method.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

#include "definiens/error.hpp"

namespace definiens {

Guard Guard::some(Guard inner) {
  Guard g;
  g.kind_ = Kind::Some;
  g.inner_ = std::make_shared<const Guard>(std::move(inner));
  return g;
}

Guard Guard::all(Guard inner) {
  Guard g;
  g.kind_ = Kind::All;
  g.inner_ = std::make_shared<const Guard>(std::move(inner));
  return g;
}

Guard Guard::negation(Guard inner) {
  Guard g;
  g.kind_ = Kind::Not;
  g.inner_ = std::make_shared<const Guard>(std::move(inner));
  return g;
}

Guard Guard::sideMatches(Side side, Condition pattern) {
  Guard g;
  g.kind_ = Kind::SideMatches;
  g.side_ = side;
  g.pattern_ = simplify(pattern);
  return g;
}

bool Guard::holdsOn(const StateEquation& eq) const {
  switch (kind_) {
    case Kind::Always:
      return true;
    case Kind::Not:
      return !inner_->holdsOn(eq);
    case Kind::SideMatches:
      return match(pattern_, side_ == Side::Right ? eq.right : eq.left).has_value();
    case Kind::Some:
    case Kind::All:
      break;
  }
  throw std::logic_error("quantified guard used as an equation predicate");
}

bool Guard::holdsOn(const StateDefinition& state) const {
  const auto& eqs = state.equations();
  switch (kind_) {
    case Kind::Always:
      return true;
    case Kind::Some:
      return std::any_of(eqs.begin(), eqs.end(), [this](const StateEquation& e) { return inner_->holdsOn(e); });
    case Kind::All:
    case Kind::Not:
    case Kind::SideMatches: {
      const Guard& pred = kind_ == Kind::All ? *inner_ : *this;
      return std::all_of(eqs.begin(), eqs.end(), [&pred](const StateEquation& e) { return pred.holdsOn(e); });
    }
  }
  return false;
}

bool operator==(const Guard& a, const Guard& b) {
  if (a.kind_ != b.kind_) return false;
  switch (a.kind_) {
    case Guard::Kind::Always:
      return true;
    case Guard::Kind::SideMatches:
      return a.side_ == b.side_ && a.pattern_ == b.pattern_;
    default:
      return *a.inner_ == *b.inner_;
  }
}

bool evalGuard(const Guard& guard, const StateDefinition& state) { return guard.holdsOn(state); }

MethodDefinition::MethodDefinition(std::string name, std::vector<std::string> params,
                                   std::vector<MethodEquation> equations)
    : name_(std::move(name)), params_(std::move(params)), equations_(std::move(equations)) {
  std::set<std::string> seen;
  for (const auto& p : params_) {
    if (!seen.insert(p).second) throw std::invalid_argument("duplicate parameter '" + p + "' of method " + name_);
  }
  for (const auto& eq : equations_) {
    if (eq.head != name_) {
      throw std::invalid_argument("equation for '" + eq.head + "' inside method " + name_);
    }
  }
}

void Environment::addDefinition(std::shared_ptr<const Definition> definition) {
  const std::string name = definition->name();
  definitions_.insert_or_assign(name, std::move(definition));
}

void Environment::addMethod(std::shared_ptr<const MethodDefinition> method) {
  const std::string name = method->name();
  methods_.insert_or_assign(name, std::move(method));
}

std::shared_ptr<const Definition> Environment::findDefinition(const std::string& name) const {
  auto it = definitions_.find(name);
  return it == definitions_.end() ? nullptr : it->second;
}

std::shared_ptr<const MethodDefinition> Environment::findMethod(const std::string& name) const {
  auto it = methods_.find(name);
  return it == methods_.end() ? nullptr : it->second;
}

std::shared_ptr<const Definition> Environment::definition(const std::string& name) const {
  if (auto d = findDefinition(name)) return d;
  throw UnknownDefinition(name);
}

std::shared_ptr<const MethodDefinition> Environment::method(const std::string& name) const {
  if (auto m = findMethod(name)) return m;
  throw UnknownDefinition(name);
}

std::shared_ptr<const Definition> MethodInstance::resolve(const std::string& ref, const Environment* env) const {
  if (auto it = bindings_.find(ref); it != bindings_.end()) return it->second;
  if (env) {
    if (auto d = env->findDefinition(ref)) return d;
  }
  throw UnknownDefinition(ref);
}

MethodInstance instantiate(std::shared_ptr<const MethodDefinition> method,
                           std::vector<std::shared_ptr<const Definition>> args) {
  if (args.size() != method->params().size()) {
    throw ArityMismatch(method->name(), method->params().size(), args.size());
  }
  MethodInstance instance;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (!args[i]) throw UnknownDefinition(method->params()[i]);
    instance.bindings_.emplace(method->params()[i], std::move(args[i]));
  }
  instance.method_ = std::move(method);
  return instance;
}

std::vector<std::size_t> applicableEquations(const MethodInstance& instance, const StateDefinition& state) {
  std::vector<std::size_t> out;
  const auto& eqs = instance.definition().equations();
  for (std::size_t i = 0; i < eqs.size(); ++i) {
    if (evalGuard(eqs[i].guard, state)) out.push_back(i);
  }
  return out;
}

}  // namespace definiens
