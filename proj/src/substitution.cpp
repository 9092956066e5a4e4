#include "definiens/substitution.hpp"

#include <algorithm>
#include <charconv>
#include <set>
#include <unordered_map>

namespace definiens {

Substitution::Substitution(Map bindings) {
  for (auto& [var, value] : bindings) bind(var, std::move(value));
}

const Term* Substitution::lookup(const std::string& var) const {
  auto it = bindings_.find(var);
  return it == bindings_.end() ? nullptr : &it->second;
}

void Substitution::bind(const std::string& var, Term value) {
  if (value.isVariable() && value.name() == var) {
    bindings_.erase(var);
    return;
  }
  bindings_.insert_or_assign(var, std::move(value));
}

Substitution Substitution::restrictedTo(const std::vector<std::string>& vars) const {
  Substitution out;
  for (const auto& v : vars) {
    if (const Term* t = lookup(v)) out.bindings_.emplace(v, *t);
  }
  return out;
}

bool Substitution::isIdempotent() const {
  std::vector<std::string> range_vars;
  for (const auto& [var, value] : bindings_) value.collectVariables(range_vars);
  return std::none_of(range_vars.begin(), range_vars.end(), [this](const std::string& v) { return binds(v); });
}

Term apply(const Term& t, const Substitution& s) {
  if (s.empty() || t.isGround()) return t;
  if (t.isVariable()) {
    const Term* bound = s.lookup(t.name());
    return bound ? *bound : t;
  }
  std::vector<Term> args;
  args.reserve(t.arity());
  bool changed = false;
  for (const Term& arg : t.args()) {
    args.push_back(apply(arg, s));
    changed = changed || !args.back().sameNode(arg);
  }
  return changed ? Term::compound(t.name(), std::move(args)) : t;
}

Condition apply(const Condition& c, const Substitution& s) {
  std::vector<Term> atoms = c.atoms();
  for (auto& a : atoms) a = apply(a, s);
  return Condition::fromAtoms(std::move(atoms));
}

Substitution compose(const Substitution& first, const Substitution& second) {
  Substitution out;
  for (const auto& [var, value] : first) out.bind(var, apply(value, second));
  for (const auto& [var, value] : second) {
    if (!first.binds(var)) out.bind(var, value);
  }
  return out;
}

namespace {

// Triangular binding store used while solving; resolved into an idempotent
// substitution at the end.
class Solver {
 public:
  explicit Solver(UnifyOptions options) : options_(options) {}

  Term walk(Term t) const {
    while (t.isVariable()) {
      auto it = bindings_.find(t.name());
      if (it == bindings_.end()) break;
      t = it->second;
    }
    return t;
  }

  bool occurs(const std::string& var, const Term& t) const {
    Term w = walk(t);
    if (w.isVariable()) return w.name() == var;
    if (w.isGround()) return false;
    return std::any_of(w.args().begin(), w.args().end(), [&](const Term& a) { return occurs(var, a); });
  }

  bool unify(const Term& a, const Term& b) {
    std::vector<std::pair<Term, Term>> work{{a, b}};
    while (!work.empty()) {
      auto [x, y] = std::move(work.back());
      work.pop_back();
      x = walk(x);
      y = walk(y);
      if (x.sameNode(y)) continue;
      if (x.isVariable()) {
        if (y.isVariable() && y.name() == x.name()) continue;
        if (options_.occursCheck && occurs(x.name(), y)) return false;
        bindings_.insert_or_assign(x.name(), y);
        continue;
      }
      if (y.isVariable()) {
        if (options_.occursCheck && occurs(y.name(), x)) return false;
        bindings_.insert_or_assign(y.name(), x);
        continue;
      }
      if (x.kind() != y.kind() || x.name() != y.name() || x.arity() != y.arity()) return false;
      if (x.isGround() && y.isGround()) {
        if (x != y) return false;
        continue;
      }
      for (std::size_t i = x.arity(); i-- > 0;) work.emplace_back(x.args()[i], y.args()[i]);
    }
    return true;
  }

  Substitution resolve() {
    Substitution out;
    for (const auto& [var, value] : bindings_) {
      std::set<std::string> visiting{var};
      out.bind(var, resolveTerm(value, visiting));
    }
    return out;
  }

 private:
  // Without the occurs check a cyclic binding cannot be expanded; the cycle is
  // cut at the repeated variable.
  Term resolveTerm(const Term& t, std::set<std::string>& visiting) {
    if (t.isGround()) return t;
    if (t.isVariable()) {
      auto it = bindings_.find(t.name());
      if (it == bindings_.end() || visiting.contains(t.name())) return t;
      visiting.insert(t.name());
      Term r = resolveTerm(it->second, visiting);
      visiting.erase(t.name());
      return r;
    }
    std::vector<Term> args;
    args.reserve(t.arity());
    for (const Term& a : t.args()) args.push_back(resolveTerm(a, visiting));
    return Term::compound(t.name(), std::move(args));
  }

  UnifyOptions options_;
  std::unordered_map<std::string, Term> bindings_;
};

bool matchInto(const Term& pattern, const Term& subject, std::unordered_map<std::string, Term>& bindings) {
  if (pattern.isVariable()) {
    auto [it, inserted] = bindings.emplace(pattern.name(), subject);
    return inserted || it->second == subject;
  }
  if (pattern.kind() != subject.kind() || pattern.name() != subject.name() ||
      pattern.arity() != subject.arity()) {
    return false;
  }
  if (pattern.isGround()) return pattern == subject;
  for (std::size_t i = 0; i < pattern.arity(); ++i) {
    if (!matchInto(pattern.args()[i], subject.args()[i], bindings)) return false;
  }
  return true;
}

Substitution fromMatch(const std::unordered_map<std::string, Term>& bindings) {
  Substitution out;
  for (const auto& [var, value] : bindings) out.bind(var, value);
  return out;
}

}  // namespace

std::optional<Substitution> unify(const Term& s, const Term& t, UnifyOptions options) {
  Solver solver(options);
  if (!solver.unify(s, t)) return std::nullopt;
  return solver.resolve();
}

std::optional<Substitution> unify(const Condition& s, const Condition& t, UnifyOptions options) {
  const std::vector<Term> left = s.atoms();
  const std::vector<Term> right = t.atoms();
  if (left.size() != right.size()) return std::nullopt;
  Solver solver(options);
  for (std::size_t i = 0; i < left.size(); ++i) {
    if (!solver.unify(left[i], right[i])) return std::nullopt;
  }
  return solver.resolve();
}

std::optional<Substitution> match(const Term& pattern, const Term& subject) {
  std::unordered_map<std::string, Term> bindings;
  if (!matchInto(pattern, subject, bindings)) return std::nullopt;
  return fromMatch(bindings);
}

std::optional<Substitution> match(const Condition& pattern, const Condition& subject) {
  const std::vector<Term> left = pattern.atoms();
  const std::vector<Term> right = subject.atoms();
  if (left.size() != right.size()) return std::nullopt;
  std::unordered_map<std::string, Term> bindings;
  for (std::size_t i = 0; i < left.size(); ++i) {
    if (!matchInto(left[i], right[i], bindings)) return std::nullopt;
  }
  return fromMatch(bindings);
}

Term FreshVariables::next() { return Term::variable("_G" + std::to_string(next_++)); }

void FreshVariables::reserve(const std::vector<std::string>& vars) {
  for (const auto& v : vars) {
    if (v.size() < 3 || v.compare(0, 2, "_G") != 0) continue;
    std::uint64_t n = 0;
    auto [ptr, ec] = std::from_chars(v.data() + 2, v.data() + v.size(), n);
    if (ec == std::errc() && ptr == v.data() + v.size() && n >= next_) next_ = n + 1;
  }
}

std::pair<Term, Condition> renameApart(const Term& head, const Condition& body, FreshVariables& fresh) {
  std::vector<std::string> vars = head.variables();
  body.collectVariables(vars);
  if (vars.empty()) return {head, body};
  Substitution renaming;
  for (const auto& v : vars) renaming.bind(v, fresh.next());
  return {apply(head, renaming), apply(body, renaming)};
}

namespace {

bool variantInto(const Term& a, const Term& b, std::map<std::string, std::string>& forward,
                 std::map<std::string, std::string>& backward) {
  if (a.isVariable() || b.isVariable()) {
    if (!a.isVariable() || !b.isVariable()) return false;
    auto f = forward.emplace(a.name(), b.name()).first;
    auto r = backward.emplace(b.name(), a.name()).first;
    return f->second == b.name() && r->second == a.name();
  }
  if (a.kind() != b.kind() || a.name() != b.name() || a.arity() != b.arity()) return false;
  for (std::size_t i = 0; i < a.arity(); ++i) {
    if (!variantInto(a.args()[i], b.args()[i], forward, backward)) return false;
  }
  return true;
}

}  // namespace

bool isVariant(const Term& a, const Term& b) {
  std::map<std::string, std::string> forward, backward;
  return variantInto(a, b, forward, backward);
}

bool isVariant(const Condition& a, const Condition& b) {
  const std::vector<Term> left = a.atoms();
  const std::vector<Term> right = b.atoms();
  if (left.size() != right.size()) return false;
  std::map<std::string, std::string> forward, backward;
  for (std::size_t i = 0; i < left.size(); ++i) {
    if (!variantInto(left[i], right[i], forward, backward)) return false;
  }
  return true;
}

}  // namespace definiens
