#include "definiens/term.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace definiens {

struct Term::Node {
  Kind kind;
  std::string name;
  std::vector<Term> args;
  bool ground;
};

bool isVariableName(std::string_view name) {
  if (name.empty()) return false;
  const auto c = static_cast<unsigned char>(name.front());
  return std::isupper(c) || c == '_';
}

Term Term::variable(std::string name) {
  if (!isVariableName(name)) {
    throw std::invalid_argument("variable names start with an uppercase letter or '_': " + name);
  }
  return Term(std::make_shared<const Node>(Node{Kind::Variable, std::move(name), {}, false}));
}

Term Term::constant(std::string name) {
  if (name.empty()) throw std::invalid_argument("empty constant name");
  return Term(std::make_shared<const Node>(Node{Kind::Constant, std::move(name), {}, true}));
}

Term Term::integer(long long value) { return constant(std::to_string(value)); }

Term Term::compound(std::string functor, std::vector<Term> args) {
  if (args.empty()) throw std::invalid_argument("compound term '" + functor + "' needs arguments");
  const bool ground = std::all_of(args.begin(), args.end(), [](const Term& t) { return t.isGround(); });
  return Term(std::make_shared<const Node>(Node{Kind::Compound, std::move(functor), std::move(args), ground}));
}

Term Term::nil() {
  static const Term kNil = constant(std::string(kNilName));
  return kNil;
}

Term Term::cons(Term head, Term tail) {
  return compound(std::string(kConsFunctor), {std::move(head), std::move(tail)});
}

Term Term::list(std::vector<Term> items, std::optional<Term> tail) {
  Term result = tail ? std::move(*tail) : nil();
  for (auto it = items.rbegin(); it != items.rend(); ++it) result = cons(std::move(*it), std::move(result));
  return result;
}

Term::Kind Term::kind() const { return node_->kind; }

bool Term::isCons() const {
  return node_->kind == Kind::Compound && node_->args.size() == 2 && node_->name == kConsFunctor;
}

bool Term::isNil() const { return node_->kind == Kind::Constant && node_->name == kNilName; }

const std::string& Term::name() const { return node_->name; }

std::span<const Term> Term::args() const { return node_->args; }

bool Term::isGround() const { return node_->ground; }

void Term::collectVariables(std::vector<std::string>& out) const {
  if (isGround()) return;
  if (isVariable()) {
    if (std::find(out.begin(), out.end(), name()) == out.end()) out.push_back(name());
    return;
  }
  for (const Term& arg : args()) arg.collectVariables(out);
}

std::vector<std::string> Term::variables() const {
  std::vector<std::string> out;
  collectVariables(out);
  return out;
}

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  if (a.node_->kind != b.node_->kind || a.node_->name != b.node_->name) return false;
  return std::equal(a.node_->args.begin(), a.node_->args.end(), b.node_->args.begin(), b.node_->args.end());
}

bool operator<(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return false;
  if (a.node_->kind != b.node_->kind) return a.node_->kind < b.node_->kind;
  if (a.node_->args.size() != b.node_->args.size()) return a.node_->args.size() < b.node_->args.size();
  if (a.node_->name != b.node_->name) return a.node_->name < b.node_->name;
  return std::lexicographical_compare(a.node_->args.begin(), a.node_->args.end(), b.node_->args.begin(),
                                      b.node_->args.end());
}

Condition Condition::atom(Term term) {
  Condition c;
  c.kind_ = Kind::Atom;
  c.term_ = std::move(term);
  return c;
}

Condition Condition::conjunction(std::vector<Condition> items) {
  Condition c;
  c.kind_ = Kind::Conjunction;
  c.items_ = std::move(items);
  return c;
}

Condition Condition::fromAtoms(std::vector<Term> atoms) {
  std::vector<Condition> items;
  items.reserve(atoms.size());
  for (auto& t : atoms) items.push_back(atom(std::move(t)));
  return simplify(conjunction(std::move(items)));
}

const Term& Condition::term() const {
  if (!term_) throw std::logic_error("condition is not an atom");
  return *term_;
}

namespace {

bool isTrueAtom(const Term& t) { return t.isConstant() && t.name() == kTrueName; }

void flattenInto(const Condition& c, std::vector<Term>& out) {
  switch (c.kind()) {
    case Condition::Kind::True:
      return;
    case Condition::Kind::Atom:
      if (!isTrueAtom(c.term())) out.push_back(c.term());
      return;
    case Condition::Kind::Conjunction:
      for (const Condition& item : c.items()) flattenInto(item, out);
      return;
  }
}

}  // namespace

std::vector<Term> Condition::atoms() const {
  std::vector<Term> out;
  flattenInto(*this, out);
  return out;
}

bool Condition::isCanonical() const {
  switch (kind_) {
    case Kind::True:
      return true;
    case Kind::Atom:
      return !isTrueAtom(*term_);
    case Kind::Conjunction:
      return items_.size() >= 2 && std::all_of(items_.begin(), items_.end(), [](const Condition& c) {
               return c.isAtom() && c.isCanonical();
             });
  }
  return false;
}

void Condition::collectVariables(std::vector<std::string>& out) const {
  if (term_) term_->collectVariables(out);
  for (const Condition& item : items_) item.collectVariables(out);
}

std::vector<std::string> Condition::variables() const {
  std::vector<std::string> out;
  collectVariables(out);
  return out;
}

bool operator==(const Condition& a, const Condition& b) {
  return a.kind_ == b.kind_ && a.term_ == b.term_ && a.items_ == b.items_;
}

Condition simplify(const Condition& c) {
  std::vector<Term> flat;
  flattenInto(c, flat);
  if (flat.empty()) return Condition::truth();
  if (flat.size() == 1) return Condition::atom(std::move(flat.front()));
  std::vector<Condition> items;
  items.reserve(flat.size());
  for (auto& t : flat) items.push_back(Condition::atom(std::move(t)));
  return Condition::conjunction(std::move(items));
}

}  // namespace definiens
