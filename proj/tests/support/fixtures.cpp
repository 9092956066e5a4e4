#include "fixtures.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "definiens/session.hpp"

namespace fixtures {

std::filesystem::path dataDir() { return DEFINIENS_TEST_DATA; }

std::shared_ptr<definiens::Environment> loadEnvironment(const std::vector<std::string>& files) {
  definiens::Session session;
  for (const auto& f : files) {
    const auto report = session.loadResources(dataDir() / f);
    if (!report.ok()) throw std::runtime_error(report.render());
  }
  return std::make_shared<definiens::Environment>(session.environment());
}

std::shared_ptr<const definiens::ClausalDefinition> clausal(const definiens::Environment& env,
                                                            const std::string& name) {
  auto d = std::dynamic_pointer_cast<const definiens::ClausalDefinition>(env.definition(name));
  if (!d) throw std::runtime_error(name + " is not clausal");
  return d;
}

std::vector<oracle::AnswerBindings> engineAnswers(const std::shared_ptr<const definiens::Environment>& env,
                                                  const std::string& definition, const std::string& goal,
                                                  std::shared_ptr<const definiens::Observer> observer,
                                                  std::size_t limit) {
  const auto expr = definiens::parseQuery("prolog(" + definition + "){true = " + goal + "}.");
  definiens::Query query = definiens::makeQuery(expr, env);
  definiens::Machine machine({}, std::move(observer));
  machine.setQuery(query);
  std::vector<oracle::AnswerBindings> out;
  for (const auto& answer : machine.allAnswers(limit)) {
    oracle::AnswerBindings bindings;
    for (const auto& v : query.initialVars()) {
      if (const auto* t = answer.substitution.lookup(v)) bindings.emplace_back(v, definiens::print(*t));
    }
    out.push_back(std::move(bindings));
  }
  return out;
}

std::vector<oracle::AnswerBindings> normalized(const std::vector<oracle::AnswerBindings>& answers) {
  std::vector<oracle::AnswerBindings> out;
  for (const auto& a : answers) out.push_back(oracle::normalize(a));
  return out;
}

std::vector<definiens::Term> goalAtoms(const std::string& goal) { return definiens::parseCondition(goal).atoms(); }

std::vector<std::size_t> ReversingObserver::orderDefiniens(
    const std::vector<definiens::DefiniensElement>& elements) const {
  std::vector<std::size_t> out;
  for (std::size_t i = elements.size(); i-- > 0;) out.push_back(i);
  return out;
}

const std::vector<CorpusGoal>& corpus() {
  static const std::vector<CorpusGoal> goals = {
      {"append", "append([],[],L)"},
      {"append", "append([a],[b],L)"},
      {"append", "append([a,b,c],[d,e],L)"},
      {"append", "append(X,Y,[a,b,c])"},
      {"append", "append(X,[d,e],[a,b,c,d,e])"},
      {"append", "append([a,b],Y,[a,b,c,d])"},
      {"append", "append(X,Y,[])"},
      {"append", "append(X,[c],[a,b])"},
      {"append", "append([a|X],Y,[a,b,c])"},
      {"member", "member(X,[a,b,c])"},
      {"member", "member(c,[a,b,c,d,e])"},
      {"member", "member(z,[a,b,c])"},
      {"member", "member(X,[])"},
      {"member", "member(a,[a,b,a,c,a])"},
      {"member", "member(f(X),[f(a),g(b),f(c)])"},
      {"member", "member(X,[a,b]), member(X,[b,c])"},
      {"select", "select(X,[a,b,c],R)"},
      {"select", "select(b,[a,b,c,b],R)"},
      {"select", "select(X,[],R)"},
      {"select", "select(X,[a,b,c,d,e],R)"},
      {"select", "select(a,L,[b,c])"},
      {"permutation", "perm([a,b,c],L)"},
      {"permutation", "perm([],L)"},
      {"permutation", "perm([a],L)"},
      {"permutation", "perm([a,b],[b,a])"},
      {"permutation", "perm([a],[b,c])"},
      {"permutation", "perm([a,b,c,d],L)"},
      {"permutation", "perm([a,b,c,d,e],[e,d,c,b,a])"},
      {"permutation", "select(X,[a,b],Zs)"},
      {"nrev", "nrev([],R)"},
      {"nrev", "nrev([a],R)"},
      {"nrev", "nrev([a,b,c],R)"},
      {"nrev", "nrev([a,b,c,d,e],R)"},
      {"nrev", "nrev([a,b],[b,a])"},
      {"nrev", "nrev([a,b],[a,b])"},
      {"nrev", "nrev([X,Y,Z],[c,b,a])"},
  };
  return goals;
}

}  // namespace fixtures
