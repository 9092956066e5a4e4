#include "doctest.h"

#include "definiens/error.hpp"
#include "definiens/machine.hpp"
#include "definiens/syntax.hpp"
#include "support/fixtures.hpp"
#include "support/generators.hpp"

#include <algorithm>

using namespace definiens;

namespace {

struct ListingFixture {
  std::shared_ptr<const Environment> env = fixtures::loadEnvironment({"listings"});

  Query query(const std::string& text) const { return makeQuery(parseQuery(text), env); }
};

std::string binding(const Answer& a, const char* var) {
  const Term* t = a.substitution.lookup(var);
  return t ? print(*t) : "<unbound>";
}

struct Recorder : Delegate {
  std::vector<std::string> events;
  void onQuerySet(const Query&) override { events.push_back("query"); }
  void onAnswer(const Answer&) override { events.push_back("answer"); }
  void onExhausted() override { events.push_back("exhausted"); }
  void onStep(const TraceStep&) override {
    if (events.empty() || events.back() != "step") events.push_back("step");
  }
};

}  // namespace

TEST_CASE("createMachine") {
  Machine m;
  CHECK(m.config().resultType == ResultType::VarsOnly);
  CHECK_FALSE(m.hasQuery());
  CHECK_THROWS_AS(Machine(MachineConfig{ResultType::VarsOnly, 0, std::nullopt, false}), ConfigError);
  CHECK_THROWS_AS(Machine(MachineConfig{ResultType::VarsOnly, std::nullopt, 0, false}), ConfigError);
  CHECK_THROWS_AS(m.nextAnswer(), Error);
}

TEST_CASE("default and left-most equation selection") {
  const Step step = SideStep{Side::Right, "P"};
  const StateDefinition three(parseQuery("m{true = a, x = b, y = c}.").initialState);
  CHECK(defaultSelectEquations(step, three, {}) == std::vector<std::size_t>{0, 1, 2});
  CHECK(defaultSelectEquations(step, StateDefinition(), {}).empty());
  CHECK(LeftMostObserver().selectEquations(step, three, {}) == std::vector<std::size_t>{0});
  CHECK(defaultOrderDefiniens({DefiniensElement{}, DefiniensElement{}}) == std::vector<std::size_t>{0, 1});
  CHECK(defaultOrderDefiniens({}).empty());
}

TEST_CASE_FIXTURE(ListingFixture, "nextAnswer enumerates the permutations in SLD order") {
  Machine m;
  m.setQuery(query("prolog(permutation){true = perm([a,b,c],L)}."));
  CHECK(m.answersEmitted() == 0);
  const std::vector<std::string> expected = {"[a,b,c]", "[a,c,b]", "[b,a,c]", "[b,c,a]", "[c,a,b]", "[c,b,a]"};
  for (const auto& e : expected) {
    NextResult r = m.nextAnswer();
    REQUIRE(r.outcome == Outcome::Answer);
    CHECK(binding(*r.answer, "L") == e);
    CHECK(r.answer->substitution.size() == 1);
  }
  CHECK(m.nextAnswer().outcome == Outcome::Exhausted);
  CHECK(m.nextAnswer().outcome == Outcome::Exhausted);
}

TEST_CASE_FIXTURE(ListingFixture, "allAnswers") {
  Machine m;
  m.setQuery(query("prolog(permutation){true = perm([a,b,c],L)}."));
  const auto two = m.allAnswers(2);
  REQUIRE(two.size() == 2);
  CHECK(binding(two[0], "L") == "[a,b,c]");
  CHECK(binding(two[1], "L") == "[a,c,b]");

  m.setQuery(query("prolog(permutation){true = perm([a],[b,c])}."));
  CHECK(m.allAnswers().empty());
  CHECK(m.lastOutcome() == Outcome::Exhausted);

  m.setQuery(query("prolog(permutation){true = select(X,[a,b],Zs)}."));
  const auto sel = m.allAnswers();
  REQUIRE(sel.size() == 2);
  CHECK(binding(sel[0], "X") == "a");
  CHECK(binding(sel[0], "Zs") == "[b]");
  CHECK(binding(sel[1], "X") == "b");
  CHECK(binding(sel[1], "Zs") == "[a]");
}

TEST_CASE_FIXTURE(ListingFixture, "setQuery replaces the previous query and validates references") {
  Machine m;
  m.setQuery(query("prolog(permutation){true = perm([a,b,c],L)}."));
  m.nextAnswer();
  m.setQuery(query("prolog(permutation){true = perm([],L)}."));
  const auto answers = m.allAnswers();
  REQUIRE(answers.size() == 1);
  CHECK(binding(answers[0], "L") == "[]");

  auto items = parseProgram("method broken(P).\nbroken = [r:Q].\n");
  const auto& decl = std::get<MethodDefinitionDecl>(items[0]);
  auto broken = std::make_shared<const MethodDefinition>(decl.name, decl.params, decl.equations);
  Query q(instantiate(broken, {env->definition("permutation")}), StateDefinition(), env);
  CHECK_THROWS_AS(m.setQuery(q), UnknownDefinition);
  CHECK_THROWS_AS(query("prolog(nosuch){true = p}."), UnknownDefinition);
  CHECK_THROWS_AS(query("prolog{true = p}."), ArityMismatch);
}

TEST_CASE_FIXTURE(ListingFixture, "result types") {
  Machine vars;
  vars.setQuery(query("prolog(permutation){true = perm([a,b,c],L)}."));
  const Answer first = *vars.nextAnswer().answer;
  const PresentedResult v = vars.present(first);
  CHECK(v.kind == ResultType::VarsOnly);
  CHECK_FALSE(v.finalState);
  CHECK_FALSE(v.trace);

  const PresentedResult f = transformResult(DefaultObserver(), first.result, ResultType::Final);
  REQUIRE(f.finalState);
  for (const auto& eq : f.finalState->equations()) CHECK(eq.right.isTrue());

  Machine tracer(MachineConfig{ResultType::Trace, std::nullopt, std::nullopt, false});
  tracer.setQuery(query("prolog(permutation){true = perm([],[])}."));
  const Answer one = *tracer.nextAnswer().answer;
  const PresentedResult t = tracer.present(one);
  REQUIRE(t.trace);
  REQUIRE(t.trace->steps.size() == 1);
  CHECK(t.trace->steps[0].clauseId == 0);
  CHECK(t.trace->steps[0].definitionName == "permutation");
  CHECK(t.trace->steps[0].selectedAtom == parseTerm("perm([],[])"));
  CHECK(t.trace->steps[0].resultingState == one.result.finalState);
  CHECK(print(one.result.finalState) == "{true = true}");
}

TEST_CASE_FIXTURE(ListingFixture, "observers reorder the search") {
  Machine reversed({}, std::make_shared<fixtures::ReversingObserver>());
  reversed.setQuery(query("prolog(permutation){true = perm([a,b,c],L)}."));
  std::vector<std::string> got;
  for (const auto& a : reversed.allAnswers()) got.push_back(binding(a, "L"));
  CHECK(got == std::vector<std::string>{"[c,b,a]", "[c,a,b]", "[b,c,a]", "[b,a,c]", "[a,c,b]", "[a,b,c]"});

  struct Broken : Observer {
    std::vector<std::size_t> orderDefiniens(const std::vector<DefiniensElement>&) const override { return {0, 0}; }
  };
  Machine bad({}, std::make_shared<Broken>());
  bad.setQuery(query("prolog(permutation){true = perm([a],L)}."));
  CHECK_THROWS_AS(bad.nextAnswer(), ObserverContractViolation);
}

TEST_CASE_FIXTURE(ListingFixture, "branch failure rules") {
  auto env2 = std::make_shared<Environment>(*env);
  for (const auto& item : parseProgram("method step(P).\nstep = [r:P].\n"
                                       "definition d.\np = X.\nq = p.\n")) {
    if (const auto* m = std::get_if<MethodDefinitionDecl>(&item)) {
      env2->addMethod(std::make_shared<const MethodDefinition>(m->name, m->params, m->equations));
    } else {
      const auto& d = std::get<DataDefinitionDecl>(item);
      env2->addDefinition(std::make_shared<const ClausalDefinition>(d.name, d.equations));
    }
  }
  Machine m;
  // A right side equal to true cannot be reduced.
  m.setQuery(makeQuery(parseQuery("step(d){true = true}."), env2));
  CHECK(m.allAnswers().empty());
  // One step reduces q to p.
  m.setQuery(makeQuery(parseQuery("step(d){true = q}."), env2));
  CHECK(m.allAnswers().size() == 1);
  // p reduces to a bare variable; running prolog on it flounders.
  m.setQuery(makeQuery(parseQuery("prolog(d){true = p}."), env2));
  CHECK(m.allAnswers().empty());
  // Empty definiens fails.
  m.setQuery(makeQuery(parseQuery("step(d){true = r}."), env2));
  CHECK(m.allAnswers().empty());
  // The step acts on every equation the observer selects, one per branch.
  m.setQuery(makeQuery(parseQuery("step(d){true = q, x = q}."), env2));
  CHECK(m.allAnswers().size() == 2);
}

TEST_CASE_FIXTURE(ListingFixture, "depth limit is a distinct outcome and the search continues") {
  auto env2 = std::make_shared<Environment>(*env);
  const auto items = parseProgram("definition loop.\nn(X) = n(s(X)).\nn(z).\n");
  const auto& d = std::get<DataDefinitionDecl>(items[0]);
  env2->addDefinition(std::make_shared<const ClausalDefinition>(d.name, d.equations));
  Machine m(MachineConfig{ResultType::VarsOnly, std::nullopt, 5, false});
  m.setQuery(makeQuery(parseQuery("prolog(loop){true = n(a)}."), env2));
  NextResult r = m.nextAnswer();
  CHECK(r.outcome == Outcome::DepthLimitExceeded);
  CHECK_FALSE(r.answer);

  Machine limited(MachineConfig{ResultType::VarsOnly, 2, std::nullopt, false});
  limited.setQuery(query("prolog(permutation){true = perm([a,b,c],L)}."));
  CHECK(limited.allAnswers().size() == 2);
  CHECK(limited.nextAnswer().outcome == Outcome::Exhausted);
}

TEST_CASE_FIXTURE(ListingFixture, "cancellation is checked at every step") {
  std::atomic<bool> cancel{true};
  Machine m;
  m.setCancelFlag(&cancel);
  m.setQuery(query("prolog(permutation){true = perm([a,b,c],L)}."));
  CHECK(m.nextAnswer().outcome == Outcome::Cancelled);
  cancel = false;
  CHECK(m.nextAnswer().outcome == Outcome::Answer);
}

TEST_CASE_FIXTURE(ListingFixture, "delegate notifications arrive in computation order") {
  Recorder rec;
  Machine m({}, nullptr, &rec);
  m.setQuery(query("prolog(permutation){true = select(X,[a,b],Zs)}."));
  m.allAnswers();
  CHECK(rec.events == std::vector<std::string>{"query", "step", "answer", "step", "answer", "step", "exhausted"});

  struct Reentrant : Delegate {
    Machine* machine = nullptr;
    bool threw = false;
    void onAnswer(const Answer&) override {
      try {
        machine->nextAnswer();
      } catch (const MachineBusy&) {
        threw = true;
      }
    }
  } re;
  Machine m2({}, nullptr, &re);
  re.machine = &m2;
  m2.setQuery(query("prolog(permutation){true = perm([a],L)}."));
  m2.nextAnswer();
  CHECK(re.threw);
}

TEST_CASE_FIXTURE(ListingFixture, "method words with definition arguments") {
  auto env2 = std::make_shared<Environment>(*env);
  const auto items = parseProgram("method solve(D).\nsolve = [prolog(D)].\n");
  const auto& decl = std::get<MethodDefinitionDecl>(items[0]);
  env2->addMethod(std::make_shared<const MethodDefinition>(decl.name, decl.params, decl.equations));
  Machine m;
  m.setQuery(makeQuery(parseQuery("solve(permutation){true = perm([a,b],L)}."), env2));
  CHECK(m.allAnswers().size() == 2);
}

TEST_CASE_FIXTURE(ListingFixture, "determinism: equal machines produce equal traces") {
  Machine a(MachineConfig{ResultType::Trace, std::nullopt, std::nullopt, false});
  Machine b(MachineConfig{ResultType::Trace, std::nullopt, std::nullopt, false});
  a.setQuery(query("prolog(permutation){true = perm([a,b,c],L)}."));
  b.setQuery(query("prolog(permutation){true = perm([a,b,c],L)}."));
  const auto ra = a.allAnswers();
  const auto rb = b.allAnswers();
  REQUIRE(ra.size() == rb.size());
  for (std::size_t i = 0; i < ra.size(); ++i) {
    CHECK(ra[i].substitution == rb[i].substitution);
    CHECK(ra[i].result == rb[i].result);
  }
}

TEST_CASE_FIXTURE(ListingFixture, "replayStep re-derives each recorded step") {
  Machine m;
  m.setQuery(query("prolog(permutation){true = perm([a,b,c],L)}."));
  for (const auto& answer : m.allAnswers()) {
    StateDefinition cur = answer.result.initialState;
    for (const auto& step : answer.result.steps) {
      auto next = replayStep(cur, step, *env->definition(step.definitionName));
      REQUIRE(next);
      CHECK(equalUpToFreshVariables(*next, step.resultingState, cur.variables()));
      cur = step.resultingState;
    }
    CHECK(cur == answer.result.finalState);
  }
}

namespace {

struct RandomGoals {
  gen::TermGen g;
  explicit RandomGoals(unsigned seed) : g(seed) {}

  std::string list(std::size_t max_len) {
    static const char* items[] = {"a", "b", "c", "X", "Y"};
    std::string out = "[";
    for (std::size_t n = g.below(max_len + 1), i = 0; i < n; ++i) out += (i ? "," : "") + std::string(items[g.below(5)]);
    return out + "]";
  }
  std::string arg(std::size_t max_len) { return g.chance(0.35) ? std::string(g.chance(0.5) ? "L" : "R") : list(max_len); }

  fixtures::CorpusGoal next() {
    switch (g.below(5)) {
      case 0:
        return {"append", "append(" + arg(3) + "," + arg(3) + "," + arg(4) + ")"};
      case 1:
        return {"member", "member(" + std::string(g.chance(0.5) ? "X" : "b") + "," + list(4) + ")"};
      case 2:
        return {"select", "select(" + std::string(g.chance(0.5) ? "X" : "a") + "," + list(4) + "," + arg(3) + ")"};
      case 3:
        return {"permutation", "perm(" + list(3) + "," + arg(3) + ")"};
      default:
        return {"nrev", "nrev(" + list(4) + "," + arg(4) + ")"};
    }
  }
};

struct CorpusFixture {
  std::shared_ptr<const Environment> env = fixtures::loadEnvironment({"corpus/lists.g3", "corpus/prolog.g3", "corpus/permutation.g3"});
};

}  // namespace

TEST_CASE_FIXTURE(CorpusFixture, "property: trace replay reproduces final states") {
  RandomGoals goals(11);
  std::size_t answers = 0;
  for (int i = 0; i < 200; ++i) {
    const auto goal = goals.next();
    CAPTURE(goal.goal);
    Machine m(MachineConfig{ResultType::Trace, std::nullopt, 200, false});
    m.setQuery(makeQuery(parseQuery("prolog(" + goal.definition + "){true = " + goal.goal + "}."), env));
    for (const auto& answer : m.allAnswers(20)) {
      ++answers;
      StateDefinition cur = answer.result.initialState;
      for (const auto& step : answer.result.steps) {
        auto next = replayStep(cur, step, *env->definition(step.definitionName));
        REQUIRE(next);
        CHECK(equalUpToFreshVariables(*next, step.resultingState, cur.variables()));
        cur = step.resultingState;
      }
      CHECK(cur == answer.result.finalState);
    }
  }
  CHECK(answers > 100);
}

TEST_CASE_FIXTURE(CorpusFixture, "property: answer substitutions are restricted to initial variables") {
  RandomGoals goals(12);
  for (int i = 0; i < 200; ++i) {
    const auto goal = goals.next();
    CAPTURE(goal.goal);
    const Query q = makeQuery(parseQuery("prolog(" + goal.definition + "){true = " + goal.goal + "}."), env);
    Machine m(MachineConfig{ResultType::VarsOnly, std::nullopt, 200, false});
    m.setQuery(q);
    const auto& vars = q.initialVars();
    for (const auto& answer : m.allAnswers(20)) {
      CHECK(answer.substitution.isIdempotent());
      for (const auto& [var, value] : answer.substitution) {
        CHECK(std::find(vars.begin(), vars.end(), var) != vars.end());
      }
      // Stop-guard soundness.
      for (const auto& eq : answer.result.finalState.equations()) CHECK(eq.right.isTrue());
    }
  }
}

TEST_CASE_FIXTURE(CorpusFixture, "property: allAnswers agrees with repeated nextAnswer") {
  RandomGoals goals(13);
  for (int i = 0; i < 200; ++i) {
    const auto goal = goals.next();
    CAPTURE(goal.goal);
    const Query q = makeQuery(parseQuery("prolog(" + goal.definition + "){true = " + goal.goal + "}."), env);
    const std::size_t k = 1 + goals.g.below(6);
    Machine stream(MachineConfig{ResultType::VarsOnly, std::nullopt, 200, false});
    Machine batch(MachineConfig{ResultType::VarsOnly, std::nullopt, 200, false});
    stream.setQuery(q);
    batch.setQuery(q);
    std::vector<Answer> pulled;
    while (pulled.size() < k) {
      NextResult r = stream.nextAnswer();
      if (r.outcome != Outcome::Answer) break;
      pulled.push_back(*r.answer);
    }
    const auto listed = batch.allAnswers(k);
    REQUIRE(listed.size() == pulled.size());
    for (std::size_t j = 0; j < listed.size(); ++j) {
      CHECK(listed[j].substitution == pulled[j].substitution);
      CHECK(listed[j].result == pulled[j].result);
    }
  }
}
