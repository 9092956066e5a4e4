#include "definiens/machine.hpp"

#include <algorithm>
#include <set>

#include "definiens/error.hpp"

namespace definiens {

Query::Query(MethodInstance instance, StateDefinition initial, std::shared_ptr<const Environment> environment)
    : instance_(std::move(instance)),
      initial_(std::move(initial)),
      initial_vars_(initial_.variables()),
      environment_(std::move(environment)) {}

Query makeQuery(const QueryExpr& expr, std::shared_ptr<const Environment> environment) {
  if (!environment) throw UnknownDefinition(expr.methodName);
  auto method = environment->method(expr.methodName);
  std::vector<std::shared_ptr<const Definition>> args;
  args.reserve(expr.args.size());
  for (const auto& name : expr.args) args.push_back(environment->definition(name));
  MethodInstance instance = instantiate(std::move(method), std::move(args));
  return Query(std::move(instance), StateDefinition(expr.initialState), std::move(environment));
}

std::vector<std::size_t> defaultSelectEquations(const Step&, const StateDefinition& state,
                                                const std::vector<std::string>&) {
  std::vector<std::size_t> out(state.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = i;
  return out;
}

std::vector<std::size_t> defaultOrderDefiniens(const std::vector<DefiniensElement>& elements) {
  std::vector<std::size_t> out(elements.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = i;
  return out;
}

std::vector<std::size_t> Observer::selectEquations(const Step& step, const StateDefinition& state,
                                                   const std::vector<std::string>& hints) const {
  return defaultSelectEquations(step, state, hints);
}

std::vector<std::size_t> Observer::orderDefiniens(const std::vector<DefiniensElement>& elements) const {
  return defaultOrderDefiniens(elements);
}

PresentedResult Observer::transformResult(const ResultDefinition& result, ResultType kind) const {
  PresentedResult out;
  out.kind = kind;
  switch (kind) {
    case ResultType::VarsOnly:
      break;
    case ResultType::Final:
      out.finalState = result.finalState;
      break;
    case ResultType::Trace:
      out.finalState = result.finalState;
      out.trace = result;
      break;
  }
  return out;
}

std::vector<std::size_t> LeftMostObserver::selectEquations(const Step&, const StateDefinition& state,
                                                           const std::vector<std::string>&) const {
  if (state.size() == 0) return {};
  return {0};
}

PresentedResult transformResult(const Observer& observer, const ResultDefinition& result, ResultType kind) {
  return observer.transformResult(result, kind);
}

void MachineConfig::validate() const {
  if (answerLimit && *answerLimit == 0) throw ConfigError("answer limit must be positive");
  if (depthLimit && *depthLimit == 0) throw ConfigError("depth limit must be positive");
}

namespace {

// Persistent singly linked list; continuations and traces share tails across
// choice points.
template <typename T>
struct Cell {
  T head;
  std::shared_ptr<const Cell> tail;
};

template <typename T>
using List = std::shared_ptr<const Cell<T>>;

template <typename T>
List<T> push(T value, List<T> tail) {
  return std::make_shared<const Cell<T>>(Cell<T>{std::move(value), std::move(tail)});
}

struct Frame {
  Step step;
  std::shared_ptr<const MethodInstance> instance;
};

struct Config {
  StateDefinition state;
  List<Frame> cont;
  Substitution subst;
  List<TraceStep> trace;
  std::size_t depth = 0;
};

struct ChoicePoint {
  enum class Kind { MethodEquation, StateEquation, Element };

  Kind kind;
  Config base;
  std::vector<std::size_t> choices;
  std::size_t next = 0;

  std::shared_ptr<const MethodInstance> instance;
  // StateEquation and Element.
  SideStep step{};
  std::shared_ptr<const Definition> definition{};
  // Element.
  std::size_t equationIndex = 0;
  std::vector<Term> atoms{};
  std::vector<DefiniensElement> elements{};
};

void checkIndices(const std::vector<std::size_t>& indices, std::size_t bound, const char* what) {
  std::set<std::size_t> seen;
  for (std::size_t i : indices) {
    if (i >= bound || !seen.insert(i).second) {
      throw ObserverContractViolation(std::string("observer returned an invalid or duplicate index from ") + what);
    }
  }
}

bool isParam(const MethodDefinition& m, const std::string& ref) {
  return std::find(m.params().begin(), m.params().end(), ref) != m.params().end();
}

// Every definition reference and method word reachable from the query must
// resolve before the search starts.
void validateMethod(const MethodDefinition& m, const Environment* env, std::set<std::string>& visited) {
  if (!visited.insert(m.name()).second) return;
  auto checkRef = [&](const std::string& ref) {
    if (isParam(m, ref)) return;
    if (!env || !env->findDefinition(ref)) throw UnknownDefinition(ref);
  };
  for (const auto& eq : m.equations()) {
    for (const Step& s : eq.body) {
      if (const auto* side = std::get_if<SideStep>(&s)) {
        checkRef(side->definition);
        continue;
      }
      const auto& word = std::get<MethodWord>(s);
      for (const auto& a : word.args) checkRef(a);
      if (word.name == m.name() && word.args.empty()) continue;
      auto callee = env ? env->findMethod(word.name) : nullptr;
      if (!callee) throw UnknownDefinition(word.name);
      if (callee->params().size() != word.args.size()) {
        throw ArityMismatch(word.name, callee->params().size(), word.args.size());
      }
      validateMethod(*callee, env, visited);
    }
  }
}

}  // namespace

struct Machine::Search {
  Query query;
  FreshVariables fresh;
  std::vector<ChoicePoint> stack;
  std::optional<Config> current;
  std::size_t emitted = 0;
  bool exhaustedNotified = false;
  std::vector<std::string> hints;

  explicit Search(Query q) : query(std::move(q)) {
    fresh.reserve(query.initialVars());
    Config start;
    start.state = query.initialState();
    auto root = std::make_shared<const MethodInstance>(query.instance());
    start.cont = push(Frame{MethodWord{root->definition().name(), {}}, root}, List<Frame>{});
    current = std::move(start);
  }
};

Machine::Machine(MachineConfig config, std::shared_ptr<const Observer> observer, Delegate* delegate)
    : config_(config), observer_(std::move(observer)), delegate_(delegate) {
  config_.validate();
  if (!observer_) observer_ = std::make_shared<const DefaultObserver>();
}

Machine::~Machine() = default;
Machine::Machine(Machine&&) noexcept = default;
Machine& Machine::operator=(Machine&&) noexcept = default;

void Machine::setConfig(MachineConfig config) {
  config.validate();
  config_ = config;
}

void Machine::setQuery(Query query) {
  if (busy_) throw MachineBusy();
  std::set<std::string> visited;
  validateMethod(query.instance().definition(), query.environment(), visited);
  search_ = std::make_unique<Search>(std::move(query));
  last_outcome_ = Outcome::Exhausted;
  if (delegate_) delegate_->onQuerySet(search_->query);
}

bool Machine::hasQuery() const { return search_ != nullptr; }

std::size_t Machine::answersEmitted() const { return search_ ? search_->emitted : 0; }

NextResult Machine::nextAnswer() {
  if (busy_) throw MachineBusy();
  if (!search_) throw Error("no query set");
  busy_ = true;
  struct Release {
    bool& flag;
    ~Release() { flag = false; }
  } release{busy_};

  Search& s = *search_;
  const Environment* env = s.query.environment();
  const std::vector<std::string>& initial_vars = s.query.initialVars();

  auto finish = [&](Outcome outcome) {
    last_outcome_ = outcome;
    if (outcome == Outcome::Exhausted && !s.exhaustedNotified) {
      s.exhaustedNotified = true;
      if (delegate_) delegate_->onExhausted();
    }
    return NextResult{outcome, std::nullopt};
  };

  if (config_.answerLimit && s.emitted >= *config_.answerLimit) return finish(Outcome::Exhausted);

  while (true) {
    if (cancel_ && cancel_->load(std::memory_order_relaxed)) return finish(Outcome::Cancelled);

    if (!s.current) {
      if (s.stack.empty()) return finish(Outcome::Exhausted);
      ChoicePoint& cp = s.stack.back();
      if (cp.next >= cp.choices.size()) {
        s.stack.pop_back();
        continue;
      }
      const std::size_t choice = cp.choices[cp.next++];

      switch (cp.kind) {
        case ChoicePoint::Kind::MethodEquation: {
          Config cfg = cp.base;
          const auto& body = cp.instance->definition().equations()[choice].body;
          // [s1, ..., sn] runs sn first: push s1 deepest.
          for (const Step& step : body) cfg.cont = push(Frame{step, cp.instance}, cfg.cont);
          s.current = std::move(cfg);
          break;
        }
        case ChoicePoint::Kind::StateEquation: {
          const Condition& right = cp.base.state[choice].right;
          if (right.isTrue()) break;
          std::vector<Term> atoms = right.atoms();
          if (atoms.front().isVariable()) break;  // floundering
          std::vector<DefiniensElement> elements =
              cp.definition->definiens(atoms.front(), s.fresh, UnifyOptions{config_.occursCheck});
          if (elements.empty()) break;
          std::vector<std::size_t> order = observer_->orderDefiniens(elements);
          checkIndices(order, elements.size(), "orderDefiniens");
          ChoicePoint next{ChoicePoint::Kind::Element, cp.base, std::move(order), 0, cp.instance, cp.step,
                           cp.definition, choice, std::move(atoms), std::move(elements)};
          s.stack.push_back(std::move(next));  // invalidates cp
          break;
        }
        case ChoicePoint::Kind::Element: {
          const DefiniensElement& el = cp.elements[choice];
          std::vector<Term> atoms = el.body.atoms();
          atoms.insert(atoms.end(), cp.atoms.begin() + 1, cp.atoms.end());
          StateDefinition state =
              apply(cp.base.state.withRight(cp.equationIndex, Condition::fromAtoms(std::move(atoms))), el.unifier);
          Config cfg;
          cfg.depth = cp.base.depth + 1;
          if (config_.depthLimit && cfg.depth > *config_.depthLimit) return finish(Outcome::DepthLimitExceeded);
          TraceStep ts{cp.equationIndex, cp.atoms.front(), cp.definition->name(), el.clauseId, el.unifier, state};
          cfg.state = std::move(state);
          cfg.cont = cp.base.cont;
          cfg.subst = compose(cp.base.subst, el.unifier).restrictedTo(initial_vars);
          cfg.trace = push(std::move(ts), cp.base.trace);
          if (delegate_) delegate_->onStep(cfg.trace->head);
          s.current = std::move(cfg);
          break;
        }
      }
      continue;
    }

    Config cfg = std::move(*s.current);
    s.current.reset();

    if (!cfg.cont) {
      Answer answer;
      answer.substitution = cfg.subst.restrictedTo(initial_vars);
      answer.result.initialState = s.query.initialState();
      for (auto cell = cfg.trace; cell; cell = cell->tail) answer.result.steps.push_back(cell->head);
      std::reverse(answer.result.steps.begin(), answer.result.steps.end());
      answer.result.finalState = std::move(cfg.state);
      ++s.emitted;
      last_outcome_ = Outcome::Answer;
      if (delegate_) delegate_->onAnswer(answer);
      return NextResult{Outcome::Answer, std::move(answer)};
    }

    Frame frame = cfg.cont->head;
    cfg.cont = cfg.cont->tail;

    if (const auto* side = std::get_if<SideStep>(&frame.step)) {
      auto definition = frame.instance->resolve(side->definition, env);
      std::vector<std::size_t> indices = observer_->selectEquations(frame.step, cfg.state, s.hints);
      checkIndices(indices, cfg.state.size(), "selectEquations");
      ChoicePoint cp{ChoicePoint::Kind::StateEquation, std::move(cfg), std::move(indices), 0, frame.instance,
                     *side, std::move(definition)};
      s.stack.push_back(std::move(cp));
      continue;
    }

    const auto& word = std::get<MethodWord>(frame.step);
    std::shared_ptr<const MethodInstance> instance = frame.instance;
    if (word.name != instance->definition().name() || !word.args.empty()) {
      std::vector<std::shared_ptr<const Definition>> args;
      for (const auto& a : word.args) args.push_back(frame.instance->resolve(a, env));
      instance = std::make_shared<const MethodInstance>(instantiate(env->method(word.name), std::move(args)));
    }
    std::vector<std::size_t> applicable = applicableEquations(*instance, cfg.state);
    if (applicable.empty()) continue;
    ChoicePoint cp{ChoicePoint::Kind::MethodEquation, std::move(cfg), std::move(applicable), 0, std::move(instance)};
    s.stack.push_back(std::move(cp));
  }
}

std::vector<Answer> Machine::allAnswers(std::optional<std::size_t> limit) {
  std::vector<Answer> out;
  while (!limit || out.size() < *limit) {
    NextResult r = nextAnswer();
    if (r.outcome != Outcome::Answer) break;
    out.push_back(std::move(*r.answer));
  }
  return out;
}

PresentedResult Machine::present(const Answer& answer) const {
  return observer_->transformResult(answer.result, config_.resultType);
}

std::optional<StateDefinition> replayStep(const StateDefinition& before, const TraceStep& step,
                                          const Definition& definition) {
  if (step.equationIndex >= before.size()) return std::nullopt;
  const std::vector<Term> atoms = before[step.equationIndex].right.atoms();
  if (atoms.empty() || atoms.front() != step.selectedAtom) return std::nullopt;
  FreshVariables fresh;
  fresh.reserve(before.variables());
  fresh.reserve(step.resultingState.variables());
  for (const auto& [var, value] : step.unifier) fresh.reserve(value.variables());
  for (const DefiniensElement& el : definition.definiens(step.selectedAtom, fresh)) {
    if (el.clauseId != step.clauseId) continue;
    std::vector<Term> next = el.body.atoms();
    next.insert(next.end(), atoms.begin() + 1, atoms.end());
    return apply(before.withRight(step.equationIndex, Condition::fromAtoms(std::move(next))), el.unifier);
  }
  return std::nullopt;
}

}  // namespace definiens
