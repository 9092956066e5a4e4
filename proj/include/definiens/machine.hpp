#pragma once

#include <atomic>
#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "definiens/definition.hpp"
#include "definiens/method.hpp"
#include "definiens/state.hpp"
#include "definiens/syntax.hpp"

namespace definiens {

/// Application of a method instance to an initial state definition.
class Query {
 public:
  /// `environment` resolves method words and definition references that are
  /// not parameters; it may be null for self-contained methods.
  Query(MethodInstance instance, StateDefinition initial, std::shared_ptr<const Environment> environment = nullptr);

  const MethodInstance& instance() const { return instance_; }
  const StateDefinition& initialState() const { return initial_; }
  /// Variables of the initial state in first-occurrence order.
  const std::vector<std::string>& initialVars() const { return initial_vars_; }
  const Environment* environment() const { return environment_.get(); }

 private:
  MethodInstance instance_;
  StateDefinition initial_;
  std::vector<std::string> initial_vars_;
  std::shared_ptr<const Environment> environment_;
};

/// Resolves a parsed query against an environment. Throws UnknownDefinition
/// and ArityMismatch.
Query makeQuery(const QueryExpr& expr, std::shared_ptr<const Environment> environment);

struct TraceStep {
  std::size_t equationIndex = 0;
  Term selectedAtom = Term::nil();
  std::string definitionName;
  std::size_t clauseId = 0;
  Substitution unifier;
  StateDefinition resultingState;

  friend bool operator==(const TraceStep&, const TraceStep&) = default;
};

struct ResultDefinition {
  StateDefinition initialState;
  std::vector<TraceStep> steps;
  StateDefinition finalState;

  friend bool operator==(const ResultDefinition&, const ResultDefinition&) = default;
};

struct Answer {
  /// Restricted to the query's initial variables.
  Substitution substitution;
  ResultDefinition result;
};

/// What the observer hands back for presentation. Which fields are set
/// depends on the result type.
struct PresentedResult {
  ResultType kind = ResultType::VarsOnly;
  std::optional<StateDefinition> finalState;
  std::optional<ResultDefinition> trace;
};

/// Policy hooks of the machine. The default considers state equations and
/// definiens elements in the order they are defined.
class Observer {
 public:
  virtual ~Observer() = default;

  /// Indices of state equations to try for `step`, in order.
  virtual std::vector<std::size_t> selectEquations(const Step& step, const StateDefinition& state,
                                                   const std::vector<std::string>& hints) const;
  /// Permutation (or subset) of element indices, in order of preference.
  virtual std::vector<std::size_t> orderDefiniens(const std::vector<DefiniensElement>& elements) const;
  virtual PresentedResult transformResult(const ResultDefinition& result, ResultType kind) const;
};

using DefaultObserver = Observer;

/// Considers only the equation at index 0.
class LeftMostObserver : public Observer {
 public:
  std::vector<std::size_t> selectEquations(const Step& step, const StateDefinition& state,
                                           const std::vector<std::string>& hints) const override;
};

std::vector<std::size_t> defaultSelectEquations(const Step& step, const StateDefinition& state,
                                                const std::vector<std::string>& hints);
std::vector<std::size_t> defaultOrderDefiniens(const std::vector<DefiniensElement>& elements);
PresentedResult transformResult(const Observer& observer, const ResultDefinition& result, ResultType kind);

/// Notification sink; every callback is optional and runs synchronously.
class Delegate {
 public:
  virtual ~Delegate() = default;
  virtual void onQuerySet(const Query&) {}
  virtual void onAnswer(const Answer&) {}
  virtual void onExhausted() {}
  virtual void onStep(const TraceStep&) {}
};

struct MachineConfig {
  ResultType resultType = ResultType::VarsOnly;
  std::optional<std::size_t> answerLimit;
  /// Maximum number of computation steps on one branch.
  std::optional<std::size_t> depthLimit;
  bool occursCheck = false;

  /// Throws ConfigError when a limit is zero.
  void validate() const;
};

enum class Outcome { Answer, Exhausted, DepthLimitExceeded, Cancelled };

struct NextResult {
  Outcome outcome = Outcome::Exhausted;
  std::optional<Answer> answer;
};

/// Depth-first backtracking engine. `nextAnswer` resumes from the most recent
/// choice point. Choice points are, from outermost to innermost: the
/// applicable method equation, the state equation chosen by the observer, and
/// the definiens element.
class Machine {
 public:
  /// Null observer installs the default one. Throws ConfigError.
  explicit Machine(MachineConfig config = {}, std::shared_ptr<const Observer> observer = nullptr,
                   Delegate* delegate = nullptr);
  ~Machine();
  Machine(Machine&&) noexcept;
  Machine& operator=(Machine&&) noexcept;

  const MachineConfig& config() const { return config_; }
  /// Applies to the next query.
  void setConfig(MachineConfig config);
  const Observer& observer() const { return *observer_; }
  void setDelegate(Delegate* delegate) { delegate_ = delegate; }
  /// Polled at every computation step; a set flag ends the pull with
  /// Outcome::Cancelled.
  void setCancelFlag(const std::atomic<bool>* flag) { cancel_ = flag; }

  /// Throws MachineBusy (from a callback during a pull) and
  /// UnknownDefinition (unresolvable reference in a reachable method).
  void setQuery(Query query);
  bool hasQuery() const;

  NextResult nextAnswer();
  /// Repeated nextAnswer until exhaustion, `limit`, or the configured answer
  /// limit. Stops early on a depth-limit or cancellation outcome, which is
  /// then reported by lastOutcome().
  std::vector<Answer> allAnswers(std::optional<std::size_t> limit = std::nullopt);
  Outcome lastOutcome() const { return last_outcome_; }
  std::size_t answersEmitted() const;

  PresentedResult present(const Answer& answer) const;

 private:
  struct Search;

  MachineConfig config_;
  std::shared_ptr<const Observer> observer_;
  Delegate* delegate_ = nullptr;
  const std::atomic<bool>* cancel_ = nullptr;
  std::unique_ptr<Search> search_;
  bool busy_ = false;
  Outcome last_outcome_ = Outcome::Exhausted;
};

/// Replays one trace step on `before`: re-derives the clause from `definition`
/// and checks the recorded atom and unifier. Returns the reconstructed state or
/// nullopt when the step does not apply.
std::optional<StateDefinition> replayStep(const StateDefinition& before, const TraceStep& step,
                                          const Definition& definition);

}  // namespace definiens
