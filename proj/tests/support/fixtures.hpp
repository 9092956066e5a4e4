#pragma once

#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include "definiens/machine.hpp"
#include "definiens/method.hpp"
#include "definiens/syntax.hpp"
#include "sld_oracle.hpp"

namespace fixtures {

std::filesystem::path dataDir();

/// Environment built from the given program files under the data directory.
std::shared_ptr<definiens::Environment> loadEnvironment(const std::vector<std::string>& files);

std::shared_ptr<const definiens::ClausalDefinition> clausal(const definiens::Environment& env,
                                                            const std::string& name);

/// Answers of `prolog(definition){true = goal}` printed per bound variable.
std::vector<oracle::AnswerBindings> engineAnswers(const std::shared_ptr<const definiens::Environment>& env,
                                                  const std::string& definition, const std::string& goal,
                                                  std::shared_ptr<const definiens::Observer> observer = nullptr,
                                                  std::size_t limit = 1000);

std::vector<oracle::AnswerBindings> normalized(const std::vector<oracle::AnswerBindings>& answers);

/// Atoms of a parsed goal condition.
std::vector<definiens::Term> goalAtoms(const std::string& goal);

/// Reverses the clause order of every definiens.
class ReversingObserver : public definiens::Observer {
 public:
  std::vector<std::size_t> orderDefiniens(const std::vector<definiens::DefiniensElement>& elements) const override;
};

struct CorpusGoal {
  std::string definition;
  std::string goal;
};

/// The differential corpus over append, member, select, permutation and nrev.
const std::vector<CorpusGoal>& corpus();

}  // namespace fixtures
