#include <unistd.h>

#include <atomic>
#include <csignal>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "definiens/error.hpp"
#include "definiens/session.hpp"

namespace {

std::atomic<bool> g_interrupted{false};

extern "C" void onInterrupt(int) { g_interrupted.store(true); }

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"g3 - definitional programming toplevel"};
  std::vector<std::string> loads;
  std::optional<std::string> eval;
  std::string restype = "vars_only";
  std::optional<std::size_t> answers;
  std::optional<std::size_t> depth;
  bool occurs_check = false;
  bool echo = false;
  app.add_option("--load", loads, "Load a .g3/.tree file or a directory of them (repeatable)");
  app.add_option("--eval", eval, "Run one query, print its answers and exit");
  app.add_option("--restype", restype, "Result type: vars_only, final or trace")
      ->check(CLI::IsMember({"vars_only", "final", "trace"}));
  app.add_option("--answers", answers, "Maximum number of answers")->check(CLI::PositiveNumber);
  app.add_option("--depth", depth, "Maximum number of computation steps per branch")->check(CLI::PositiveNumber);
  app.add_flag("--occurs-check", occurs_check, "Enable the occurs check in unification");
  app.add_flag("--echo", echo, "Echo input lines (transcript mode; default when stdin is not a terminal)");
  CLI11_PARSE(app, argc, argv);

  definiens::MachineConfig config;
  config.resultType = restype == "final"   ? definiens::ResultType::Final
                      : restype == "trace" ? definiens::ResultType::Trace
                                           : definiens::ResultType::VarsOnly;
  config.depthLimit = depth;
  config.occursCheck = occurs_check;

  definiens::Session session(config);
  session.setCancelFlag(&g_interrupted);
  std::signal(SIGINT, onInterrupt);

  bool load_failed = false;
  for (const auto& path : loads) {
    try {
      const definiens::LoadReport report = session.loadResources(path);
      if (!report.ok()) {
        load_failed = true;
        std::cerr << report.render() << '\n';
      }
    } catch (const definiens::Error& e) {
      std::cerr << "error: " << e.what() << '\n';
      load_failed = true;
    }
  }

  if (eval) {
    if (load_failed) return 2;
    try {
      const definiens::EvalResult result = session.evalAll(*eval, answers);
      std::cout << result.text << '\n';
      if (result.outcome == definiens::Outcome::DepthLimitExceeded ||
          result.outcome == definiens::Outcome::Cancelled) {
        return 2;
      }
      return result.answers > 0 ? 0 : 1;
    } catch (const definiens::Error& e) {
      std::cerr << "error: " << e.what() << '\n';
      return 2;
    }
  }

  if (answers) {
    config.answerLimit = answers;
    session.setConfig(config);
  }
  definiens::runToplevel(session, std::cin, std::cout, echo || !isatty(STDIN_FILENO));
  return 0;
}
