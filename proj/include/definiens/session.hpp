#pragma once

#include <atomic>
#include <filesystem>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "definiens/machine.hpp"
#include "definiens/method.hpp"

namespace definiens {

inline constexpr std::string_view kPrompt = "G3> ";

struct LoadEntry {
  std::filesystem::path file;
  std::vector<std::string> definitions;
  std::vector<std::string> methods;
  std::vector<std::string> warnings;
  std::optional<std::string> error;
};

struct LoadReport {
  std::vector<LoadEntry> entries;

  bool ok() const;
  std::vector<std::string> definitions() const;
  std::vector<std::string> methods() const;
  /// One line per loaded name, warning and error.
  std::string render() const;
};

/// Output of one toplevel line. When `awaiting` is set an answer is on
/// display and the next line is read as a continuation (`;` for more, empty
/// to accept); `text` then ends with " ?" and no newline.
struct Reply {
  std::string text;
  bool awaiting = false;
};

/// Renders an answer. vars_only: one `Var = term` line per bound initial
/// variable; final: the final state in braces; trace: one numbered line per
/// computation step.
std::string formatAnswer(const Answer& answer, const Query& query, ResultType kind,
                         const Observer& observer = DefaultObserver());

struct EvalResult {
  std::string text;
  std::size_t answers = 0;
  Outcome outcome = Outcome::Exhausted;
};

/// The interactive toplevel: loaded definitions and methods, the current
/// machine configuration, and one machine.
class Session {
 public:
  explicit Session(MachineConfig config = {}, std::shared_ptr<const Observer> observer = nullptr);

  /// One directive, query or continuation token. Never throws for bad input;
  /// errors are rendered into the reply.
  Reply evalLine(std::string_view line);

  /// Runs a query to completion (up to `limit` answers) in batch form. Throws
  /// Error on parse or resolution failures.
  EvalResult evalAll(std::string_view query, std::optional<std::size_t> limit = std::nullopt);

  /// Loads a `.g3` or `.tree` file, or every such file in a directory (sorted
  /// by name). Throws IoError if the path does not exist; per-file errors are
  /// collected in the report.
  LoadReport loadResources(const std::filesystem::path& path);
  /// Loads program text as if read from `origin`.
  LoadEntry loadProgramText(std::string_view text, const std::filesystem::path& origin = "<input>");

  const Environment& environment() const { return *environment_; }
  std::shared_ptr<const Environment> environmentPtr() const { return environment_; }
  const MachineConfig& config() const { return config_; }
  void setConfig(MachineConfig config);
  bool halted() const { return halted_; }
  bool awaiting() const { return pending_.has_value(); }
  void setCancelFlag(const std::atomic<bool>* flag);

 private:
  struct Pending {
    Query query;
    std::size_t shown = 0;
  };

  Reply startQuery(std::string_view text);
  Reply continueQuery(bool more);
  Reply showNext();
  void loadFile(const std::filesystem::path& file, LoadReport& report);

  std::shared_ptr<Environment> environment_;
  MachineConfig config_;
  std::shared_ptr<const Observer> observer_;
  Machine machine_;
  std::optional<Pending> pending_;
  bool halted_ = false;
  const std::atomic<bool>* cancel_ = nullptr;
};

/// Drives a session from `in`. With `echo` each input line is written after
/// the prompt (or after the pending answer), which reproduces a transcript of
/// the session; without it the prompt is written before reading, as on a
/// terminal. Returns when input ends or `halt.` is read.
void runToplevel(Session& session, std::istream& in, std::ostream& out, bool echo);

/// Convenience for tests: the transcript produced by feeding `lines`.
std::string transcript(Session& session, const std::vector<std::string>& lines);

}  // namespace definiens
