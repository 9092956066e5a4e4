#include "definiens/session.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "definiens/error.hpp"
#include "definiens/syntax.hpp"
#include "definiens/tree_definition.hpp"

namespace definiens {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::string joinLines(const std::vector<std::string>& lines) {
  std::string out;
  for (const auto& l : lines) {
    if (!out.empty()) out += '\n';
    out += l;
  }
  return out;
}

std::string readFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

bool LoadReport::ok() const {
  return std::none_of(entries.begin(), entries.end(), [](const LoadEntry& e) { return e.error.has_value(); });
}

std::vector<std::string> LoadReport::definitions() const {
  std::vector<std::string> out;
  for (const auto& e : entries) out.insert(out.end(), e.definitions.begin(), e.definitions.end());
  return out;
}

std::vector<std::string> LoadReport::methods() const {
  std::vector<std::string> out;
  for (const auto& e : entries) out.insert(out.end(), e.methods.begin(), e.methods.end());
  return out;
}

std::string LoadReport::render() const {
  std::vector<std::string> lines;
  for (const auto& e : entries) {
    const std::string file = e.file.filename().string();
    for (const auto& d : e.definitions) lines.push_back("% " + file + ": definition " + d);
    for (const auto& m : e.methods) lines.push_back("% " + file + ": method " + m);
    for (const auto& w : e.warnings) lines.push_back("% " + file + ": warning: " + w);
    if (e.error) lines.push_back("% " + file + ": error: " + *e.error);
  }
  return joinLines(lines);
}

std::string formatAnswer(const Answer& answer, const Query& query, ResultType kind, const Observer& observer) {
  const PresentedResult presented = observer.transformResult(answer.result, kind);
  std::vector<std::string> lines;
  switch (presented.kind) {
    case ResultType::VarsOnly:
      for (const auto& var : query.initialVars()) {
        if (const Term* value = answer.substitution.lookup(var)) lines.push_back(var + " = " + print(*value));
      }
      break;
    case ResultType::Final:
      if (presented.finalState) lines.push_back(print(*presented.finalState));
      break;
    case ResultType::Trace:
      if (presented.trace) {
        std::size_t n = 0;
        for (const TraceStep& step : presented.trace->steps) {
          lines.push_back(std::to_string(++n) + ". [" + std::to_string(step.equationIndex) + "] " +
                          print(step.selectedAtom) + " <- " + step.definitionName + "/" +
                          std::to_string(step.clauseId) + " => " + print(step.resultingState));
        }
      }
      break;
  }
  return joinLines(lines);
}

Session::Session(MachineConfig config, std::shared_ptr<const Observer> observer)
    : environment_(std::make_shared<Environment>()),
      config_(config),
      observer_(observer ? std::move(observer) : std::make_shared<const DefaultObserver>()),
      machine_(config, observer_) {}

void Session::setConfig(MachineConfig config) {
  config.validate();
  config_ = config;
}

void Session::setCancelFlag(const std::atomic<bool>* flag) {
  cancel_ = flag;
  machine_.setCancelFlag(flag);
}

Reply Session::evalLine(std::string_view line) {
  if (halted_) return {};
  const std::string_view input = trim(line);
  try {
    if (pending_) {
      if (input == ";") return continueQuery(true);
      Reply accepted = continueQuery(false);
      if (input.empty()) return accepted;
      Reply rest = evalLine(input);
      if (!rest.text.empty()) accepted.text += "\n" + rest.text;
      accepted.awaiting = rest.awaiting;
      return accepted;
    }
    if (input.empty()) return {};
    if (looksLikeDirective(input)) {
      const Directive d = parseDirective(input);
      if (const auto* res = std::get_if<ResTypeDirective>(&d)) {
        config_.resultType = res->kind;
        return {};
      }
      if (const auto* load = std::get_if<LoadDirective>(&d)) return {loadResources(load->path).render(), false};
      halted_ = true;
      return {};
    }
    return startQuery(input);
  } catch (const Error& e) {
    pending_.reset();
    return {"error: " + std::string(e.what()), false};
  } catch (const std::exception& e) {
    pending_.reset();
    return {"error: " + std::string(e.what()), false};
  }
}

Reply Session::startQuery(std::string_view text) {
  const QueryExpr expr = parseQuery(text);
  Query query = makeQuery(expr, environment_);
  machine_.setConfig(config_);
  machine_.setQuery(query);
  pending_ = Pending{std::move(query), 0};
  return showNext();
}

Reply Session::continueQuery(bool more) {
  if (more) return showNext();
  pending_.reset();
  return {"yes", false};
}

Reply Session::showNext() {
  NextResult r = machine_.nextAnswer();
  Pending& p = *pending_;
  switch (r.outcome) {
    case Outcome::Answer: {
      ++p.shown;
      const std::string block = formatAnswer(*r.answer, p.query, config_.resultType, *observer_);
      if (block.empty()) {
        pending_.reset();
        return {"yes", false};
      }
      return {block + " ?", true};
    }
    case Outcome::Exhausted: {
      const bool any = p.shown > 0;
      pending_.reset();
      return {any ? "yes" : "no", false};
    }
    case Outcome::DepthLimitExceeded:
      pending_.reset();
      return {"% depth limit exceeded", false};
    case Outcome::Cancelled:
      pending_.reset();
      return {"% interrupted", false};
  }
  return {};
}

EvalResult Session::evalAll(std::string_view text, std::optional<std::size_t> limit) {
  const QueryExpr expr = parseQuery(trim(text));
  Query query = makeQuery(expr, environment_);
  Machine machine(config_, observer_);
  machine.setCancelFlag(cancel_);
  machine.setQuery(query);
  const std::vector<Answer> answers = machine.allAnswers(limit);

  EvalResult result;
  result.answers = answers.size();
  result.outcome = machine.lastOutcome();
  std::vector<std::string> lines;
  for (std::size_t i = 0; i < answers.size(); ++i) {
    std::string block = formatAnswer(answers[i], query, config_.resultType, *observer_);
    if (block.empty()) block = "true";
    if (i + 1 < answers.size()) block += " ;";
    lines.push_back(std::move(block));
  }
  if (result.outcome == Outcome::DepthLimitExceeded) lines.push_back("% depth limit exceeded");
  if (result.outcome == Outcome::Cancelled) lines.push_back("% interrupted");
  lines.push_back(answers.empty() ? "no" : "yes");
  result.text = joinLines(lines);
  return result;
}

LoadReport Session::loadResources(const std::filesystem::path& path) {
  std::error_code ec;
  if (!std::filesystem::exists(path, ec)) throw IoError("no such file or directory: " + path.string());
  LoadReport report;
  if (std::filesystem::is_directory(path, ec)) {
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(path)) {
      const auto ext = entry.path().extension();
      if (entry.is_regular_file() && (ext == ".g3" || ext == ".tree")) files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    for (const auto& f : files) loadFile(f, report);
  } else {
    loadFile(path, report);
  }
  return report;
}

void Session::loadFile(const std::filesystem::path& file, LoadReport& report) {
  if (file.extension() == ".tree") {
    LoadEntry entry;
    entry.file = file;
    try {
      auto tree = std::make_shared<const TreeDefinition>(loadTreeFile(file));
      auto next = std::make_shared<Environment>(*environment_);
      if (next->findDefinition(tree->name())) entry.warnings.push_back("redefined definition " + tree->name());
      entry.definitions.push_back(tree->name());
      next->addDefinition(std::move(tree));
      environment_ = std::move(next);
    } catch (const Error& e) {
      entry.definitions.clear();
      entry.error = e.what();
    }
    report.entries.push_back(std::move(entry));
    return;
  }
  try {
    report.entries.push_back(loadProgramText(readFile(file), file));
  } catch (const IoError& e) {
    LoadEntry entry;
    entry.file = file;
    entry.error = e.what();
    report.entries.push_back(std::move(entry));
  }
}

LoadEntry Session::loadProgramText(std::string_view text, const std::filesystem::path& origin) {
  LoadEntry entry;
  entry.file = origin;
  try {
    const std::vector<SourceItem> items = parseProgram(text);
    auto next = std::make_shared<Environment>(*environment_);
    for (const auto& item : items) {
      if (const auto* data = std::get_if<DataDefinitionDecl>(&item)) {
        if (next->findDefinition(data->name)) entry.warnings.push_back("redefined definition " + data->name);
        next->addDefinition(std::make_shared<const ClausalDefinition>(data->name, data->equations));
        entry.definitions.push_back(data->name);
      } else {
        const auto& m = std::get<MethodDefinitionDecl>(item);
        if (next->findMethod(m.name)) entry.warnings.push_back("redefined method " + m.name);
        next->addMethod(std::make_shared<const MethodDefinition>(m.name, m.params, m.equations));
        entry.methods.push_back(m.name);
      }
    }
    environment_ = std::move(next);
  } catch (const std::exception& e) {
    entry.definitions.clear();
    entry.methods.clear();
    entry.warnings.clear();
    entry.error = e.what();
  }
  return entry;
}

void runToplevel(Session& session, std::istream& in, std::ostream& out, bool echo) {
  std::string line;
  while (!session.halted()) {
    if (!echo && !session.awaiting()) out << kPrompt << std::flush;
    if (!std::getline(in, line)) {
      if (!echo) out << '\n';
      break;
    }
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (echo) {
      if (session.awaiting()) {
        const std::string_view token = trim(line);
        out << (token.empty() ? std::string() : " " + std::string(token)) << '\n';
      } else {
        out << kPrompt << line << '\n';
      }
    }
    const Reply reply = session.evalLine(line);
    if (reply.text.empty()) continue;
    out << reply.text;
    if (reply.awaiting) {
      if (!echo) out << ' ' << std::flush;
    } else {
      out << '\n';
    }
  }
  out.flush();
}

std::string transcript(Session& session, const std::vector<std::string>& lines) {
  std::string joined;
  for (const auto& l : lines) joined += l + "\n";
  std::istringstream in(joined);
  std::ostringstream out;
  runToplevel(session, in, out, true);
  return out.str();
}

}  // namespace definiens
