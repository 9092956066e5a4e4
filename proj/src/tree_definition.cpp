#include "definiens/tree_definition.hpp"

#include <fstream>
#include <sstream>

#include "definiens/error.hpp"
#include "definiens/syntax.hpp"

namespace definiens {

namespace {

Condition childConjunction(const TreeDefinition::Node& node) {
  std::vector<Term> atoms;
  atoms.reserve(node.children.size());
  for (const auto& child : node.children) atoms.push_back(child.label);
  return Condition::fromAtoms(std::move(atoms));
}

void collect(const TreeDefinition::Node& node, const Term& atom, std::size_t& ordinal,
             std::vector<DefiniensElement>& out) {
  if (node.children.empty()) return;
  const std::size_t id = ordinal++;
  if (match(node.label, atom)) out.push_back({childConjunction(node), Substitution(), id});
  for (const auto& child : node.children) collect(child, atom, ordinal, out);
}

void preorder(const TreeDefinition::Node& node, std::vector<Equation>& out) {
  if (node.children.empty()) return;
  out.push_back({node.label, childConjunction(node)});
  for (const auto& child : node.children) preorder(child, out);
}

}  // namespace

TreeDefinition::TreeDefinition(std::string name, std::vector<Node> roots, std::filesystem::path source)
    : name_(std::move(name)), roots_(std::move(roots)), source_(std::move(source)) {}

std::vector<DefiniensElement> TreeDefinition::definiens(const Term& atom, FreshVariables&, UnifyOptions) const {
  std::vector<DefiniensElement> out;
  if (atom.isVariable()) return out;
  std::size_t ordinal = 0;
  for (const auto& root : roots_) collect(root, atom, ordinal, out);
  return out;
}

TreeDefinition parseTree(std::string name, std::string_view text) {
  std::vector<TreeDefinition::Node> roots;
  // Path of open nodes from the root down to the most recent line.
  std::vector<TreeDefinition::Node*> open;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (auto comment = line.find('%'); comment != std::string::npos) line.erase(comment);
    const auto first = line.find_first_not_of(' ');
    if (first == std::string::npos) continue;
    if (line[first] == '\t') throw FormatError("tab in indentation", line_no);
    if (first % 2 != 0) throw FormatError("indentation must be a multiple of two spaces", line_no);
    const std::size_t depth = first / 2;
    if (depth > open.size()) throw FormatError("indentation skips a level", line_no);

    const auto last = line.find_last_not_of(' ');
    Term label = [&] {
      try {
        return parseTerm(std::string_view(line).substr(first, last - first + 1));
      } catch (const ParseError& e) {
        throw FormatError("bad label: " + e.message(), line_no);
      }
    }();
    if (!label.isGround()) throw FormatError("labels must be ground", line_no);

    open.resize(depth);
    auto& siblings = depth == 0 ? roots : open.back()->children;
    siblings.push_back({std::move(label), {}});
    open.push_back(&siblings.back());
  }
  return TreeDefinition(std::move(name), std::move(roots));
}

TreeDefinition loadTreeFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  TreeDefinition parsed = parseTree(path.stem().string(), buf.str());
  return TreeDefinition(parsed.name(), parsed.roots(), path);
}

std::shared_ptr<ClausalDefinition> asClausal(const TreeDefinition& tree) {
  std::vector<Equation> equations;
  for (const auto& root : tree.roots()) preorder(root, equations);
  return std::make_shared<ClausalDefinition>(tree.name(), std::move(equations), DefinitionMode::Match);
}

}  // namespace definiens
