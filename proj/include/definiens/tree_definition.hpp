#pragma once

#include <filesystem>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "definiens/definition.hpp"

namespace definiens {

/// A definition backed by an indented tree file. Every internal node is
/// defined as the conjunction of its children; leaves are outside the domain.
///
/// File format: one ground term label per line, nesting by two spaces per
/// level, blank lines ignored, `%` starts a comment.
///
///   root
///     a
///     b
class TreeDefinition : public Definition {
 public:
  struct Node {
    Term label;
    std::vector<Node> children;

    friend bool operator==(const Node&, const Node&) = default;
  };

  TreeDefinition(std::string name, std::vector<Node> roots, std::filesystem::path source = {});

  const std::string& name() const override { return name_; }
  DefinitionMode mode() const override { return DefinitionMode::Match; }
  const std::vector<Node>& roots() const { return roots_; }
  const std::filesystem::path& sourcePath() const { return source_; }

  std::vector<DefiniensElement> definiens(const Term& atom, FreshVariables& fresh,
                                          UnifyOptions options = {}) const override;

  friend bool operator==(const TreeDefinition& a, const TreeDefinition& b) {
    return a.name_ == b.name_ && a.roots_ == b.roots_;
  }

 private:
  std::string name_;
  std::vector<Node> roots_;
  std::filesystem::path source_;
};

/// Throws FormatError (with the offending line) or ParseError for a bad label.
TreeDefinition parseTree(std::string name, std::string_view text);
/// Definition name is the file stem. Throws IoError, FormatError.
TreeDefinition loadTreeFile(const std::filesystem::path& path);

/// Match-mode clausal definition with one equation per internal node, in
/// pre-order.
std::shared_ptr<ClausalDefinition> asClausal(const TreeDefinition& tree);

}  // namespace definiens
