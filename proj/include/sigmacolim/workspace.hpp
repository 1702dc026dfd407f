#pragma once

// JSON workspace files: named categories, 2-categories, Σ classes,
// diagrams, transformations and fixtures, cross-referenced by name.

#include <map>
#include <string>
#include <vector>

#include <json.hpp>

#include "sigmacolim/diagram.hpp"
#include "sigmacolim/error.hpp"
#include "sigmacolim/fixtures.hpp"

namespace sigmacolim {

inline constexpr int kSchemaVersion = 1;

using ojson = nlohmann::ordered_json;

/// Malformed JSON; carries the 1-based position of the failure.
class ParseError : public InputError {
 public:
  ParseError(int line, int column, const std::string& what);
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_, column_;
};

/// One entry per failed check, each prefixed by the path of the
/// declaration ("diagrams.F.cells1.u: ...").
class WorkspaceError : public InputError {
 public:
  explicit WorkspaceError(std::vector<std::string> issues);
  const std::vector<std::string>& issues() const { return issues_; }

 private:
  std::vector<std::string> issues_;
};

struct Workspace {
  struct SigmaDecl {
    std::string two_category;
    SigmaClass sigma;
  };
  struct DiagramDecl {
    std::string index;
    std::string sigma;
    std::vector<std::string> values;  // category name per index object
    DiagramRef diagram;
  };
  struct TransfDecl {
    std::string source;
    std::string target;
    DiagramNatTransf transf;
  };
  struct FixtureDecl {
    std::string description;
    std::string sigma;   // the index is the owner of the Σ class
    std::string diagram; // empty for index-only fixtures
    bool filtered = false;
    std::string failing_axiom;
  };

  int schema_version = kSchemaVersion;
  std::map<std::string, CatRef> categories;
  std::map<std::string, TwoCatRef> two_categories;
  std::map<std::string, SigmaDecl> sigmas;
  std::map<std::string, DiagramDecl> diagrams;
  std::map<std::string, TransfDecl> transformations;
  std::map<std::string, FixtureDecl> fixtures;

  /// Throws InputError for unknown names.
  Fixture fixture(const std::string& name) const;
  DiagramRef diagram(const std::string& name) const;
  const DiagramNatTransf& transformation(const std::string& name) const;
  CatRef category(const std::string& name) const;
};

/// Throws ParseError or WorkspaceError.
Workspace parse_workspace(const std::string& text);
/// Reads a file; a missing file is an InputError.
Workspace load_workspace(const std::string& path);

ojson to_json(const FinCategory& c);
ojson to_json(const Fin2Category& a);
ojson to_json(const Workspace& w);
/// Canonical text: two-space indentation and a trailing newline.
std::string serialize(const Workspace& w);

/// The bundled fixtures as a workspace. Value categories are named
/// "<fixture>.<object>" (shared values keep their first name), indices
/// "<fixture>.index" and Σ classes "<fixture>.sigma".
Workspace bundled_workspace();

/// Adds `fx` to `w` under the naming scheme of bundled_workspace.
void add_fixture(Workspace& w, const Fixture& fx);

}  // namespace sigmacolim
