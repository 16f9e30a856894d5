#pragma once

#include <json.hpp>

#include "excat/hearts.hpp"

namespace excat {

struct ParseError : std::runtime_error {
  int line;
  ParseError(int line_, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line_) + ": " + msg), line(line_) {}
};

struct Query {
  std::vector<std::string> tokens;
  std::vector<std::string> expect;  // optional expectation after 'expect'
  int line = 0;
};

struct Workspace {
  Field field = Field::rationals();
  Quiver quiver;
  std::vector<Relation> relations;
  int max_path_length = 12;
  AlgebraPtr alg;

  std::vector<std::string> module_order;
  std::map<std::string, Module> modules;
  std::vector<std::string> map_order;
  std::map<std::string, ModuleMap> maps;
  std::vector<std::string> subcat_order;
  std::map<std::string, std::shared_ptr<ExactSubcat>> subcats;
  std::vector<std::string> complex_order;
  std::map<std::string, Complex> complexes;
  std::vector<Query> queries;

  const Module& module_ref(const std::string& name, int line) const;
  const ModuleMap& map_ref(const std::string& name, int line) const;
  const ExactSubcat& subcat_ref(const std::string& name, int line) const;
  const Complex& complex_ref(const std::string& name, int line) const;
};

Workspace parse_workspace(const std::string& text);

// Normalized emission; parsing it back yields the same canonical form.
std::string canonical_text(const Workspace& ws);

struct QueryResult {
  std::string text;          // human-readable lines
  nlohmann::ordered_json data;
  int status = 0;  // 0 determinate pass, 2 unknown, 1 error or failed expectation
};

// Defaults applied to queries that do not set the option themselves.
struct QueryDefaults {
  std::optional<int> bound;
  std::optional<int> depth;
  std::optional<std::pair<int, int>> window;
};

QueryResult run_query(const Workspace& ws, const Query& q, const QueryDefaults& defaults = {});

struct RunReport {
  std::string text;
  nlohmann::ordered_json data;
  int exit_code = 0;
};

RunReport run_workspace(const Workspace& ws, const QueryDefaults& defaults = {});

// Embedded workspaces reproducing the worked examples.
extern const char* const kA2ExampleWorkspace;
extern const char* const kDualNumbersExampleWorkspace;

RunReport run_paper_examples();

}  // namespace excat
