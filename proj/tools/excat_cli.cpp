// Command line front end: run workspace files or the bundled example
// suite and emit deterministic text/JSON reports.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "excat/workspace.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

// --field overrides the workspace's field directive before parsing.
std::string override_field(std::string text, const std::string& field) {
  if (field.empty()) return text;
  std::istringstream is(text);
  std::ostringstream os;
  std::string line;
  bool replaced = false;
  while (std::getline(is, line)) {
    if (!replaced && line.rfind("field", 0) == 0) {
      os << "field " << field << "\n";
      replaced = true;
    } else {
      os << line << "\n";
    }
  }
  if (!replaced) return "field " + field + "\n" + text;
  return os.str();
}

excat::QueryDefaults make_defaults(int bound, int depth, const std::string& window) {
  excat::QueryDefaults d;
  if (bound > 0) d.bound = bound;
  if (depth > 0) d.depth = depth;
  if (!window.empty()) {
    auto colon = window.find(':');
    if (colon == std::string::npos) throw std::runtime_error("--window expects <lo>:<hi>");
    d.window = std::make_pair(std::stoi(window.substr(0, colon)), std::stoi(window.substr(colon + 1)));
  }
  return d;
}

int emit(const excat::RunReport& rep, const std::string& format) {
  if (format == "json")
    std::cout << rep.data.dump(2) << "\n";
  else
    std::cout << rep.text;
  return rep.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"exact-category calculator: acyclicity classification, Ext-resolutions, hearts and resolving "
               "completions for subcategories of quiver-algebra module categories"};
  app.require_subcommand(1);

  std::string format = "text";
  std::string field_override;
  int bound = 0, depth = 0;
  std::string window;
  app.add_option("--format", format, "output format: text|json")->check(CLI::IsMember({"text", "json"}));
  app.add_option("--field", field_override, "override the workspace field: q | fp:<p>");
  app.add_option("--bound", bound, "default multiplicity bound for quantifier scans");
  app.add_option("--window", window, "default shift window <lo>:<hi> for heart/tpair/crosscheck queries");
  app.add_option("--depth", depth, "default resolution depth for completion membership");

  std::string path;

  auto* run = app.add_subcommand("run", "run every query of a workspace file");
  run->add_option("file", path, "workspace file")->required();

  auto* paper = app.add_subcommand("paper-examples", "run the bundled worked-example suites");

  auto* show = app.add_subcommand("canonical", "parse a workspace and print its canonical form");
  show->add_option("file", path, "workspace file")->required();

  struct OneShot {
    CLI::App* cmd;
    std::string verb;
    std::vector<std::string> args;
  };
  std::vector<std::shared_ptr<OneShot>> oneshots;
  for (const char* verb : {"check", "classify", "resolve", "functor", "heart", "tpair", "maxneg", "crosscheck",
                           "resolving", "extkernel"}) {
    auto os = std::make_shared<OneShot>();
    os->verb = verb;
    os->cmd = app.add_subcommand(verb, std::string("run a single '") + verb + "' query against a workspace");
    os->cmd->add_option("file", path, "workspace file")->required();
    os->cmd->add_option("args", os->args, "query arguments");
    oneshots.push_back(os);
  }

  CLI11_PARSE(app, argc, argv);

  try {
    excat::QueryDefaults defaults = make_defaults(bound, depth, window);
    if (paper->parsed()) return emit(excat::run_paper_examples(), format);
    if (show->parsed()) {
      excat::Workspace ws = excat::parse_workspace(override_field(read_file(path), field_override));
      std::cout << excat::canonical_text(ws);
      return 0;
    }
    if (run->parsed()) {
      excat::Workspace ws = excat::parse_workspace(override_field(read_file(path), field_override));
      return emit(excat::run_workspace(ws, defaults), format);
    }
    for (const auto& os : oneshots) {
      if (!os->cmd->parsed()) continue;
      excat::Workspace ws = excat::parse_workspace(override_field(read_file(path), field_override));
      excat::Query q;
      q.tokens.push_back(os->verb);
      for (const auto& a : os->args) q.tokens.push_back(a);
      excat::QueryResult r = excat::run_query(ws, q, defaults);
      excat::RunReport rep;
      rep.text = r.text + "\n";
      rep.data["results"] = nlohmann::ordered_json::array({r.data});
      rep.exit_code = r.status;
      return emit(rep, format);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
