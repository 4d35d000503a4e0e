#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "solun/cli.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int finish(const solun::cli::CommandResult& r) {
  if (!r.error.empty()) std::cerr << r.error << "\n";
  std::cout << r.output;
  return r.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"solun: second-order unification for linear problems and beyond"};
  app.require_subcommand(1);

  std::string problem_file, subst_file, tree_file, tree_format = "dot";
  bool paranoid = false, parallel = false;

  auto* solve = app.add_subcommand("solve", "solve a problem that is linear after superficialization");
  solve->add_option("file", problem_file, "problem file")->required();
  solve->add_option("--tree", tree_file, "write the unification tree (.dot or .json)");
  solve->add_flag("--paranoid", paranoid, "re-verify every emitted solution");
  solve->add_flag("--parallel", parallel, "explore branches concurrently");

  auto* tree = app.add_subcommand("tree", "print the unification tree of a linear problem");
  tree->add_option("file", problem_file, "problem file")->required();
  tree->add_option("--format", tree_format, "dot or json")->check(CLI::IsMember({"dot", "json"}));
  tree->add_flag("--parallel", parallel, "explore branches concurrently");

  auto* general = app.add_subcommand("general", "complete set of unifiers or no information");
  general->add_option("file", problem_file, "problem file")->required();
  general->add_flag("--paranoid", paranoid, "re-verify every emitted solution");
  general->add_flag("--parallel", parallel, "explore branches concurrently");

  auto* verify = app.add_subcommand("verify", "check a substitution against a problem");
  verify->add_option("file", problem_file, "problem file")->required();
  verify->add_option("--subst", subst_file, "substitution file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : solun::cli::BadInput;
  }

  try {
    std::string text = read_file(problem_file);
    solun::cli::SolveFlags flags{paranoid, parallel, std::nullopt};
    if (*solve) {
      if (!tree_file.empty()) {
        bool json = tree_file.size() >= 5 && tree_file.substr(tree_file.size() - 5) == ".json";
        flags.tree = json ? solun::TreeFormat::Json : solun::TreeFormat::Dot;
      }
      auto r = solun::cli::run_solve(text, flags);
      if (r.tree) {
        std::ofstream out(tree_file);
        if (!out) throw std::runtime_error("cannot write " + tree_file);
        out << *r.tree;
      }
      return finish(r);
    }
    if (*tree) {
      flags.tree = tree_format == "json" ? solun::TreeFormat::Json : solun::TreeFormat::Dot;
      auto r = solun::cli::run_solve(text, flags);
      if (r.tree) r.output = *r.tree;
      return finish(r);
    }
    if (*general) return finish(solun::cli::run_general(text, flags));
    return finish(solun::cli::run_verify(text, read_file(subst_file)));
  } catch (const std::runtime_error& e) {
    std::cerr << e.what() << "\n";
    return solun::cli::BadInput;
  }
}
