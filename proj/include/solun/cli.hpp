#pragma once

#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "solun/generalizer.hpp"
#include "solun/linear_solver.hpp"
#include "solun/oracle/verify.hpp"
#include "solun/parser.hpp"
#include "solun/superficializer.hpp"
#include "solun/tree_export.hpp"

namespace solun::cli {

/// Exit codes: 0 computed verdict, 1 input error, 2 internal invariant
/// violation.
enum ExitCode : int { Ok = 0, BadInput = 1, Internal = 2 };

struct CommandResult {
  int exit_code = Ok;
  std::string output;   // JSON document on success
  std::string error;    // message on failure
  std::optional<std::string> tree;
};

struct SolveFlags {
  bool paranoid = false;
  bool parallel = false;
  std::optional<TreeFormat> tree;
};

namespace detail {

inline void collect_generated(const Term& t, std::map<std::string, Type>& out) {
  for (const auto& [name, type] : free_vars(t)) {
    if (is_generated_name(name)) out.emplace(name, type);
  }
}

inline nlohmann::json solution_json(const Substitution& sigma, std::map<std::string, Type>& fresh) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [name, b] : sigma) {
    j[name] = to_string(b.value);
    collect_generated(b.value, fresh);
  }
  return j;
}

inline nlohmann::json fresh_json(const std::map<std::string, Type>& fresh) {
  nlohmann::json j = nlohmann::json::object();
  for (const auto& [name, type] : fresh) j[name] = to_string(type);
  return j;
}

inline std::string dump(const nlohmann::json& j) { return j.dump(2) + "\n"; }

template <typename F>
CommandResult guarded(F&& body) {
  try {
    return body();
  } catch (const InputError& e) {
    return {BadInput, {}, e.what(), std::nullopt};
  } catch (const InternalError& e) {
    return {Internal, {}, std::string("internal error: ") + e.what(), std::nullopt};
  } catch (const std::exception& e) {
    return {Internal, {}, std::string("internal error: ") + e.what(), std::nullopt};
  }
}

}  // namespace detail

/// `solve`: superficialize, require linearity, explore the tree and
/// finalize every success node.
inline CommandResult run_solve(std::string_view text, const SolveFlags& flags = {}) {
  return detail::guarded([&]() -> CommandResult {
    Problem original = parse_problem(text);
    SuperficialProblem flat = superficialize(original);
    if (!is_linear(flat.problem)) {
      throw InputError(ErrorKind::NotLinear,
                       "a second-order variable occurs more than once; use `solun general`");
    }
    SolverOptions options;
    options.parallel = flags.parallel;
    options.check_invariants = flags.paranoid;
    LinearSolution solved = solve_linear(flat.problem, options);

    auto is_original = [&](const std::string& n) { return original.variables.count(n) != 0; };
    nlohmann::json solutions = nlohmann::json::array();
    nlohmann::json residuals = nlohmann::json::array();
    std::map<std::string, Type> fresh;
    bool all_empty = true;
    for (const Success& s : solved.successes) {
      FinalizedResult r = finalize_node(s);
      if (flags.paranoid && !oracle::verify_solution(unifier_instance(r), original)) {
        throw InternalError("solution of node " + r.node_id + " does not verify");
      }
      solutions.push_back(detail::solution_json(r.unifier.restricted(is_original), fresh));
      nlohmann::json res = nlohmann::json::array();
      for (const Equation& e : r.residual) {
        res.push_back(to_string(e));
        detail::collect_generated(e.lhs, fresh);
        detail::collect_generated(e.rhs, fresh);
      }
      all_empty = all_empty && r.empty();
      residuals.push_back(std::move(res));
    }

    nlohmann::json out;
    out["status"] = solved.successes.empty() ? "fail" : all_empty ? "complete_set" : "pre_unifiers";
    out["solutions"] = std::move(solutions);
    out["residuals"] = std::move(residuals);
    out["fresh"] = detail::fresh_json(fresh);
    out["stats"] = {{"nodes", solved.tree.node_count}, {"successes", solved.successes.size()}};
    CommandResult result{Ok, detail::dump(out), {}, std::nullopt};
    out = nullptr;
    solved.successes = {};
    if (flags.tree) result.tree = export_tree(solved.tree, *flags.tree);
    return result;
  });
}

/// `general`: the linearize / solve / reconcile pipeline.
inline CommandResult run_general(std::string_view text, const SolveFlags& flags = {}) {
  return detail::guarded([&]() -> CommandResult {
    Problem original = parse_problem(text);
    SolverOptions options;
    options.parallel = flags.parallel;
    options.check_invariants = flags.paranoid;
    GeneralReport report = general_solve_report(original, options);

    nlohmann::json out;
    nlohmann::json solutions = nlohmann::json::array();
    nlohmann::json residuals = nlohmann::json::array();
    std::map<std::string, Type> fresh;
    if (auto* set = std::get_if<CompleteSet>(&report.result)) {
      for (const Substitution& sigma : set->unifiers) {
        if (flags.paranoid && !oracle::verify_solution(sigma, original)) {
          throw InternalError("unifier " + to_string(sigma) + " does not verify");
        }
        solutions.push_back(detail::solution_json(sigma, fresh));
        residuals.push_back(nlohmann::json::array());
      }
      out["status"] = set->unifiers.empty() ? "fail" : "complete_set";
    } else {
      const auto& none = std::get<NoInformation>(report.result);
      out["status"] = "no_information";
      out["diagnostic"] = none.diagnostic;
    }
    out["solutions"] = std::move(solutions);
    out["residuals"] = std::move(residuals);
    out["fresh"] = detail::fresh_json(fresh);
    out["stats"] = {{"nodes", report.nodes}, {"successes", report.successes}};
    return CommandResult{Ok, detail::dump(out), {}, std::nullopt};
  });
}

/// `verify`: check a substitution file against a problem.
inline CommandResult run_verify(std::string_view problem_text, std::string_view subst_text) {
  return detail::guarded([&]() -> CommandResult {
    Problem p = parse_problem(problem_text);
    Substitution sigma = parse_substitution(subst_text, p);
    std::vector<std::size_t> failing = oracle::failing_equations(sigma, p);
    nlohmann::json out;
    out["status"] = failing.empty() ? "valid" : "invalid";
    out["failed_equations"] = failing;
    return CommandResult{Ok, detail::dump(out), {}, std::nullopt};
  });
}

/// Substitution-file text for one JSON solution entry, declaring the
/// generated variables it mentions.
inline std::string substitution_file(const nlohmann::json& solution, const nlohmann::json& fresh) {
  std::string out;
  for (const auto& [name, type] : fresh.items()) out += "var " + name + " : " + type.get<std::string>() + ".\n";
  for (const auto& [name, value] : solution.items()) out += "subst " + name + " := " + value.get<std::string>() + ".\n";
  return out;
}

}  // namespace solun::cli
