#pragma once

#include <map>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "solun/linear_solver.hpp"
#include "solun/problem.hpp"
#include "solun/superficializer.hpp"

namespace solun {

/// Original second-order variable -> its per-occurrence copies.
struct CopyMap {
  std::map<std::string, std::vector<std::string>> copies;
  std::map<std::string, std::string> original_of;
};

struct LinearizedProblem {
  Problem problem;
  CopyMap copies;
};

namespace detail {

inline std::string copy_name(const std::string& original, std::size_t k) {
  return "#" + original + "_" + std::to_string(k);
}

inline Term rename_occurrences(const Term& t, Problem& p, CopyMap& cm) {
  switch (t.kind()) {
    case TermKind::Variable: {
      if (!is_second_order_variable(t)) return t;
      auto& list = cm.copies[t.name()];
      std::string name = copy_name(t.name(), list.size() + 1);
      list.push_back(name);
      cm.original_of.emplace(name, t.name());
      p.variables.emplace(name, t.type());
      return Term::variable(name, t.type());
    }
    case TermKind::Abstraction:
      return Term::abstraction(t.name(), t.binder_type(), rename_occurrences(t.body(), p, cm));
    case TermKind::Application: {
      Term fn = rename_occurrences(t.function(), p, cm);
      return Term::application(std::move(fn), rename_occurrences(t.argument(), p, cm));
    }
    default:
      return t;
  }
}

}  // namespace detail

/// Replaces the n occurrences of each second-order variable F by distinct
/// fresh variables #F_1 ... #F_n, left to right over the equations.
/// First-order variables are untouched.
inline LinearizedProblem linearize(const Problem& p) {
  LinearizedProblem out{p, {}};
  for (const auto& [name, type] : p.variables) {
    if (order_of(type) == 2) out.copies.copies[name];
  }
  for (Equation& e : out.problem.equations) {
    e.lhs = detail::rename_occurrences(e.lhs, out.problem, out.copies);
    e.rhs = detail::rename_occurrences(e.rhs, out.problem, out.copies);
  }
  for (const auto& [original, copies] : out.copies.copies) {
    if (!copies.empty()) out.problem.variables.erase(original);
  }
  return out;
}

struct CompleteSet {
  std::vector<Substitution> unifiers;
};

struct NoInformation {
  std::string node_id;
  std::string diagnostic;
};

using GeneralResult = std::variant<CompleteSet, NoInformation>;

namespace detail {

inline Term rename_copies(const Term& t, const CopyMap& cm) {
  Substitution back;
  for_each_symbol(t, [&](const Term& s) {
    if (!s.is_variable()) return;
    auto it = cm.original_of.find(s.name());
    if (it != cm.original_of.end()) back.bind(s, Term::variable(it->second, s.type()));
  });
  return back.apply(t);
}

inline std::string substitution_key(const Substitution& s) {
  std::string key;
  for (const auto& [name, b] : s) key += name + "=" + term_key(b.value) + ";";
  return key;
}

}  // namespace detail

/// Turns the finalized success nodes of the linearized problem into a
/// verdict for the original one. Abstains (NoInformation) when a success
/// node keeps flex-flex equations or binds a copy to an open term;
/// otherwise keeps the nodes whose copies of each variable agree.
inline GeneralResult reconcile(const std::vector<FinalizedResult>& results, const CopyMap& cm,
                               const Problem& original) {
  for (const FinalizedResult& r : results) {
    if (!r.empty()) {
      std::string eqs;
      for (const Equation& e : r.residual) eqs += (eqs.empty() ? "" : ", ") + to_string(e);
      return NoInformation{r.node_id, "success node " + r.node_id +
                                          " keeps flex-flex equations: " + eqs};
    }
    for (const auto& [copy, _] : cm.original_of) {
      auto v = r.unifier.lookup(copy);
      if (v && !is_closed(*v)) {
        return NoInformation{r.node_id, "success node " + r.node_id + " binds " + copy +
                                            " to the open term " + to_string(*v)};
      }
    }
  }

  CompleteSet out;
  std::set<std::string> seen;
  for (const FinalizedResult& r : results) {
    Substitution answer;
    bool agree = true;
    for (const auto& [f, copies] : cm.copies) {
      std::optional<Term> common;
      for (const std::string& c : copies) {
        auto v = r.unifier.lookup(c);
        if (!v) continue;
        if (!common) common = *v;
        else if (!beta_eta_equal(*common, *v)) agree = false;
      }
      if (!agree) break;
      if (common) answer.bind(f, original.variables.at(f), *common);
    }
    if (!agree) continue;
    for (const auto& [x, type] : original.variables) {
      if (cm.copies.count(x)) continue;
      auto v = r.unifier.lookup(x);
      if (v) answer.bind(x, type, answer.apply(detail::rename_copies(*v, cm)));
    }
    if (seen.insert(detail::substitution_key(answer)).second) out.unifiers.push_back(answer);
  }
  return out;
}

struct GeneralReport {
  GeneralResult result;
  std::size_t nodes = 0;
  std::size_t successes = 0;
};

/// validate -> linearize -> superficialize -> solve -> finalize -> reconcile.
inline GeneralReport general_solve_report(const Problem& p, const SolverOptions& options = {}) {
  require_valid(p);
  LinearizedProblem lin = linearize(p);
  SuperficialProblem flat = superficialize(lin.problem);
  LinearSolution solved = solve_linear(flat.problem, options);
  std::vector<FinalizedResult> finalized;
  for (const Success& s : solved.successes) finalized.push_back(finalize_node(s));

  GeneralReport report{reconcile(finalized, lin.copies, p), solved.tree.node_count,
                       solved.successes.size()};
  if (auto* set = std::get_if<CompleteSet>(&report.result)) {
    for (const Substitution& sigma : set->unifiers) {
      if (!satisfies(sigma, p)) {
        throw InternalError("general_solve produced a non-unifier " + to_string(sigma));
      }
    }
  }
  return report;
}

inline GeneralResult general_solve(const Problem& p, const SolverOptions& options = {}) {
  return general_solve_report(p, options).result;
}

}  // namespace solun
