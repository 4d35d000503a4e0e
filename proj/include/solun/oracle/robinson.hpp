#pragma once

#include <utility>
#include <variant>
#include <vector>

#include "solun/problem.hpp"

namespace solun::oracle {

enum class RobinsonFailure { HeadClash, OccurCheck };

/// Textbook first-order unification (recursive descent with occur check).
/// Every variable must be first-order; constants of any order <= 2 act as
/// function symbols.
inline std::variant<Substitution, RobinsonFailure> robinson_unify(const Problem& p) {
  Substitution mgu;
  std::vector<std::pair<Term, Term>> work;
  for (const Equation& e : p.equations) work.emplace_back(e.lhs, e.rhs);

  while (!work.empty()) {
    auto [s, t] = work.back();
    work.pop_back();
    s = mgu.apply(s);
    t = mgu.apply(t);
    if (s == t) continue;
    if (t.is_variable()) std::swap(s, t);
    if (s.is_variable()) {
      if (!s.type().is_base()) throw TypeError("robinson_unify needs first-order variables");
      if (occurs_free(s.name(), t)) return RobinsonFailure::OccurCheck;
      Substitution step;
      step.bind(s, t);
      mgu = compose(step, mgu);
      continue;
    }
    Spine a = spine_of(s), b = spine_of(t);
    if (a.head.name() != b.head.name() || a.args.size() != b.args.size()) {
      return RobinsonFailure::HeadClash;
    }
    for (std::size_t i = 0; i < a.args.size(); ++i) work.emplace_back(a.args[i], b.args[i]);
  }
  return mgu;
}

}  // namespace solun::oracle
