#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "solun/error.hpp"
#include "solun/fresh.hpp"
#include "solun/problem.hpp"

namespace solun {

struct FlatteningStep {
  std::string variable;
  Term extracted;
  std::size_t source_equation;
};

using FlatteningTrace = std::vector<FlatteningStep>;

struct SuperficialProblem {
  Problem problem;
  FlatteningTrace trace;
};

/// Flattens every non-variable argument of every equation side into a fresh
/// first-order variable: (F ... a ...) = t becomes (F ... x ...) = t plus
/// x = a. Equations are rewritten in place and the new x = a equations are
/// appended, so equation i of the output derives from equation i of the
/// input. Scans leftmost equation, left side before right side, leftmost
/// argument first.
inline SuperficialProblem superficialize(const Problem& input, FreshNames& fresh) {
  require_valid(input);
  SuperficialProblem out{input, {}};
  Problem& p = out.problem;

  std::size_t budget = measure(input).s;
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i < p.equations.size() && !changed; ++i) {
      for (Term* side : {&p.equations[i].lhs, &p.equations[i].rhs}) {
        Spine sp = spine_of(*side);
        for (Term& arg : sp.args) {
          if (arg.is_variable()) continue;
          if (budget-- == 0) throw InternalError("superficialize exceeded its step bound");
          Term x = Term::variable(fresh.make("x"), arg.type());
          p.variables.emplace(x.name(), x.type());
          out.trace.push_back({x.name(), arg, i});
          Equation extracted{x, arg};
          arg = x;
          *side = apply_all(sp.head, sp.args);
          p.equations.push_back(std::move(extracted));
          changed = true;
          break;
        }
        if (changed) break;
      }
    }
  }
  return out;
}

inline SuperficialProblem superficialize(const Problem& input) {
  FreshNames fresh = fresh_names_for(input);
  return superficialize(input, fresh);
}

/// Substitution that undoes the flattening: every introduced variable is
/// mapped back to the subterm it replaced.
inline Substitution replay(const FlatteningTrace& trace) {
  Substitution sigma;
  for (const FlatteningStep& s : trace) {
    Substitution step;
    step.bind(s.variable, s.extracted.type(), s.extracted);
    sigma = compose(step, sigma);
  }
  return sigma;
}

}  // namespace solun
