#pragma once

#include <cstddef>
#include <vector>

#include "solun/problem.hpp"
#include "solun/substitution.hpp"

namespace solun::oracle {

/// Indices of the equations that sigma fails to solve.
inline std::vector<std::size_t> failing_equations(const Substitution& sigma, const Problem& p) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < p.equations.size(); ++i) {
    const Equation& e = p.equations[i];
    if (!beta_eta_equal(apply_subst(sigma, e.lhs), apply_subst(sigma, e.rhs))) out.push_back(i);
  }
  return out;
}

inline bool verify_solution(const Substitution& sigma, const Problem& p) {
  return failing_equations(sigma, p).empty();
}

}  // namespace solun::oracle
