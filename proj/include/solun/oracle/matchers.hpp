#pragma once

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "solun/oracle/verify.hpp"
#include "solun/problem.hpp"

namespace solun::oracle {

/// Spine depth of a canonical term below its binders: an atom has depth 1,
/// (h a1 ... an) has depth 1 + max depth(ai).
inline std::size_t spine_depth(const Term& t) {
  if (t.is_abstraction()) return spine_depth(t.body());
  Spine sp = spine_of(t);
  std::size_t deepest = 0;
  for (const Term& a : sp.args) deepest = std::max(deepest, spine_depth(a));
  return 1 + deepest;
}

/// Exhaustive generator of the closed canonical terms of a type of order
/// <= 2 over a signature, up to a spine depth bound.
class CandidateEnumerator {
 public:
  CandidateEnumerator(const Problem& signature, std::size_t depth_bound)
      : constants_(signature.constants), depth_bound_(depth_bound) {}

  const std::vector<Term>& closed_terms(const Type& type) {
    std::string key = to_string(type);
    auto it = cache_.find(key);
    if (it != cache_.end()) return it->second;
    std::vector<Type> binders = type.arguments();
    std::map<std::pair<std::string, std::size_t>, std::vector<Term>> memo;
    std::vector<Term> out;
    for (Term body : bodies(type.result().name(), depth_bound_, binders, memo)) {
      for (std::size_t j = binders.size(); j-- > 0;) body = Term::abstraction("z", binders[j], body);
      out.push_back(std::move(body));
    }
    return cache_.emplace(key, std::move(out)).first->second;
  }

  std::size_t depth_bound() const { return depth_bound_; }

 private:
  using Memo = std::map<std::pair<std::string, std::size_t>, std::vector<Term>>;

  std::vector<Term> bodies(const std::string& sort, std::size_t depth,
                           const std::vector<Type>& binders, Memo& memo) {
    if (depth == 0) return {};
    auto key = std::pair{sort, depth};
    if (auto it = memo.find(key); it != memo.end()) return it->second;
    std::vector<Term> out;
    for (std::size_t i = 0; i < binders.size(); ++i) {
      if (binders[i].is_base() && binders[i].name() == sort) {
        out.push_back(Term::bound(binders.size() - 1 - i, binders[i]));
      }
    }
    for (const auto& [name, type] : constants_) {
      if (type.result().name() != sort) continue;
      std::vector<Type> args = type.arguments();
      if (args.empty()) {
        out.push_back(Term::constant(name, type));
        continue;
      }
      std::vector<std::vector<Term>> choices;
      for (const Type& a : args) choices.push_back(bodies(a.name(), depth - 1, binders, memo));
      std::vector<Term> picked;
      std::function<void(std::size_t)> product = [&](std::size_t k) {
        if (k == choices.size()) {
          out.push_back(apply_all(Term::constant(name, type), picked));
          return;
        }
        for (const Term& c : choices[k]) {
          picked.push_back(c);
          product(k + 1);
          picked.pop_back();
        }
      };
      product(0);
    }
    memo.emplace(key, out);
    return out;
  }

  std::map<std::string, Type> constants_;
  std::size_t depth_bound_;
  std::map<std::string, std::vector<Term>> cache_;
};

/// Closed matchers for `v` within the depth bound: every candidate value
/// for v under which all equations of p hold. Other variables of p are left
/// as they are.
inline std::vector<Term> enumerate_matchers(const Term& v, const Problem& p, std::size_t depth_bound) {
  CandidateEnumerator gen(p, depth_bound);
  std::vector<Term> out;
  for (const Term& c : gen.closed_terms(v.type())) {
    Substitution sigma;
    sigma.bind(v, c);
    if (verify_solution(sigma, p)) out.push_back(c);
  }
  return out;
}

/// Variables occurring in p, in order of first occurrence.
inline std::vector<Term> occurring_variables(const Problem& p) {
  std::vector<Term> out;
  for (const Equation& e : p.equations) {
    for (const Term* side : {&e.lhs, &e.rhs}) {
      for_each_symbol(*side, [&](const Term& s) {
        if (!s.is_variable()) return;
        if (std::none_of(out.begin(), out.end(), [&](const Term& t) { return t.name() == s.name(); }))
          out.push_back(s);
      });
    }
  }
  return out;
}

/// All closed substitutions over the occurring variables of p, each value
/// within the depth bound, that solve p. Plain backtracking: an equation is
/// checked as soon as all of its variables are assigned.
inline std::vector<Substitution> enumerate_matcher_sets(const Problem& p, std::size_t depth_bound) {
  std::vector<Term> vars = occurring_variables(p);
  std::vector<std::vector<std::size_t>> ready(vars.size());
  for (std::size_t i = 0; i < p.equations.size(); ++i) {
    std::size_t last = 0;
    for (const auto& [name, _] : free_vars(p.equations[i].lhs)) {
      for (std::size_t k = 0; k < vars.size(); ++k) if (vars[k].name() == name) last = std::max(last, k);
    }
    for (const auto& [name, _] : free_vars(p.equations[i].rhs)) {
      for (std::size_t k = 0; k < vars.size(); ++k) if (vars[k].name() == name) last = std::max(last, k);
    }
    if (vars.empty()) continue;
    ready[last].push_back(i);
  }

  std::vector<Substitution> out;
  if (vars.empty()) {
    if (verify_solution({}, p)) out.emplace_back();
    return out;
  }
  CandidateEnumerator gen(p, depth_bound);
  Substitution sigma;
  std::function<void(std::size_t)> search = [&](std::size_t k) {
    if (k == vars.size()) {
      out.push_back(sigma);
      return;
    }
    for (const Term& c : gen.closed_terms(vars[k].type())) {
      sigma.bind(vars[k], c);
      bool ok = std::all_of(ready[k].begin(), ready[k].end(), [&](std::size_t i) {
        const Equation& e = p.equations[i];
        return sigma.apply(e.lhs) == sigma.apply(e.rhs);
      });
      if (ok) search(k + 1);
    }
    sigma.erase(vars[k].name());
  };
  search(0);
  return out;
}

/// Ground instances within the bound of an answer that may leave some of
/// `vars` unbound. Returns nothing for answers that bind a variable to a
/// term that is not closed; callers treat that as a mismatch.
inline std::vector<Substitution> ground_instances(const Substitution& answer,
                                                  const std::vector<Term>& vars,
                                                  CandidateEnumerator& gen) {
  std::vector<Substitution> out;
  Substitution base;
  std::vector<Term> open;
  for (const Term& v : vars) {
    auto value = answer.lookup(v.name());
    if (!value) {
      open.push_back(v);
      continue;
    }
    if (!is_closed(*value)) return {};
    base.bind(v, *value);
  }
  std::function<void(std::size_t)> expand = [&](std::size_t k) {
    if (k == open.size()) {
      out.push_back(base);
      return;
    }
    for (const Term& c : gen.closed_terms(open[k].type())) {
      base.bind(open[k], c);
      expand(k + 1);
    }
    base.erase(open[k].name());
  };
  expand(0);
  return out;
}

}  // namespace solun::oracle
