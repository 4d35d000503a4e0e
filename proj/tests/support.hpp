#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "solun/oracle/matchers.hpp"
#include "solun/solun.hpp"

namespace solun::testing {

inline Problem sig(const std::string& text) { return parse_problem(text); }

inline Term term(const std::string& text, const Problem& scope) { return parse_term(text, scope); }

/// Signature used by the lambda-core property tests.
inline Problem lambda_signature() {
  return sig(
      "type i. type o."
      "const c : i. const d : i. const e : o."
      "const g : i -> i -> i. const h : i -> i. const p : o -> i."
      "var x : i. var y : i. var u : o."
      "var F : i -> i. var G : i -> i -> i. var P : o -> i.");
}

/// Random well-typed terms of a requested type, not necessarily normal:
/// beta-redexes and non-eta-long applications are produced on purpose.
class RandomTerms {
 public:
  RandomTerms(const Problem& p, std::uint64_t seed) : p_(p), rng_(seed) {}

  Term of(const Type& t, std::size_t depth) { return gen(t, depth, {}); }

 private:
  std::size_t draw(std::size_t n) { return n == 0 ? 0 : rng_() % n; }

  Term gen(const Type& t, std::size_t depth, std::vector<Type> ctx) {
    if (t.is_arrow() && (depth == 0 || draw(3) != 0)) {
      std::vector<Type> inner = ctx;
      inner.push_back(t.domain());
      return Term::abstraction("w", t.domain(), gen(t.codomain(), depth, inner));
    }
    // A beta-redex: (\v:A. body) arg with A a base sort.
    if (depth > 0 && draw(5) == 0) {
      Type a = Type::base(draw(2) ? "i" : "o");
      std::vector<Type> inner = ctx;
      inner.push_back(a);
      Term body = gen(t, depth - 1, inner);
      return Term::application(Term::abstraction("v", a, body), gen(a, depth - 1, ctx));
    }
    // Atom or application spine headed by something whose result is t.
    std::vector<Term> heads;
    for (std::size_t i = 0; i < ctx.size(); ++i) {
      if (ends_in(ctx[i], t)) heads.push_back(Term::bound(ctx.size() - 1 - i, ctx[i]));
    }
    for (const auto& [name, type] : p_.constants) {
      if (ends_in(type, t)) heads.push_back(Term::constant(name, type));
    }
    for (const auto& [name, type] : p_.variables) {
      if (ends_in(type, t)) heads.push_back(Term::variable(name, type));
    }
    if (depth == 0) {
      std::vector<Term> exact;
      for (const Term& h : heads) if (h.type() == t) exact.push_back(h);
      if (!exact.empty()) return exact[draw(exact.size())];
    }
    if (heads.empty()) {
      // Only reachable for arrow types with nothing ending in them.
      std::vector<Type> inner = ctx;
      inner.push_back(t.domain());
      return Term::abstraction("w", t.domain(), gen(t.codomain(), depth, inner));
    }
    Term head = heads[draw(heads.size())];
    Term out = head;
    while (!(out.type() == t)) {
      out = Term::application(out, gen(out.type().domain(), depth == 0 ? 0 : depth - 1, ctx));
    }
    return out;
  }

  // Does `f` reach `target` after applying zero or more arguments?
  static bool ends_in(const Type& f, const Type& target) {
    const Type* cur = &f;
    for (;;) {
      if (*cur == target) return true;
      if (cur->is_base()) return false;
      cur = &cur->codomain();
    }
  }

  Problem p_;
  std::mt19937_64 rng_;
};

/// First-order matching: extends `theta` so that theta(pattern) == target,
/// treating every free variable of `pattern` as bindable.
inline bool match_into(const Term& pattern, const Term& target, std::map<std::string, Term>& theta) {
  if (pattern.is_variable()) {
    auto [it, inserted] = theta.emplace(pattern.name(), target);
    return inserted || it->second == target;
  }
  Spine a = spine_of(pattern), b = spine_of(target);
  if (!a.head.is_constant() || !b.head.is_constant() || a.head.name() != b.head.name()) return false;
  if (a.args.size() != b.args.size()) return false;
  for (std::size_t k = 0; k < a.args.size(); ++k) {
    if (!match_into(a.args[k], b.args[k], theta)) return false;
  }
  return true;
}

/// sigma is at least as general as tau on `vars`: some theta has
/// theta(sigma(v)) == tau(v) for every v.
inline bool at_least_as_general(const Substitution& sigma, const Substitution& tau,
                                const std::vector<Term>& vars) {
  std::map<std::string, Term> theta;
  for (const Term& v : vars) {
    if (!match_into(sigma.apply(v), tau.apply(v), theta)) return false;
  }
  return true;
}

/// Equal up to a renaming of variables, for first-order substitutions.
inline bool equally_general(const Substitution& sigma, const Substitution& tau,
                            const std::vector<Term>& vars) {
  return at_least_as_general(sigma, tau, vars) && at_least_as_general(tau, sigma, vars);
}

/// Ground solution sets of a matching problem compared at spine depth D:
/// the ground instances of the general solver's answers against the
/// enumerated matchers.
struct MatchingComparison {
  bool no_information = false;
  bool agree = false;
  std::size_t depth = 0;
  std::size_t solver_ground = 0;
  std::size_t oracle_ground = 0;
};

inline std::string ground_key(const Substitution& s, const std::vector<Term>& vars) {
  std::string key;
  for (const Term& v : vars) key += v.name() + "=" + term_key(s.apply(v)) + ";";
  return key;
}

inline MatchingComparison compare_matching(const Problem& p, const SolverOptions& options = {}) {
  MatchingComparison out;
  for (const Equation& e : p.equations) {
    for (const Term* side : {&e.lhs, &e.rhs}) {
      if (is_closed(*side)) out.depth = std::max(out.depth, oracle::spine_depth(*side));
    }
  }
  std::vector<Term> vars = oracle::occurring_variables(p);
  GeneralResult r = general_solve(p, options);
  if (std::holds_alternative<NoInformation>(r)) {
    out.no_information = true;
    return out;
  }
  oracle::CandidateEnumerator gen(p, out.depth);
  std::set<std::string> solver, oracle_set;
  for (const Substitution& sigma : std::get<CompleteSet>(r).unifiers) {
    for (const Substitution& g : oracle::ground_instances(sigma, vars, gen)) {
      bool within = true;
      for (const Term& v : vars) within = within && oracle::spine_depth(g.apply(v)) <= out.depth;
      if (within) solver.insert(ground_key(g, vars));
    }
  }
  for (const Substitution& g : oracle::enumerate_matcher_sets(p, out.depth)) {
    oracle_set.insert(ground_key(g, vars));
  }
  out.solver_ground = solver.size();
  out.oracle_ground = oracle_set.size();
  out.agree = solver == oracle_set;
  return out;
}

}  // namespace solun::testing
