#pragma once

#include <cstddef>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "solun/oracle/matchers.hpp"
#include "solun/problem.hpp"

namespace solun::oracle {

struct GeneratorConfig {
  std::uint64_t seed = 0;
  std::size_t max_constants = 4;
  std::size_t max_first_order_vars = 4;
  std::size_t max_second_order_vars = 3;
  std::size_t max_arity = 3;
  std::size_t max_depth = 3;
  std::size_t equation_count = 4;  // upper bound
  bool force_linear = false;
  bool force_matching = false;     // one closed side per equation
  bool force_first_order = false;  // no second-order variables
};

namespace detail {

class ProblemGenerator {
 public:
  explicit ProblemGenerator(const GeneratorConfig& cfg) : cfg_(cfg), rng_(cfg.seed) {}

  Problem run() {
    declare_signature();
    std::size_t n = 1 + draw(std::max<std::size_t>(cfg_.equation_count, 1));
    for (std::size_t i = 0; i < n; ++i) p_.equations.push_back(equation());
    if (auto err = validate_problem(p_)) throw InternalError("generator produced an invalid problem: " + err->message);
    return p_;
  }

 private:
  std::size_t draw(std::size_t n) { return n == 0 ? 0 : static_cast<std::size_t>(rng_() % n); }
  bool chance(std::size_t percent) { return draw(100) < percent; }

  std::string pick_sort() { return sorts_[draw(sorts_.size())]; }

  void declare_signature() {
    sorts_ = {"i"};
    if (cfg_.max_constants >= 3 && chance(25)) sorts_.push_back("o");
    for (const auto& s : sorts_) p_.sorts.insert(s);

    static const char* atoms[] = {"a", "b", "c", "d", "e", "m"};
    static const char* funcs[] = {"f", "g", "h", "k", "l", "n"};
    std::size_t budget = std::max<std::size_t>(cfg_.max_constants, sorts_.size());
    std::size_t total = sorts_.size() + draw(budget - sorts_.size() + 1);
    std::size_t atom_i = 0, func_i = 0;
    for (const auto& s : sorts_) p_.constants.emplace(atoms[atom_i++], Type::base(s));
    for (std::size_t k = sorts_.size(); k < total; ++k) {
      bool function = cfg_.max_arity > 0 && cfg_.max_depth > 1 && (func_i == 0 || chance(60));
      if (function && func_i < 6) {
        p_.constants.emplace(funcs[func_i++], random_function_type());
      } else if (atom_i < 6) {
        p_.constants.emplace(atoms[atom_i++], Type::base(pick_sort()));
      }
    }

    static const char* fo[] = {"x", "y", "z", "u", "v", "w"};
    static const char* so[] = {"F", "G", "H", "K", "L", "M"};
    std::size_t n_fo = cfg_.force_matching ? 0 : draw(std::min<std::size_t>(cfg_.max_first_order_vars, 6) + 1);
    for (std::size_t k = 0; k < n_fo; ++k) p_.variables.emplace(fo[k], Type::base(pick_sort()));
    std::size_t max_so = std::min<std::size_t>(cfg_.max_second_order_vars, 6);
    std::size_t n_so = 0;
    if (!cfg_.force_first_order && max_so > 0 && cfg_.max_arity > 0 && cfg_.max_depth > 1) {
      n_so = cfg_.force_matching ? 1 + draw(max_so) : draw(max_so + 1);
    }
    for (std::size_t k = 0; k < n_so; ++k) p_.variables.emplace(so[k], random_function_type());
  }

  Type random_function_type() {
    std::size_t arity = 1 + draw(cfg_.max_arity);
    std::vector<Type> args;
    for (std::size_t j = 0; j < arity; ++j) args.push_back(Type::base(pick_sort()));
    return Type::function(args, Type::base(pick_sort()));
  }

  std::vector<Term> symbols_of_sort(const std::string& sort, bool atoms, bool variables, bool constants) {
    std::vector<Term> out;
    if (constants) {
      for (const auto& [name, t] : p_.constants) {
        if (t.result().name() == sort && t.is_base() == atoms) out.push_back(Term::constant(name, t));
      }
    }
    if (variables) {
      for (const auto& [name, t] : p_.variables) {
        if (t.result().name() != sort || t.is_base() != atoms) continue;
        if (cfg_.force_linear && !atoms && used_.count(name)) continue;
        out.push_back(Term::variable(name, t));
      }
    }
    return out;
  }

  Term term(const std::string& sort, std::size_t depth, bool variables) {
    std::vector<Term> atoms = symbols_of_sort(sort, true, variables, true);
    std::vector<Term> heads;
    if (depth > 1) heads = symbols_of_sort(sort, false, variables, true);
    if (heads.empty() || (!atoms.empty() && chance(40))) return atoms[draw(atoms.size())];
    Term head = heads[draw(heads.size())];
    if (head.is_variable()) used_.insert(head.name());
    std::vector<Term> args;
    for (const Type& a : head.type().arguments()) args.push_back(term(a.name(), depth - 1, variables));
    return apply_all(head, args);
  }

  bool has_variable(const Term& t) { return !free_vars(t).empty(); }

  // A closed instance of `pattern` under random closed values, when it fits
  // the depth bound.
  std::optional<Term> closed_instance(const Term& pattern) {
    CandidateEnumerator gen(p_, 2);
    Substitution sigma;
    for (const auto& [name, type] : free_vars(pattern)) {
      const auto& candidates = gen.closed_terms(type);
      if (candidates.empty()) return std::nullopt;
      sigma.bind(name, type, candidates[draw(candidates.size())]);
    }
    Term out = sigma.apply(pattern);
    if (spine_depth(out) > cfg_.max_depth) return std::nullopt;
    return out;
  }

  Equation equation() {
    std::string sort = pick_sort();
    if (cfg_.force_matching) {
      Term pattern = term(sort, cfg_.max_depth, true);
      for (int tries = 0; !has_variable(pattern) && tries < 8; ++tries) pattern = term(sort, cfg_.max_depth, true);
      std::optional<Term> closed;
      if (chance(60)) closed = closed_instance(pattern);
      if (!closed) closed = term(sort, cfg_.max_depth, false);
      return chance(50) ? Equation{pattern, *closed} : Equation{*closed, pattern};
    }
    Term lhs = term(sort, cfg_.max_depth, true);
    if (chance(50)) {
      if (auto rhs = closed_instance(lhs)) return {lhs, *rhs};
    }
    return {lhs, term(sort, cfg_.max_depth, true)};
  }

  GeneratorConfig cfg_;
  std::mt19937_64 rng_;
  Problem p_;
  std::vector<std::string> sorts_;
  std::set<std::string> used_;
};

}  // namespace detail

/// Seed-deterministic random problem honoring the configuration flags.
inline Problem generate_problem(const GeneratorConfig& cfg) {
  return detail::ProblemGenerator(cfg).run();
}

}  // namespace solun::oracle
