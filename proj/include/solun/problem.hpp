#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "solun/error.hpp"
#include "solun/fresh.hpp"
#include "solun/print.hpp"
#include "solun/substitution.hpp"
#include "solun/term.hpp"
#include "solun/type.hpp"

namespace solun {

/// An unordered pair of canonical base-type terms.
struct Equation {
  Term lhs;
  Term rhs;
};

inline std::string to_string(const Equation& e) {
  return to_string(e.lhs) + " = " + to_string(e.rhs);
}

struct Problem {
  std::set<std::string> sorts;
  std::map<std::string, Type> constants;
  std::map<std::string, Type> variables;
  std::vector<Equation> equations;

  Term constant(const std::string& name) const { return Term::constant(name, constants.at(name)); }
  Term variable(const std::string& name) const { return Term::variable(name, variables.at(name)); }
};

inline bool is_first_order_variable(const Term& t) {
  return t.is_variable() && t.type().is_base();
}

inline bool is_second_order_variable(const Term& t) {
  return t.is_variable() && order_of(t.type()) == 2;
}

// ---------------------------------------------------------------------------
// Validation

struct ProblemError {
  ErrorKind kind;
  std::string symbol;
  std::optional<std::size_t> equation;
  std::string message;
};

namespace detail {

inline std::optional<ProblemError> check_type(const std::string& symbol, const Type& t,
                                              const std::set<std::string>& sorts) {
  if (t.is_base()) {
    if (sorts.count(t.name()) == 0) {
      return ProblemError{ErrorKind::UndeclaredSymbol, t.name(), std::nullopt,
                          "sort " + t.name() + " used by " + symbol + " is not declared"};
    }
    return std::nullopt;
  }
  if (auto e = check_type(symbol, t.domain(), sorts)) return e;
  return check_type(symbol, t.codomain(), sorts);
}

inline std::optional<ProblemError> check_symbols(const Problem& p, const Term& t,
                                                 std::size_t eq) {
  std::optional<ProblemError> err;
  for_each_symbol(t, [&](const Term& s) {
    if (err) return;
    const auto& table = s.is_variable() ? p.variables : p.constants;
    auto it = table.find(s.name());
    if (it == table.end()) {
      err = ProblemError{ErrorKind::UndeclaredSymbol, s.name(), eq,
                         std::string(s.is_variable() ? "variable " : "constant ") +
                             s.name() + " is not declared"};
    } else if (!(it->second == s.type())) {
      err = ProblemError{ErrorKind::IllTyped, s.name(), eq,
                         s.name() + " is used at type " + to_string(s.type()) +
                             " but declared " + to_string(it->second)};
    }
  });
  return err;
}

}  // namespace detail

/// Checks declarations (order <= 2, declared sorts, no name clashes) and
/// equations (declared symbols, same base type on both sides).
inline std::optional<ProblemError> validate_problem(const Problem& p) {
  for (const auto* table : {&p.constants, &p.variables}) {
    for (const auto& [name, type] : *table) {
      if (auto e = detail::check_type(name, type, p.sorts)) return e;
      if (order_of(type) > 2) {
        return ProblemError{ErrorKind::SymbolOrderTooHigh, name, std::nullopt,
                            name + " : " + to_string(type) + " has order " +
                                std::to_string(order_of(type)) + "; at most 2 is supported"};
      }
    }
  }
  for (const auto& [name, type] : p.variables) {
    if (p.constants.count(name)) {
      return ProblemError{ErrorKind::IllTyped, name, std::nullopt,
                          name + " is declared both as a constant and a variable"};
    }
  }
  for (std::size_t i = 0; i < p.equations.size(); ++i) {
    const Equation& e = p.equations[i];
    if (auto err = detail::check_symbols(p, e.lhs, i)) return err;
    if (auto err = detail::check_symbols(p, e.rhs, i)) return err;
    if (!(e.lhs.type() == e.rhs.type())) {
      return ProblemError{ErrorKind::IllTyped, {}, i,
                          "equation " + std::to_string(i) + " relates " +
                              to_string(e.lhs.type()) + " and " + to_string(e.rhs.type())};
    }
    if (!e.lhs.type().is_base()) {
      return ProblemError{ErrorKind::EquationNotBaseType, {}, i,
                          "equation " + std::to_string(i) + " has type " +
                              to_string(e.lhs.type()) + "; equations must relate base-type terms"};
    }
    if (e.lhs.loose() != 0 || e.rhs.loose() != 0) {
      return ProblemError{ErrorKind::IllTyped, {}, i, "equation has loose bound variables"};
    }
  }
  return std::nullopt;
}

inline void require_valid(const Problem& p) {
  if (auto e = validate_problem(p)) throw InputError(e->kind, e->message);
}

// ---------------------------------------------------------------------------
// Classification

enum class Rigidity { Flexible, Rigid };

struct HeadClass {
  Rigidity rigidity;
  std::string head;

  friend bool operator==(const HeadClass&, const HeadClass&) = default;
};

/// Head symbol of a canonical base-type spine: variable -> flexible,
/// constant -> rigid.
inline HeadClass classify_term(const Term& t) {
  const Term& h = head_of(t);
  if (h.is_variable()) return {Rigidity::Flexible, h.name()};
  if (h.is_constant()) return {Rigidity::Rigid, h.name()};
  throw TypeError("classify_term on a term without a symbol head");
}

inline bool is_rigid(const Term& t) { return head_of(t).is_constant(); }
inline bool is_flexible(const Term& t) { return head_of(t).is_variable(); }

/// Canonical orientation: the rigid side goes right when exactly one side is
/// rigid; between two flexible sides a bare first-order variable goes left.
inline Equation orient(Equation e) {
  bool lr = is_rigid(e.lhs), rr = is_rigid(e.rhs);
  if (lr && !rr) std::swap(e.lhs, e.rhs);
  else if (!lr && !rr && !is_first_order_variable(e.lhs) && is_first_order_variable(e.rhs))
    std::swap(e.lhs, e.rhs);
  return e;
}

inline std::size_t count_occurrences(const Problem& p, const std::string& name) {
  std::size_t n = 0;
  for (const Equation& e : p.equations) {
    for (const Term* side : {&e.lhs, &e.rhs}) {
      for_each_symbol(*side, [&](const Term& s) {
        if (s.is_variable() && s.name() == name) ++n;
      });
    }
  }
  return n;
}

/// Every second-order variable occurs at most once.
inline bool is_linear(const Problem& p) {
  std::map<std::string, std::size_t> seen;
  for (const Equation& e : p.equations) {
    for (const Term* side : {&e.lhs, &e.rhs}) {
      for_each_symbol(*side, [&](const Term& s) {
        if (is_second_order_variable(s)) ++seen[s.name()];
      });
    }
  }
  for (const auto& [name, n] : seen) {
    if (n > 1) return false;
  }
  return true;
}

inline bool contains_second_order_variable(const Term& t) {
  bool found = false;
  for_each_symbol(t, [&](const Term& s) { found = found || is_second_order_variable(s); });
  return found;
}

/// Second-order variables occur only as heads of equation sides.
inline bool is_superficial(const Problem& p) {
  for (const Equation& e : p.equations) {
    for (const Term* side : {&e.lhs, &e.rhs}) {
      Spine sp = spine_of(*side);
      for (const Term& a : sp.args) {
        if (contains_second_order_variable(a)) return false;
      }
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Termination measure

/// v: distinct first-order variables occurring in the equations.
/// w: summed sizes of the rigid sides of flex-rigid equations whose
///    flexible head is a second-order variable, size = symbol occurrences.
/// s: total symbol occurrences in all equations.
/// Compared lexicographically.
struct Measure {
  std::size_t v = 0;
  std::size_t w = 0;
  std::size_t s = 0;

  friend auto operator<=>(const Measure& a, const Measure& b) {
    return std::tie(a.v, a.w, a.s) <=> std::tie(b.v, b.w, b.s);
  }
  friend bool operator==(const Measure&, const Measure&) = default;
};

inline std::string to_string(const Measure& m) {
  return "(" + std::to_string(m.v) + "," + std::to_string(m.w) + "," + std::to_string(m.s) + ")";
}

/// The multiset W: rigid sides of flex-rigid equations with a second-order
/// flexible head.
inline std::vector<Term> weighted_rigid_terms(const Problem& p) {
  std::vector<Term> out;
  for (const Equation& e : p.equations) {
    bool lr = is_rigid(e.lhs), rr = is_rigid(e.rhs);
    if (lr == rr) continue;
    const Term& flex = lr ? e.rhs : e.lhs;
    const Term& rigid = lr ? e.lhs : e.rhs;
    if (is_second_order_variable(head_of(flex))) out.push_back(rigid);
  }
  return out;
}

inline Measure measure(const Problem& p) {
  Measure m;
  std::set<std::string> first_order;
  for (const Equation& e : p.equations) {
    for (const Term* side : {&e.lhs, &e.rhs}) {
      m.s += side->size();
      for_each_symbol(*side, [&](const Term& s) {
        if (is_first_order_variable(s)) first_order.insert(s.name());
      });
    }
  }
  m.v = first_order.size();
  for (const Term& t : weighted_rigid_terms(p)) m.w += t.size();
  return m;
}

/// w with |t| read as the number of variable occurrences in t. Reported
/// alongside the symbol-count version; it does not decrease under imitation
/// of ground terms.
inline std::size_t variable_occurrence_weight(const Problem& p) {
  std::size_t w = 0;
  for (const Term& t : weighted_rigid_terms(p)) {
    for_each_symbol(t, [&](const Term& s) { w += s.is_variable() ? 1 : 0; });
  }
  return w;
}

// ---------------------------------------------------------------------------
// Helpers shared by the transformations

/// Seed a name source above every generated index already used in `p`.
inline FreshNames fresh_names_for(const Problem& p) {
  FreshNames fresh;
  for (const auto& [name, _] : p.variables) fresh.reserve(name);
  for (const Equation& e : p.equations) {
    for (const Term* side : {&e.lhs, &e.rhs}) {
      for_each_symbol(*side, [&](const Term& s) { fresh.reserve(s.name()); });
    }
  }
  return fresh;
}

inline Equation apply_subst(const Substitution& sigma, const Equation& e) {
  return {sigma.apply(e.lhs), sigma.apply(e.rhs)};
}

/// sigma solves p when every equation's sides become beta-eta-equal.
inline bool satisfies(const Substitution& sigma, const Problem& p) {
  for (const Equation& e : p.equations) {
    if (!beta_eta_equal(sigma.apply(e.lhs), sigma.apply(e.rhs))) return false;
  }
  return true;
}

/// Declarations header followed by the equations, in the input grammar.
inline std::string print_problem(const Problem& p) {
  std::string out;
  for (const auto& s : p.sorts) out += "type " + s + ".\n";
  for (const auto& [name, t] : p.constants) out += "const " + name + " : " + to_string(t) + ".\n";
  for (const auto& [name, t] : p.variables) out += "var " + name + " : " + to_string(t) + ".\n";
  for (const Equation& e : p.equations) out += "eq " + to_string(e) + ".\n";
  return out;
}

}  // namespace solun
