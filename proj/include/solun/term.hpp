#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "solun/error.hpp"
#include "solun/type.hpp"

namespace solun {

enum class TermKind : std::uint8_t {
  Variable,
  Constant,
  Bound,
  Abstraction,
  Application,
};

/// Simply typed lambda term. Bound variables are nameless (de Bruijn
/// indices) so alpha-equivalence is structural equality; abstractions keep a
/// binder name only as a printing hint. Free variables and constants are
/// named globally. Immutable; copies share structure.
class Term {
 public:
  static Term variable(std::string name, Type type);
  static Term constant(std::string name, Type type);
  static Term bound(std::size_t index, Type type);
  static Term abstraction(std::string hint, Type binder, Term body);
  static Term application(Term fn, Term arg);

  TermKind kind() const;
  bool is_variable() const { return kind() == TermKind::Variable; }
  bool is_constant() const { return kind() == TermKind::Constant; }
  bool is_bound() const { return kind() == TermKind::Bound; }
  bool is_abstraction() const { return kind() == TermKind::Abstraction; }
  bool is_application() const { return kind() == TermKind::Application; }
  bool is_atom() const { return is_variable() || is_constant() || is_bound(); }

  /// Symbol name for variables and constants; binder hint for abstractions.
  const std::string& name() const;
  std::size_t index() const;
  const Type& type() const;
  const Type& binder_type() const;
  const Term& body() const;
  const Term& function() const;
  const Term& argument() const;

  /// One more than the largest de Bruijn index escaping this term; 0 when
  /// the term has no loose bound variables.
  std::size_t loose() const;
  /// Number of symbol occurrences (variables, constants, bound variables).
  std::size_t size() const;
  /// Already beta-normal and eta-long.
  bool canonical() const;
  /// Contains a free variable.
  bool has_variables() const;

  bool same_node(const Term& other) const { return node_ == other.node_; }

 private:
  struct Node;

  Term() = default;
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  static std::shared_ptr<Node> make(TermKind kind, std::string name,
                                    std::size_t index, Type type);

  std::shared_ptr<const Node> node_;
};

struct Term::Node {
  TermKind kind{};
  std::string name;
  std::size_t index = 0;
  Type type;
  Type binder;
  std::size_t loose = 0;
  std::size_t size = 1;
  bool canonical = false;
  bool spine_ok = false;  // atom head applied to canonical arguments
  bool has_variables = false;
  Term first;
  Term second;

  explicit Node(Type t) : type(t), binder(std::move(t)) {}
};

inline std::shared_ptr<Term::Node> Term::make(TermKind kind, std::string name,
                                              std::size_t index, Type type) {
  auto node = std::make_shared<Node>(std::move(type));
  node->kind = kind;
  node->name = std::move(name);
  node->index = index;
  if (kind != TermKind::Abstraction && kind != TermKind::Application) {
    node->spine_ok = true;
    node->canonical = node->type.is_base();
    node->has_variables = kind == TermKind::Variable;
  }
  return node;
}

inline Term Term::variable(std::string name, Type type) {
  return Term(make(TermKind::Variable, std::move(name), 0, std::move(type)));
}

inline Term Term::constant(std::string name, Type type) {
  return Term(make(TermKind::Constant, std::move(name), 0, std::move(type)));
}

inline Term Term::bound(std::size_t index, Type type) {
  auto node = make(TermKind::Bound, {}, index, std::move(type));
  node->loose = index + 1;
  return Term(std::move(node));
}

inline Term Term::abstraction(std::string hint, Type binder, Term body) {
  auto node = make(TermKind::Abstraction, std::move(hint), 0,
                   Type::arrow(binder, body.type()));
  node->loose = body.loose() == 0 ? 0 : body.loose() - 1;
  node->size = body.size();
  node->binder = std::move(binder);
  node->canonical = body.canonical();
  node->has_variables = body.has_variables();
  node->first = std::move(body);
  return Term(std::move(node));
}

inline Term Term::application(Term fn, Term arg) {
  if (!fn.type().is_arrow()) {
    throw TypeError("cannot apply a term of type " + to_string(fn.type()));
  }
  if (!(fn.type().domain() == arg.type())) {
    throw TypeError("argument of type " + to_string(arg.type()) +
                    " given where " + to_string(fn.type().domain()) +
                    " is expected");
  }
  auto node = make(TermKind::Application, {}, 0, fn.type().codomain());
  node->loose = std::max(fn.loose(), arg.loose());
  node->size = fn.size() + arg.size();
  node->spine_ok = fn.node_->spine_ok && arg.canonical();
  node->canonical = node->spine_ok && node->type.is_base();
  node->has_variables = fn.has_variables() || arg.has_variables();
  node->first = std::move(fn);
  node->second = std::move(arg);
  return Term(std::move(node));
}

inline TermKind Term::kind() const { return node_->kind; }
inline const std::string& Term::name() const { return node_->name; }
inline std::size_t Term::index() const { return node_->index; }
inline const Type& Term::type() const { return node_->type; }
inline const Type& Term::binder_type() const { return node_->binder; }
inline const Term& Term::body() const { return node_->first; }
inline const Term& Term::function() const { return node_->first; }
inline const Term& Term::argument() const { return node_->second; }
inline std::size_t Term::loose() const { return node_->loose; }
inline std::size_t Term::size() const { return node_->size; }
inline bool Term::canonical() const { return node_->canonical; }
inline bool Term::has_variables() const { return node_->has_variables; }

/// Alpha-equivalence: structural equality ignoring binder hints.
inline bool operator==(const Term& a, const Term& b) {
  if (a.same_node(b)) return true;
  if (a.kind() != b.kind() || a.size() != b.size()) return false;
  switch (a.kind()) {
    case TermKind::Variable:
    case TermKind::Constant:
      return a.name() == b.name() && a.type() == b.type();
    case TermKind::Bound:
      return a.index() == b.index() && a.type() == b.type();
    case TermKind::Abstraction:
      return a.binder_type() == b.binder_type() && a.body() == b.body();
    case TermKind::Application:
      return a.function() == b.function() && a.argument() == b.argument();
  }
  return false;
}

struct Spine {
  Term head;
  std::vector<Term> args;
};

inline Spine spine_of(const Term& t) {
  std::vector<Term> args;
  const Term* cur = &t;
  while (cur->is_application()) {
    args.push_back(cur->argument());
    cur = &cur->function();
  }
  std::reverse(args.begin(), args.end());
  return {*cur, std::move(args)};
}

inline const Term& head_of(const Term& t) {
  const Term* cur = &t;
  while (cur->is_application()) cur = &cur->function();
  return *cur;
}

inline Term apply_all(Term head, std::span<const Term> args) {
  for (const Term& a : args) head = Term::application(std::move(head), a);
  return head;
}

/// Visit every variable and constant occurrence.
inline void for_each_symbol(const Term& t,
                            const std::function<void(const Term&)>& visit) {
  switch (t.kind()) {
    case TermKind::Variable:
    case TermKind::Constant:
      visit(t);
      return;
    case TermKind::Bound:
      return;
    case TermKind::Abstraction:
      for_each_symbol(t.body(), visit);
      return;
    case TermKind::Application:
      for_each_symbol(t.function(), visit);
      for_each_symbol(t.argument(), visit);
      return;
  }
}

/// Free variables with their types, ordered by name.
inline std::map<std::string, Type> free_vars(const Term& t) {
  std::map<std::string, Type> out;
  for_each_symbol(t, [&](const Term& s) {
    if (s.is_variable()) out.emplace(s.name(), s.type());
  });
  return out;
}

inline bool occurs_free(const std::string& name, const Term& t) {
  bool found = false;
  for_each_symbol(t, [&](const Term& s) {
    if (s.is_variable() && s.name() == name) found = true;
  });
  return found;
}

/// Closed: no free variables (constants are allowed).
inline bool is_closed(const Term& t) { return free_vars(t).empty(); }

/// Canonical string identifying the alpha-class of a term. Used for
/// ordering and deduplication, not for display.
inline void append_key(const Term& t, std::string& out) {
  switch (t.kind()) {
    case TermKind::Variable: out += "?" + t.name(); return;
    case TermKind::Constant: out += t.name(); return;
    case TermKind::Bound: out += "^" + std::to_string(t.index()); return;
    case TermKind::Abstraction:
      out += "(\\" + to_string(t.binder_type()) + ".";
      append_key(t.body(), out);
      out += ")";
      return;
    case TermKind::Application:
      out += "(";
      append_key(t.function(), out);
      out += " ";
      append_key(t.argument(), out);
      out += ")";
      return;
  }
}

inline std::string term_key(const Term& t) {
  std::string out;
  append_key(t, out);
  return out;
}

}  // namespace solun
