#pragma once

#include <functional>
#include <algorithm>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "solun/normalize.hpp"
#include "solun/term.hpp"

namespace solun {

/// Type-preserving finite map from variables to canonical terms.
class Substitution {
 public:
  struct Binding {
    Type type;
    Term value;
  };
  /// Sorted by variable name.
  using Map = std::vector<std::pair<std::string, Binding>>;

  /// Binds `name : type` to the canonical form of `value`. A binding of a
  /// variable to itself removes it from the domain.
  void bind(const std::string& name, const Type& type, const Term& value) {
    if (!(value.type() == type)) {
      throw TypeError("binding " + name + " : " + to_string(type) +
                      " to a term of type " + to_string(value.type()));
    }
    if (value.loose() != 0) {
      throw TypeError("binding " + name + " to a term with loose bound variables");
    }
    Term canonical = normalize(value);
    auto it = position(name);
    bool present = it != map_.end() && it->first == name;
    if (is_identity(name, canonical)) {
      if (present) map_.erase(it);
    } else if (present) {
      it->second = Binding{type, std::move(canonical)};
    } else {
      map_.insert(it, {name, Binding{type, std::move(canonical)}});
    }
  }

  void bind(const Term& variable, const Term& value) {
    if (!variable.is_variable()) throw TypeError("binding a non-variable");
    bind(variable.name(), variable.type(), value);
  }

  void erase(const std::string& name) {
    auto it = position(name);
    if (it != map_.end() && it->first == name) map_.erase(it);
  }

  bool binds(const std::string& name) const { return find(name) != nullptr; }

  std::optional<Term> lookup(const std::string& name) const {
    const Binding* b = find(name);
    if (b == nullptr) return std::nullopt;
    return b->value;
  }

  /// Capture-avoiding replacement followed by normalization.
  Term apply(const Term& t) const {
    if (map_.empty()) return normalize(t);
    return normalize(replace(t));
  }

  Substitution restricted(const std::function<bool(const std::string&)>& keep) const {
    Substitution out;
    for (const auto& [name, b] : map_) {
      if (keep(name)) out.map_.emplace_back(name, b);
    }
    return out;
  }

  const Map& bindings() const { return map_; }
  bool empty() const { return map_.empty(); }
  std::size_t size() const { return map_.size(); }
  auto begin() const { return map_.begin(); }
  auto end() const { return map_.end(); }

  /// (outer o inner): apply inner first, then outer.
  friend Substitution compose(const Substitution& outer, const Substitution& inner) {
    Substitution out;
    out.map_.reserve(inner.size() + outer.size());
    auto i = inner.map_.begin();
    auto o = outer.map_.begin();
    while (i != inner.map_.end() || o != outer.map_.end()) {
      if (i == inner.map_.end() || (o != outer.map_.end() && o->first < i->first)) {
        out.map_.push_back(*o++);
        continue;
      }
      if (o != outer.map_.end() && o->first == i->first) ++o;
      Term value = outer.apply(i->second.value);
      if (!is_identity(i->first, value)) out.map_.emplace_back(i->first, Binding{i->second.type, std::move(value)});
      ++i;
    }
    return out;
  }

 private:
  Map::iterator position(const std::string& name) {
    return std::lower_bound(map_.begin(), map_.end(), name,
                            [](const auto& entry, const std::string& key) { return entry.first < key; });
  }

  const Binding* find(const std::string& name) const {
    auto it = std::lower_bound(map_.begin(), map_.end(), name,
                               [](const auto& entry, const std::string& key) { return entry.first < key; });
    return it != map_.end() && it->first == name ? &it->second : nullptr;
  }

  static bool is_identity(const std::string& name, const Term& canonical) {
    return canonical.is_variable() && canonical.name() == name;
  }

  // Range terms carry no loose indices, so no shifting is needed under binders.
  // Unchanged subterms are returned as the same node.
  Term replace(const Term& t) const {
    if (!t.has_variables()) return t;
    switch (t.kind()) {
      case TermKind::Variable: {
        const Binding* b = find(t.name());
        return b == nullptr ? t : b->value;
      }
      case TermKind::Abstraction: {
        Term body = replace(t.body());
        if (body.same_node(t.body())) return t;
        return Term::abstraction(t.name(), t.binder_type(), std::move(body));
      }
      case TermKind::Application: {
        Term fn = replace(t.function());
        Term arg = replace(t.argument());
        if (fn.same_node(t.function()) && arg.same_node(t.argument())) return t;
        return Term::application(std::move(fn), std::move(arg));
      }
      default:
        return t;
    }
  }

  Map map_;
};

inline Substitution singleton(const Term& variable, const Term& value) {
  Substitution s;
  s.bind(variable, value);
  return s;
}

inline Term apply_subst(const Substitution& sigma, const Term& t) { return sigma.apply(t); }

/// True iff the normal forms are alpha-equivalent. Comparing terms of
/// different types is an ill-posed question and raises TypeError.
inline bool beta_eta_equal(const Term& a, const Term& b) {
  if (!(a.type() == b.type())) {
    throw TypeError("comparing a term of type " + to_string(a.type()) +
                    " with a term of type " + to_string(b.type()));
  }
  return normalize(a) == normalize(b);
}

}  // namespace solun
