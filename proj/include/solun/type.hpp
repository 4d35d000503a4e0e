#pragma once

#include <algorithm>
#include <memory>
#include <string>
#include <vector>

#include "solun/error.hpp"

namespace solun {

/// Simple type: a base sort or an arrow. Immutable and cheap to copy.
class Type {
 public:
  static Type base(std::string name) {
    auto node = std::make_shared<Node>();
    node->name = std::move(name);
    return Type(std::move(node));
  }

  static Type arrow(Type domain, Type codomain) {
    auto node = std::make_shared<Node>();
    node->domain = std::make_shared<Type>(std::move(domain));
    node->codomain = std::make_shared<Type>(std::move(codomain));
    return Type(std::move(node));
  }

  /// T1 -> ... -> Tn -> result
  static Type function(const std::vector<Type>& arguments, Type result) {
    for (auto it = arguments.rbegin(); it != arguments.rend(); ++it) {
      result = arrow(*it, std::move(result));
    }
    return result;
  }

  bool is_base() const { return node_->domain == nullptr; }
  bool is_arrow() const { return !is_base(); }

  const std::string& name() const {
    if (!is_base()) throw TypeError("name() on arrow type");
    return node_->name;
  }
  const Type& domain() const {
    if (is_base()) throw TypeError("domain() on base type");
    return *node_->domain;
  }
  const Type& codomain() const {
    if (is_base()) throw TypeError("codomain() on base type");
    return *node_->codomain;
  }

  std::vector<Type> arguments() const {
    std::vector<Type> out;
    const Type* t = this;
    while (t->is_arrow()) {
      out.push_back(t->domain());
      t = &t->codomain();
    }
    return out;
  }

  const Type& result() const {
    const Type* t = this;
    while (t->is_arrow()) t = &t->codomain();
    return *t;
  }

  friend bool operator==(const Type& a, const Type& b) {
    if (a.node_ == b.node_) return true;
    if (a.is_base() != b.is_base()) return false;
    if (a.is_base()) return a.node_->name == b.node_->name;
    return a.domain() == b.domain() && a.codomain() == b.codomain();
  }

 private:
  struct Node {
    std::string name;
    std::shared_ptr<const Type> domain;
    std::shared_ptr<const Type> codomain;
  };

  explicit Type(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;
};

/// order(base) = 1, order(T1 -> ... -> Tn -> b) = 1 + max order(Ti).
inline unsigned order_of(const Type& t) {
  if (t.is_base()) return 1;
  unsigned highest = 0;
  for (const Type& arg : t.arguments()) highest = std::max(highest, order_of(arg));
  return highest + 1;
}

inline std::string to_string(const Type& t) {
  if (t.is_base()) return t.name();
  std::string dom = to_string(t.domain());
  if (t.domain().is_arrow()) dom = "(" + dom + ")";
  return dom + " -> " + to_string(t.codomain());
}

}  // namespace solun
