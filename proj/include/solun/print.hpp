#pragma once

#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "solun/substitution.hpp"
#include "solun/term.hpp"

namespace solun {

namespace detail {

// Binder names are chosen at print time: a binder never reuses a free
// symbol name of the printed term nor the name of an enclosing binder.
class TermPrinter {
 public:
  explicit TermPrinter(const Term& root) {
    for_each_symbol(root, [&](const Term& s) { avoid_.insert(s.name()); });
  }

  std::string print(const Term& t, int prec = 0) {
    switch (t.kind()) {
      case TermKind::Variable:
      case TermKind::Constant:
        return t.name();
      case TermKind::Bound:
        if (t.index() < binders_.size()) return binders_[binders_.size() - 1 - t.index()];
        return "^" + std::to_string(t.index());
      case TermKind::Abstraction: {
        std::string name = choose(t.name());
        binders_.push_back(name);
        std::string out = "\\" + name + ":" + type_text(t.binder_type()) + ". " +
                          print(t.body(), 0);
        binders_.pop_back();
        return prec > 0 ? "(" + out + ")" : out;
      }
      case TermKind::Application: {
        Spine sp = spine_of(t);
        std::string out = print(sp.head, 1);
        for (const Term& a : sp.args) out += " " + print(a, 2);
        return prec == 2 ? "(" + out + ")" : out;
      }
    }
    return {};
  }

 private:
  static std::string type_text(const Type& t) {
    return t.is_arrow() ? "(" + to_string(t) + ")" : to_string(t);
  }

  std::string choose(const std::string& hint) {
    std::string base = hint.empty() ? "z" : hint;
    std::string candidate = base;
    for (std::size_t i = 1; taken(candidate); ++i) candidate = base + std::to_string(i);
    return candidate;
  }

  bool taken(const std::string& name) const {
    return avoid_.count(name) != 0 ||
           std::find(binders_.begin(), binders_.end(), name) != binders_.end();
  }

  std::set<std::string> avoid_;
  std::vector<std::string> binders_;
};

}  // namespace detail

inline std::string to_string(const Term& t) { return detail::TermPrinter(t).print(t); }

inline std::string to_string(const Substitution& s) {
  std::string out = "{";
  bool first = true;
  for (const auto& [name, b] : s) {
    if (!first) out += ", ";
    first = false;
    out += name + " := " + to_string(b.value);
  }
  return out + "}";
}

}  // namespace solun
