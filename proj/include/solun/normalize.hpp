#pragma once

#include <cstddef>
#include <vector>

#include "solun/term.hpp"

namespace solun {

namespace detail {

/// Add `delta` to every bound index >= cutoff.
inline Term shift(const Term& t, std::size_t delta, std::size_t cutoff = 0) {
  if (delta == 0 || t.loose() <= cutoff) return t;
  switch (t.kind()) {
    case TermKind::Bound:
      return Term::bound(t.index() + delta, t.type());
    case TermKind::Abstraction:
      return Term::abstraction(t.name(), t.binder_type(),
                               shift(t.body(), delta, cutoff + 1));
    case TermKind::Application:
      return Term::application(shift(t.function(), delta, cutoff),
                               shift(t.argument(), delta, cutoff));
    default:
      return t;
  }
}

/// Substitute `value` for bound index `depth` in `body`, lowering the
/// indices above it. `value` is expressed outside the removed binder.
inline Term instantiate(const Term& body, const Term& value, std::size_t depth = 0) {
  if (body.loose() <= depth) return body;
  switch (body.kind()) {
    case TermKind::Bound:
      if (body.index() == depth) return shift(value, depth);
      return Term::bound(body.index() - 1, body.type());
    case TermKind::Abstraction:
      return Term::abstraction(body.name(), body.binder_type(),
                               instantiate(body.body(), value, depth + 1));
    case TermKind::Application:
      return Term::application(instantiate(body.function(), value, depth),
                               instantiate(body.argument(), value, depth));
    default:
      return body;
  }
}

inline Term beta_normal(const Term& t) {
  if (t.canonical()) return t;
  if (t.is_abstraction()) {
    return Term::abstraction(t.name(), t.binder_type(), beta_normal(t.body()));
  }
  if (!t.is_application()) return t;
  Spine sp = spine_of(t);
  if (sp.head.is_abstraction()) {
    Term reduced = instantiate(sp.head.body(), sp.args.front());
    return beta_normal(
        apply_all(std::move(reduced), std::span<const Term>(sp.args).subspan(1)));
  }
  for (Term& a : sp.args) a = beta_normal(a);
  return apply_all(sp.head, sp.args);
}

/// Eta-expand a beta-normal term to long form.
inline Term eta_long(const Term& t) {
  if (t.canonical()) return t;
  if (t.is_abstraction()) {
    return Term::abstraction(t.name(), t.binder_type(), eta_long(t.body()));
  }
  if (t.type().is_arrow()) {
    const Type& dom = t.type().domain();
    return Term::abstraction(
        "z", dom, eta_long(Term::application(shift(t, 1), Term::bound(0, dom))));
  }
  Spine sp = spine_of(t);
  for (Term& a : sp.args) a = eta_long(a);
  return apply_all(sp.head, sp.args);
}

}  // namespace detail

/// Beta-normal eta-long form. Idempotent and type preserving.
inline Term normalize(const Term& t) {
  if (t.canonical()) return t;
  return detail::eta_long(detail::beta_normal(t));
}

}  // namespace solun
