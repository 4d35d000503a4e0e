#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <future>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "solun/error.hpp"
#include "solun/fresh.hpp"
#include "solun/problem.hpp"

namespace solun {

enum class StepKind { Root, Decompose, Delete, BindFirstOrder, Imitate, Project };

/// Edge label of the unification tree. Together with the parent problem it
/// determines the child problem.
struct StepLabel {
  StepKind kind = StepKind::Root;
  std::size_t equation = 0;
  std::string variable;   // bound, imitated or projected variable
  std::string detail;     // bound term text or imitated constant
  std::size_t argument = 0;  // 1-based projection index
};

inline std::string to_string(const StepLabel& s) {
  switch (s.kind) {
    case StepKind::Root: return "Root";
    case StepKind::Decompose: return "Decompose(" + std::to_string(s.equation) + ")";
    case StepKind::Delete: return "Delete(" + std::to_string(s.equation) + ")";
    case StepKind::BindFirstOrder: return "Bind(" + s.variable + " := " + s.detail + ")";
    case StepKind::Imitate: return "Imitate(" + s.variable + "," + s.detail + ")";
    case StepKind::Project:
      return "Project(" + s.variable + "," + std::to_string(s.argument) + ")";
  }
  return {};
}

enum class FailureCause { HeadClash, OccurCheck, NoBranchApplicable };

inline const char* to_string(FailureCause c) {
  switch (c) {
    case FailureCause::HeadClash: return "HeadClash";
    case FailureCause::OccurCheck: return "OccurCheck";
    case FailureCause::NoBranchApplicable: return "NoBranchApplicable";
  }
  return "";
}

/// Step labels from the root, shared between a node and its descendants.
class StepPath {
 public:
  StepPath extended(StepLabel label) const {
    StepPath out;
    out.last_ = std::make_shared<const Link>(Link{std::move(label), last_, size() + 1});
    return out;
  }

  bool empty() const { return last_ == nullptr; }
  std::size_t size() const { return last_ ? last_->length : 0; }
  const StepLabel& back() const { return last_->label; }

  std::vector<StepLabel> labels() const {
    std::vector<StepLabel> out(size());
    for (const Link* l = last_.get(); l != nullptr; l = l->previous.get()) out[l->length - 1] = l->label;
    return out;
  }

 private:
  struct Link {
    StepLabel label;
    std::shared_ptr<const Link> previous;
    std::size_t length;
  };
  std::shared_ptr<const Link> last_;
};

struct SearchNode {
  Problem problem;
  Substitution accumulated;
  StepPath path;
  Measure measure;
  std::size_t next_fresh = 1;
};

struct Failure {
  FailureCause cause;
  std::size_t equation = 0;
};

/// A success leaf: a pre-unifier plus the flex-flex equations left over.
struct Success {
  std::string node_id;
  Substitution pre_unifier;
  std::vector<Equation> residual;
};

using Outcome = std::variant<Failure, Success>;

struct SolverOptions {
  /// Explore sibling subtrees on separate threads near the root.
  bool parallel = false;
  std::size_t parallel_depth = 3;
  /// Assert superficiality and linearity at every node.
  bool check_invariants = false;
};

namespace detail {

inline SearchNode make_child(const SearchNode& parent, Problem problem,
                             Substitution accumulated, StepLabel label,
                             std::size_t next_fresh) {
  for (Equation& e : problem.equations) e = orient(std::move(e));
  SearchNode child{std::move(problem), std::move(accumulated),
                   parent.path.extended(std::move(label)), {}, next_fresh};
  child.measure = measure(child.problem);
  return child;
}

inline bool all_variables_first_order(const Term& t) {
  bool ok = true;
  for_each_symbol(t, [&](const Term& s) { ok = ok && (!s.is_variable() || s.type().is_base()); });
  return ok;
}

/// x = b with x first-order and every variable of b first-order. Returns
/// the (variable, term) pair to bind, oriented per `introduced_later`.
inline std::optional<std::pair<Term, Term>> bindable(const Equation& e) {
  bool lv = is_first_order_variable(e.lhs) && all_variables_first_order(e.rhs);
  bool rv = is_first_order_variable(e.rhs) && all_variables_first_order(e.lhs);
  if (lv && rv) {
    if (introduced_later(e.rhs.name(), e.lhs.name())) return std::pair{e.rhs, e.lhs};
    return std::pair{e.lhs, e.rhs};
  }
  if (lv) return std::pair{e.lhs, e.rhs};
  if (rv) return std::pair{e.rhs, e.lhs};
  return std::nullopt;
}

inline Problem substituted(const Problem& p, const Substitution& sigma) {
  Problem out = p;
  for (Equation& e : out.equations) e = apply_subst(sigma, e);
  return out;
}

}  // namespace detail

/// The root node of the search for a superficial linear problem.
inline SearchNode root_node(const Problem& p) {
  SearchNode root{p, {}, {}, {}, fresh_names_for(p).next()};
  for (Equation& e : root.problem.equations) e = orient(std::move(e));
  root.measure = measure(root.problem);
  return root;
}

struct AlreadySimplified {};
using SimplifyStep = std::variant<AlreadySimplified, SearchNode, Failure>;

/// One deterministic simplification step on the leftmost applicable
/// equation: delete a trivial equation, decompose a rigid-rigid equation
/// (failing on a head clash), or bind a first-order variable (failing on
/// the occur check).
inline SimplifyStep simplify_step(const SearchNode& node) {
  const auto& eqs = node.problem.equations;
  for (std::size_t i = 0; i < eqs.size(); ++i) {
    const Equation& e = eqs[i];
    if (e.lhs == e.rhs) {
      Problem next = node.problem;
      next.equations.erase(next.equations.begin() + static_cast<std::ptrdiff_t>(i));
      return detail::make_child(node, std::move(next), node.accumulated,
                                {StepKind::Delete, i, {}, {}, 0}, node.next_fresh);
    }
    if (is_rigid(e.lhs) && is_rigid(e.rhs)) {
      Spine l = spine_of(e.lhs), r = spine_of(e.rhs);
      if (l.head.name() != r.head.name() || l.args.size() != r.args.size()) {
        return Failure{FailureCause::HeadClash, i};
      }
      Problem next = node.problem;
      std::vector<Equation> parts;
      for (std::size_t k = 0; k < l.args.size(); ++k) parts.push_back({l.args[k], r.args[k]});
      auto at = next.equations.erase(next.equations.begin() + static_cast<std::ptrdiff_t>(i));
      next.equations.insert(at, parts.begin(), parts.end());
      return detail::make_child(node, std::move(next), node.accumulated,
                                {StepKind::Decompose, i, {}, {}, 0}, node.next_fresh);
    }
    if (auto b = detail::bindable(e)) {
      const auto& [x, value] = *b;
      if (occurs_free(x.name(), value)) return Failure{FailureCause::OccurCheck, i};
      Substitution sigma = singleton(x, value);
      Problem next = node.problem;
      next.equations.erase(next.equations.begin() + static_cast<std::ptrdiff_t>(i));
      next = detail::substituted(next, sigma);
      return detail::make_child(node, std::move(next), compose(sigma, node.accumulated),
                                {StepKind::BindFirstOrder, i, x.name(), to_string(value), 0},
                                node.next_fresh);
    }
  }
  return AlreadySimplified{};
}

/// Simplification to fixpoint.
inline std::variant<SearchNode, Failure> simplify_node(SearchNode node) {
  for (;;) {
    SimplifyStep step = simplify_step(node);
    if (auto* f = std::get_if<Failure>(&step)) return *f;
    if (auto* child = std::get_if<SearchNode>(&step)) {
      node = std::move(*child);
      continue;
    }
    return node;
  }
}

/// Index of the leftmost flex-rigid equation whose flexible head is a
/// second-order variable (equations are kept oriented, rigid side right).
inline std::optional<std::size_t> branching_equation(const Problem& p) {
  for (std::size_t i = 0; i < p.equations.size(); ++i) {
    const Equation& e = p.equations[i];
    if (is_second_order_variable(head_of(e.lhs)) && is_rigid(e.rhs)) return i;
  }
  return std::nullopt;
}

/// Projection and imitation children of a simplified node, in that order,
/// before simplification. Empty when no flex-rigid equation has a
/// second-order head.
inline std::vector<SearchNode> branch_children(const SearchNode& node) {
  std::vector<SearchNode> children;
  auto idx = branching_equation(node.problem);
  if (!idx) return children;
  const Equation& eq = node.problem.equations[*idx];
  Spine flex = spine_of(eq.lhs);
  Spine rigid = spine_of(eq.rhs);
  const Term& f = flex.head;
  std::vector<Type> binder_types = f.type().arguments();
  const Type& result = f.type().result();
  const std::size_t n = binder_types.size();

  auto close = [&](Term body) {
    for (std::size_t j = n; j-- > 0;) body = Term::abstraction("z", binder_types[j], std::move(body));
    return body;
  };
  auto bound_arg = [&](std::size_t j) { return Term::bound(n - 1 - j, binder_types[j]); };

  for (std::size_t k = 0; k < n; ++k) {
    if (!(binder_types[k] == result)) continue;
    Substitution sigma = singleton(f, close(bound_arg(k)));
    children.push_back(detail::make_child(
        node, detail::substituted(node.problem, sigma), compose(sigma, node.accumulated),
        {StepKind::Project, *idx, f.name(), {}, k + 1}, node.next_fresh));
  }

  // Imitation: f := \z1..zn. c (h1 z1..zn) ... (hp z1..zn), and the
  // equation is replaced by (hj a1..an) = bj.
  FreshNames fresh(node.next_fresh);
  Problem next = node.problem;
  std::vector<Term> pieces;
  std::vector<Equation> parts;
  for (std::size_t j = 0; j < rigid.args.size(); ++j) {
    Term h = Term::variable(fresh.make("h"), Type::function(binder_types, rigid.args[j].type()));
    next.variables.emplace(h.name(), h.type());
    std::vector<Term> zs;
    for (std::size_t k = 0; k < n; ++k) zs.push_back(bound_arg(k));
    pieces.push_back(apply_all(h, zs));
    parts.push_back({apply_all(h, flex.args), rigid.args[j]});
  }
  Substitution sigma = singleton(f, close(apply_all(rigid.head, pieces)));
  next.equations.erase(next.equations.begin() + static_cast<std::ptrdiff_t>(*idx));
  next = detail::substituted(next, sigma);
  next.equations.insert(next.equations.begin() + static_cast<std::ptrdiff_t>(*idx),
                        parts.begin(), parts.end());
  children.push_back(detail::make_child(node, std::move(next), compose(sigma, node.accumulated),
                                        {StepKind::Imitate, *idx, f.name(), rigid.head.name(), 0},
                                        fresh.next()));
  return children;
}

struct ExpandedChild {
  StepLabel label;
  std::variant<SearchNode, Failure> result;
};

/// Expansion of a simplified node: simplified children, or the success
/// outcome when no branching equation remains.
inline std::variant<std::vector<ExpandedChild>, Success> expand_node(const SearchNode& node) {
  std::vector<SearchNode> raw = branch_children(node);
  if (raw.empty()) return Success{{}, node.accumulated, node.problem.equations};
  std::vector<ExpandedChild> out;
  for (SearchNode& c : raw) {
    StepLabel label = c.path.back();
    out.push_back({std::move(label), simplify_node(std::move(c))});
  }
  return out;
}

// ---------------------------------------------------------------------------
// The unification tree

enum class NodeStatus { Inner, Success, Failure };

inline const char* to_string(NodeStatus s) {
  switch (s) {
    case NodeStatus::Inner: return "inner";
    case NodeStatus::Success: return "success";
    case NodeStatus::Failure: return "failure";
  }
  return "";
}

/// Every simplification step and every branch is a node; ids are paths of
/// child indices from the root ("0", "0.1", "0.1.0", ...).
struct TreeNode {
  std::string id;
  StepLabel step;
  std::vector<Equation> equations;
  Measure measure;
  NodeStatus status = NodeStatus::Inner;
  std::optional<FailureCause> cause;
  std::vector<TreeNode> children;
};

struct SearchTree {
  TreeNode root;
  std::size_t node_count = 0;
};

inline void for_each_node(const TreeNode& n, const std::function<void(const TreeNode&)>& visit) {
  visit(n);
  for (const TreeNode& c : n.children) for_each_node(c, visit);
}

inline void for_each_edge(
    const TreeNode& n, const std::function<void(const TreeNode&, const TreeNode&)>& visit) {
  for (const TreeNode& c : n.children) {
    visit(n, c);
    for_each_edge(c, visit);
  }
}

namespace detail {

inline void check_node_invariants(const SearchNode& node) {
  if (!is_superficial(node.problem) || !is_linear(node.problem)) {
    throw InternalError("search node lost superficiality or linearity: " +
                        print_problem(node.problem));
  }
}

/// Successes are appended to `found` in pre-order.
inline TreeNode explore(SearchNode node, std::string id, std::size_t branch_depth,
                        const SolverOptions& options, std::vector<Success>& found) {
  if (options.check_invariants) check_node_invariants(node);
  TreeNode tree;
  tree.id = std::move(id);
  tree.step = node.path.empty() ? StepLabel{} : node.path.back();
  tree.equations = node.problem.equations;
  tree.measure = node.measure;

  SimplifyStep step = simplify_step(node);
  if (auto* f = std::get_if<Failure>(&step)) {
    tree.status = NodeStatus::Failure;
    tree.cause = f->cause;
    return tree;
  }
  if (auto* child = std::get_if<SearchNode>(&step)) {
    tree.children.push_back(
        explore(std::move(*child), tree.id + ".0", branch_depth, options, found));
    return tree;
  }

  std::vector<SearchNode> children = branch_children(node);
  if (children.empty()) {
    tree.status = NodeStatus::Success;
    found.push_back(Success{tree.id, std::move(node.accumulated), std::move(node.problem.equations)});
    return tree;
  }
  if (options.parallel && branch_depth < options.parallel_depth) {
    std::vector<std::vector<Success>> partial(children.size());
    std::vector<std::future<TreeNode>> pending;
    for (std::size_t k = 0; k < children.size(); ++k) {
      pending.push_back(std::async(std::launch::async, explore, std::move(children[k]),
                                   tree.id + "." + std::to_string(k), branch_depth + 1,
                                   std::cref(options), std::ref(partial[k])));
    }
    for (std::size_t k = 0; k < children.size(); ++k) {
      tree.children.push_back(pending[k].get());
      for (Success& s : partial[k]) found.push_back(std::move(s));
    }
  } else {
    for (std::size_t k = 0; k < children.size(); ++k) {
      tree.children.push_back(explore(std::move(children[k]), tree.id + "." + std::to_string(k),
                                      branch_depth + 1, options, found));
    }
  }
  return tree;
}

}  // namespace detail

struct LinearSolution {
  SearchTree tree;
  /// Success leaves in canonical (pre-order, left to right) path order.
  std::vector<Success> successes;
};

/// Explores the complete, finite unification tree of a superficial linear
/// problem. The pre-unifiers of the success leaves form a complete set.
inline LinearSolution solve_linear(const Problem& p, const SolverOptions& options = {}) {
  require_valid(p);
  if (!is_superficial(p)) {
    throw InputError(ErrorKind::NotSuperficial,
                     "problem is not superficial; superficialize it first");
  }
  if (!is_linear(p)) {
    throw InputError(ErrorKind::NotLinear,
                     "a second-order variable occurs more than once; use the general solver");
  }
  LinearSolution out;
  out.tree.root = detail::explore(root_node(p), "0", 0, options, out.successes);
  for_each_node(out.tree.root, [&](const TreeNode&) { ++out.tree.node_count; });
  return out;
}

// ---------------------------------------------------------------------------
// Success-node finalization

struct FinalizedResult {
  std::string node_id;
  Substitution unifier;
  /// Empty: `unifier` is a unifier. Otherwise a pre-unifier constrained by
  /// these flex-flex equations.
  std::vector<Equation> residual;

  bool empty() const { return residual.empty(); }
};

/// Eliminates residual equations x = t with x first-order and not free in t
/// by substituting t for x. Equations x = t with x free in t are left.
inline FinalizedResult finalize_node(const Success& success) {
  FinalizedResult out{success.node_id, success.pre_unifier, success.residual};
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i < out.residual.size(); ++i) {
      const Equation& e = out.residual[i];
      std::optional<std::pair<Term, Term>> pick;
      if (is_first_order_variable(e.lhs) && !occurs_free(e.lhs.name(), e.rhs)) pick = {e.lhs, e.rhs};
      else if (is_first_order_variable(e.rhs) && !occurs_free(e.rhs.name(), e.lhs)) pick = {e.rhs, e.lhs};
      if (!pick) continue;
      Substitution sigma = singleton(pick->first, pick->second);
      out.residual.erase(out.residual.begin() + static_cast<std::ptrdiff_t>(i));
      for (Equation& r : out.residual) r = apply_subst(sigma, r);
      std::erase_if(out.residual, [](const Equation& r) { return r.lhs == r.rhs; });
      out.unifier = compose(sigma, out.unifier);
      changed = true;
      break;
    }
  }
  return out;
}

/// A unifier instance of a finalized result. For a non-empty residual every
/// second-order head in it is mapped to a constant function returning one
/// fresh variable per sort, which turns each flex-flex equation into
/// equations between first-order variables; those are then solved.
inline Substitution unifier_instance(const FinalizedResult& r) {
  if (r.empty()) return r.unifier;
  FreshNames fresh;
  for (const auto& [name, b] : r.unifier) {
    fresh.reserve(name);
    for_each_symbol(b.value, [&](const Term& s) { fresh.reserve(s.name()); });
  }
  for (const Equation& e : r.residual) {
    for (const Term* side : {&e.lhs, &e.rhs}) {
      for_each_symbol(*side, [&](const Term& s) { fresh.reserve(s.name()); });
    }
  }

  std::map<std::string, Term> sort_witness;
  Substitution heads;
  for (const Equation& e : r.residual) {
    for (const Term* side : {&e.lhs, &e.rhs}) {
      for_each_symbol(*side, [&](const Term& s) {
        if (!is_second_order_variable(s) || heads.binds(s.name())) return;
        const Type& result = s.type().result();
        auto it = sort_witness.find(result.name());
        if (it == sort_witness.end()) {
          it = sort_witness.emplace(result.name(), Term::variable(fresh.make("y"), result)).first;
        }
        Term body = it->second;
        auto args = s.type().arguments();
        for (std::size_t j = args.size(); j-- > 0;) body = Term::abstraction("z", args[j], body);
        heads.bind(s, body);
      });
    }
  }

  Substitution sigma = heads;
  std::vector<Equation> pending;
  for (const Equation& e : r.residual) pending.push_back(apply_subst(heads, e));
  while (!pending.empty()) {
    Equation e = apply_subst(sigma, pending.back());
    pending.pop_back();
    if (e.lhs == e.rhs) continue;
    const Term* x = is_first_order_variable(e.lhs) ? &e.lhs : is_first_order_variable(e.rhs) ? &e.rhs : nullptr;
    if (x == nullptr) throw InternalError("residual instance left a non-variable equation " + to_string(e));
    const Term& other = x == &e.lhs ? e.rhs : e.lhs;
    if (occurs_free(x->name(), other)) throw InternalError("residual instance failed the occur check");
    sigma = compose(singleton(*x, other), sigma);
  }
  return compose(sigma, r.unifier);
}

}  // namespace solun
