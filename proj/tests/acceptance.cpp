// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any
// criterion fails.

#include <chrono>
#include <cstdio>
#include <iostream>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <tuple>
#include <vector>

#include "solun/cli.hpp"
#include "solun/oracle/generator.hpp"
#include "solun/oracle/robinson.hpp"
#include "support.hpp"

using namespace solun;

namespace {

constexpr std::uint64_t kLinearCorpus = 500;
constexpr std::uint64_t kMatchingCorpus = 150;
constexpr std::uint64_t kFirstOrderCorpus = 200;
constexpr double kTimeLimitSeconds = 60.0;

struct Verdict {
  bool pass = true;
  std::string detail;
  std::vector<std::string> problems;

  void fail(const std::string& why) {
    pass = false;
    if (problems.size() < 5) problems.push_back(why);
  }
};

int failures = 0;

void report(int n, const std::string& title, const Verdict& v) {
  std::cout << (v.pass ? "PASS" : "FAIL") << "  " << n << ". " << title;
  if (!v.detail.empty()) std::cout << " (" << v.detail << ")";
  std::cout << "\n";
  for (const auto& p : v.problems) std::cout << "        " << p << "\n";
  if (!v.pass) ++failures;
}

oracle::GeneratorConfig linear_config(std::uint64_t seed) {
  oracle::GeneratorConfig cfg;  // <=4 constants, <=4/<=3 variables, arity <=3, depth <=3, <=4 equations
  cfg.seed = seed;
  cfg.force_linear = true;
  return cfg;
}

oracle::GeneratorConfig matching_config(std::uint64_t seed) {
  oracle::GeneratorConfig cfg;
  cfg.seed = seed;
  cfg.force_matching = true;
  cfg.max_arity = 2;
  cfg.max_depth = 3;
  cfg.equation_count = 3;
  cfg.max_second_order_vars = 2;
  return cfg;
}

oracle::GeneratorConfig first_order_config(std::uint64_t seed) {
  oracle::GeneratorConfig cfg;
  cfg.seed = seed;
  cfg.force_first_order = true;
  return cfg;
}

bool is_branch_step(StepKind k) {
  return k == StepKind::BindFirstOrder || k == StepKind::Imitate || k == StepKind::Project;
}

std::string seed_tag(const char* corpus, std::uint64_t seed) {
  return std::string(corpus) + " seed " + std::to_string(seed);
}

// 1 and 2 (linear part) and 5 share the linear corpus run.
struct LinearRun {
  Verdict termination, soundness, superficial;
  std::size_t edges = 0, branch_edges = 0, emitted = 0, unifiers = 0;
};

LinearRun run_linear_corpus() {
  LinearRun out;
  auto start = std::chrono::steady_clock::now();
  for (std::uint64_t seed = 0; seed < kLinearCorpus; ++seed) {
    Problem p = oracle::generate_problem(linear_config(seed));
    SuperficialProblem flat = superficialize(p);
    if (!is_superficial(flat.problem)) out.superficial.fail(seed_tag("linear", seed) + ": output not superficial");
    if (!is_linear(flat.problem)) out.superficial.fail(seed_tag("linear", seed) + ": linearity lost");

    LinearSolution solved = solve_linear(flat.problem);
    for_each_edge(solved.tree.root, [&](const TreeNode& parent, const TreeNode& child) {
      ++out.edges;
      if (!(child.measure < parent.measure)) {
        out.termination.fail(seed_tag("linear", seed) + ": " + parent.id + " -> " + child.id + " " +
                             to_string(parent.measure) + " -> " + to_string(child.measure));
      }
      if (is_branch_step(child.step.kind)) {
        ++out.branch_edges;
        auto vw = [](const Measure& m) { return std::pair{m.v, m.w}; };
        if (!(vw(child.measure) < vw(parent.measure))) {
          out.termination.fail(seed_tag("linear", seed) + ": " + to_string(child.step) +
                               " does not decrease (v,w)");
        }
      }
    });

    auto is_original = [&](const std::string& n) { return p.variables.count(n) != 0; };
    for (const Success& s : solved.successes) {
      FinalizedResult r = finalize_node(s);
      Substitution inst = unifier_instance(r);
      ++out.emitted;
      if (!oracle::verify_solution(inst, flat.problem)) {
        out.soundness.fail(seed_tag("linear", seed) + ": node " + r.node_id + " instance does not verify");
      }
      if (!oracle::verify_solution(inst.restricted(is_original), p)) {
        out.superficial.fail(seed_tag("linear", seed) + ": node " + r.node_id +
                             " restricted to the input does not verify");
      }
      out.unifiers += r.empty() ? 1 : 0;
    }
  }
  double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (seconds >= kTimeLimitSeconds) out.termination.fail("corpus took " + std::to_string(seconds) + " s");
  std::ostringstream d;
  d.precision(2);
  d << std::fixed << kLinearCorpus << " problems, " << out.edges << " edges, " << out.branch_edges
    << " bind/imitate/project edges, " << seconds << " s";
  out.termination.detail = d.str();
  return out;
}

Verdict superficialization_on_unrestricted_corpus(Verdict v) {
  for (std::uint64_t seed = 0; seed < kLinearCorpus; ++seed) {
    oracle::GeneratorConfig cfg;
    cfg.seed = seed;
    Problem p = oracle::generate_problem(cfg);
    SuperficialProblem flat = superficialize(p);
    if (!is_superficial(flat.problem)) v.fail(seed_tag("unrestricted", seed) + ": output not superficial");
    if (is_linear(p) && !is_linear(flat.problem)) v.fail(seed_tag("unrestricted", seed) + ": linearity lost");
    if (flat.trace.size() > measure(p).s) v.fail(seed_tag("unrestricted", seed) + ": step bound exceeded");
  }
  return v;
}

struct GeneralRun {
  Verdict matching, first_order;
  std::size_t emitted = 0;
  Verdict soundness;
};

GeneralRun run_general_corpora() {
  GeneralRun out;
  std::size_t nonempty = 0;
  for (std::uint64_t seed = 0; seed < kMatchingCorpus; ++seed) {
    Problem p = oracle::generate_problem(matching_config(seed));
    testing::MatchingComparison cmp = testing::compare_matching(p);
    if (cmp.no_information) {
      out.matching.fail(seed_tag("matching", seed) + ": NoInformation");
      continue;
    }
    if (!cmp.agree) {
      out.matching.fail(seed_tag("matching", seed) + ": " + std::to_string(cmp.solver_ground) +
                        " ground solutions vs " + std::to_string(cmp.oracle_ground) + " enumerated");
    }
    nonempty += cmp.oracle_ground ? 1 : 0;
    GeneralResult r = general_solve(p);
    for (const Substitution& s : std::get<CompleteSet>(r).unifiers) {
      ++out.emitted;
      if (!oracle::verify_solution(s, p)) out.soundness.fail(seed_tag("matching", seed) + ": " + to_string(s));
    }
  }
  out.matching.detail = std::to_string(kMatchingCorpus) + " problems, " + std::to_string(nonempty) + " solvable";

  std::size_t unifiable = 0;
  for (std::uint64_t seed = 0; seed < kFirstOrderCorpus; ++seed) {
    Problem p = oracle::generate_problem(first_order_config(seed));
    GeneralResult r = general_solve(p);
    auto mgu = oracle::robinson_unify(p);
    if (std::holds_alternative<NoInformation>(r)) {
      out.first_order.fail(seed_tag("first-order", seed) + ": NoInformation");
      continue;
    }
    const auto& set = std::get<CompleteSet>(r).unifiers;
    for (const Substitution& s : set) {
      ++out.emitted;
      if (!oracle::verify_solution(s, p)) out.soundness.fail(seed_tag("first-order", seed) + ": " + to_string(s));
    }
    if (std::holds_alternative<oracle::RobinsonFailure>(mgu)) {
      if (!set.empty()) out.first_order.fail(seed_tag("first-order", seed) + ": oracle fails, solver succeeds");
      continue;
    }
    ++unifiable;
    if (set.size() != 1) {
      out.first_order.fail(seed_tag("first-order", seed) + ": " + std::to_string(set.size()) + " answers");
    } else if (!testing::equally_general(set[0], std::get<Substitution>(mgu), oracle::occurring_variables(p))) {
      out.first_order.fail(seed_tag("first-order", seed) + ": " + to_string(set[0]) + " vs " +
                           to_string(std::get<Substitution>(mgu)));
    }
  }
  out.first_order.detail =
      std::to_string(kFirstOrderCorpus) + " problems, " + std::to_string(unifiable) + " unifiable";
  return out;
}

Verdict worked_examples() {
  Verdict v;
  const std::string decls = "type i. const c : i. const d : i. const g : i -> i -> i. var y : i. var F : i -> i.";

  Problem two = parse_problem(decls + "eq F c = g c d.");
  std::set<std::string> oracle_two;
  for (const Term& t : oracle::enumerate_matchers(two.variable("F"), two, 2)) oracle_two.insert(to_string(t));
  if (oracle_two != std::set<std::string>{"\\z:i. g z d", "\\z:i. g c d"}) v.fail("enumerator disagrees on F c = g c d");
  auto solved = nlohmann::json::parse(cli::run_solve(print_problem(two)).output);
  std::set<std::string> got;
  for (const auto& s : solved["solutions"]) got.insert(s["F"].get<std::string>());
  if (solved["status"] != "complete_set" || solved["solutions"].size() != 2 || got != oracle_two) {
    v.fail("F c = g c d: " + solved["solutions"].dump());
  }

  Problem agree = parse_problem(decls + "eq F c = g c c. eq F d = g d d.");
  auto sets = oracle::enumerate_matcher_sets(agree, 2);
  if (sets.size() != 1 || to_string(sets[0]) != "{F := \\z:i. g z z}") v.fail("enumerator disagrees on F c = g c c, F d = g d d");
  GeneralResult r = general_solve(agree);
  if (!std::holds_alternative<CompleteSet>(r) || std::get<CompleteSet>(r).unifiers.size() != 1 ||
      to_string(std::get<CompleteSet>(r).unifiers[0]) != "{F := \\z:i. g z z}") {
    v.fail("F c = g c c, F d = g d d: wrong answer set");
  }

  Problem flex = parse_problem(decls + "eq F y = g y y.");
  if (!std::holds_alternative<NoInformation>(general_solve(flex))) v.fail("F y = g y y: expected NoInformation");
  v.detail = "3 examples";
  return v;
}

Verdict determinism() {
  Verdict v;
  std::size_t compared = 0;
  cli::SolveFlags seq, par;
  par.parallel = true;
  seq.tree = par.tree = TreeFormat::Json;
  // Large trees serialize to hundreds of megabytes, so runs are compared by digest.
  auto digest = [](const cli::CommandResult& r) {
    std::hash<std::string> h;
    return std::tuple{r.exit_code, r.output.size(), h(r.output), r.tree.value_or("").size(),
                      h(r.tree.value_or(""))};
  };
  auto same = [&](const cli::CommandResult& a, const cli::CommandResult& b, const std::string& tag) {
    ++compared;
    if (digest(a) != digest(b)) v.fail(tag + ": outputs differ");
  };
  for (std::uint64_t seed = 0; seed < kLinearCorpus; ++seed) {
    std::string text = print_problem(oracle::generate_problem(linear_config(seed)));
    auto first = digest(cli::run_solve(text, seq));
    auto check = [&](const cli::CommandResult& r, const std::string& tag) {
      ++compared;
      if (digest(r) != first) v.fail(tag + ": outputs differ");
    };
    check(cli::run_solve(text, seq), seed_tag("linear", seed) + " repeated");
    check(cli::run_solve(text, par), seed_tag("linear", seed) + " parallel");
  }
  cli::SolveFlags plain, plain_par;
  plain_par.parallel = true;
  for (std::uint64_t seed = 0; seed < kMatchingCorpus; ++seed) {
    std::string text = print_problem(oracle::generate_problem(matching_config(seed)));
    same(cli::run_general(text, plain), cli::run_general(text, plain_par), seed_tag("matching", seed));
  }
  for (std::uint64_t seed = 0; seed < kFirstOrderCorpus; ++seed) {
    std::string text = print_problem(oracle::generate_problem(first_order_config(seed)));
    same(cli::run_general(text, plain), cli::run_general(text, plain_par), seed_tag("first-order", seed));
  }
  v.detail = std::to_string(compared) + " output pairs";
  return v;
}

}  // namespace

int main() {
  try {
    LinearRun linear = run_linear_corpus();
    GeneralRun general = run_general_corpora();

    Verdict soundness = linear.soundness;
    for (const auto& p : general.soundness.problems) soundness.fail(p);
    if (!general.soundness.pass) soundness.pass = false;
    soundness.detail = std::to_string(linear.emitted + general.emitted) + " emitted results";

    Verdict superficial = superficialization_on_unrestricted_corpus(linear.superficial);
    superficial.detail = std::to_string(2 * kLinearCorpus) + " problems, " +
                         std::to_string(linear.emitted) + " solutions restricted";

    report(1, "termination and measure decrease", linear.termination);
    report(2, "soundness of emitted results", soundness);
    report(3, "matching conservativity", general.matching);
    report(4, "first-order conservativity", general.first_order);
    report(5, "superficialization contract", superficial);
    report(6, "worked examples", worked_examples());
    report(7, "determinism across runs and parallelism", determinism());
  } catch (const std::exception& e) {
    std::cout << "FAIL  acceptance run aborted: " << e.what() << "\n";
    return 1;
  }
  return failures == 0 ? 0 : 1;
}
