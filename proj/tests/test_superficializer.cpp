#include <gtest/gtest.h>

#include "solun/oracle/generator.hpp"
#include "support.hpp"

namespace solun {
namespace {

using testing::sig;

TEST(Superficialize, NestedArgument) {
  Problem p = sig("type i. const c : i. const d : i. const g : i -> i. var F : i -> i. eq F (g c) = d.");
  SuperficialProblem out = superficialize(p);
  ASSERT_EQ(out.problem.equations.size(), 3u);
  EXPECT_EQ(to_string(out.problem.equations[0]), "F #x1 = d");
  EXPECT_EQ(to_string(out.problem.equations[1]), "#x1 = g #x2");
  EXPECT_EQ(to_string(out.problem.equations[2]), "#x2 = c");
  ASSERT_EQ(out.trace.size(), 2u);
  EXPECT_EQ(out.trace[0].variable, "#x1");
  EXPECT_EQ(out.trace[0].source_equation, 0u);
  EXPECT_EQ(out.trace[1].source_equation, 1u);
  EXPECT_TRUE(out.problem.variables.count("#x1"));
}

TEST(Superficialize, VariableArgumentsStay) {
  Problem p = sig("type i. const c : i. var x : i. var F : i -> i. eq F x = c.");
  SuperficialProblem out = superficialize(p);
  EXPECT_TRUE(out.trace.empty());
  EXPECT_EQ(out.problem.equations.size(), 1u);
}

TEST(Superficialize, FreshNamesAvoidInputNames) {
  Problem p = sig("type i. const c : i. var F : i -> i.");
  Type i = Type::base("i");
  p.variables.emplace("#x1", i);
  p.equations.push_back({Term::application(p.variable("F"), p.constant("c")), Term::variable("#x1", i)});
  SuperficialProblem out = superficialize(p);
  ASSERT_EQ(out.trace.size(), 1u);
  EXPECT_NE(out.trace[0].variable, "#x1");
}

// Properties over generated problems.

class SuperficializeProperties : public ::testing::TestWithParam<bool> {};

TEST_P(SuperficializeProperties, Contract) {
  for (std::uint64_t seed = 0; seed < 400; ++seed) {
    oracle::GeneratorConfig cfg;
    cfg.seed = seed;
    cfg.force_linear = GetParam();
    Problem p = oracle::generate_problem(cfg);
    SuperficialProblem out = superficialize(p);
    const Problem& q = out.problem;
    SCOPED_TRACE(print_problem(p));

    EXPECT_TRUE(is_superficial(q));
    EXPECT_EQ(is_linear(q), is_linear(p));
    EXPECT_LE(out.trace.size(), measure(p).s);
    EXPECT_FALSE(validate_problem(q).has_value());
    for (const Equation& e : q.equations) {
      for (const Term* side : {&e.lhs, &e.rhs}) {
        for (const Term& a : spine_of(*side).args) EXPECT_TRUE(a.is_variable()) << to_string(e);
      }
    }
    // Undoing the flattening gives back the input, plus trivial equations.
    Substitution back = replay(out.trace);
    for (std::size_t k = 0; k < q.equations.size(); ++k) {
      Equation e = apply_subst(back, q.equations[k]);
      if (k < p.equations.size()) {
        EXPECT_EQ(e.lhs, p.equations[k].lhs);
        EXPECT_EQ(e.rhs, p.equations[k].rhs);
      } else {
        EXPECT_EQ(e.lhs, e.rhs);
      }
    }
    // A solution of the input extends to the output by the replay.
    for (const auto& step : out.trace) EXPECT_TRUE(q.variables.count(step.variable));
  }
}

INSTANTIATE_TEST_SUITE_P(Linear, SuperficializeProperties, ::testing::Values(true, false));

}  // namespace
}  // namespace solun
