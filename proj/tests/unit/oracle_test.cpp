#include <gtest/gtest.h>

#include "logdup/error.hpp"
#include "logdup/fingerprint.hpp"
#include "logdup/normalize.hpp"
#include "logdup/oracle.hpp"

using namespace logdup;

namespace {

Scc normal_scc(const char *text) { return build_sccs(normalize_program(parse_program(text))).back(); }

const char *kAppend = "append([],L,L).\nappend([X|Xs],Y,[X|Zs]) :- append(Xs,Y,Zs).\n";

} // namespace

TEST(Oracle, WorkedExample) {
  EXPECT_EQ(brute_force_commonality(parse_goal("p(a,f(A)), q(A,B)"), parse_goal("q(Y,Z), p(f(X),Y)")),
            5u);
}

TEST(Oracle, SelfAndSingleVariable) {
  Goal q = parse_goal("X = [A|As], As = [B|Bs], p(A,B)");
  EXPECT_EQ(brute_force_commonality(q, q), total_nodes(q));
  EXPECT_EQ(brute_force_commonality(parse_goal("p(X)"), parse_goal("p(Y)")), 2u);
  EXPECT_EQ(brute_force_commonality(Goal{}, Goal{}), 0u);
}

TEST(Oracle, AgreesOnEqualPrintPair) {
  EXPECT_EQ(brute_force_commonality(parse_goal("X = f(Y), Y = f(Z)"), parse_goal("A = f(B), C = f(B)")),
            8u);
}

TEST(Oracle, CapsAndShapeEnforced) {
  EXPECT_THROW(brute_force_commonality(parse_goal("p(X)"), parse_goal("q(X)")), ContractViolation);
  Goal six = parse_goal("p(A), p(B), p(C), p(D), p(E), p(F)");
  EXPECT_THROW(brute_force_commonality(six, six), ContractViolation);
  OracleCaps tiny;
  tiny.max_candidates = 10;
  Goal g = parse_goal("p(A,B), p(B,C), p(C,A)");
  EXPECT_THROW(brute_force_commonality(g, g, tiny), ContractViolation);
}

TEST(Mutation, DeterministicPerSeed) {
  Scc s = normal_scc(kAppend);
  Mutation a = mutate_duplicate(s, 42), b = mutate_duplicate(s, 42);
  EXPECT_EQ(a.log, b.log);
  ASSERT_EQ(a.scc.clauses.size(), b.scc.clauses.size());
  for (std::size_t i = 0; i < a.scc.clauses.size(); ++i)
    EXPECT_EQ(render_clause(a.scc.clauses[i]), render_clause(b.scc.clauses[i]));
}

TEST(Mutation, RenamesEveryMemberAndLogs) {
  Scc s = normal_scc("even(A) :- A = z.\neven(A) :- A = s(B), odd(B).\nodd(A) :- A = s(B), even(B).\n");
  Mutation m = mutate_duplicate(s, 3);
  ASSERT_EQ(m.renamed.size(), 2u);
  for (const auto &[orig, fresh] : m.renamed) {
    EXPECT_NE(orig, fresh);
    EXPECT_EQ(orig.arity, fresh.arity);
    EXPECT_TRUE(m.scc.contains(fresh));
    EXPECT_FALSE(m.scc.contains(orig));
  }
  EXPECT_EQ(m.scc.clauses.size(), s.clauses.size());
  ASSERT_FALSE(m.log.empty());
  EXPECT_EQ(m.log.back().rfind("clause order [", 0), 0u);
}

TEST(Mutation, PreservesNormalFormAndRecursionShape) {
  Scc s = normal_scc(kAppend);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Mutation m = mutate_duplicate(s, seed);
    EXPECT_EQ(shape_signature(s), shape_signature(m.scc));
    for (const Clause &c : m.scc.clauses)
      EXPECT_TRUE(is_normal_clause(c)) << render_clause(c);
  }
}
