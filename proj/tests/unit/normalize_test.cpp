#include <gtest/gtest.h>

#include <random>

#include "generators.hpp"
#include "logdup/fingerprint.hpp"
#include "logdup/normalize.hpp"

using namespace logdup;

namespace {

void expect_normalizes_to(const char *input, const char *expected) {
  Clause got = normalize_clause(parse_clause(input));
  EXPECT_TRUE(is_variant(got, parse_clause(expected)))
      << input << "\n  got      " << render_clause(got) << "\n  expected " << expected;
}

// Eliminates every var = term unification by substitution.
Clause resolve(Clause c) {
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i < c.body.size(); ++i) {
      const Atom &a = c.body[i];
      if (a.pred != PredSymbol{"=", 2} || !a.args[0].is_variable())
        continue;
      Substitution s{{a.args[0].name, a.args[1]}};
      c.body.erase(c.body.begin() + static_cast<std::ptrdiff_t>(i));
      c.head = substitute(c.head, s);
      c.body = substitute(c.body, s);
      changed = true;
      break;
    }
  }
  return c;
}

} // namespace

TEST(Normalize, AppendFact) {
  expect_normalizes_to("append([],L,L).", "append(X,Y,Z) :- X = [], Z = Y.");
}

TEST(Normalize, AppendRecursiveClause) {
  expect_normalizes_to("append([X|Xs],Y,[X|Zs]) :- append(Xs,Y,Zs).",
                       "append(A,B,C) :- A = [Xe|Xs], C = [Xe|Zs], append(Xs,B,Zs).");
}

TEST(Normalize, ConstantArgument) { expect_normalizes_to("p(a).", "p(X) :- X = a."); }

TEST(Normalize, FreshNamesFollowScheme) {
  Clause c = normalize_clause(parse_clause("append([X|Xs],Y,[X|Zs]) :- append(Xs,Y,Zs)."));
  EXPECT_EQ(render_clause(c), "append(A,B,C) :- A = [V1|V2], C = [V1|V3], append(V2,B,V3).");
}

TEST(Normalize, RevAllListing) {
  Program p = normalize_program(parse_program("rev_all([],[]).\n"
                                              "rev_all([X|Xs],[Y|Ys]) :- reverse(X,Y), "
                                              "rev_all(Xs,Ys).\n"));
  const auto &cs = p.clauses(PredSymbol{"rev_all", 2});
  ASSERT_EQ(cs.size(), 2u);
  EXPECT_TRUE(is_variant(cs[0], parse_clause("rev_all(A,B) :- A = [], B = [].")));
  EXPECT_TRUE(is_variant(cs[1], parse_clause("rev_all(A,B) :- A = [X|Xs], B = [Y|Ys], "
                                             "reverse(X,Y), rev_all(Xs,Ys).")));
}

TEST(Normalize, ArithmeticKeepsNestedArguments) {
  expect_normalizes_to(
      "add1_and_sqr([X|Xs],[Y|Ys]) :- N is X + 1, Y is N*N, add1_and_sqr(Xs,Ys).",
      "add1_and_sqr(A,B) :- A = [X|Xs], B = [Y|Ys], N is X + 1, Y is N*N, "
      "add1_and_sqr(Xs,Ys).");
}

TEST(Normalize, CallArgumentsFlattenedBeforeTheCall) {
  expect_normalizes_to("p(X) :- q(f(X), a), r(X).", "p(A) :- V1 = f(A), V2 = a, q(V1,V2), r(A).");
}

TEST(Normalize, RepeatedHeadVariableKeepsParameterEquation) {
  expect_normalizes_to("same(X,X).", "same(A,B) :- B = A.");
}

TEST(Normalize, BodyVariableEquationSubstitutedAway) {
  expect_normalizes_to("p(X) :- Y = X, q(Y).", "p(A) :- q(A).");
  expect_normalizes_to("p(X) :- X = X, q(X).", "p(A) :- q(A).");
}

TEST(Normalize, ProgramKeepsDiagnostics) {
  Program raw = parse_program("f(X) :- X = a ; X = b.\ng(a).\n");
  Program n = normalize_program(raw);
  EXPECT_TRUE(n.is_excluded(PredSymbol{"f", 1}));
  EXPECT_EQ(n.warnings().size(), raw.warnings().size());
}

TEST(Normalize, AlreadyNormalIsRenamingInvariant) {
  Clause c = parse_clause("append(X,Y,Z) :- X = [Xe|Xs], Z = [Xe|Zs], append(Xs,Y,Zs).");
  EXPECT_TRUE(is_variant(normalize_clause(c), c));
}

TEST(Normalize, GoalprintOfAppendFactBody) {
  Clause c = normalize_clause(parse_clause("append([],L,L)."));
  GoalPrint g = goalprint(c.body);
  EXPECT_EQ(g.str(), "{((=),2),([],1)}");
}

TEST(NormalizeProperty, ShapeIdempotenceAndMeaning) {
  std::mt19937_64 rng(20240601);
  testgen::GoalShape shape;
  shape.max_depth = 3;
  std::vector<std::string> vars = {"X", "Y", "Z", "W"};
  for (int i = 0; i < 300; ++i) {
    Clause c;
    Goal head = testgen::random_goal(rng, {1, 4, 3, {{"h", 3}}}, vars);
    c.head = head.empty() ? Atom::make("h", {Term::variable("X"), Term::constant("a"),
                                             Term::variable("X")})
                          : head[0];
    c.body = testgen::random_goal(rng, shape, vars);

    Clause n = normalize_clause(c);
    EXPECT_TRUE(is_normal_clause(n)) << render_clause(n);
    for (const Term &t : n.head.args)
      EXPECT_TRUE(t.is_variable());
    EXPECT_TRUE(is_variant(normalize_clause(n), n))
        << render_clause(n) << " vs " << render_clause(normalize_clause(n));
    EXPECT_TRUE(is_variant(resolve(n), resolve(c)))
        << render_clause(c) << " => " << render_clause(n);
  }
}
