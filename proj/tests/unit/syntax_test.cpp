#include <gtest/gtest.h>

#include "logdup/error.hpp"
#include "logdup/syntax.hpp"

using namespace logdup;

TEST(Parse, AppendFact) {
  Program p = parse_program("append([],L,L).");
  ASSERT_EQ(p.predicates().size(), 1u);
  PredSymbol app{"append", 3};
  ASSERT_EQ(p.clauses(app).size(), 1u);
  const Clause &c = p.clauses(app)[0];
  EXPECT_TRUE(c.is_fact());
  ASSERT_EQ(c.head.args.size(), 3u);
  EXPECT_EQ(c.head.args[0], Term::constant("[]"));
  EXPECT_EQ(c.head.args[1], Term::variable("L"));
  EXPECT_EQ(c.head.args[2], Term::variable("L"));
}

TEST(Parse, ZeroAryHeadWithBody) {
  Program p = parse_program("p :- q, r.");
  const auto &cs = p.clauses(PredSymbol{"p", 0});
  ASSERT_EQ(cs.size(), 1u);
  EXPECT_TRUE(cs[0].head.args.empty());
  ASSERT_EQ(cs[0].body.size(), 2u);
  EXPECT_EQ(cs[0].body[0].pred, (PredSymbol{"q", 0}));
  EXPECT_EQ(cs[0].body[1].pred, (PredSymbol{"r", 0}));
}

TEST(Parse, DisjunctionExcludesPredicate) {
  Program p = parse_program("f(X) :- X = a ; X = b.\ng(a).");
  EXPECT_TRUE(p.is_excluded(PredSymbol{"f", 1}));
  EXPECT_FALSE(p.defines(PredSymbol{"f", 1}) && !p.is_excluded(PredSymbol{"f", 1}));
  ASSERT_EQ(p.predicates().size(), 1u);
  EXPECT_EQ(p.predicates()[0], (PredSymbol{"g", 1}));
  ASSERT_FALSE(p.warnings().empty());
  EXPECT_NE(p.warnings()[0].message.find(';'), std::string::npos);
}

TEST(Parse, CutAndNegationExcludeWholePredicate) {
  Program p = parse_program("m(X) :- q(X), !.\nm(b).\nn(X) :- \\+ q(X).\n");
  EXPECT_TRUE(p.is_excluded(PredSymbol{"m", 1}));
  EXPECT_TRUE(p.is_excluded(PredSymbol{"n", 1}));
  EXPECT_TRUE(p.empty());
}

TEST(Parse, EmptyInputIsEmptyProgram) {
  Program p = parse_program("");
  EXPECT_TRUE(p.empty());
  EXPECT_TRUE(p.warnings().empty());
  EXPECT_TRUE(parse_program("% only a comment\n").empty());
}

TEST(Parse, SyntaxErrorCarriesPosition) {
  try {
    parse_program("ok(a).\nbad(a,\n", "f.pl");
    FAIL() << "expected a parse error";
  } catch (const ParseError &e) {
    EXPECT_EQ(e.file(), "f.pl");
    EXPECT_GE(e.line(), 2);
    EXPECT_GT(e.column(), 0);
  }
}

TEST(Parse, DirectiveSkippedWithWarning) {
  Program p = parse_program(":- dynamic(foo/1).\nfoo(a).\n");
  EXPECT_EQ(p.clause_count(), 1u);
  EXPECT_FALSE(p.warnings().empty());
}

TEST(Parse, ListDesugaring) {
  Term t = parse_term("[a,b|T]");
  Term expected = Term::compound(
      ".", {Term::constant("a"), Term::compound(".", {Term::constant("b"), Term::variable("T")})});
  EXPECT_EQ(t, expected);
  EXPECT_EQ(parse_term("[a]"), make_list({Term::constant("a")}));
}

TEST(Parse, AnonymousVariablesAreFresh) {
  Clause c = parse_clause("p(_, _)");
  ASSERT_EQ(c.head.args.size(), 2u);
  ASSERT_TRUE(c.head.args[0].is_variable());
  EXPECT_NE(c.head.args[0].name, c.head.args[1].name);
}

TEST(Parse, QuotedAndUnquotedAtomsCoincide) {
  EXPECT_EQ(parse_term("'abc'"), parse_term("abc"));
}

TEST(Parse, ArithmeticPrecedence) {
  Term t = parse_term("N*N + 1");
  ASSERT_EQ(t.name, "+");
  EXPECT_EQ(t.args[0].name, "*");
  Goal g = parse_goal("N is X + 1, Y is N*N");
  ASSERT_EQ(g.size(), 2u);
  EXPECT_EQ(g[0].pred, (PredSymbol{"is", 2}));
}

TEST(Parse, ClausesGroupedByHeadPredicate) {
  Program p = parse_program("a(1).\nb(2).\na(3).\n");
  for (const PredSymbol &q : p.predicates())
    for (const Clause &c : p.clauses(q))
      EXPECT_EQ(c.head.pred, q);
  EXPECT_EQ(p.clauses(PredSymbol{"a", 1}).size(), 2u);
}

TEST(Parse, SourceLocationsRecorded) {
  Program p = parse_program("\n\nq(a).\n", "x.pl");
  const Clause &c = p.clauses(PredSymbol{"q", 1})[0];
  EXPECT_EQ(c.origin.file, "x.pl");
  EXPECT_EQ(c.origin.line, 3);
}

TEST(Render, RoundTripAppend) {
  Clause c = parse_clause("append([],L,L).");
  EXPECT_EQ(render_clause(c), "append([],L,L).");
}

TEST(Render, NormalFormBody) {
  Clause c;
  c.head = Atom::make("append", {Term::variable("X"), Term::variable("Y"), Term::variable("Z")});
  c.body = {Atom::make("=", {Term::variable("X"), Term::constant("[]")}),
            Atom::make("=", {Term::variable("Z"), Term::variable("Y")})};
  EXPECT_EQ(render_clause(c), "append(X,Y,Z) :- X = [], Z = Y.");
}

TEST(Render, ListSugar) {
  EXPECT_EQ(render_term(Term::compound(".", {Term::constant("a"), Term::constant("[]")})), "[a]");
  EXPECT_EQ(render_term(parse_term("[X|Xs]")), "[X|Xs]");
}

TEST(Render, RoundTripVariety) {
  const char *clauses[] = {
      "add1_and_sqr([X|Xs],[Y|Ys]) :- N is X + 1, Y is N*N, add1_and_sqr(Xs,Ys).",
      "p :- q, r.",
      "t(f(g(a,B),[1,2|T]),'hello world',-3).",
      "k(X) :- X = 'A', Y = (a - b) - c, Z = a - (b - c), w(Y,Z).",
  };
  for (const char *text : clauses) {
    Clause c = parse_clause(text);
    Clause again = parse_clause(render_clause(c));
    EXPECT_TRUE(same_clause(c, again)) << text << " -> " << render_clause(c);
  }
}

TEST(Variables, FirstOccurrenceOrderAndVariants) {
  Clause c = parse_clause("p(X,f(Y)) :- q(Y,Z), r(X).");
  EXPECT_EQ(variables_of(c), (std::vector<std::string>{"X", "Y", "Z"}));
  Clause d = parse_clause("p(A,f(B)) :- q(B,C), r(A).");
  EXPECT_TRUE(is_variant(c, d));
  Clause e = parse_clause("p(A,f(A)) :- q(A,C), r(A).");
  EXPECT_FALSE(is_variant(c, e));
}
