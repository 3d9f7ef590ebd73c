#pragma once

#include <compare>
#include <cstddef>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace logdup {

/// A first-order term: either a variable or a compound `f(t1,...,tn)`.
/// Constants are 0-ary compounds; lists use './2' and '[]'.
struct Term {
  enum class Kind : unsigned char { Variable, Compound };

  Kind kind = Kind::Compound;
  std::string name;
  std::vector<Term> args;

  static Term variable(std::string name);
  static Term compound(std::string functor, std::vector<Term> args = {});
  static Term constant(std::string name) { return compound(std::move(name)); }

  bool is_variable() const { return kind == Kind::Variable; }
  bool is_compound() const { return kind == Kind::Compound; }
  bool is_constant() const { return is_compound() && args.empty(); }
  std::size_t arity() const { return args.size(); }
};

bool operator==(const Term &a, const Term &b);
std::strong_ordering operator<=>(const Term &a, const Term &b);

inline constexpr std::string_view kNil = "[]";
inline constexpr std::string_view kCons = ".";

/// Builds the list `[items... | tail]` with './2' cells.
Term make_list(std::vector<Term> items, Term tail = Term::constant(std::string(kNil)));

bool is_number_name(std::string_view name);

struct PredSymbol {
  std::string name;
  std::size_t arity = 0;

  std::string str() const { return name + "/" + std::to_string(arity); }
  friend bool operator==(const PredSymbol &, const PredSymbol &) = default;
  friend auto operator<=>(const PredSymbol &, const PredSymbol &) = default;
};

struct Atom {
  PredSymbol pred;
  std::vector<Term> args;

  static Atom make(std::string name, std::vector<Term> args = {});
};

bool operator==(const Atom &a, const Atom &b);
std::strong_ordering operator<=>(const Atom &a, const Atom &b);

/// Conjunction of atoms. Source order is kept for rendering; the measures
/// treat it as a multiset.
using Goal = std::vector<Atom>;

struct SourceLocation {
  std::string file;
  int line = 0;
  int column = 0;
};

struct Clause {
  Atom head;
  Goal body;
  SourceLocation origin;

  bool is_fact() const { return body.empty(); }
};

/// Head and body equality; the origin is ignored.
bool same_clause(const Clause &a, const Clause &b);

struct Diagnostic {
  SourceLocation location;
  std::string message;

  std::string str() const;
};

/// Predicate name -> clause list, in first-definition order.
class Program {
public:
  void add_clause(Clause clause);
  void exclude(const PredSymbol &pred, Diagnostic why);
  void warn(Diagnostic d) { warnings_.push_back(std::move(d)); }
  /// Appends every predicate, exclusion and warning of `other`.
  void merge(const Program &other);
  /// Copies exclusions and warnings of `other`, not its clauses.
  void inherit_diagnostics(const Program &other);

  /// Defined predicates, excluded ones omitted, in definition order.
  std::vector<PredSymbol> predicates() const;
  const std::vector<Clause> &clauses(const PredSymbol &pred) const;
  bool defines(const PredSymbol &pred) const { return clauses_.count(pred) != 0; }
  bool is_excluded(const PredSymbol &pred) const { return excluded_.count(pred) != 0; }
  const std::set<PredSymbol> &excluded() const { return excluded_; }
  const std::vector<Diagnostic> &warnings() const { return warnings_; }
  std::size_t clause_count() const;
  bool empty() const { return predicates().empty(); }

private:
  std::vector<PredSymbol> order_;
  std::map<PredSymbol, std::vector<Clause>> clauses_;
  std::set<PredSymbol> excluded_;
  std::vector<Diagnostic> warnings_;
};

/// Parses a corpus written in the supported Prolog subset. Predicates using
/// cut, negation, disjunction, if-then-else or meta-calls are excluded with a
/// warning. Throws ParseError on malformed input.
Program parse_program(std::string_view text, std::string_view file = "<input>");

/// Parses a single term (no terminating '.') for tests and tools.
Term parse_term(std::string_view text);
/// Parses a comma-separated goal such as "p(X), X = f(Y)".
Goal parse_goal(std::string_view text);
/// Parses exactly one clause (terminating '.' optional).
Clause parse_clause(std::string_view text);

std::string render_term(const Term &t);
std::string render_atom(const Atom &a);
std::string render_goal(const Goal &g);
std::string render_clause(const Clause &c);

/// Variables in first-occurrence order.
std::vector<std::string> variables_of(const Term &t);
std::vector<std::string> variables_of(const Atom &a);
std::vector<std::string> variables_of(const Goal &g);
std::vector<std::string> variables_of(const Clause &c);

using Renaming = std::map<std::string, std::string>;

/// Replaces variables found in `mapping`; others are left untouched.
Term rename(const Term &t, const Renaming &mapping);
Atom rename(const Atom &a, const Renaming &mapping);
Goal rename(const Goal &g, const Renaming &mapping);
Clause rename(const Clause &c, const Renaming &mapping);

/// True when `b` equals `a` up to a bijective variable renaming.
bool is_variant(const Clause &a, const Clause &b);
bool is_variant(const Goal &a, const Goal &b);

} // namespace logdup
