#pragma once

#include <string>
#include <vector>

#include "logdup/syntax.hpp"

namespace logdup {

/// A strongly connected component of the predicate dependency graph.
struct Scc {
  std::vector<PredSymbol> members;  ///< sorted by name, then arity
  std::vector<Clause> clauses;      ///< grouped by member, source order within

  bool contains(const PredSymbol &p) const;
  /// "p/2" or "even/1+odd/1".
  std::string name() const;
  std::vector<std::size_t> clauses_of(const PredSymbol &p) const;
};

/// A clause viewed as A0 <- Q1, A1, ..., Qk, Ak, Qk+1.
struct ClauseSegments {
  Atom head;
  std::vector<Goal> segments;
  std::vector<Atom> recursive_calls;

  std::size_t recursion_count() const { return recursive_calls.size(); }
};

/// Built-ins never take part in the dependency graph as SCC members.
bool is_builtin(const PredSymbol &p);

/// Components over the program's defined, non-excluded predicates, in
/// reverse topological order (callees first). Traversal starts from
/// predicates in (name, arity) order so the output is reproducible.
std::vector<Scc> build_sccs(const Program &p);

/// Splits the body of `c` at calls to members of `s`.
ClauseSegments segment_clause(const Clause &c, const Scc &s);

/// Reassembles Q1, A1, ..., Qk+1 into a body.
Goal interleave(const ClauseSegments &segs);

/// Builds a single-SCC view over a list of clauses, bypassing dependency
/// analysis (every head predicate becomes a member).
Scc make_scc(std::vector<Clause> clauses);

} // namespace logdup
