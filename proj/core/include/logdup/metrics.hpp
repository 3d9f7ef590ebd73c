#pragma once

#include <cstddef>
#include <map>
#include <utility>
#include <vector>

#include "logdup/depgraph.hpp"
#include "logdup/syntax.hpp"

namespace logdup {

// Node counts. Variables count 0; every functor, predicate, conjunction
// and clause-neck node counts 1.
std::size_t nodes(const Term &t);
std::size_t nodes(const Atom &a);
std::size_t nodes(const Goal &g);
std::size_t nodes(const Clause &c);
std::size_t nodes(const Scc &s);

/// nodes(e) plus the number of variable occurrences in e.
std::size_t total_nodes(const Term &t);
std::size_t total_nodes(const Atom &a);
std::size_t total_nodes(const Goal &g);
std::size_t total_nodes(const Clause &c);
std::size_t total_nodes(const Scc &s);

/// Positional shared-node count; identical variables count 1.
std::size_t strict_commonality(const Term &a, const Term &b);
std::size_t strict_commonality(const Atom &a, const Atom &b);
/// Throws ContractViolation if the goals differ in length.
std::size_t strict_commonality(const Goal &a, const Goal &b);

/// Occurrences of the same variable at the same position in both inputs.
std::size_t shared_var_count(const Term &a, const Term &b);
std::size_t shared_var_count(const Atom &a, const Atom &b);
std::size_t shared_var_count(const Goal &a, const Goal &b);

using Substitution = std::map<std::string, Term>;

Term substitute(const Term &t, const Substitution &s);
Atom substitute(const Atom &a, const Substitution &s);
Goal substitute(const Goal &g, const Substitution &s);

struct MsgResult {
  Term generalization;
  Substitution left;   ///< generalization * left == first input
  Substitution right;  ///< generalization * right == second input
};

struct GoalMsgResult {
  Goal generalization;
  Substitution left;
  Substitution right;
};

/// Anti-unification. A repeated mismatch pair reuses one generalization
/// variable; a variable occurring at the same position on both sides is kept.
MsgResult msg(const Term &a, const Term &b);
/// Throws ContractViolation unless the predicates agree.
GoalMsgResult msg(const Atom &a, const Atom &b);
/// Positionally aligned; throws unless lengths and predicates agree.
GoalMsgResult msg(const Goal &a, const Goal &b);

/// Right-nested ','/2 term of a non-empty goal.
Term goal_to_term(const Goal &g);

using PredicateMultiset = std::map<PredSymbol, std::size_t>;
PredicateMultiset predicate_multiset(const Goal &g);

struct SimilarSubgoals {
  Goal left;
  Goal right;
  std::vector<std::size_t> left_index;   ///< positions in the first goal
  std::vector<std::size_t> right_index;  ///< positions in the second goal
};

/// For each predicate keeps min(count in a, count in b) atoms of each goal,
/// the earliest ones, in source order.
SimilarSubgoals maximal_similar_subgoals(const Goal &a, const Goal &b);

/// All injections from vars(a) into vars(b), both in first-occurrence order,
/// enumerated lexicographically by target index.
std::vector<Renaming> enumerate_renamings(const Goal &a, const Goal &b);

struct SearchLimits {
  std::size_t exact_vars_limit = 8;
  std::size_t exact_group_limit = 6;
  std::size_t node_budget = 2'000'000;
};

/// Witness for a commonality value. When renaming_from_left, `renaming`
/// maps variables of the first goal to variables of the second; otherwise
/// the other way round. atom_pairing holds (first index, second index).
struct GoalAlignment {
  Renaming renaming;
  bool renaming_from_left = true;
  std::vector<std::pair<std::size_t, std::size_t>> atom_pairing;
  std::size_t value = 0;
  bool approximate = false;
};

/// Maximum strict commonality over atom permutations and injective
/// renamings. Requires equal predicate multisets.
GoalAlignment commonality(const Goal &a, const Goal &b, const SearchLimits &limits = {});

/// Best commonality over every choice of same-predicate subgoals of equal
/// predicate multiset. Unpaired atoms are left out of the pairing.
GoalAlignment goal_similarity(const Goal &a, const Goal &b, const SearchLimits &limits = {});

/// Applies the witness: the paired atoms in pairing order, with the
/// renaming applied to the renamed side.
std::pair<Goal, Goal> apply_alignment(const Goal &a, const Goal &b, const GoalAlignment &w);

} // namespace logdup
