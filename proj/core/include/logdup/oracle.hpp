#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "logdup/depgraph.hpp"
#include "logdup/structure.hpp"

namespace logdup {

struct OracleCaps {
  std::size_t max_atoms = 5;
  std::size_t max_vars = 5;
  /// permutations x renamings
  std::size_t max_candidates = 2'000'000;
};

/// Exhaustive commonality: every permutation of the second goal against
/// every injective renaming. Uses its own strict-commonality routine.
/// Throws ContractViolation when the goals are not similarly structured
/// or exceed the caps.
std::size_t brute_force_commonality(const Goal &q1, const Goal &q2, const OracleCaps &caps = {});

struct Mutation {
  Scc scc;
  std::vector<std::string> log;
  std::map<PredSymbol, PredSymbol> renamed;          ///< original -> fresh
  std::map<PredSymbol, ArgPermutation> permutations;  ///< keyed by original
};

/// Seed-determined duplicate of `s`: fresh predicate names, one argument
/// permutation per member applied at every occurrence, a fresh variable
/// renaming per clause, shuffled atoms inside each non-recursive segment
/// and shuffled clauses.
Mutation mutate_duplicate(const Scc &s, std::uint64_t seed);

} // namespace logdup
