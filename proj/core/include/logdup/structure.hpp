#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "logdup/depgraph.hpp"
#include "logdup/metrics.hpp"
#include "logdup/ratio.hpp"

namespace logdup {

/// Argument permutation between two predicates of equal arity.
/// mapping[i] is the (0-based) position in the right-hand atom that
/// receives argument i of the left-hand atom.
struct ArgPermutation {
  std::vector<std::size_t> mapping;

  static ArgPermutation identity(std::size_t n);
  bool is_bijection() const;
  /// Builds the permuted atom: out.args[mapping[i]] = a.args[i].
  Atom apply(const Atom &a, const PredSymbol &target) const;
  friend bool operator==(const ArgPermutation &, const ArgPermutation &) = default;
};

struct StructureWitness {
  std::map<PredSymbol, PredSymbol> predicate_mapping;
  /// clause_mapping[i] is the index in the right SCC of the image of left clause i.
  std::vector<std::size_t> clause_mapping;
  /// Keyed by left member predicate.
  std::map<PredSymbol, ArgPermutation> arg_permutations;
  /// One per left clause; covers exactly the variables of its head and
  /// recursive calls. Head variables tied by an X = Y body atom count as
  /// one variable, named after the one occurring first in the head.
  std::vector<Renaming> renamings;
};

struct StructureOptions {
  std::size_t arity_limit = 6;
  std::size_t witness_cap = 10000;
  SearchLimits goal_limits;
};

/// Empty when the SCCs do not share their recursive structure.
/// Enumeration order: predicate bijections, then clause bijections, then
/// argument permutations; at most witness_cap witnesses.
std::vector<StructureWitness> find_structure_witnesses(const Scc &left, const Scc &right,
                                                       const StructureOptions &opts = {});

/// Empty string when valid, otherwise the first violated condition.
std::string witness_error(const Scc &left, const Scc &right, const StructureWitness &w);
inline bool validate_witness(const Scc &left, const Scc &right, const StructureWitness &w) {
  return witness_error(left, right, w).empty();
}

/// Identity witness of an SCC against itself.
StructureWitness identity_witness(const Scc &s);

struct SccSimilarity {
  std::size_t value = 0;
  bool approximate = false;
  /// Per left clause, one alignment per non-recursive segment.
  std::vector<std::vector<GoalAlignment>> segment_alignments;
};

/// Sum over mapped clause pairs of 1 + segment similarities + commonality
/// of the permuted, renamed heads and recursive calls with their images.
/// Throws ContractViolation for an invalid witness.
SccSimilarity scc_similarity(const Scc &left, const Scc &right, const StructureWitness &w,
                             const SearchLimits &limits = {});

std::size_t self_similarity(const Scc &s, const SearchLimits &limits = {});

struct SimilarityResult {
  std::size_t sigma = 0;
  std::pair<std::size_t, std::size_t> denominators;
  std::pair<Ratio, Ratio> closeness;
  StructureWitness witness;
  std::vector<std::vector<GoalAlignment>> segment_alignments;
  bool approximate = false;

  bool is_duplicate() const { return sigma == denominators.first && sigma == denominators.second; }
};

/// Maximises SCC similarity over all structure witnesses; denominators
/// are the self-similarities. Absent when no witness exists.
std::optional<SimilarityResult> closeness(const Scc &left, const Scc &right,
                                          const StructureOptions &opts = {});
/// Same, with precomputed self-similarities (left, right).
std::optional<SimilarityResult> closeness(const Scc &left, const Scc &right,
                                          const StructureOptions &opts,
                                          std::pair<std::size_t, std::size_t> denominators);

/// Generalisation of the mapped clause pairs: heads, recursive calls and
/// the aligned segment atoms, anti-unified clause by clause. Member
/// predicates get fresh names "<left>_<right>". Throws ContractViolation
/// for an approximate result.
std::vector<Clause> common_core(const Scc &left, const Scc &right, const SimilarityResult &r);

} // namespace logdup
