#pragma once

#include <compare>
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

struct PrintSymbol {
  enum class Kind : unsigned char { Equality, Function, Predicate };
  Kind kind = Kind::Function;
  std::string name;
  std::size_t arity = 0;

  static PrintSymbol equality() { return {Kind::Equality, "=", 2}; }
  static PrintSymbol function(std::string n, std::size_t a) { return {Kind::Function, std::move(n), a}; }
  static PrintSymbol predicate(const PredSymbol &p) { return {Kind::Predicate, p.name, p.arity}; }

  /// "(=)", "[]", "[|]", "f/2" for functions, "p/2" for predicates.
  std::string str() const;
  friend bool operator==(const PrintSymbol &, const PrintSymbol &) = default;
  friend auto operator<=>(const PrintSymbol &, const PrintSymbol &) = default;
};

/// Symbol counts; absent symbols count 0 and zero entries are never stored.
struct GoalPrint {
  std::map<PrintSymbol, std::size_t> counts;

  std::size_t total() const;
  std::size_t operator[](const PrintSymbol &s) const;
  void add(const PrintSymbol &s, std::size_t n = 1);
  std::string str() const;
  friend bool operator==(const GoalPrint &, const GoalPrint &) = default;
  friend auto operator<=>(const GoalPrint &, const GoalPrint &) = default;
};

using ClausePrint = std::vector<GoalPrint>;
/// Sorted multiset of clauseprints.
using PredicatePrint = std::vector<ClausePrint>;
/// Sorted multiset of predicate prints.
using SccPrint = std::vector<PredicatePrint>;

/// Calls count their predicate, unifications count (=); every non-numeric
/// function symbol inside the arguments counts once per occurrence. With
/// require_normal, a non-normal atom throws ContractViolation.
GoalPrint goalprint(const Goal &q, bool require_normal = true);

/// Pointwise order; partial.
bool goalprint_leq(const GoalPrint &a, const GoalPrint &b);
/// Pointwise minimum.
GoalPrint goalprint_glb(const GoalPrint &a, const GoalPrint &b);

ClausePrint clauseprint(const Clause &c, const Scc &s, bool require_normal = true);
PredicatePrint predicate_print(const PredSymbol &p, const Scc &s, bool require_normal = true);
SccPrint scc_print(const Scc &s, bool require_normal = true);

std::size_t print_size(const ClausePrint &c);
std::size_t print_size(const PredicatePrint &p);
std::size_t print_size(const SccPrint &s);

/// Componentwise order between equal-length clauseprints.
bool clauseprint_leq(const ClausePrint &a, const ClausePrint &b);
/// True when some bijection pairs each clauseprint of `a` with a
/// clauseprint of `b` that is componentwise above it.
bool predicate_print_leq(const PredicatePrint &a, const PredicatePrint &b);

/// Glb over a perfect matching of equal-length clauseprints that retains
/// the most symbols (lexicographically first on ties). Absent when no such
/// matching exists.
std::optional<PredicatePrint> print_glb(const PredicatePrint &a, const PredicatePrint &b);
/// Same one level up, matching predicate prints.
std::optional<SccPrint> print_glb(const SccPrint &a, const SccPrint &b);

/// (|a glb b| / |a|, |a glb b| / |b|); an empty side yields 1.
std::optional<std::pair<Ratio, Ratio>> fp_closeness(const SccPrint &a, const SccPrint &b);

/// Arity and per-clause segment count of every member, as a sorted
/// multiset in text form. Equal signatures are necessary for a witness.
std::string shape_signature(const Scc &s);

std::string print_text(const ClausePrint &c);
std::string print_text(const PredicatePrint &p);
std::string print_text(const SccPrint &s);

struct CandidatePair {
  std::size_t left = 0;   ///< index into the SCC list
  std::size_t right = 0;
  std::pair<Ratio, Ratio> estimate;
  bool identical = false;
};

/// Pairs of SCCs with equal shape signature whose fingerprint estimate has
/// min component >= threshold. The left SCC is the one whose first clause
/// comes first in the corpus. Identical prints first, then by min
/// component descending, then by SCC names.
std::vector<CandidatePair> candidate_pairs(const std::vector<Scc> &sccs,
                                           const std::vector<SccPrint> &prints, double threshold);

struct SccCandidate {
  Scc left;
  Scc right;
  std::pair<Ratio, Ratio> estimate;
};

/// Builds SCCs and prints of `prog` as given (no normalization; prints
/// tolerate non-normal atoms).
std::vector<SccCandidate> candidate_pairs(const Program &prog, double threshold);

/// One evaluation of the goalprint/msg relationship for a goal pair.
struct ConjectureCheck {
  bool holds = false;
  GoalPrint glb;        ///< goalprint(q1) glb goalprint(q2)
  GoalPrint msg_print;  ///< goalprint of the msg of the aligned subgoals
  Goal generalization;
  GoalAlignment alignment;
};

ConjectureCheck check_glb_conjecture(const Goal &q1, const Goal &q2,
                                     const SearchLimits &limits = {});

} // namespace logdup
