#pragma once

#include "logdup/structure.hpp"

namespace logdup::detail {

/// Segments of `c` with head aliases folded: head variables joined by an
/// X = Y body atom are replaced by the one occurring first in the head.
/// The result does not depend on the order of the head arguments.
ClauseSegments structural_segments(const Clause &c, const Scc &s);

/// Positionally aligned atom lists for one mapped clause pair: head,
/// recursive calls, then the paired atoms of each segment. The left side
/// is permuted and renamed by the witness; its segment-only variables are
/// renamed apart. Var-var unifications on the left are flipped when that
/// matches the right atom better.
struct AlignedClause {
  Goal left;
  Goal right;
  std::vector<std::size_t> segment_sizes;
};

AlignedClause align_clause(const ClauseSegments &ls, const ClauseSegments &rs,
                           const Renaming &rho, const std::map<PredSymbol, PredSymbol> &pm,
                           const std::map<PredSymbol, ArgPermutation> &perms,
                           const std::vector<GoalAlignment> &segments);

} // namespace logdup::detail
