#pragma once

#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

namespace logdup {

using Weight = std::int64_t;
/// Marks a row/column pair that may not be assigned.
inline constexpr Weight kForbidden = std::numeric_limits<Weight>::min() / 4;

struct Assignment {
  Weight total = 0;
  std::vector<std::size_t> row_to_col;
};

/// Maximum-weight assignment of every row to a distinct column
/// (rows <= columns). Returns nullopt if every complete assignment uses a
/// forbidden entry.
std::optional<Assignment> max_weight_assignment(const std::vector<std::vector<Weight>> &w);

/// Like max_weight_assignment, but among optimal assignments returns the
/// lexicographically smallest row_to_col vector.
std::optional<Assignment> lexmin_max_assignment(const std::vector<std::vector<Weight>> &w);

} // namespace logdup
