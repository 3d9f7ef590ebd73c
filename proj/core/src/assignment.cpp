#include "logdup/assignment.hpp"

#include <algorithm>

#include "logdup/error.hpp"

namespace logdup {
namespace {

// Shortest augmenting path Hungarian method on costs (minimisation), 1-based.
std::vector<std::size_t> solve_min(const std::vector<std::vector<Weight>> &cost, std::size_t n,
                                   std::size_t m) {
  const Weight inf = std::numeric_limits<Weight>::max() / 4;
  std::vector<Weight> u(n + 1, 0), v(m + 1, 0), minv(m + 1);
  std::vector<std::size_t> p(m + 1, 0), way(m + 1, 0);
  std::vector<bool> used(m + 1);
  for (std::size_t i = 1; i <= n; ++i) {
    p[0] = i;
    std::size_t j0 = 0;
    std::fill(minv.begin(), minv.end(), inf);
    std::fill(used.begin(), used.end(), false);
    do {
      used[j0] = true;
      std::size_t i0 = p[j0], j1 = 0;
      Weight delta = inf;
      for (std::size_t j = 1; j <= m; ++j) {
        if (used[j])
          continue;
        Weight cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (std::size_t j = 0; j <= m; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      std::size_t j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<std::size_t> row_to_col(n);
  for (std::size_t j = 1; j <= m; ++j)
    if (p[j] != 0)
      row_to_col[p[j] - 1] = j - 1;
  return row_to_col;
}

} // namespace

std::optional<Assignment> max_weight_assignment(const std::vector<std::vector<Weight>> &w) {
  const std::size_t n = w.size();
  if (n == 0)
    return Assignment{};
  const std::size_t m = w[0].size();
  if (m < n)
    throw ContractViolation("assignment needs at least as many columns as rows");
  Weight top = 0, low = 0;
  for (const auto &row : w) {
    if (row.size() != m)
      throw ContractViolation("ragged assignment matrix");
    for (Weight x : row)
      if (x != kForbidden) {
        top = std::max(top, x);
        low = std::min(low, x);
      }
  }
  // Forbidden entries cost more than any full assignment of allowed ones.
  const Weight penalty = (top - low + 1) * static_cast<Weight>(n + 1) + 1;
  std::vector<std::vector<Weight>> cost(n, std::vector<Weight>(m));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j)
      cost[i][j] = w[i][j] == kForbidden ? penalty : top - w[i][j];
  Assignment a;
  a.row_to_col = solve_min(cost, n, m);
  for (std::size_t i = 0; i < n; ++i) {
    Weight x = w[i][a.row_to_col[i]];
    if (x == kForbidden)
      return std::nullopt;
    a.total += x;
  }
  return a;
}

std::optional<Assignment> lexmin_max_assignment(const std::vector<std::vector<Weight>> &w) {
  auto best = max_weight_assignment(w);
  if (!best || w.empty())
    return best;
  const std::size_t n = w.size(), m = w[0].size();
  std::vector<std::vector<Weight>> work = w;
  Assignment out;
  out.total = best->total;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j) {
      if (work[i][j] == kForbidden)
        continue;
      // Pin row i to column j and check the optimum is still reachable.
      auto trial = work;
      for (std::size_t jj = 0; jj < m; ++jj)
        if (jj != j)
          trial[i][jj] = kForbidden;
      for (std::size_t ii = i + 1; ii < n; ++ii)
        trial[ii][j] = kForbidden;
      auto r = max_weight_assignment(trial);
      if (r && r->total == best->total) {
        work = std::move(trial);
        out.row_to_col.push_back(j);
        break;
      }
    }
  }
  return out;
}

} // namespace logdup
