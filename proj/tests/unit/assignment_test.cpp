#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>
#include <random>

#include "logdup/assignment.hpp"

using namespace logdup;

namespace {

// Exhaustive maximum over injective row -> column maps.
std::optional<Weight> brute_force(const std::vector<std::vector<Weight>> &w) {
  std::size_t rows = w.size(), cols = rows ? w[0].size() : 0;
  std::vector<std::size_t> perm(cols);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::optional<Weight> best;
  do {
    Weight total = 0;
    bool ok = true;
    for (std::size_t r = 0; r < rows; ++r) {
      if (w[r][perm[r]] == kForbidden) {
        ok = false;
        break;
      }
      total += w[r][perm[r]];
    }
    if (ok && (!best || total > *best))
      best = total;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

} // namespace

TEST(Assignment, Empty) {
  auto a = max_weight_assignment({});
  ASSERT_TRUE(a);
  EXPECT_EQ(a->total, 0);
}

TEST(Assignment, SmallKnown) {
  auto a = max_weight_assignment({{1, 5}, {4, 1}});
  ASSERT_TRUE(a);
  EXPECT_EQ(a->total, 9);
  EXPECT_EQ(a->row_to_col, (std::vector<std::size_t>{1, 0}));
}

TEST(Assignment, ForbiddenOnlyCompletion) {
  EXPECT_FALSE(max_weight_assignment({{kForbidden, 3}, {kForbidden, 2}}));
  auto a = max_weight_assignment({{kForbidden, 3}, {1, kForbidden}});
  ASSERT_TRUE(a);
  EXPECT_EQ(a->total, 4);
}

TEST(Assignment, LexminAmongOptima) {
  auto a = lexmin_max_assignment({{2, 2, 2}, {2, 2, 2}});
  ASSERT_TRUE(a);
  EXPECT_EQ(a->row_to_col, (std::vector<std::size_t>{0, 1}));
  auto b = lexmin_max_assignment({{1, 1}, {0, 1}});
  ASSERT_TRUE(b);
  EXPECT_EQ(b->row_to_col, (std::vector<std::size_t>{0, 1}));
}

TEST(Assignment, AgreesWithBruteForce) {
  std::mt19937_64 rng(7);
  std::uniform_int_distribution<int> dim(1, 5), val(-4, 9), forbid(0, 5);
  for (int it = 0; it < 400; ++it) {
    std::size_t rows = static_cast<std::size_t>(dim(rng));
    std::size_t cols = rows + static_cast<std::size_t>(dim(rng) % 2);
    std::vector<std::vector<Weight>> w(rows, std::vector<Weight>(cols));
    for (auto &row : w)
      for (auto &x : row)
        x = forbid(rng) == 0 ? kForbidden : val(rng);
    auto expected = brute_force(w);
    auto got = max_weight_assignment(w);
    auto lex = lexmin_max_assignment(w);
    ASSERT_EQ(expected.has_value(), got.has_value());
    ASSERT_EQ(expected.has_value(), lex.has_value());
    if (!expected)
      continue;
    EXPECT_EQ(got->total, *expected);
    EXPECT_EQ(lex->total, *expected);
    Weight sum = 0;
    for (std::size_t r = 0; r < rows; ++r)
      sum += w[r][lex->row_to_col[r]];
    EXPECT_EQ(sum, *expected);
  }
}
