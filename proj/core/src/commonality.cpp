// Commonality search: branch-and-bound over same-predicate atom pairings;
// for a fixed pairing the best renaming is a max-weight bipartite matching
// on variable co-occurrence counts.
#include <algorithm>
#include <numeric>
#include <set>

#include "logdup/assignment.hpp"
#include "logdup/error.hpp"
#include "logdup/metrics.hpp"

namespace logdup {
namespace {

using VarIndex = std::map<std::string, std::size_t>;

VarIndex index_vars(const Goal &g) {
  VarIndex idx;
  for (const std::string &v : variables_of(g))
    idx.emplace(v, idx.size());
  return idx;
}

struct PairInfo {
  bool valid = false;
  std::size_t skel = 0;
  std::vector<std::pair<std::size_t, std::size_t>> var_pairs;

  std::size_t optimistic() const { return skel + var_pairs.size(); }
};

void skeleton(const Term &a, const Term &b, const VarIndex &ia, const VarIndex &ib,
              PairInfo &out) {
  if (a.is_variable() && b.is_variable()) {
    out.var_pairs.emplace_back(ia.at(a.name), ib.at(b.name));
    return;
  }
  if (a.is_variable() || b.is_variable() || a.name != b.name || a.args.size() != b.args.size())
    return;
  ++out.skel;
  for (std::size_t i = 0; i < a.args.size(); ++i)
    skeleton(a.args[i], b.args[i], ia, ib, out);
}

// Max-weight matching value of a sparse non-negative count matrix.
Weight matching_value(const std::vector<std::vector<Weight>> &w) {
  std::vector<std::size_t> rows, cols;
  const std::size_t n = w.size(), m = n ? w[0].size() : 0;
  std::vector<bool> col_used(m, false);
  for (std::size_t i = 0; i < n; ++i) {
    bool any = false;
    for (std::size_t j = 0; j < m; ++j)
      if (w[i][j] != 0) {
        any = true;
        col_used[j] = true;
      }
    if (any)
      rows.push_back(i);
  }
  for (std::size_t j = 0; j < m; ++j)
    if (col_used[j])
      cols.push_back(j);
  if (rows.empty())
    return 0;
  if (rows.size() == 1 || cols.size() == 1) {
    Weight best = 0;
    for (std::size_t i : rows)
      for (std::size_t j : cols)
        best = std::max(best, w[i][j]);
    return best;
  }
  bool transpose = rows.size() > cols.size();
  const auto &r = transpose ? cols : rows;
  const auto &c = transpose ? rows : cols;
  std::vector<std::vector<Weight>> compact(r.size(), std::vector<Weight>(c.size()));
  for (std::size_t i = 0; i < r.size(); ++i)
    for (std::size_t j = 0; j < c.size(); ++j)
      compact[i][j] = transpose ? w[c[j]][r[i]] : w[r[i]][c[j]];
  return max_weight_assignment(compact)->total;
}

// Max-weight matching of a rectangular matrix; unmatched rows map to npos.
std::vector<std::size_t> rectangular_assignment(const std::vector<std::vector<Weight>> &w,
                                                Weight &total) {
  constexpr std::size_t npos = static_cast<std::size_t>(-1);
  const std::size_t n = w.size(), m = n ? w[0].size() : 0;
  std::vector<std::size_t> out(n, npos);
  total = 0;
  if (n == 0 || m == 0)
    return out;
  if (n <= m) {
    Assignment a = *max_weight_assignment(w);
    total = a.total;
    return a.row_to_col;
  }
  std::vector<std::vector<Weight>> t(m, std::vector<Weight>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < m; ++j)
      t[j][i] = w[i][j];
  Assignment a = *max_weight_assignment(t);
  total = a.total;
  for (std::size_t j = 0; j < m; ++j)
    out[a.row_to_col[j]] = j;
  return out;
}

constexpr std::size_t kUnpaired = static_cast<std::size_t>(-1);

// Atoms of one shared predicate. The side with more atoms leaves
// `skips` of them unpaired.
struct Group {
  std::vector<std::size_t> a_atoms;
  std::vector<std::size_t> b_atoms;
  std::size_t a_skips() const {
    return a_atoms.size() > b_atoms.size() ? a_atoms.size() - b_atoms.size() : 0;
  }
  std::size_t pairs() const { return std::min(a_atoms.size(), b_atoms.size()); }
};

// Search over same-predicate pairings of `a` with `b`. Atoms of predicates
// missing on the other side are ignored; in groups of unequal size every
// choice of retained atoms is considered.
class Search {
public:
  Search(const Goal &a, const Goal &b, const SearchLimits &limits)
      : a_(a), b_(b), limits_(limits), ia_(index_vars(a)), ib_(index_vars(b)) {
    std::map<PredSymbol, std::size_t> group_of;
    for (std::size_t i = 0; i < a.size(); ++i) {
      auto [it, fresh] = group_of.emplace(a[i].pred, groups_.size());
      if (fresh)
        groups_.emplace_back();
      groups_[it->second].a_atoms.push_back(i);
    }
    for (std::size_t j = 0; j < b.size(); ++j) {
      auto it = group_of.find(b[j].pred);
      if (it != group_of.end())
        groups_[it->second].b_atoms.push_back(j);
    }
    std::erase_if(groups_, [](const Group &g) { return g.b_atoms.empty(); });

    info_.assign(a.size(), std::vector<PairInfo>(b.size()));
    std::size_t pairs = 0;
    for (const Group &g : groups_) {
      pairs += g.pairs();
      for (std::size_t i : g.a_atoms)
        for (std::size_t j : g.b_atoms) {
          PairInfo &p = info_[i][j];
          p.valid = true;
          p.skel = 1;
          for (std::size_t k = 0; k < a[i].args.size(); ++k)
            skeleton(a[i].args[k], b[j].args[k], ia_, ib_, p);
        }
    }
    for (const Group &g : groups_) {
      order_.insert(order_.end(), g.a_atoms.begin(), g.a_atoms.end());
      group_bound_.push_back(optimistic_rest(g, {}, {}));
      group_end_.push_back(order_.size());
    }
    base_ = pairs == 0 ? 0 : static_cast<Weight>(pairs - 1);
    upper_ = base_ + std::accumulate(group_bound_.begin(), group_bound_.end(), Weight{0});
    weights_.assign(ia_.size(), std::vector<Weight>(ib_.size(), 0));
  }

  GoalAlignment run() {
    partner_.assign(a_.size(), kUnpaired);
    std::set<std::string> va, vb;
    for (const Group &g : groups_) {
      for (std::size_t i : g.a_atoms)
        for (const std::string &v : variables_of(a_[i]))
          va.insert(v);
      for (std::size_t j : g.b_atoms)
        for (const std::string &v : variables_of(b_[j]))
          vb.insert(v);
    }
    bool exact = std::min(va.size(), vb.size()) <= limits_.exact_vars_limit;
    for (const Group &g : groups_)
      exact = exact && std::max(g.a_atoms.size(), g.b_atoms.size()) <= limits_.exact_group_limit;

    heuristic();
    bool complete = false;
    if (exact && best_value_ < upper_) {
      // Seed one below the heuristic so the first optimal leaf in
      // lexicographic order becomes the witness.
      Weight heuristic_value = best_value_;
      best_value_ = heuristic_value - 1;
      std::vector<std::size_t> heuristic_pairing = best_;
      std::vector<bool> used(b_.size(), false);
      complete = dfs(0, 0, 0, 0, used);
      if (best_value_ < heuristic_value) {
        best_value_ = heuristic_value;
        best_ = heuristic_pairing;
      }
    }
    GoalAlignment out;
    out.value = static_cast<std::size_t>(best_value_);
    out.approximate = best_value_ < upper_ && !(exact && complete);
    for (std::size_t i = 0; i < a_.size(); ++i)
      if (best_[i] != kUnpaired)
        out.atom_pairing.emplace_back(i, best_[i]);
    set_renaming(out, exact);
    return out;
  }

private:
  Weight evaluate(const std::vector<std::size_t> &pairing) const {
    std::vector<std::vector<Weight>> w(ia_.size(), std::vector<Weight>(ib_.size(), 0));
    Weight skel = 0;
    for (std::size_t i = 0; i < pairing.size(); ++i) {
      if (pairing[i] == kUnpaired)
        continue;
      const PairInfo &p = info_[i][pairing[i]];
      skel += static_cast<Weight>(p.skel);
      for (auto [x, y] : p.var_pairs)
        ++w[x][y];
    }
    return base_ + skel + matching_value(w);
  }

  void consider(const std::vector<std::size_t> &pairing) {
    Weight v = evaluate(pairing);
    if (v > best_value_ || best_.empty()) {
      best_value_ = v;
      best_ = pairing;
    }
  }

  // Optimistic value of pairing the unassigned atoms of `g`.
  Weight optimistic_rest(const Group &g, const std::vector<bool> &a_done,
                         const std::vector<bool> &b_used) const {
    std::vector<std::size_t> rows, cols;
    for (std::size_t i : g.a_atoms)
      if (a_done.empty() || !a_done[i])
        rows.push_back(i);
    for (std::size_t j : g.b_atoms)
      if (b_used.empty() || !b_used[j])
        cols.push_back(j);
    std::vector<std::vector<Weight>> w(rows.size(), std::vector<Weight>(cols.size()));
    for (std::size_t r = 0; r < rows.size(); ++r)
      for (std::size_t c = 0; c < cols.size(); ++c)
        w[r][c] = static_cast<Weight>(info_[rows[r]][cols[c]].optimistic());
    Weight total = 0;
    rectangular_assignment(w, total);
    return total;
  }

  void heuristic() {
    std::vector<std::size_t> pairing(a_.size(), kUnpaired);
    // Source order.
    for (const Group &g : groups_)
      for (std::size_t k = 0; k < g.pairs(); ++k)
        pairing[g.a_atoms[k]] = g.b_atoms[k];
    consider(pairing);
    // Optimistic-weight assignment per group.
    std::fill(pairing.begin(), pairing.end(), kUnpaired);
    for (const Group &g : groups_) {
      std::vector<std::vector<Weight>> w(g.a_atoms.size(), std::vector<Weight>(g.b_atoms.size()));
      for (std::size_t r = 0; r < g.a_atoms.size(); ++r)
        for (std::size_t c = 0; c < g.b_atoms.size(); ++c)
          w[r][c] = static_cast<Weight>(info_[g.a_atoms[r]][g.b_atoms[c]].optimistic());
      Weight total = 0;
      auto asg = rectangular_assignment(w, total);
      for (std::size_t r = 0; r < g.a_atoms.size(); ++r)
        if (asg[r] != kUnpaired)
          pairing[g.a_atoms[r]] = g.b_atoms[asg[r]];
    }
    consider(pairing);
    // Pairwise swaps, and moves onto unused atoms, until no improvement.
    std::vector<std::size_t> cur = best_;
    Weight cur_value = best_value_;
    auto try_change = [&](std::size_t i, std::size_t j_new) {
      std::size_t old = cur[i];
      cur[i] = j_new;
      Weight v = evaluate(cur);
      if (v > cur_value) {
        cur_value = v;
        return true;
      }
      cur[i] = old;
      return false;
    };
    for (std::size_t pass = 0; pass < 16 && cur_value < upper_; ++pass) {
      bool improved = false;
      for (const Group &g : groups_) {
        for (std::size_t p = 0; p < g.a_atoms.size(); ++p)
          for (std::size_t q = p + 1; q < g.a_atoms.size(); ++q) {
            std::swap(cur[g.a_atoms[p]], cur[g.a_atoms[q]]);
            Weight v = evaluate(cur);
            if (v > cur_value) {
              cur_value = v;
              improved = true;
            } else {
              std::swap(cur[g.a_atoms[p]], cur[g.a_atoms[q]]);
            }
          }
        if (g.b_atoms.size() > g.a_atoms.size())
          for (std::size_t i : g.a_atoms)
            for (std::size_t j : g.b_atoms)
              if (std::find(cur.begin(), cur.end(), j) == cur.end())
                improved = try_change(i, j) || improved;
      }
      if (!improved)
        break;
    }
    if (cur_value > best_value_) {
      best_value_ = cur_value;
      best_ = cur;
    }
  }

  // Returns false when the node budget ran out.
  bool dfs(std::size_t pos, std::size_t group, std::size_t skipped, Weight skel,
           std::vector<bool> &used) {
    if (++visited_ > limits_.node_budget)
      return false;
    if (pos == order_.size()) {
      Weight v = base_ + skel + matching_value(weights_);
      if (v > best_value_) {
        best_value_ = v;
        best_ = partner_;
      }
      return true;
    }
    while (pos >= group_end_[group]) {
      ++group;
      skipped = 0;
    }
    const Group &g = groups_[group];
    std::size_t i = order_[pos];
    for (std::size_t j : g.b_atoms) {
      if (used[j])
        continue;
      const PairInfo &p = info_[i][j];
      used[j] = true;
      partner_[i] = j;
      for (auto [x, y] : p.var_pairs)
        ++weights_[x][y];
      Weight s = skel + static_cast<Weight>(p.skel);
      Weight bound = base_ + s + matching_value(weights_) + rest_bound(pos + 1, group, used);
      bool ok = true;
      if (bound > best_value_)
        ok = dfs(pos + 1, group, skipped, s, used);
      for (auto [x, y] : p.var_pairs)
        --weights_[x][y];
      used[j] = false;
      partner_[i] = kUnpaired;
      if (!ok)
        return false;
      if (best_value_ == upper_)
        return true;
    }
    if (skipped < g.a_skips()) {
      Weight bound = base_ + skel + matching_value(weights_) + rest_bound(pos + 1, group, used);
      if (bound > best_value_ && !dfs(pos + 1, group, skipped + 1, skel, used))
        return false;
    }
    return true;
  }

  Weight rest_bound(std::size_t next, std::size_t group, const std::vector<bool> &used) const {
    Weight r = 0;
    if (next < group_end_[group]) {
      std::vector<bool> done(a_.size(), false);
      for (std::size_t k = 0; k < next; ++k)
        done[order_[k]] = true;
      r += optimistic_rest(groups_[group], done, used);
    }
    for (std::size_t g = group + 1; g < groups_.size(); ++g)
      r += group_bound_[g];
    return r;
  }

  // Renames the side with fewer variables among the paired atoms.
  void set_renaming(GoalAlignment &out, bool lexmin) const {
    std::vector<std::string> va(ia_.size()), vb(ib_.size());
    for (const auto &[v, k] : ia_)
      va[k] = v;
    for (const auto &[v, k] : ib_)
      vb[k] = v;
    std::vector<bool> in_a(va.size(), false), in_b(vb.size(), false);
    std::vector<std::vector<Weight>> full(va.size(), std::vector<Weight>(vb.size(), 0));
    for (auto [i, j] : out.atom_pairing) {
      for (const std::string &v : variables_of(a_[i]))
        in_a[ia_.at(v)] = true;
      for (const std::string &v : variables_of(b_[j]))
        in_b[ib_.at(v)] = true;
      for (auto [x, y] : info_[i][j].var_pairs)
        ++full[x][y];
    }
    std::vector<std::size_t> rows, cols;
    for (std::size_t x = 0; x < va.size(); ++x)
      if (in_a[x])
        rows.push_back(x);
    for (std::size_t y = 0; y < vb.size(); ++y)
      if (in_b[y])
        cols.push_back(y);
    out.renaming_from_left = rows.size() <= cols.size();
    if (!out.renaming_from_left)
      std::swap(rows, cols);
    if (rows.empty())
      return;
    std::vector<std::vector<Weight>> w(rows.size(), std::vector<Weight>(cols.size()));
    for (std::size_t r = 0; r < rows.size(); ++r)
      for (std::size_t c = 0; c < cols.size(); ++c)
        w[r][c] = out.renaming_from_left ? full[rows[r]][cols[c]] : full[cols[c]][rows[r]];
    auto asg = lexmin ? lexmin_max_assignment(w) : max_weight_assignment(w);
    const auto &from = out.renaming_from_left ? va : vb;
    const auto &to = out.renaming_from_left ? vb : va;
    for (std::size_t r = 0; r < rows.size(); ++r)
      out.renaming.emplace(from[rows[r]], to[cols[asg->row_to_col[r]]]);
  }

  const Goal &a_;
  const Goal &b_;
  SearchLimits limits_;
  VarIndex ia_, ib_;
  std::vector<Group> groups_;
  std::vector<std::vector<PairInfo>> info_;
  std::vector<std::size_t> order_;
  std::vector<std::size_t> group_end_;
  std::vector<Weight> group_bound_;
  Weight base_ = 0;
  Weight upper_ = 0;
  std::vector<std::vector<Weight>> weights_;
  std::vector<std::size_t> partner_;
  std::vector<std::size_t> best_;
  Weight best_value_ = -1;
  std::size_t visited_ = 0;
};

// Exact when either direction completes; otherwise the better of both.
GoalAlignment search_both(const Goal &a, const Goal &b, const SearchLimits &limits) {
  GoalAlignment fwd = Search(a, b, limits).run();
  if (!fwd.approximate)
    return fwd;
  GoalAlignment bwd = Search(b, a, limits).run();
  for (auto &p : bwd.atom_pairing)
    std::swap(p.first, p.second);
  std::sort(bwd.atom_pairing.begin(), bwd.atom_pairing.end());
  bwd.renaming_from_left = !bwd.renaming_from_left;
  if (!bwd.approximate || bwd.value > fwd.value)
    return bwd;
  return fwd;
}

} // namespace

GoalAlignment commonality(const Goal &a, const Goal &b, const SearchLimits &limits) {
  if (predicate_multiset(a) != predicate_multiset(b))
    throw ContractViolation("commonality needs goals with equal predicate multisets");
  return search_both(a, b, limits);
}

GoalAlignment goal_similarity(const Goal &a, const Goal &b, const SearchLimits &limits) {
  return search_both(a, b, limits);
}

} // namespace logdup
