#include "logdup/structure.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "logdup/assignment.hpp"
#include "logdup/error.hpp"
#include "aligned_clause.hpp"

namespace logdup {

ArgPermutation ArgPermutation::identity(std::size_t n) {
  ArgPermutation p;
  p.mapping.resize(n);
  std::iota(p.mapping.begin(), p.mapping.end(), std::size_t{0});
  return p;
}

bool ArgPermutation::is_bijection() const {
  std::vector<bool> seen(mapping.size(), false);
  for (std::size_t m : mapping) {
    if (m >= mapping.size() || seen[m])
      return false;
    seen[m] = true;
  }
  return true;
}

Atom ArgPermutation::apply(const Atom &a, const PredSymbol &target) const {
  if (a.args.size() != mapping.size() || target.arity != mapping.size())
    throw ContractViolation("argument permutation arity mismatch for " + a.pred.str());
  Atom out;
  out.pred = target;
  out.args.resize(a.args.size());
  for (std::size_t i = 0; i < a.args.size(); ++i)
    out.args[mapping[i]] = a.args[i];
  return out;
}

namespace detail {

namespace {

bool var_var_equation(const Atom &a) {
  return a.pred.name == "=" && a.pred.arity == 2 && a.args[0].is_variable() &&
         a.args[1].is_variable();
}

// Renames `a` by `full`; unmapped variables are renamed apart. A var-var
// equation is flipped when the flip agrees better with `r`.
Atom oriented(const Atom &a, const Renaming &full, const Atom &r) {
  Renaming apart = full;
  for (const std::string &v : variables_of(a))
    apart.emplace(v, "#L" + v);
  Atom l = rename(a, apart);
  if (var_var_equation(l)) {
    Atom flipped = l;
    std::swap(flipped.args[0], flipped.args[1]);
    if (strict_commonality(flipped, r) > strict_commonality(l, r))
      return flipped;
  }
  return l;
}

void extend(const Term &l, const Term &r, Renaming &full, std::set<std::string> &used) {
  if (l.is_variable()) {
    if (r.is_variable() && !full.count(l.name) && !used.count(r.name)) {
      full.emplace(l.name, r.name);
      used.insert(r.name);
    }
    return;
  }
  if (r.is_compound() && l.name == r.name && l.arity() == r.arity())
    for (std::size_t i = 0; i < l.arity(); ++i)
      extend(l.args[i], r.args[i], full, used);
}

} // namespace

ClauseSegments structural_segments(const Clause &c, const Scc &s) {
  ClauseSegments seg = segment_clause(c, s);
  std::vector<std::string> head = variables_of(seg.head);
  auto rank = [&](const std::string &v) {
    return static_cast<std::size_t>(std::find(head.begin(), head.end(), v) - head.begin());
  };
  std::vector<std::size_t> parent(head.size());
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x)
      x = parent[x] = parent[parent[x]];
    return x;
  };
  bool any = false;
  for (const Goal &g : seg.segments)
    for (const Atom &a : g) {
      if (!var_var_equation(a))
        continue;
      std::size_t x = rank(a.args[0].name), y = rank(a.args[1].name);
      if (x == head.size() || y == head.size() || find(x) == find(y))
        continue;
      std::size_t rx = find(x), ry = find(y);
      parent[std::max(rx, ry)] = std::min(rx, ry);
      any = true;
    }
  if (!any)
    return seg;
  Renaming fold;
  for (std::size_t i = 0; i < head.size(); ++i)
    fold.emplace(head[i], head[find(i)]);
  seg.head = rename(seg.head, fold);
  for (Atom &a : seg.recursive_calls)
    a = rename(a, fold);
  for (Goal &g : seg.segments)
    g = rename(g, fold);
  return seg;
}

AlignedClause align_clause(const ClauseSegments &ls, const ClauseSegments &rs,
                           const Renaming &rho, const std::map<PredSymbol, PredSymbol> &pm,
                           const std::map<PredSymbol, ArgPermutation> &perms,
                           const std::vector<GoalAlignment> &segments) {
  Renaming full = rho;
  std::set<std::string> used;
  for (const auto &[from, to] : rho)
    used.insert(to);

  // Re-pair each segment within its predicate groups so that the pairing
  // agrees with rho, then extend rho over the segment variables.
  std::vector<std::vector<std::pair<std::size_t, std::size_t>>> pairings;
  for (std::size_t k = 0; k < ls.segments.size(); ++k) {
    const Goal &lg = ls.segments[k], &rg = rs.segments[k];
    std::map<PredSymbol, std::pair<std::vector<std::size_t>, std::vector<std::size_t>>> groups;
    for (auto [a, b] : segments.at(k).atom_pairing) {
      groups[lg[a].pred].first.push_back(a);
      groups[lg[a].pred].second.push_back(b);
    }
    std::vector<std::pair<std::size_t, std::size_t>> pairing;
    for (auto &[pred, g] : groups) {
      auto &[as, bs] = g;
      std::sort(bs.begin(), bs.end());
      std::vector<std::vector<Weight>> w(as.size(), std::vector<Weight>(bs.size()));
      for (std::size_t x = 0; x < as.size(); ++x)
        for (std::size_t y = 0; y < bs.size(); ++y)
          w[x][y] = static_cast<Weight>(
              strict_commonality(oriented(lg[as[x]], rho, rg[bs[y]]), rg[bs[y]]));
      auto asg = lexmin_max_assignment(w);
      for (std::size_t x = 0; x < as.size(); ++x)
        pairing.emplace_back(as[x], bs[asg->row_to_col[x]]);
    }
    std::sort(pairing.begin(), pairing.end());
    for (auto [a, b] : pairing) {
      Atom src = lg[a];
      const Atom &r = rg[b];
      if (var_var_equation(src) && var_var_equation(r)) {
        auto maps_to = [&](const Term &v, const Term &t) {
          auto it = full.find(v.name);
          return it != full.end() && it->second == t.name;
        };
        if (maps_to(src.args[1], r.args[0]) || maps_to(src.args[0], r.args[1]))
          std::swap(src.args[0], src.args[1]);
      }
      for (std::size_t i = 0; i < src.args.size(); ++i)
        extend(src.args[i], r.args[i], full, used);
    }
    pairings.push_back(std::move(pairing));
  }

  AlignedClause out;
  auto anchor = [&](const Atom &la, const Atom &ra) {
    out.left.push_back(perms.at(la.pred).apply(rename(la, full), pm.at(la.pred)));
    out.right.push_back(ra);
  };
  anchor(ls.head, rs.head);
  for (std::size_t k = 0; k < ls.recursive_calls.size(); ++k)
    anchor(ls.recursive_calls[k], rs.recursive_calls[k]);
  for (std::size_t k = 0; k < ls.segments.size(); ++k) {
    for (auto [a, b] : pairings[k]) {
      out.left.push_back(oriented(ls.segments[k][a], full, rs.segments[k][b]));
      out.right.push_back(rs.segments[k][b]);
    }
    out.segment_sizes.push_back(pairings[k].size());
  }
  return out;
}

} // namespace detail

namespace {

std::vector<Atom> anchors(const ClauseSegments &s) {
  std::vector<Atom> out{s.head};
  out.insert(out.end(), s.recursive_calls.begin(), s.recursive_calls.end());
  return out;
}

bool match_term(const Term &a, const Term &b, Renaming &fwd, Renaming &bwd) {
  if (a.is_variable() != b.is_variable())
    return false;
  if (a.is_variable()) {
    auto [f, f_new] = fwd.try_emplace(a.name, b.name);
    auto [g, g_new] = bwd.try_emplace(b.name, a.name);
    return f->second == b.name && g->second == a.name;
  }
  if (a.name != b.name || a.args.size() != b.args.size())
    return false;
  for (std::size_t i = 0; i < a.args.size(); ++i)
    if (!match_term(a.args[i], b.args[i], fwd, bwd))
      return false;
  return true;
}

using PredMap = std::map<PredSymbol, PredSymbol>;
using PermMap = std::map<PredSymbol, ArgPermutation>;

// Renaming that makes every permuted left anchor equal its right anchor,
// considering only the first `count` anchors.
std::optional<Renaming> match_anchors(const std::vector<Atom> &l, const std::vector<Atom> &r,
                                      const PredMap &pm, const PermMap &perms,
                                      std::size_t count = static_cast<std::size_t>(-1)) {
  if (l.size() != r.size())
    return std::nullopt;
  Renaming fwd, bwd;
  for (std::size_t i = 0; i < l.size() && i < count; ++i) {
    auto pit = pm.find(l[i].pred);
    if (pit == pm.end() || pit->second != r[i].pred)
      return std::nullopt;
    auto perm = perms.find(l[i].pred);
    if (perm == perms.end())
      return std::nullopt;
    for (std::size_t j = 0; j < l[i].args.size(); ++j)
      if (!match_term(l[i].args[j], r[i].args[perm->second.mapping[j]], fwd, bwd))
        return std::nullopt;
  }
  return fwd;
}

struct PreparedScc {
  const Scc *scc;
  std::vector<ClauseSegments> segments;
  std::vector<std::vector<Atom>> anchors;

  explicit PreparedScc(const Scc &s) : scc(&s) {
    for (const Clause &c : s.clauses) {
      segments.push_back(detail::structural_segments(c, s));
      anchors.push_back(logdup::anchors(segments.back()));
    }
  }

  std::vector<std::size_t> recursion_profile(const PredSymbol &p) const {
    std::vector<std::size_t> out;
    for (std::size_t i : scc->clauses_of(p))
      out.push_back(segments[i].recursion_count());
    std::sort(out.begin(), out.end());
    return out;
  }
};

// Every predicate bijection that agrees on arity, clause count and the
// multiset of recursive-call counts, in lexicographic order.
std::vector<PredMap> predicate_bijections(const PreparedScc &l, const PreparedScc &r) {
  const auto &lm = l.scc->members, &rm = r.scc->members;
  std::vector<PredMap> out;
  if (lm.size() != rm.size())
    return out;
  std::vector<bool> used(rm.size(), false);
  PredMap cur;
  auto rec = [&](auto &&self, std::size_t i) -> void {
    if (i == lm.size()) {
      out.push_back(cur);
      return;
    }
    for (std::size_t j = 0; j < rm.size(); ++j) {
      if (used[j] || lm[i].arity != rm[j].arity ||
          l.recursion_profile(lm[i]) != r.recursion_profile(rm[j]))
        continue;
      used[j] = true;
      cur[lm[i]] = rm[j];
      self(self, i + 1);
      cur.erase(lm[i]);
      used[j] = false;
    }
  };
  rec(rec, 0);
  return out;
}

std::vector<std::string> position_signature(const PreparedScc &s, const PredSymbol &p,
                                            std::size_t pos) {
  std::vector<std::string> sig;
  for (const auto &anchor_list : s.anchors)
    for (const Atom &a : anchor_list)
      if (a.pred == p) {
        const Term &t = a.args[pos];
        sig.push_back(t.is_variable() ? std::string("_") : t.name + "/" + std::to_string(t.arity()));
      }
  std::sort(sig.begin(), sig.end());
  return sig;
}

// Candidate permutations; the flag is set when the list is not exhaustive.
std::vector<ArgPermutation> permutation_candidates(const PreparedScc &l, const PredSymbol &lp,
                                                   const PreparedScc &r, const PredSymbol &rp,
                                                   std::size_t arity_limit, bool &partial) {
  const std::size_t n = lp.arity;
  std::vector<ArgPermutation> out;
  if (n <= arity_limit) {
    ArgPermutation p = ArgPermutation::identity(n);
    do
      out.push_back(p);
    while (std::next_permutation(p.mapping.begin(), p.mapping.end()));
    return out;
  }
  partial = true;
  auto order = [&](const PreparedScc &s, const PredSymbol &p) {
    std::vector<std::pair<std::vector<std::string>, std::size_t>> keyed;
    for (std::size_t i = 0; i < n; ++i)
      keyed.emplace_back(position_signature(s, p, i), i);
    std::sort(keyed.begin(), keyed.end());
    std::vector<std::size_t> idx;
    for (auto &k : keyed)
      idx.push_back(k.second);
    return idx;
  };
  std::vector<std::size_t> lo = order(l, lp), ro = order(r, rp);
  ArgPermutation seeded;
  seeded.mapping.resize(n);
  for (std::size_t k = 0; k < n; ++k)
    seeded.mapping[lo[k]] = ro[k];
  out.push_back(seeded);
  if (!(seeded == ArgPermutation::identity(n)))
    out.push_back(ArgPermutation::identity(n));
  return out;
}

// Perfect matching existence over a 0/1 compatibility relation.
bool has_perfect_matching(const std::vector<std::vector<bool>> &ok) {
  if (ok.empty())
    return true;
  std::vector<std::vector<Weight>> w(ok.size(), std::vector<Weight>(ok[0].size()));
  for (std::size_t i = 0; i < ok.size(); ++i)
    for (std::size_t j = 0; j < ok[i].size(); ++j)
      w[i][j] = ok[i][j] ? 0 : kForbidden;
  return max_weight_assignment(w).has_value();
}

class ClosenessSearch {
public:
  ClosenessSearch(const Scc &left, const Scc &right, const StructureOptions &opts,
                  std::size_t ceiling)
      : l_(left), r_(right), opts_(opts), ceiling_(ceiling),
        seg_cache_(left.clauses.size(), std::vector<std::optional<Segs>>(right.clauses.size())) {}

  std::optional<SimilarityResult> run() {
    if (l_.scc->members.size() != r_.scc->members.size() ||
        l_.scc->clauses.size() != r_.scc->clauses.size())
      return std::nullopt;
    for (const PredMap &pm : predicate_bijections(l_, r_)) {
      pm_ = &pm;
      perm_lists_.clear();
      for (const auto &lp : l_.scc->members)
        perm_lists_.push_back(
            permutation_candidates(l_, lp, r_, pm.at(lp), opts_.arity_limit, partial_perms_));
      perms_.clear();
      if (!search(0) || done())
        break;
    }
    if (!best_)
      return std::nullopt;
    return finish();
  }

private:
  struct Segs {
    std::size_t value = 0;
    bool approximate = false;
    std::vector<GoalAlignment> alignments;
  };

  struct Best {
    std::size_t total = 0;
    std::size_t coherence = 0;
    bool coherent = false;
    PredMap pm;
    PermMap perms;
    std::vector<std::size_t> clause_mapping;
  };

  bool done() const { return best_ && best_->total >= ceiling_ && best_->coherent; }

  const Segs &segs(std::size_t i, std::size_t j) {
    auto &slot = seg_cache_[i][j];
    if (!slot) {
      Segs s;
      const auto &a = l_.segments[i].segments, &b = r_.segments[j].segments;
      for (std::size_t k = 0; k < a.size(); ++k) {
        GoalAlignment al = goal_similarity(a[k], b[k], opts_.goal_limits);
        s.value += al.value;
        s.approximate = s.approximate || al.approximate;
        s.alignments.push_back(std::move(al));
      }
      slot = std::move(s);
    }
    return *slot;
  }

  // Head-level pruning for member `i` under its tentative permutation.
  bool heads_compatible(std::size_t i) const {
    const PredSymbol &lp = l_.scc->members[i];
    const PredSymbol &rp = pm_->at(lp);
    auto li = l_.scc->clauses_of(lp), ri = r_.scc->clauses_of(rp);
    if (li.size() != ri.size())
      return false;
    std::vector<std::vector<bool>> ok(li.size(), std::vector<bool>(ri.size(), false));
    for (std::size_t a = 0; a < li.size(); ++a)
      for (std::size_t b = 0; b < ri.size(); ++b)
        ok[a][b] = l_.segments[li[a]].recursion_count() == r_.segments[ri[b]].recursion_count() &&
                   match_anchors(l_.anchors[li[a]], r_.anchors[ri[b]], *pm_, perms_, 1);
    return has_perfect_matching(ok);
  }

  // Returns false when the witness cap stopped the search.
  bool search(std::size_t i) {
    if (done())
      return true;
    const auto &members = l_.scc->members;
    if (i == members.size()) {
      if (++tuples_ > opts_.witness_cap) {
        truncated_ = true;
        return false;
      }
      evaluate();
      return true;
    }
    for (const ArgPermutation &p : perm_lists_[i]) {
      perms_[members[i]] = p;
      if (heads_compatible(i) && !search(i + 1))
        return false;
      if (done())
        return true;
    }
    perms_.erase(members[i]);
    return true;
  }

  void evaluate() {
    std::vector<std::size_t> mapping(l_.scc->clauses.size());
    std::size_t total = 0;
    for (const auto &lp : l_.scc->members) {
      auto li = l_.scc->clauses_of(lp), ri = r_.scc->clauses_of(pm_->at(lp));
      std::vector<std::vector<Weight>> w(li.size(), std::vector<Weight>(ri.size(), kForbidden));
      for (std::size_t a = 0; a < li.size(); ++a)
        for (std::size_t b = 0; b < ri.size(); ++b)
          if (match_anchors(l_.anchors[li[a]], r_.anchors[ri[b]], *pm_, perms_))
            w[a][b] = static_cast<Weight>(segs(li[a], ri[b]).value);
      auto asg = lexmin_max_assignment(w);
      if (!asg)
        return;
      for (std::size_t a = 0; a < li.size(); ++a)
        mapping[li[a]] = ri[asg->row_to_col[a]];
      total += static_cast<std::size_t>(asg->total);
    }
    for (std::size_t j = 0; j < r_.scc->clauses.size(); ++j) {
      total += 1;
      for (const Atom &a : r_.anchors[j])
        total += total_nodes(a);
    }
    if (best_ && total < best_->total)
      return;
    // Ties on sigma go to the witness whose renaming agrees best with the
    // segment alignments.
    std::size_t coherence = 0, room = 0;
    for (std::size_t i = 0; i < mapping.size(); ++i) {
      const ClauseSegments &ls = l_.segments[i], &rs = r_.segments[mapping[i]];
      auto rho = match_anchors(l_.anchors[i], r_.anchors[mapping[i]], *pm_, perms_);
      detail::AlignedClause ac =
          detail::align_clause(ls, rs, *rho, *pm_, perms_, segs(i, mapping[i]).alignments);
      coherence += strict_commonality(ac.left, ac.right);
      room += total_nodes(ac.right);
    }
    if (!best_ || total > best_->total || coherence > best_->coherence)
      best_ = Best{total, coherence, coherence == room, *pm_, perms_, mapping};
  }

  SimilarityResult finish() {
    SimilarityResult out;
    out.sigma = best_->total;
    StructureWitness &w = out.witness;
    w.predicate_mapping = best_->pm;
    w.arg_permutations = best_->perms;
    w.clause_mapping = best_->clause_mapping;
    bool approx = truncated_ || partial_perms_;
    for (std::size_t i = 0; i < l_.scc->clauses.size(); ++i) {
      std::size_t j = w.clause_mapping[i];
      w.renamings.push_back(
          *match_anchors(l_.anchors[i], r_.anchors[j], w.predicate_mapping, w.arg_permutations));
      const Segs &s = segs(i, j);
      approx = approx || s.approximate;
      out.segment_alignments.push_back(s.alignments);
    }
    out.approximate = approx;
    return out;
  }

  PreparedScc l_, r_;
  StructureOptions opts_;
  std::size_t ceiling_;
  std::vector<std::vector<std::optional<Segs>>> seg_cache_;
  const PredMap *pm_ = nullptr;
  std::vector<std::vector<ArgPermutation>> perm_lists_;
  PermMap perms_;
  std::size_t tuples_ = 0;
  bool truncated_ = false;
  bool partial_perms_ = false;
  std::optional<Best> best_;
};

} // namespace

std::vector<StructureWitness> find_structure_witnesses(const Scc &left, const Scc &right,
                                                       const StructureOptions &opts) {
  std::vector<StructureWitness> out;
  PreparedScc l(left), r(right);
  if (left.members.size() != right.members.size() ||
      left.clauses.size() != right.clauses.size())
    return out;

  for (const PredMap &pm : predicate_bijections(l, r)) {
    // Clause bijections: per member, every ordering of the image's clauses
    // with matching recursive-call counts.
    std::vector<std::vector<std::vector<std::size_t>>> per_member;
    bool feasible = true;
    for (const auto &lp : left.members) {
      auto li = left.clauses_of(lp), ri = right.clauses_of(pm.at(lp));
      std::vector<std::vector<std::size_t>> options;
      std::vector<std::size_t> perm = ri;
      std::sort(perm.begin(), perm.end());
      do {
        bool ok = true;
        for (std::size_t a = 0; a < li.size() && ok; ++a)
          ok = l.segments[li[a]].recursion_count() == r.segments[perm[a]].recursion_count();
        if (ok)
          options.push_back(perm);
      } while (std::next_permutation(perm.begin(), perm.end()));
      if (options.empty())
        feasible = false;
      per_member.push_back(std::move(options));
    }
    if (!feasible)
      continue;

    std::vector<std::vector<ArgPermutation>> perm_lists;
    bool partial = false;
    for (const auto &lp : left.members)
      perm_lists.push_back(permutation_candidates(l, lp, r, pm.at(lp), opts.arity_limit, partial));

    std::vector<std::size_t> clause_mapping(left.clauses.size());
    PermMap perms;
    auto over_perms = [&](auto &&self, std::size_t i) -> bool {
      if (i == left.members.size()) {
        StructureWitness w;
        w.predicate_mapping = pm;
        w.clause_mapping = clause_mapping;
        w.arg_permutations = perms;
        for (std::size_t c = 0; c < left.clauses.size(); ++c) {
          auto rho = match_anchors(l.anchors[c], r.anchors[clause_mapping[c]], pm, perms);
          if (!rho)
            return true;
          w.renamings.push_back(std::move(*rho));
        }
        out.push_back(std::move(w));
        return out.size() < opts.witness_cap;
      }
      for (const ArgPermutation &p : perm_lists[i]) {
        perms[left.members[i]] = p;
        if (!self(self, i + 1))
          return false;
      }
      return true;
    };
    auto over_clauses = [&](auto &&self, std::size_t i) -> bool {
      if (i == left.members.size())
        return over_perms(over_perms, 0);
      auto li = left.clauses_of(left.members[i]);
      for (const auto &option : per_member[i]) {
        for (std::size_t a = 0; a < li.size(); ++a)
          clause_mapping[li[a]] = option[a];
        if (!self(self, i + 1))
          return false;
      }
      return true;
    };
    if (!over_clauses(over_clauses, 0))
      break;
  }
  return out;
}

std::string witness_error(const Scc &left, const Scc &right, const StructureWitness &w) {
  const auto &lm = left.members;
  if (w.predicate_mapping.size() != lm.size() || right.members.size() != lm.size())
    return "predicate mapping does not cover the members";
  std::set<PredSymbol> images;
  for (const auto &p : lm) {
    auto it = w.predicate_mapping.find(p);
    if (it == w.predicate_mapping.end())
      return "predicate " + p.str() + " is not mapped";
    if (!right.contains(it->second))
      return "image " + it->second.str() + " is not a member of the right SCC";
    if (it->second.arity != p.arity)
      return "predicate " + p.str() + " mapped to a different arity";
    images.insert(it->second);
    auto perm = w.arg_permutations.find(p);
    if (perm == w.arg_permutations.end() || perm->second.mapping.size() != p.arity ||
        !perm->second.is_bijection())
      return "missing or invalid argument permutation for " + p.str();
  }
  if (images.size() != lm.size())
    return "predicate mapping is not injective";
  if (w.arg_permutations.size() != lm.size())
    return "argument permutations for non-members";
  const std::size_t n = left.clauses.size();
  if (w.clause_mapping.size() != n || right.clauses.size() != n || w.renamings.size() != n)
    return "clause mapping does not cover the clauses";
  std::vector<bool> hit(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t j = w.clause_mapping[i];
    if (j >= n || hit[j])
      return "clause mapping is not a bijection";
    hit[j] = true;
    if (w.predicate_mapping.at(left.clauses[i].head.pred) != right.clauses[j].head.pred)
      return "clause mapping breaks predicate grouping";
    std::vector<Atom> la = anchors(detail::structural_segments(left.clauses[i], left));
    std::vector<Atom> ra = anchors(detail::structural_segments(right.clauses[j], right));
    if (la.size() != ra.size())
      return "clause " + std::to_string(i) + " has a different number of recursive calls";
    const Renaming &rho = w.renamings[i];
    std::vector<std::string> domain = variables_of(Goal(la.begin(), la.end()));
    if (domain.size() != rho.size() ||
        !std::all_of(domain.begin(), domain.end(), [&](const auto &v) { return rho.count(v); }))
      return "renaming of clause " + std::to_string(i) + " does not cover head and calls";
    std::set<std::string> targets;
    for (const auto &[from, to] : rho)
      targets.insert(to);
    if (targets.size() != rho.size())
      return "renaming of clause " + std::to_string(i) + " is not injective";
    for (std::size_t k = 0; k < la.size(); ++k) {
      const Atom &a = la[k];
      if (w.predicate_mapping.at(a.pred) != ra[k].pred)
        return "recursive call " + std::to_string(k) + " of clause " + std::to_string(i) +
               " maps to the wrong predicate";
      Atom moved = w.arg_permutations.at(a.pred).apply(rename(a, rho), ra[k].pred);
      if (!(moved == ra[k]))
        return "clause " + std::to_string(i) + ": " + render_atom(moved) +
               " does not reproduce " + render_atom(ra[k]);
    }
  }
  return {};
}

StructureWitness identity_witness(const Scc &s) {
  StructureWitness w;
  for (const auto &m : s.members) {
    w.predicate_mapping.emplace(m, m);
    w.arg_permutations.emplace(m, ArgPermutation::identity(m.arity));
  }
  for (std::size_t i = 0; i < s.clauses.size(); ++i) {
    w.clause_mapping.push_back(i);
    std::vector<Atom> a = anchors(detail::structural_segments(s.clauses[i], s));
    Renaming rho;
    for (const auto &v : variables_of(Goal(a.begin(), a.end())))
      rho.emplace(v, v);
    w.renamings.push_back(std::move(rho));
  }
  return w;
}

SccSimilarity scc_similarity(const Scc &left, const Scc &right, const StructureWitness &w,
                             const SearchLimits &limits) {
  if (std::string e = witness_error(left, right, w); !e.empty())
    throw ContractViolation("invalid structure witness: " + e);
  SccSimilarity out;
  for (std::size_t i = 0; i < left.clauses.size(); ++i) {
    std::size_t j = w.clause_mapping[i];
    ClauseSegments ls = detail::structural_segments(left.clauses[i], left);
    ClauseSegments rs = detail::structural_segments(right.clauses[j], right);
    out.value += 1;
    std::vector<GoalAlignment> aligned;
    for (std::size_t k = 0; k < ls.segments.size(); ++k) {
      GoalAlignment al = goal_similarity(ls.segments[k], rs.segments[k], limits);
      out.value += al.value;
      out.approximate = out.approximate || al.approximate;
      aligned.push_back(std::move(al));
    }
    out.segment_alignments.push_back(std::move(aligned));
    std::vector<Atom> la = anchors(ls), ra = anchors(rs);
    for (std::size_t k = 0; k < la.size(); ++k) {
      Atom moved = w.arg_permutations.at(la[k].pred).apply(rename(la[k], w.renamings[i]),
                                                           ra[k].pred);
      out.value += strict_commonality(moved, ra[k]);
    }
  }
  return out;
}

std::size_t self_similarity(const Scc &s, const SearchLimits &limits) {
  return scc_similarity(s, s, identity_witness(s), limits).value;
}

std::optional<SimilarityResult> closeness(const Scc &left, const Scc &right,
                                          const StructureOptions &opts) {
  std::size_t nl = self_similarity(left, opts.goal_limits);
  std::size_t nr = self_similarity(right, opts.goal_limits);
  return closeness(left, right, opts, {nl, nr});
}

std::optional<SimilarityResult> closeness(const Scc &left, const Scc &right,
                                          const StructureOptions &opts,
                                          std::pair<std::size_t, std::size_t> denominators) {
  auto [nl, nr] = denominators;
  auto r = ClosenessSearch(left, right, opts, std::min(nl, nr)).run();
  if (!r)
    return r;
  r->denominators = denominators;
  r->closeness = {Ratio{r->sigma, nl}, Ratio{r->sigma, nr}};
  return r;
}

} // namespace logdup
