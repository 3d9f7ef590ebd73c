#include "logdup/metrics.hpp"

#include <algorithm>
#include <set>

#include "logdup/error.hpp"

namespace logdup {

std::size_t nodes(const Term &t) {
  if (t.is_variable())
    return 0;
  std::size_t n = 1;
  for (const Term &a : t.args)
    n += nodes(a);
  return n;
}

std::size_t nodes(const Atom &a) {
  std::size_t n = 1;
  for (const Term &t : a.args)
    n += nodes(t);
  return n;
}

std::size_t nodes(const Goal &g) {
  if (g.empty())
    return 0;
  std::size_t n = g.size() - 1;
  for (const Atom &a : g)
    n += nodes(a);
  return n;
}

std::size_t nodes(const Clause &c) { return 1 + nodes(c.head) + nodes(c.body); }

std::size_t nodes(const Scc &s) {
  std::size_t n = 0;
  for (const Clause &c : s.clauses)
    n += nodes(c);
  return n;
}

namespace {

std::size_t var_occurrences(const Term &t) {
  if (t.is_variable())
    return 1;
  std::size_t n = 0;
  for (const Term &a : t.args)
    n += var_occurrences(a);
  return n;
}

std::size_t var_occurrences(const Atom &a) {
  std::size_t n = 0;
  for (const Term &t : a.args)
    n += var_occurrences(t);
  return n;
}

std::size_t var_occurrences(const Goal &g) {
  std::size_t n = 0;
  for (const Atom &a : g)
    n += var_occurrences(a);
  return n;
}

} // namespace

std::size_t total_nodes(const Term &t) { return nodes(t) + var_occurrences(t); }
std::size_t total_nodes(const Atom &a) { return nodes(a) + var_occurrences(a); }
std::size_t total_nodes(const Goal &g) { return nodes(g) + var_occurrences(g); }
std::size_t total_nodes(const Clause &c) {
  return nodes(c) + var_occurrences(c.head) + var_occurrences(c.body);
}
std::size_t total_nodes(const Scc &s) {
  std::size_t n = 0;
  for (const Clause &c : s.clauses)
    n += total_nodes(c);
  return n;
}

std::size_t strict_commonality(const Term &a, const Term &b) {
  if (a.is_variable() || b.is_variable())
    return a.is_variable() && b.is_variable() && a.name == b.name ? 1 : 0;
  if (a.name != b.name || a.args.size() != b.args.size())
    return 0;
  std::size_t n = 1;
  for (std::size_t i = 0; i < a.args.size(); ++i)
    n += strict_commonality(a.args[i], b.args[i]);
  return n;
}

std::size_t strict_commonality(const Atom &a, const Atom &b) {
  if (a.pred != b.pred)
    return 0;
  std::size_t n = 1;
  for (std::size_t i = 0; i < a.args.size(); ++i)
    n += strict_commonality(a.args[i], b.args[i]);
  return n;
}

std::size_t strict_commonality(const Goal &a, const Goal &b) {
  if (a.size() != b.size())
    throw ContractViolation("strict commonality needs goals of equal length");
  if (a.empty())
    return 0;
  std::size_t n = a.size() - 1;
  for (std::size_t i = 0; i < a.size(); ++i)
    n += strict_commonality(a[i], b[i]);
  return n;
}

std::size_t shared_var_count(const Term &a, const Term &b) {
  if (a.is_variable() || b.is_variable())
    return a.is_variable() && b.is_variable() && a.name == b.name ? 1 : 0;
  if (a.name != b.name || a.args.size() != b.args.size())
    return 0;
  std::size_t n = 0;
  for (std::size_t i = 0; i < a.args.size(); ++i)
    n += shared_var_count(a.args[i], b.args[i]);
  return n;
}

std::size_t shared_var_count(const Atom &a, const Atom &b) {
  if (a.pred != b.pred)
    return 0;
  std::size_t n = 0;
  for (std::size_t i = 0; i < a.args.size(); ++i)
    n += shared_var_count(a.args[i], b.args[i]);
  return n;
}

std::size_t shared_var_count(const Goal &a, const Goal &b) {
  if (a.size() != b.size())
    throw ContractViolation("shared variable count needs goals of equal length");
  std::size_t n = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    n += shared_var_count(a[i], b[i]);
  return n;
}

Term substitute(const Term &t, const Substitution &s) {
  if (t.is_variable()) {
    auto it = s.find(t.name);
    return it == s.end() ? t : it->second;
  }
  std::vector<Term> args;
  args.reserve(t.args.size());
  for (const Term &a : t.args)
    args.push_back(substitute(a, s));
  return Term::compound(t.name, std::move(args));
}

Atom substitute(const Atom &a, const Substitution &s) {
  Atom out;
  out.pred = a.pred;
  for (const Term &t : a.args)
    out.args.push_back(substitute(t, s));
  return out;
}

Goal substitute(const Goal &g, const Substitution &s) {
  Goal out;
  out.reserve(g.size());
  for (const Atom &a : g)
    out.push_back(substitute(a, s));
  return out;
}

namespace {

void collect_names(const Term &t, std::set<std::string> &out) {
  if (t.is_variable()) {
    out.insert(t.name);
    return;
  }
  for (const Term &a : t.args)
    collect_names(a, out);
}

class AntiUnifier {
public:
  explicit AntiUnifier(std::set<std::string> used) : used_(std::move(used)) {}

  Term run(const Term &a, const Term &b) {
    if (a.is_variable() && b.is_variable() && a.name == b.name)
      return a;
    if (a.is_compound() && b.is_compound() && a.name == b.name &&
        a.args.size() == b.args.size()) {
      std::vector<Term> args;
      args.reserve(a.args.size());
      for (std::size_t i = 0; i < a.args.size(); ++i)
        args.push_back(run(a.args[i], b.args[i]));
      return Term::compound(a.name, std::move(args));
    }
    auto key = std::make_pair(a, b);
    auto it = table_.find(key);
    if (it != table_.end())
      return Term::variable(it->second);
    std::string v;
    do
      v = "_G" + std::to_string(++counter_);
    while (used_.count(v));
    table_.emplace(std::move(key), v);
    left_.emplace(v, a);
    right_.emplace(v, b);
    return Term::variable(v);
  }

  Substitution left_, right_;

private:
  std::set<std::string> used_;
  std::map<std::pair<Term, Term>, std::string> table_;
  std::size_t counter_ = 0;
};

std::set<std::string> names_of(const Goal &a, const Goal &b) {
  std::set<std::string> used;
  for (const Goal *g : {&a, &b})
    for (const Atom &at : *g)
      for (const Term &t : at.args)
        collect_names(t, used);
  return used;
}

} // namespace

MsgResult msg(const Term &a, const Term &b) {
  std::set<std::string> used;
  collect_names(a, used);
  collect_names(b, used);
  AntiUnifier au(std::move(used));
  Term g = au.run(a, b);
  return MsgResult{std::move(g), std::move(au.left_), std::move(au.right_)};
}

GoalMsgResult msg(const Atom &a, const Atom &b) { return msg(Goal{a}, Goal{b}); }

GoalMsgResult msg(const Goal &a, const Goal &b) {
  if (a.size() != b.size())
    throw ContractViolation("msg needs goals of equal length");
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i].pred != b[i].pred)
      throw ContractViolation("msg needs positionally equal predicates: " + a[i].pred.str() +
                              " vs " + b[i].pred.str());
  AntiUnifier au(names_of(a, b));
  GoalMsgResult out;
  for (std::size_t i = 0; i < a.size(); ++i) {
    Atom g;
    g.pred = a[i].pred;
    for (std::size_t j = 0; j < a[i].args.size(); ++j)
      g.args.push_back(au.run(a[i].args[j], b[i].args[j]));
    out.generalization.push_back(std::move(g));
  }
  out.left = std::move(au.left_);
  out.right = std::move(au.right_);
  return out;
}

Term goal_to_term(const Goal &g) {
  if (g.empty())
    throw ContractViolation("goal_to_term needs a non-empty goal");
  auto as_term = [](const Atom &a) { return Term::compound(a.pred.name, a.args); };
  Term t = as_term(g.back());
  for (std::size_t i = g.size() - 1; i-- > 0;)
    t = Term::compound(",", {as_term(g[i]), std::move(t)});
  return t;
}

PredicateMultiset predicate_multiset(const Goal &g) {
  PredicateMultiset m;
  for (const Atom &a : g)
    ++m[a.pred];
  return m;
}

SimilarSubgoals maximal_similar_subgoals(const Goal &a, const Goal &b) {
  PredicateMultiset ma = predicate_multiset(a), mb = predicate_multiset(b);
  SimilarSubgoals out;
  auto take = [](const Goal &g, const PredicateMultiset &self, const PredicateMultiset &other,
                 Goal &dst, std::vector<std::size_t> &idx) {
    std::map<PredSymbol, std::size_t> quota;
    for (const auto &[p, n] : self) {
      auto it = other.find(p);
      if (it != other.end())
        quota[p] = std::min(n, it->second);
    }
    for (std::size_t i = 0; i < g.size(); ++i) {
      auto it = quota.find(g[i].pred);
      if (it == quota.end() || it->second == 0)
        continue;
      --it->second;
      dst.push_back(g[i]);
      idx.push_back(i);
    }
  };
  take(a, ma, mb, out.left, out.left_index);
  take(b, mb, ma, out.right, out.right_index);
  return out;
}

std::vector<Renaming> enumerate_renamings(const Goal &a, const Goal &b) {
  std::vector<std::string> va = variables_of(a), vb = variables_of(b);
  if (va.size() > vb.size())
    throw ContractViolation("renamings need #vars(first) <= #vars(second)");
  std::vector<Renaming> out;
  std::vector<bool> used(vb.size(), false);
  Renaming cur;
  auto rec = [&](auto &&self, std::size_t i) -> void {
    if (i == va.size()) {
      out.push_back(cur);
      return;
    }
    for (std::size_t j = 0; j < vb.size(); ++j) {
      if (used[j])
        continue;
      used[j] = true;
      cur[va[i]] = vb[j];
      self(self, i + 1);
      cur.erase(va[i]);
      used[j] = false;
    }
  };
  rec(rec, 0);
  return out;
}

std::pair<Goal, Goal> apply_alignment(const Goal &a, const Goal &b, const GoalAlignment &w) {
  Goal left, right;
  for (auto [i, j] : w.atom_pairing) {
    if (i >= a.size() || j >= b.size())
      throw ContractViolation("alignment index out of range");
    left.push_back(w.renaming_from_left ? rename(a[i], w.renaming) : a[i]);
    right.push_back(w.renaming_from_left ? b[j] : rename(b[j], w.renaming));
  }
  return {std::move(left), std::move(right)};
}

} // namespace logdup
