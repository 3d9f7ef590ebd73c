#include "logdup/oracle.hpp"

#include <algorithm>
#include <numeric>
#include <random>

#include "logdup/error.hpp"

namespace logdup {
namespace {

// Deliberately separate from metrics: compares the conjunctions as terms.
std::size_t literal_c(const Term &a, const Term &b) {
  if (a.is_variable() || b.is_variable())
    return (a.is_variable() && b.is_variable() && a.name == b.name) ? 1 : 0;
  if (a.name != b.name || a.args.size() != b.args.size())
    return 0;
  std::size_t n = 1;
  for (std::size_t i = 0; i < a.args.size(); ++i)
    n += literal_c(a.args[i], b.args[i]);
  return n;
}

Term as_conjunction(const Goal &g) {
  Term t = Term::compound("$atom/" + g.back().pred.str(), g.back().args);
  for (std::size_t i = g.size() - 1; i-- > 0;)
    t = Term::compound("$and", {Term::compound("$atom/" + g[i].pred.str(), g[i].args), t});
  return t;
}

std::vector<std::string> vars_in_order(const Goal &g) {
  std::vector<std::string> out;
  for (const Atom &a : g)
    for (const std::string &v : variables_of(a))
      if (std::find(out.begin(), out.end(), v) == out.end())
        out.push_back(v);
  return out;
}

std::size_t falling_factorial(std::size_t n, std::size_t k) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < k; ++i)
    r *= n - i;
  return r;
}

// Maximum over renamings of `renamed` into vars of `other` and over
// permutations of `other`.
std::size_t exhaustive(const Goal &renamed, const Goal &other) {
  std::vector<std::string> from = vars_in_order(renamed), to = vars_in_order(other);
  std::vector<std::size_t> order(other.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::size_t best = 0;
  do {
    Goal perm;
    for (std::size_t k : order)
      perm.push_back(other[k]);
    Term rhs = as_conjunction(perm);
    std::vector<bool> used(to.size(), false);
    Renaming rho;
    auto rec = [&](auto &&self, std::size_t i) -> void {
      if (i == from.size()) {
        best = std::max(best, literal_c(as_conjunction(rename(renamed, rho)), rhs));
        return;
      }
      for (std::size_t j = 0; j < to.size(); ++j) {
        if (used[j])
          continue;
        used[j] = true;
        rho[from[i]] = to[j];
        self(self, i + 1);
        used[j] = false;
      }
    };
    rec(rec, 0);
  } while (std::next_permutation(order.begin(), order.end()));
  return best;
}

} // namespace

std::size_t brute_force_commonality(const Goal &q1, const Goal &q2, const OracleCaps &caps) {
  std::map<PredSymbol, std::size_t> m1, m2;
  for (const Atom &a : q1)
    ++m1[a.pred];
  for (const Atom &a : q2)
    ++m2[a.pred];
  if (m1 != m2)
    throw ContractViolation("oracle needs similarly structured goals");
  if (q1.empty())
    return 0;
  std::size_t v1 = vars_in_order(q1).size(), v2 = vars_in_order(q2).size();
  std::size_t small = std::min(v1, v2), large = std::max(v1, v2);
  if (q1.size() > caps.max_atoms || small > caps.max_vars)
    throw ContractViolation("oracle caps exceeded");
  std::size_t perms = falling_factorial(q1.size(), q1.size());
  if (perms * falling_factorial(large, small) > caps.max_candidates)
    throw ContractViolation("oracle candidate cap exceeded");
  if (v1 < v2)
    return exhaustive(q1, q2);
  if (v1 > v2)
    return exhaustive(q2, q1);
  return std::max(exhaustive(q1, q2), exhaustive(q2, q1));
}

Mutation mutate_duplicate(const Scc &s, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  Mutation m;

  for (const auto &p : s.members) {
    PredSymbol fresh{p.name + "_dup" + std::to_string(seed), p.arity};
    m.renamed.emplace(p, fresh);
    ArgPermutation perm = ArgPermutation::identity(p.arity);
    std::shuffle(perm.mapping.begin(), perm.mapping.end(), rng);
    m.permutations.emplace(p, perm);
    std::string text = "rename " + p.str() + " -> " + fresh.str() + "; permute [";
    for (std::size_t i = 0; i < perm.mapping.size(); ++i)
      text += (i ? "," : "") + std::to_string(perm.mapping[i] + 1);
    m.log.push_back(text + "]");
  }

  auto move_atom = [&](const Atom &a) {
    auto it = m.renamed.find(a.pred);
    if (it == m.renamed.end())
      return a;
    return m.permutations.at(a.pred).apply(a, it->second);
  };

  std::vector<Clause> clauses;
  for (std::size_t ci = 0; ci < s.clauses.size(); ++ci) {
    const Clause &c = s.clauses[ci];
    ClauseSegments segs = segment_clause(c, s);
    for (std::size_t k = 0; k < segs.segments.size(); ++k) {
      std::vector<std::size_t> order(segs.segments[k].size());
      std::iota(order.begin(), order.end(), std::size_t{0});
      std::shuffle(order.begin(), order.end(), rng);
      Goal shuffled;
      for (std::size_t i : order)
        shuffled.push_back(segs.segments[k][i]);
      segs.segments[k] = std::move(shuffled);
      if (order.size() > 1) {
        std::string text = "clause " + std::to_string(ci + 1) + " segment " +
                           std::to_string(k + 1) + " order [";
        for (std::size_t i = 0; i < order.size(); ++i)
          text += (i ? "," : "") + std::to_string(order[i] + 1);
        m.log.push_back(text + "]");
      }
    }
    Clause out;
    out.origin = c.origin;
    out.head = move_atom(segs.head);
    for (Atom &a : segs.recursive_calls)
      a = move_atom(a);
    out.body = interleave(segs);

    std::vector<std::string> vars = variables_of(out);
    std::vector<std::size_t> ids(vars.size());
    std::iota(ids.begin(), ids.end(), std::size_t{1});
    std::shuffle(ids.begin(), ids.end(), rng);
    Renaming rho;
    for (std::size_t i = 0; i < vars.size(); ++i)
      rho.emplace(vars[i], "M" + std::to_string(ids[i]));
    clauses.push_back(rename(out, rho));
  }

  std::vector<std::size_t> order(clauses.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::shuffle(order.begin(), order.end(), rng);
  std::vector<Clause> shuffled;
  std::string text = "clause order [";
  for (std::size_t i = 0; i < order.size(); ++i) {
    shuffled.push_back(clauses[order[i]]);
    text += (i ? "," : "") + std::to_string(order[i] + 1);
  }
  m.log.push_back(text + "]");
  m.scc = make_scc(std::move(shuffled));
  return m;
}

} // namespace logdup
