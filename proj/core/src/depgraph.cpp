#include "logdup/depgraph.hpp"

#include <algorithm>
#include <functional>
#include <map>

#include "logdup/error.hpp"

namespace logdup {

bool Scc::contains(const PredSymbol &p) const {
  return std::binary_search(members.begin(), members.end(), p);
}

std::string Scc::name() const {
  std::string out;
  for (const auto &m : members) {
    if (!out.empty())
      out += "+";
    out += m.str();
  }
  return out;
}

std::vector<std::size_t> Scc::clauses_of(const PredSymbol &p) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < clauses.size(); ++i)
    if (clauses[i].head.pred == p)
      out.push_back(i);
  return out;
}

bool is_builtin(const PredSymbol &p) {
  static const std::set<PredSymbol> builtins = {
      {"=", 2},  {"\\=", 2}, {"==", 2},  {"\\==", 2}, {"is", 2},   {"<", 2},
      {">", 2},  {"=<", 2},  {">=", 2},  {"=:=", 2},  {"=\\=", 2}, {"true", 0},
      {"fail", 0}, {"false", 0}};
  return builtins.count(p) != 0;
}

std::vector<Scc> build_sccs(const Program &p) {
  std::vector<PredSymbol> preds = p.predicates();
  std::sort(preds.begin(), preds.end());
  std::map<PredSymbol, std::size_t> index;
  for (std::size_t i = 0; i < preds.size(); ++i)
    index.emplace(preds[i], i);

  std::vector<std::vector<std::size_t>> succ(preds.size());
  for (std::size_t i = 0; i < preds.size(); ++i) {
    std::set<std::size_t> out;
    for (const Clause &c : p.clauses(preds[i]))
      for (const Atom &a : c.body) {
        if (is_builtin(a.pred))
          continue;
        auto it = index.find(a.pred);
        if (it != index.end())
          out.insert(it->second);
      }
    succ[i].assign(out.begin(), out.end());
  }

  // Iterative Tarjan.
  const std::size_t none = static_cast<std::size_t>(-1);
  std::vector<std::size_t> num(preds.size(), none), low(preds.size(), 0);
  std::vector<bool> on_stack(preds.size(), false);
  std::vector<std::size_t> stack;
  std::vector<Scc> out;
  std::size_t counter = 0;

  for (std::size_t root = 0; root < preds.size(); ++root) {
    if (num[root] != none)
      continue;
    std::vector<std::pair<std::size_t, std::size_t>> frames{{root, 0}};
    num[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!frames.empty()) {
      auto &[v, next] = frames.back();
      if (next < succ[v].size()) {
        std::size_t w = succ[v][next++];
        if (num[w] == none) {
          num[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          frames.emplace_back(w, 0);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], num[w]);
        }
        continue;
      }
      if (low[v] == num[v]) {
        Scc s;
        std::size_t w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          s.members.push_back(preds[w]);
        } while (w != v);
        std::sort(s.members.begin(), s.members.end());
        for (const auto &m : s.members)
          for (const Clause &c : p.clauses(m))
            s.clauses.push_back(c);
        out.push_back(std::move(s));
      }
      std::size_t done = v;
      frames.pop_back();
      if (!frames.empty())
        low[frames.back().first] = std::min(low[frames.back().first], low[done]);
    }
  }
  return out;
}

ClauseSegments segment_clause(const Clause &c, const Scc &s) {
  if (!s.contains(c.head.pred))
    throw ContractViolation("clause head " + c.head.pred.str() + " is not a member of " +
                            s.name());
  ClauseSegments out;
  out.head = c.head;
  out.segments.emplace_back();
  for (const Atom &a : c.body) {
    if (s.contains(a.pred)) {
      out.recursive_calls.push_back(a);
      out.segments.emplace_back();
    } else {
      out.segments.back().push_back(a);
    }
  }
  return out;
}

Goal interleave(const ClauseSegments &segs) {
  Goal body;
  for (std::size_t i = 0; i < segs.segments.size(); ++i) {
    body.insert(body.end(), segs.segments[i].begin(), segs.segments[i].end());
    if (i < segs.recursive_calls.size())
      body.push_back(segs.recursive_calls[i]);
  }
  return body;
}

Scc make_scc(std::vector<Clause> clauses) {
  Scc s;
  std::set<PredSymbol> members;
  for (const Clause &c : clauses)
    members.insert(c.head.pred);
  s.members.assign(members.begin(), members.end());
  for (const auto &m : s.members)
    for (const Clause &c : clauses)
      if (c.head.pred == m)
        s.clauses.push_back(c);
  return s;
}

} // namespace logdup
