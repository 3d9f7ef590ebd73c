#include "logdup/fingerprint.hpp"

#include <algorithm>
#include <tuple>

#include "logdup/assignment.hpp"
#include "logdup/error.hpp"
#include "logdup/normalize.hpp"

namespace logdup {

std::string PrintSymbol::str() const {
  switch (kind) {
  case Kind::Equality:
    return "(=)";
  case Kind::Predicate:
    return name + "/" + std::to_string(arity);
  case Kind::Function:
    break;
  }
  if (name == kCons && arity == 2)
    return "[|]";
  if (arity == 0)
    return name;
  return name + "/" + std::to_string(arity);
}

std::size_t GoalPrint::total() const {
  std::size_t n = 0;
  for (const auto &[s, c] : counts)
    n += c;
  return n;
}

std::size_t GoalPrint::operator[](const PrintSymbol &s) const {
  auto it = counts.find(s);
  return it == counts.end() ? 0 : it->second;
}

void GoalPrint::add(const PrintSymbol &s, std::size_t n) {
  if (n != 0)
    counts[s] += n;
}

std::string GoalPrint::str() const {
  std::string out = "{";
  bool first = true;
  for (const auto &[s, c] : counts) {
    if (!first)
      out += ",";
    first = false;
    out += "(" + s.str() + "," + std::to_string(c) + ")";
  }
  return out + "}";
}

namespace {

void count_functions(const Term &t, GoalPrint &out) {
  if (t.is_variable())
    return;
  if (!(t.args.empty() && is_number_name(t.name)))
    out.add(PrintSymbol::function(t.name, t.args.size()));
  for (const Term &a : t.args)
    count_functions(a, out);
}

} // namespace

GoalPrint goalprint(const Goal &q, bool require_normal) {
  GoalPrint out;
  for (const Atom &a : q) {
    if (require_normal && !is_normal_atom(a))
      throw ContractViolation("goalprint needs normal-form atoms: " + render_atom(a));
    if (a.pred.name == "=" && a.pred.arity == 2)
      out.add(PrintSymbol::equality());
    else
      out.add(PrintSymbol::predicate(a.pred));
    for (const Term &t : a.args)
      count_functions(t, out);
  }
  return out;
}

bool goalprint_leq(const GoalPrint &a, const GoalPrint &b) {
  return std::all_of(a.counts.begin(), a.counts.end(),
                     [&](const auto &e) { return e.second <= b[e.first]; });
}

GoalPrint goalprint_glb(const GoalPrint &a, const GoalPrint &b) {
  GoalPrint out;
  for (const auto &[s, c] : a.counts)
    out.add(s, std::min(c, b[s]));
  return out;
}

ClausePrint clauseprint(const Clause &c, const Scc &s, bool require_normal) {
  ClausePrint out;
  for (const Goal &g : segment_clause(c, s).segments)
    out.push_back(goalprint(g, require_normal));
  return out;
}

PredicatePrint predicate_print(const PredSymbol &p, const Scc &s, bool require_normal) {
  PredicatePrint out;
  for (const Clause &c : s.clauses)
    if (c.head.pred == p)
      out.push_back(clauseprint(c, s, require_normal));
  std::sort(out.begin(), out.end());
  return out;
}

SccPrint scc_print(const Scc &s, bool require_normal) {
  SccPrint out;
  for (const auto &m : s.members)
    out.push_back(predicate_print(m, s, require_normal));
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t print_size(const ClausePrint &c) {
  std::size_t n = 0;
  for (const GoalPrint &g : c)
    n += g.total();
  return n;
}

std::size_t print_size(const PredicatePrint &p) {
  std::size_t n = 0;
  for (const ClausePrint &c : p)
    n += print_size(c);
  return n;
}

std::size_t print_size(const SccPrint &s) {
  std::size_t n = 0;
  for (const PredicatePrint &p : s)
    n += print_size(p);
  return n;
}

bool clauseprint_leq(const ClausePrint &a, const ClausePrint &b) {
  if (a.size() != b.size())
    return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!goalprint_leq(a[i], b[i]))
      return false;
  return true;
}

bool predicate_print_leq(const PredicatePrint &a, const PredicatePrint &b) {
  if (a.size() != b.size())
    return false;
  std::vector<std::vector<Weight>> w(a.size(), std::vector<Weight>(b.size()));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      w[i][j] = clauseprint_leq(a[i], b[j]) ? 0 : kForbidden;
  return max_weight_assignment(w).has_value();
}

namespace {

ClausePrint clause_glb(const ClausePrint &a, const ClausePrint &b) {
  ClausePrint out;
  for (std::size_t i = 0; i < a.size(); ++i)
    out.push_back(goalprint_glb(a[i], b[i]));
  return out;
}

} // namespace

std::optional<PredicatePrint> print_glb(const PredicatePrint &a, const PredicatePrint &b) {
  if (a.size() != b.size())
    return std::nullopt;
  std::vector<std::vector<Weight>> w(a.size(), std::vector<Weight>(b.size(), kForbidden));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      if (a[i].size() == b[j].size())
        w[i][j] = static_cast<Weight>(print_size(clause_glb(a[i], b[j])));
  auto asg = lexmin_max_assignment(w);
  if (!asg)
    return std::nullopt;
  PredicatePrint out;
  for (std::size_t i = 0; i < a.size(); ++i)
    out.push_back(clause_glb(a[i], b[asg->row_to_col[i]]));
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<SccPrint> print_glb(const SccPrint &a, const SccPrint &b) {
  if (a.size() != b.size())
    return std::nullopt;
  std::vector<std::vector<std::optional<PredicatePrint>>> glbs(a.size());
  std::vector<std::vector<Weight>> w(a.size(), std::vector<Weight>(b.size(), kForbidden));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) {
      glbs[i].push_back(print_glb(a[i], b[j]));
      if (glbs[i][j])
        w[i][j] = static_cast<Weight>(print_size(*glbs[i][j]));
    }
  auto asg = lexmin_max_assignment(w);
  if (!asg)
    return std::nullopt;
  SccPrint out;
  for (std::size_t i = 0; i < a.size(); ++i)
    out.push_back(*glbs[i][asg->row_to_col[i]]);
  std::sort(out.begin(), out.end());
  return out;
}

std::optional<std::pair<Ratio, Ratio>> fp_closeness(const SccPrint &a, const SccPrint &b) {
  auto g = print_glb(a, b);
  if (!g)
    return std::nullopt;
  std::size_t common = print_size(*g), na = print_size(a), nb = print_size(b);
  Ratio ra = na == 0 ? Ratio{1, 1} : Ratio{common, na};
  Ratio rb = nb == 0 ? Ratio{1, 1} : Ratio{common, nb};
  return std::make_pair(ra, rb);
}

std::string shape_signature(const Scc &s) {
  std::vector<std::string> parts;
  for (const auto &m : s.members) {
    std::vector<std::size_t> counts;
    for (const Clause &c : s.clauses)
      if (c.head.pred == m)
        counts.push_back(segment_clause(c, s).segments.size());
    std::sort(counts.begin(), counts.end());
    std::string part = std::to_string(m.arity) + ":[";
    for (std::size_t i = 0; i < counts.size(); ++i)
      part += (i ? "," : "") + std::to_string(counts[i]);
    parts.push_back(part + "]");
  }
  std::sort(parts.begin(), parts.end());
  std::string out;
  for (const auto &p : parts)
    out += (out.empty() ? "" : ";") + p;
  return out;
}

std::string print_text(const ClausePrint &c) {
  std::string out = "<";
  for (std::size_t i = 0; i < c.size(); ++i)
    out += (i ? "," : "") + c[i].str();
  return out + ">";
}

std::string print_text(const PredicatePrint &p) {
  std::string out = "<<";
  for (std::size_t i = 0; i < p.size(); ++i)
    out += (i ? "," : "") + print_text(p[i]);
  return out + ">>";
}

std::string print_text(const SccPrint &s) {
  std::string out = "[";
  for (std::size_t i = 0; i < s.size(); ++i)
    out += (i ? "," : "") + print_text(s[i]);
  return out + "]";
}

std::vector<CandidatePair> candidate_pairs(const std::vector<Scc> &sccs,
                                           const std::vector<SccPrint> &prints, double threshold) {
  if (sccs.size() != prints.size())
    throw ContractViolation("one print per SCC expected");
  std::map<std::string, std::vector<std::size_t>> buckets;
  for (std::size_t i = 0; i < sccs.size(); ++i)
    buckets[shape_signature(sccs[i])].push_back(i);

  auto defined_before = [&](std::size_t i, std::size_t j) {
    if (sccs[i].clauses.empty() || sccs[j].clauses.empty())
      return i < j;
    const SourceLocation &a = sccs[i].clauses.front().origin, &b = sccs[j].clauses.front().origin;
    return std::tie(a.file, a.line, i) < std::tie(b.file, b.line, j);
  };

  std::vector<CandidatePair> out;
  for (const auto &[sig, members] : buckets)
    for (std::size_t x = 0; x < members.size(); ++x)
      for (std::size_t y = x + 1; y < members.size(); ++y) {
        std::size_t i = members[x], j = members[y];
        if (defined_before(j, i))
          std::swap(i, j);
        auto est = fp_closeness(prints[i], prints[j]);
        if (!est)
          continue;
        if (std::min(est->first.value(), est->second.value()) + 1e-12 < threshold)
          continue;
        out.push_back(CandidatePair{i, j, *est, prints[i] == prints[j]});
      }
  std::vector<std::string> names;
  for (const Scc &s : sccs)
    names.push_back(s.name());
  std::sort(out.begin(), out.end(), [&](const CandidatePair &a, const CandidatePair &b) {
    if (a.identical != b.identical)
      return a.identical;
    Ratio ma = std::min(a.estimate.first, a.estimate.second);
    Ratio mb = std::min(b.estimate.first, b.estimate.second);
    if (ma != mb)
      return ma > mb;
    if (names[a.left] != names[b.left])
      return names[a.left] < names[b.left];
    return names[a.right] < names[b.right];
  });
  return out;
}

std::vector<SccCandidate> candidate_pairs(const Program &prog, double threshold) {
  std::vector<Scc> sccs = build_sccs(prog);
  std::vector<SccPrint> prints;
  for (const Scc &s : sccs)
    prints.push_back(scc_print(s, false));
  std::vector<SccCandidate> out;
  for (const CandidatePair &c : candidate_pairs(sccs, prints, threshold))
    out.push_back(SccCandidate{sccs[c.left], sccs[c.right], c.estimate});
  return out;
}

ConjectureCheck check_glb_conjecture(const Goal &q1, const Goal &q2, const SearchLimits &limits) {
  ConjectureCheck out;
  out.alignment = goal_similarity(q1, q2, limits);
  auto [l, r] = apply_alignment(q1, q2, out.alignment);
  out.generalization = msg(l, r).generalization;
  out.glb = goalprint_glb(goalprint(q1, false), goalprint(q2, false));
  out.msg_print = goalprint(out.generalization, false);
  out.holds = out.glb == out.msg_print;
  return out;
}

} // namespace logdup
