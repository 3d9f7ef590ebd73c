#include "aligned_clause.hpp"
#include "logdup/error.hpp"

namespace logdup {
namespace {

std::string param_name(std::size_t i) {
  if (i < 26)
    return std::string(1, static_cast<char>('A' + i));
  return "A" + std::to_string(i + 1);
}

Clause tidy_variables(Clause c) {
  Renaming names;
  std::size_t params = 0, temps = 0;
  for (const std::string &v : variables_of(c.head))
    names.emplace(v, param_name(params++));
  for (const std::string &v : variables_of(c))
    if (!names.count(v))
      names.emplace(v, "V" + std::to_string(++temps));
  return rename(c, names);
}

} // namespace

std::vector<Clause> common_core(const Scc &left, const Scc &right, const SimilarityResult &r) {
  if (r.approximate)
    throw ContractViolation("common core needs an exact similarity result");
  const StructureWitness &w = r.witness;
  if (std::string e = witness_error(left, right, w); !e.empty())
    throw ContractViolation("invalid structure witness: " + e);

  std::map<PredSymbol, PredSymbol> core_name;
  for (const auto &[lp, rp] : w.predicate_mapping)
    core_name.emplace(rp, PredSymbol{lp.name + "_" + rp.name, rp.arity});
  auto relabel = [&](Atom a) {
    auto it = core_name.find(a.pred);
    if (it != core_name.end())
      a.pred = it->second;
    return a;
  };

  std::vector<Clause> out;
  for (std::size_t i = 0; i < left.clauses.size(); ++i) {
    std::size_t j = w.clause_mapping[i];
    ClauseSegments ls = detail::structural_segments(left.clauses[i], left);
    ClauseSegments rs = detail::structural_segments(right.clauses[j], right);
    detail::AlignedClause ac = detail::align_clause(ls, rs, w.renamings[i], w.predicate_mapping,
                                                    w.arg_permutations,
                                                    r.segment_alignments.at(i));
    Goal gen = msg(ac.left, ac.right).generalization;

    Clause c;
    c.origin = left.clauses[i].origin;
    c.head = relabel(gen[0]);
    std::size_t calls = ls.recursive_calls.size();
    std::size_t next = calls + 1;
    for (std::size_t k = 0; k < ac.segment_sizes.size(); ++k) {
      for (std::size_t n = 0; n < ac.segment_sizes[k]; ++n)
        c.body.push_back(gen[next++]);
      if (k < calls)
        c.body.push_back(relabel(gen[k + 1]));
    }
    out.push_back(tidy_variables(std::move(c)));
  }
  return out;
}

} // namespace logdup
