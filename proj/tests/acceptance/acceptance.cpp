// Acceptance suite: one PASS/FAIL line per criterion, exit status 1 on any FAIL.
// argv[1] is the directory that receives glb/msg counterexample files.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "generators.hpp"
#include "logdup/fingerprint.hpp"
#include "logdup/metrics.hpp"
#include "logdup/normalize.hpp"
#include "logdup/oracle.hpp"
#include "logdup/pipeline.hpp"
#include "logdup/structure.hpp"

using namespace logdup;
namespace fs = std::filesystem;

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point t) {
  return std::chrono::duration<double, std::milli>(Clock::now() - t).count();
}

struct Verdict {
  bool pass = false;
  std::string detail;
};

// Collects failed checks; the verdict passes only when none failed.
class Checks {
public:
  void require(bool ok, const std::string &what) {
    if (!ok)
      failed_.push_back(what);
  }
  Verdict verdict(std::string summary) const {
    if (failed_.empty())
      return {true, std::move(summary)};
    std::string d = summary + "; failed: " + failed_.front();
    if (failed_.size() > 1)
      d += " (+" + std::to_string(failed_.size() - 1) + " more)";
    return {false, d};
  }

private:
  std::vector<std::string> failed_;
};

Scc scc_of(std::initializer_list<const char *> clauses, bool normal) {
  std::vector<Clause> cs;
  for (const char *c : clauses)
    cs.push_back(normal ? normalize_clause(parse_clause(c)) : parse_clause(c));
  return make_scc(std::move(cs));
}

Scc append_scc(bool normal) {
  return scc_of({"append([],L,L).", "append([X|Xs],Y,[X|Zs]) :- append(Xs,Y,Zs)."}, normal);
}
Scc concat_scc(bool normal) {
  return scc_of({"concat(L,[],L).", "concat([E|Zs],[E|Es],Y) :- concat(Zs,Es,Y)."}, normal);
}
Scc rev_all_scc(bool normal) {
  return scc_of({"rev_all([],[]).", "rev_all([X|Xs],[Y|Ys]) :- reverse(X,Y), rev_all(Xs,Ys)."},
                normal);
}
Scc add1_scc(bool normal) {
  return scc_of({"add1_and_sqr([],[]).",
                 "add1_and_sqr([X|Xs],[Y|Ys]) :- N is X + 1, Y is N*N, add1_and_sqr(Xs,Ys)."},
                normal);
}

std::string ratio_pair(const std::pair<Ratio, Ratio> &r) {
  return "(" + r.first.str() + ", " + r.second.str() + ")";
}

Verdict strict_commonality_example() {
  Checks ck;
  Goal q1 = parse_goal("p(f(X),g(Y,h(Z,a))), q(Z,X)");
  Goal q2 = parse_goal("p(f(T),g(T,h(Z,b))), q(Z,T)");
  std::size_t c = strict_commonality(q1, q2);
  std::size_t msg_nodes = nodes(msg(q1, q2).generalization);
  std::size_t delta = shared_var_count(q1, q2);
  std::size_t reps = 200;
  auto t0 = Clock::now();
  std::size_t sink = 0;
  for (std::size_t i = 0; i < reps; ++i)
    sink += strict_commonality(q1, q2);
  double per_call = ms_since(t0) / static_cast<double>(reps);
  ck.require(c == 8, "c = " + std::to_string(c));
  ck.require(msg_nodes == 6, "msg nodes = " + std::to_string(msg_nodes));
  ck.require(delta == 2, "delta = " + std::to_string(delta));
  ck.require(c == msg_nodes + delta, "c != nodes(msg) + delta");
  ck.require(sink == 8 * reps, "unstable result");
  ck.require(per_call < 1.0, "runtime " + std::to_string(per_call) + " ms");
  std::ostringstream s;
  s << "c=" << c << " nodes(msg)=" << msg_nodes << " delta=" << delta << " " << per_call
    << " ms/call";
  return ck.verdict(s.str());
}

Verdict goal_similarity_example() {
  Checks ck;
  Goal q1 = parse_goal("p(a,f(A)), s(A), q(A,B)");
  Goal q2 = parse_goal("q(Y,Z), p(f(X),Y), r(Z,S)");
  GoalAlignment w = goal_similarity(q1, q2);
  SimilarSubgoals sub = maximal_similar_subgoals(q1, q2);
  std::size_t rcount = enumerate_renamings(sub.left, sub.right).size();
  ck.require(w.value == 5, "sigma = " + std::to_string(w.value));
  ck.require(!w.approximate, "approximate");
  ck.require(w.renaming_from_left && w.renaming == Renaming{{"A", "Y"}, {"B", "Z"}},
             "unexpected renaming");
  ck.require(rcount == 6, "|R| = " + std::to_string(rcount));
  return ck.verdict("sigma=" + std::to_string(w.value) + " rho={A->Y,B->Z} |R|=" +
                    std::to_string(rcount));
}

Verdict scc_similarity_examples() {
  Checks ck;
  Scc app = append_scc(false), con = concat_scc(false);
  auto ws = find_structure_witnesses(app, con);
  const StructureWitness *phi = nullptr;
  for (const auto &w : ws)
    if (w.arg_permutations.at({"append", 3}).mapping == std::vector<std::size_t>{1, 2, 0})
      phi = &w;
  ck.require(phi != nullptr, "no witness with pi = {1->2,2->3,3->1}");
  std::size_t s_app = phi ? scc_similarity(app, con, *phi).value : 0;
  ck.require(s_app == 18, "sigma(append,concat) = " + std::to_string(s_app));
  auto g = closeness(app, con);
  ck.require(g && g->is_duplicate() && g->closeness.first == Ratio{1, 1} &&
                 g->closeness.second == Ratio{1, 1},
             "closeness(append,concat) not (1,1)");

  Scc ra = rev_all_scc(false), aas = add1_scc(false);
  std::size_t s_ra = 0;
  bool identity_found = false;
  for (const auto &w : find_structure_witnesses(ra, aas))
    if (w.arg_permutations.begin()->second == ArgPermutation::identity(2)) {
      identity_found = true;
      s_ra = scc_similarity(ra, aas, w).value;
    }
  ck.require(identity_found, "no identity witness for rev_all/add1_and_sqr");
  ck.require(s_ra == 15, "sigma(rev_all,add1_and_sqr) = " + std::to_string(s_ra));
  return ck.verdict("sigma(append,concat)=" + std::to_string(s_app) + " closeness=" +
                    (g ? ratio_pair(g->closeness) : "none") +
                    "; sigma(rev_all,add1_and_sqr)=" + std::to_string(s_ra));
}

bool mentions_deviation(const std::string &text) {
  return text.find("15/18") != std::string::npos && text.find("15/26") != std::string::npos &&
         text.find("0.79") != std::string::npos;
}

Verdict closeness_deviation() {
  Checks ck;
  auto g = closeness(rev_all_scc(false), add1_scc(false));
  ck.require(g.has_value(), "no witness");
  if (!g)
    return ck.verdict("no result");
  double a = g->closeness.first.value(), b = g->closeness.second.value();
  ck.require(std::abs(a - 15.0 / 18) < 1e-9, "left component " + std::to_string(a));
  ck.require(std::abs(b - 15.0 / 26) < 1e-9, "right component " + std::to_string(b));
  ck.require(std::abs(a - 0.79) > 0.005 && std::abs(b - 0.6) > 0.005,
             "(0.79, 0.6) unexpectedly reproduced");

  Program p = parse_program(std::string("rev_all([],[]).\n"
                                        "rev_all([X|Xs],[Y|Ys]) :- reverse(X,Y), rev_all(Xs,Ys).\n"
                                        "add1_and_sqr([],[]).\n"
                                        "add1_and_sqr([X|Xs],[Y|Ys]) :- N is X + 1, Y is N*N, "
                                        "add1_and_sqr(Xs,Ys).\n"));
  Config c;
  c.normalize = false;
  c.fp_threshold = 0.0;
  c.threshold = 0.0;
  std::string json = to_json_string(analyze(p, c));
  ck.require(json.find("\"metadata\"") != std::string::npos, "report lacks metadata");
  ck.require(mentions_deviation(std::string(denominator_note())), "metadata note incomplete");
  ck.require(json.find("\"15/18\"") != std::string::npos, "report lacks 15/18");

  std::ifstream readme(LOGDUP_README);
  std::stringstream docs;
  docs << readme.rdbuf();
  ck.require(!docs.str().empty(), "README unreadable");
  ck.require(mentions_deviation(docs.str()), "README lacks the deviation note");
  return ck.verdict("closeness=" + ratio_pair(g->closeness) + " (" + std::to_string(a) + ", " +
                    std::to_string(b) + ")");
}

Verdict fingerprint_examples() {
  Checks ck;
  Scc app = append_scc(true), con = concat_scc(true);
  ck.require(scc_print(app) == scc_print(con), "prints of append and concat differ");
  Scc ra = rev_all_scc(true), aas = add1_scc(true);
  Scc mp = scc_of({"mp(A,B) :- A = [], B = [].",
                   "mp(A,B) :- A = [X|Xs], B = [Y|Ys], mp(Xs,Ys)."},
                  false);
  auto glb = print_glb(predicate_print(ra.members[0], ra), predicate_print(aas.members[0], aas));
  PredicatePrint mp_print = predicate_print(mp.members[0], mp);
  ck.require(glb.has_value(), "glb undefined");
  ck.require(glb && *glb == mp_print, "glb differs from the mp/2 print");
  bool empty_component = false;
  if (glb)
    for (const ClausePrint &c : *glb)
      if (c.size() == 2 && c[1].total() == 0)
        empty_component = true;
  ck.require(empty_component, "empty goalprint after the recursive call missing");
  return ck.verdict("append=concat " + print_text(scc_print(app)) + "; glb=" +
                    (glb ? print_text(*glb) : "none"));
}

Verdict oracle_equivalence() {
  Checks ck;
  std::mt19937_64 rng(20261015);
  testgen::GoalShape shape;  // <=4 atoms, <=4 variables, p/2 q/1 r/2
  std::size_t pairs = 600, mismatches = 0;
  auto t0 = Clock::now();
  for (std::size_t i = 0; i < pairs; ++i) {
    auto [a, b] = testgen::random_similar_pair(rng, shape);
    GoalAlignment g = commonality(a, b);
    std::size_t o = brute_force_commonality(a, b);
    if (g.approximate || g.value != o) {
      ++mismatches;
      ck.require(false, render_goal(a) + " | " + render_goal(b) + ": " + std::to_string(g.value) +
                            " vs " + std::to_string(o));
    }
  }
  double ms = ms_since(t0);
  ck.require(ms < 30000, "runtime " + std::to_string(ms) + " ms");
  return ck.verdict(std::to_string(pairs) + " pairs, " + std::to_string(mismatches) +
                    " mismatches, " + std::to_string(static_cast<long>(ms)) + " ms");
}

Verdict mutation_round_trip() {
  Checks ck;
  Program p = normalize_program(parse_program(testgen::corpus10_source(), "corpus10.pl"));
  std::vector<Scc> sccs = build_sccs(p);
  std::size_t preds = 0;
  for (const Scc &s : sccs)
    preds += s.members.size();
  ck.require(preds == 10, "corpus has " + std::to_string(preds) + " predicates");
  std::size_t total = 0, surfaced = 0;
  for (std::size_t i = 0; i < sccs.size(); ++i) {
    for (std::uint64_t k = 0; k < 12; ++k) {
      std::uint64_t seed = 1000 * i + k;
      Mutation m = mutate_duplicate(sccs[i], seed);
      ++total;
      std::string tag = sccs[i].name() + " seed " + std::to_string(seed);
      auto g = closeness(sccs[i], m.scc);
      ck.require(g && g->closeness.first == Ratio{1, 1} && g->closeness.second == Ratio{1, 1},
                 tag + ": closeness " + (g ? ratio_pair(g->closeness) : "none"));
      SccPrint a = scc_print(sccs[i]), b = scc_print(m.scc);
      ck.require(a == b, tag + ": prints differ");
      if (!candidate_pairs({sccs[i], m.scc}, {a, b}, 1.0).empty())
        ++surfaced;
      else
        ck.require(false, tag + ": not surfaced at threshold 1.0");
    }
  }
  ck.require(total >= 100, "only " + std::to_string(total) + " mutations");
  return ck.verdict(std::to_string(total) + " mutations over " + std::to_string(sccs.size()) +
                    " SCCs, " + std::to_string(surfaced) + " surfaced at threshold 1.0");
}

Verdict conjecture_checker(const fs::path &out_dir) {
  Checks ck;
  std::error_code ec;
  fs::create_directories(out_dir, ec);
  for (const auto &old : fs::directory_iterator(out_dir, ec))
    fs::remove(old.path(), ec);
  std::mt19937_64 rng(77);
  std::size_t pairs = 500, violations = 0, written = 0;
  for (std::size_t i = 0; i < pairs; ++i) {
    Goal a = testgen::random_normal_goal(rng, 4, 4);
    Goal b = testgen::random_normal_goal(rng, 4, 4);
    ConjectureCheck c = check_glb_conjecture(a, b);
    if (c.holds)
      continue;
    ++violations;
    fs::path file = out_dir / ("counterexample_" + std::to_string(i) + ".txt");
    std::ofstream out(file);
    out << "left: " << render_goal(a) << "\n"
        << "right: " << render_goal(b) << "\n"
        << "glb: " << c.glb.str() << "\n"
        << "msg: " << render_goal(c.generalization) << "\n"
        << "msg print: " << c.msg_print.str() << "\n";
    out.close();
    Goal ra = parse_goal(render_goal(a)), rb = parse_goal(render_goal(b));
    if (out && !check_glb_conjecture(ra, rb).holds)
      ++written;
    else
      ck.require(false, file.string() + " not reproducible");
  }
  return ck.verdict(std::to_string(pairs) + " pairs, " + std::to_string(violations) +
                    " violations, " + std::to_string(written) + " counterexample files in " +
                    out_dir.string());
}

Verdict sensitivity_across_calls() {
  Checks ck;
  Scc moved = scc_of({"append(X,Y,Z) :- X = [], Z = Y.",
                      "append(X,Y,Z) :- X = [Xe|Xs], append(Xs,Y,Zs), Z = [Xe|Zs]."},
                     false);
  Scc app = append_scc(true), con = concat_scc(true);
  bool structure = !find_structure_witnesses(moved, con).empty();
  ck.require(structure, "moved append lost its recursive structure");
  auto base = closeness(app, con), after = closeness(moved, con);
  ck.require(base && after, "closeness undefined");
  std::size_t s0 = base ? base->sigma : 0, s1 = after ? after->sigma : 0;
  ck.require(s1 < s0, "sigma not lowered: " + std::to_string(s1) + " vs " + std::to_string(s0));
  return ck.verdict("same structure=" + std::string(structure ? "true" : "false") +
                    ", sigma " + std::to_string(s0) + " -> " + std::to_string(s1));
}

Verdict scale_smoke() {
  Checks ck;
  testgen::SyntheticCorpus corpus = testgen::synthetic_corpus(7);
  Program p = parse_program(corpus.source, "synthetic.pl");
  ck.require(p.clause_count() == 1000, "corpus has " + std::to_string(p.clause_count()) +
                                             " clauses");
  Config c;
  auto t0 = Clock::now();
  Report r1 = analyze(p, c);
  double ms = ms_since(t0);
  std::string j1 = to_json_string(r1);
  std::string j2 = to_json_string(analyze(p, c));
  ck.require(ms < 10000, "runtime " + std::to_string(ms) + " ms");
  ck.require(j1 == j2, "JSON differs between runs");
  std::size_t found = 0;
  for (const auto &[orig, copy] : corpus.planted) {
    bool hit = std::any_of(r1.pairs.begin(), r1.pairs.end(), [&](const ReportEntry &e) {
      std::set<std::string> sides{e.left.predicates.front(), e.right.predicates.front()};
      return e.is_duplicate() && sides == std::set<std::string>{orig, copy};
    });
    found += hit;
    ck.require(hit, orig + " ~ " + copy + " not reported at (1,1)");
  }
  return ck.verdict(std::to_string(found) + "/" + std::to_string(corpus.planted.size()) +
                    " planted pairs at (1,1), " + std::to_string(r1.pairs.size()) +
                    " pairs total, " + std::to_string(static_cast<long>(ms)) + " ms");
}

} // namespace

int main(int argc, char **argv) {
  fs::path out_dir = argc > 1 ? fs::path(argv[1]) : fs::temp_directory_path() / "logdup_counterexamples";
  std::vector<std::pair<std::string, std::function<Verdict()>>> criteria = {
      {"strict commonality worked example", strict_commonality_example},
      {"goal similarity worked example", goal_similarity_example},
      {"SCC similarity and closeness", scc_similarity_examples},
      {"closeness deviation documented", closeness_deviation},
      {"fingerprint equality and glb", fingerprint_examples},
      {"oracle equivalence", oracle_equivalence},
      {"mutation round trip", mutation_round_trip},
      {"glb/msg conjecture checker", [&] { return conjecture_checker(out_dir); }},
      {"sensitivity across recursive calls", sensitivity_across_calls},
      {"scale smoke test", scale_smoke},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Verdict v;
    try {
      v = criteria[i].second();
    } catch (const std::exception &e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    failures += !v.pass;
    std::cout << (v.pass ? "PASS" : "FAIL") << " criterion " << (i + 1) << " ("
              << criteria[i].first << "): " << v.detail << std::endl;
  }
  return failures == 0 ? 0 : 1;
}
