#include "logdup/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <thread>

#include "logdup/error.hpp"
#include "logdup/normalize.hpp"

namespace logdup {

namespace fs = std::filesystem;

StructureOptions Config::structure_options() const {
  StructureOptions o;
  o.arity_limit = arity_limit;
  o.witness_cap = witness_cap;
  o.goal_limits.exact_vars_limit = exact_vars_limit;
  o.goal_limits.exact_group_limit = exact_group_limit;
  return o;
}

std::string validate_config(const Config &c) {
  if (!(c.threshold >= 0.0 && c.threshold <= 1.0))
    return "threshold must lie in [0,1]";
  if (!(c.fp_threshold >= 0.0 && c.fp_threshold <= 1.0))
    return "fp-threshold must lie in [0,1]";
  if (c.exact_vars_limit < 1 || c.exact_group_limit < 1 || c.arity_limit < 1 ||
      c.witness_cap < 1)
    return "limits must be at least 1";
  return {};
}

bool ReportEntry::is_duplicate() const {
  return closeness && closeness->first == Ratio{1, 1} && closeness->second == Ratio{1, 1};
}

Ratio ReportEntry::min_closeness() const {
  if (!closeness)
    return Ratio{0, 1};
  return std::min(closeness->first, closeness->second);
}

namespace {

SccRef describe(const Scc &s) {
  SccRef r;
  for (const auto &m : s.members)
    r.predicates.push_back(m.str());
  if (!s.clauses.empty()) {
    r.file = s.clauses.front().origin.file;
    r.line = s.clauses.front().origin.line;
  }
  return r;
}

template <typename F> void parallel_for(std::size_t n, std::size_t threads, F &&body) {
  if (threads == 0)
    threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, n);
  if (threads <= 1) {
    for (std::size_t i = 0; i < n; ++i)
      body(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  for (std::size_t t = 0; t < threads; ++t)
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < n; i = next++)
        body(i);
    });
  for (auto &th : pool)
    th.join();
}

} // namespace

Report analyze(const Program &input, const Config &c) {
  Report report;
  for (const Diagnostic &d : input.warnings())
    report.warnings.push_back(d.str());

  Program prog = c.normalize ? normalize_program(input) : input;
  std::vector<Scc> sccs = build_sccs(prog);
  std::vector<SccPrint> prints;
  prints.reserve(sccs.size());
  for (const Scc &s : sccs)
    prints.push_back(scc_print(s, c.normalize));

  std::vector<CandidatePair> candidates = candidate_pairs(sccs, prints, c.fp_threshold);
  StructureOptions opts = c.structure_options();

  // Self-similarities of every SCC that takes part in some candidate.
  std::vector<std::size_t> needed;
  for (const auto &p : candidates) {
    needed.push_back(p.left);
    needed.push_back(p.right);
  }
  std::sort(needed.begin(), needed.end());
  needed.erase(std::unique(needed.begin(), needed.end()), needed.end());
  std::vector<std::size_t> self(sccs.size(), 0);
  parallel_for(needed.size(), c.threads, [&](std::size_t k) {
    self[needed[k]] = self_similarity(sccs[needed[k]], opts.goal_limits);
  });

  std::vector<std::optional<SimilarityResult>> results(candidates.size());
  parallel_for(candidates.size(), c.threads, [&](std::size_t k) {
    const CandidatePair &p = candidates[k];
    results[k] = closeness(sccs[p.left], sccs[p.right], opts, {self[p.left], self[p.right]});
  });

  for (std::size_t k = 0; k < candidates.size(); ++k) {
    const auto &res = results[k];
    if (!res)
      continue;
    if (std::min(res->closeness.first.value(), res->closeness.second.value()) + 1e-12 <
        c.threshold)
      continue;
    const CandidatePair &p = candidates[k];
    ReportEntry e;
    e.left_scc = sccs[p.left];
    e.right_scc = sccs[p.right];
    e.left = describe(e.left_scc);
    e.right = describe(e.right_scc);
    e.fingerprint_estimate = p.estimate;
    e.closeness = res->closeness;
    e.sigma = res->sigma;
    e.denominators = res->denominators;
    e.total_nodes = {total_nodes(e.left_scc), total_nodes(e.right_scc)};
    e.approximate = res->approximate;
    e.witness = res->witness;
    if (c.emit_common_core) {
      if (res->approximate) {
        report.warnings.push_back("common core of " + e.left_scc.name() + " and " +
                                  e.right_scc.name() + " skipped: similarity is approximate");
      } else {
        std::string text;
        for (const Clause &cl : common_core(e.left_scc, e.right_scc, *res))
          text += render_clause(cl) + "\n";
        e.common_core = std::move(text);
      }
    }
    report.pairs.push_back(std::move(e));
  }

  std::stable_sort(report.pairs.begin(), report.pairs.end(),
                   [](const ReportEntry &a, const ReportEntry &b) {
                     if (a.is_duplicate() != b.is_duplicate())
                       return a.is_duplicate();
                     Ratio ma = a.min_closeness(), mb = b.min_closeness();
                     if (ma != mb)
                       return ma > mb;
                     if (a.left_scc.name() != b.left_scc.name())
                       return a.left_scc.name() < b.left_scc.name();
                     return a.right_scc.name() < b.right_scc.name();
                   });
  return report;
}

namespace {

std::vector<fs::path> expand(const std::string &path, std::vector<std::string> &errors) {
  std::vector<fs::path> out;
  std::error_code ec;
  fs::path p(path);
  if (fs::is_directory(p, ec)) {
    for (auto it = fs::recursive_directory_iterator(p, ec); !ec && it != fs::end(it);
         it.increment(ec))
      if (it->is_regular_file() && it->path().extension() == ".pl")
        out.push_back(it->path());
    if (ec)
      errors.push_back(path + ": " + ec.message());
    std::sort(out.begin(), out.end());
    return out;
  }
  if (!fs::is_regular_file(p, ec)) {
    errors.push_back(path + ": cannot read file");
    return out;
  }
  out.push_back(p);
  return out;
}

} // namespace

RunResult run(const Config &c) {
  RunResult result;
  if (std::string e = validate_config(c); !e.empty()) {
    result.exit_code = 2;
    result.errors.push_back(e);
    return result;
  }
  std::vector<fs::path> files;
  for (const std::string &p : c.paths) {
    auto more = expand(p, result.errors);
    files.insert(files.end(), more.begin(), more.end());
  }
  if (!result.errors.empty()) {
    result.exit_code = 2;
    return result;
  }

  std::vector<std::optional<Program>> parsed(files.size());
  std::vector<std::string> failures(files.size());
  std::vector<std::string> unreadable(files.size());
  parallel_for(files.size(), c.threads, [&](std::size_t i) {
    std::ifstream in(files[i], std::ios::binary);
    if (!in) {
      unreadable[i] = files[i].string() + ": cannot read file";
      return;
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    try {
      parsed[i] = parse_program(buf.str(), files[i].string());
    } catch (const ParseError &e) {
      failures[i] = e.what();
    }
  });
  for (const auto &u : unreadable)
    if (!u.empty())
      result.errors.push_back(u);
  if (!result.errors.empty()) {
    result.exit_code = 2;
    return result;
  }

  Program corpus;
  std::size_t ok = 0;
  for (std::size_t i = 0; i < files.size(); ++i) {
    if (parsed[i]) {
      corpus.merge(*parsed[i]);
      ++ok;
    }
  }
  if (!files.empty() && ok == 0) {
    result.exit_code = 1;
    for (const auto &f : failures)
      result.errors.push_back(f);
    return result;
  }
  result.report = analyze(corpus, c);
  std::vector<std::string> parse_warnings;
  for (const auto &f : failures)
    if (!f.empty())
      parse_warnings.push_back(f);
  result.report.warnings.insert(result.report.warnings.begin(), parse_warnings.begin(),
                                parse_warnings.end());
  return result;
}

} // namespace logdup
