#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "logdup/depgraph.hpp"
#include "logdup/fingerprint.hpp"
#include "logdup/structure.hpp"

namespace logdup {

enum class OutputFormat { Text, Json };

struct Config {
  std::vector<std::string> paths;
  double threshold = 0.5;
  double fp_threshold = 0.5;
  std::size_t exact_vars_limit = 8;
  std::size_t exact_group_limit = 6;
  std::size_t arity_limit = 6;
  std::size_t witness_cap = 10000;
  bool normalize = true;
  bool emit_common_core = false;
  OutputFormat format = OutputFormat::Text;
  /// 0 picks the hardware concurrency.
  std::size_t threads = 0;

  StructureOptions structure_options() const;
};

/// Empty when valid, else a diagnostic.
std::string validate_config(const Config &c);

struct SccRef {
  std::vector<std::string> predicates;
  std::string file;
  int line = 0;
};

struct ReportEntry {
  SccRef left, right;
  Scc left_scc, right_scc;
  std::pair<Ratio, Ratio> fingerprint_estimate;
  std::optional<std::pair<Ratio, Ratio>> closeness;
  std::size_t sigma = 0;
  std::pair<std::size_t, std::size_t> denominators;
  std::pair<std::size_t, std::size_t> total_nodes;
  bool approximate = false;
  StructureWitness witness;
  std::optional<std::string> common_core;

  bool is_duplicate() const;
  Ratio min_closeness() const;
};

struct Report {
  std::vector<ReportEntry> pairs;
  std::vector<std::string> warnings;
};

struct RunResult {
  int exit_code = 0;
  Report report;
  /// Fatal diagnostics (exit codes 1 and 2).
  std::vector<std::string> errors;
};

/// Detector over an in-memory program: normalize (optional), SCCs,
/// fingerprint pre-filter, exact closeness, ranking. Warnings already in
/// `p` are carried into the report.
Report analyze(const Program &p, const Config &c);

/// Reads every path (directories are searched recursively for *.pl, in
/// sorted order), then analyzes the merged corpus.
/// Exit codes: 0 ok, 1 every input failed to parse, 2 unreadable path or
/// invalid configuration.
RunResult run(const Config &c);

std::string to_json_string(const Report &r);
std::string render_text(const Report &r);

/// Rebuilds the witness of one JSON pair object.
StructureWitness witness_from_json(std::string_view pair_json);

/// Explanation of the denominator convention placed in report metadata.
std::string_view denominator_note();

} // namespace logdup
