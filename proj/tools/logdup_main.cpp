#include <CLI11.hpp>
#include <iostream>

#include "logdup/error.hpp"
#include "logdup/pipeline.hpp"

int main(int argc, char **argv) {
  logdup::Config cfg;
  std::string format = "text";

  CLI::App app{"logdup: find duplicated and similar predicates in definite logic programs"};
  app.add_option("paths", cfg.paths, "Source files or directories (*.pl searched recursively)");
  app.add_option("--threshold", cfg.threshold, "Minimum closeness component to report")
      ->capture_default_str();
  app.add_option("--fp-threshold", cfg.fp_threshold,
                 "Minimum fingerprint estimate for exact comparison")
      ->capture_default_str();
  app.add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"text", "json"}))
      ->capture_default_str();
  app.add_flag("--no-normalize", "Compare raw clauses instead of normal forms");
  app.add_flag("--emit-common-core", cfg.emit_common_core,
               "Emit the generalised common definition of each pair");
  app.add_option("--exact-vars-limit", cfg.exact_vars_limit,
                 "Largest variable count searched exactly")
      ->capture_default_str();
  app.add_option("--exact-group-limit", cfg.exact_group_limit,
                 "Largest same-predicate atom group searched exactly")
      ->capture_default_str();
  app.add_option("--arity-limit", cfg.arity_limit,
                 "Largest arity whose argument permutations are enumerated")
      ->capture_default_str();
  app.add_option("--witness-cap", cfg.witness_cap,
                 "Permutation tuples examined per pair before giving up exactness")
      ->capture_default_str();
  app.add_option("--threads", cfg.threads, "Worker threads (0 = hardware)")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp &e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion &e) {
    return app.exit(e);
  } catch (const CLI::ParseError &e) {
    app.exit(e);
    return 2;
  }
  cfg.normalize = app.count("--no-normalize") == 0;
  cfg.format = format == "json" ? logdup::OutputFormat::Json : logdup::OutputFormat::Text;

  try {
    logdup::RunResult r = logdup::run(cfg);
    for (const std::string &e : r.errors)
      std::cerr << "logdup: " << e << "\n";
    if (r.exit_code != 0)
      return r.exit_code;
    if (cfg.format == logdup::OutputFormat::Json)
      std::cout << logdup::to_json_string(r.report);
    else
      std::cout << logdup::render_text(r.report);
    return 0;
  } catch (const std::exception &e) {
    std::cerr << "logdup: internal error: " << e.what() << "\n";
    return 3;
  }
}
