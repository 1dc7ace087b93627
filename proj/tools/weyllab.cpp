// weyllab: run seeded verification suites and write reports.
//
// Exit status: 0 pass, 1 fail, 2 configuration or I/O error.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

#include "weyllab/suites.hpp"

namespace {

constexpr int exit_pass = 0;
constexpr int exit_fail = 1;
constexpr int exit_config = 2;

bool env_override(const char* name, std::string& out) {
  const char* v = std::getenv(name);
  if (!v || !*v) return false;
  out = v;
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  weyllab::SuiteConfig cfg;
  bool list = false;
  bool with_timing = false;
  double p = 0.0;

  std::string env;
  try {
    if (env_override("WEYLLAB_SEED", env)) cfg.seed = std::stoull(env);
    if (env_override("WEYLLAB_TOL", env)) cfg.tol = std::stod(env);
  } catch (const std::exception&) {
    std::cerr << "weyllab: cannot parse environment override '" << env << "'\n";
    return exit_config;
  }

  CLI::App app{"Seeded verification suites for Weyl transforms and twisted convolution on finite abelian groups"};
  app.add_option("--suite", cfg.suite, "suite name (see --list-suites)");
  app.add_option("--group", cfg.group, "cyclic orders, e.g. 2,3")->capture_default_str();
  app.add_option("--algebra", cfg.algebra, "c, cn:<n>, dual or file:<path>")->capture_default_str();
  app.add_option("--trials", cfg.trials, "number of trials")->capture_default_str();
  app.add_option("--seed", cfg.seed, "master seed (default from WEYLLAB_SEED)")->capture_default_str();
  app.add_option("--tol", cfg.tol, "pass tolerance (default from WEYLLAB_TOL)")->capture_default_str();
  auto* p_opt = app.add_option("--p", p, "exponent for suites that take one");
  app.add_option("--out", cfg.out, "report path (stdout when omitted)");
  app.add_option("--defect-table", cfg.defect_table, "CSV path for the per-trial defect table");
  app.add_option("--threads", cfg.threads, "worker threads (0: all cores)")->capture_default_str();
  app.add_flag("--with-timing", with_timing, "include wall-clock duration in the report");
  app.add_flag("--list-suites", list, "print registered suites and exit");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? exit_pass : exit_config;
  }

  if (list) {
    for (const auto& s : weyllab::registered_suites())
      std::cout << s.name << (s.scalar_only ? "  [c only]  " : "  ") << s.summary << '\n';
    return exit_pass;
  }
  if (cfg.suite.empty()) {
    std::cerr << "weyllab: --suite is required\n";
    return exit_config;
  }
  if (*p_opt) cfg.p = p;

  weyllab::SuiteReport report;
  try {
    report = weyllab::run_suite(cfg);
  } catch (const std::exception& e) {
    std::cerr << "weyllab: " << e.what() << '\n';
    return exit_config;
  }

  if (cfg.out.empty()) {
    weyllab::serialize_report(std::cout, report, with_timing);
  } else {
    std::ofstream out(cfg.out, std::ios::binary);
    if (!out) {
      std::cerr << "weyllab: cannot open '" << cfg.out << "' for writing\n";
      return exit_config;
    }
    weyllab::serialize_report(out, report, with_timing);
    if (!out.flush()) {
      std::cerr << "weyllab: failed writing '" << cfg.out << "'\n";
      return exit_config;
    }
    std::cout << cfg.suite << ": " << (report.pass ? "PASS" : "FAIL") << " max_defect "
              << weyllab::format_double(report.max_defect) << '\n';
  }
  if (!cfg.defect_table.empty()) {
    try {
      weyllab::emit_defect_table(report, cfg.defect_table);
    } catch (const std::exception& e) {
      std::cerr << "weyllab: " << e.what() << '\n';
      return exit_config;
    }
  }
  return report.pass ? exit_pass : exit_fail;
}
