#include <cstdio>
#include <exception>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "innerdist/errors.hpp"
#include "innerdist/suites.hpp"

namespace {

int config_exit(const innerdist::Error& e) {
  switch (e.code()) {
    case innerdist::errc::unknown_suite:
    case innerdist::errc::config_invalid:
    case innerdist::errc::io_failure:
    case innerdist::errc::invalid_parameter:
      return 2;
    default:
      return 2;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"verification suites for boundary measure and content distortion"};
  app.get_formatter()->column_width(28);

  innerdist::SuiteConfig cfg;
  app.add_option("suite", cfg.suite,
                 "suite name: loewner|theorem1|theorem1b|theorem2|fp|counterexample|convergence|"
                 "halfplane")
      ->required();
  app.add_option("--seed", cfg.seed, "RNG seed (default 1)");
  app.add_option("--cases", cfg.cases, "case count (0 = suite default)");
  app.add_option("--tolerance", cfg.tolerance, "pass tolerance (0 = suite default)");
  std::string alpha_arg;
  app.add_option("--alpha", alpha_arg, "comma-separated exponents in (0,1), e.g. 0.25,0.5");
  app.add_option("--output", cfg.output, "write the report to this path instead of stdout");
  app.add_option("--format", cfg.format, "csv or json (default csv)");
  app.add_option("--functions", cfg.functions_file, "JSON file of function descriptors");

  CLI11_PARSE(app, argc, argv);

  if (!alpha_arg.empty()) {
    std::size_t pos = 0;
    while (pos < alpha_arg.size()) {
      std::size_t next = alpha_arg.find(',', pos);
      if (next == std::string::npos) next = alpha_arg.size();
      try {
        cfg.alphas.push_back(std::stod(alpha_arg.substr(pos, next - pos)));
      } catch (const std::exception&) {
        std::fprintf(stderr, "error: --alpha expects comma-separated reals\n");
        return 2;
      }
      pos = next + 1;
    }
  }

  try {
    innerdist::SuiteReport rep = innerdist::run_suite(cfg);
    return innerdist::emit_report(rep, rep.config);
  } catch (const innerdist::Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return config_exit(e);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 2;
  }
}
