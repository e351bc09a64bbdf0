#include <cstdint>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "cnplab/cnplab.h"

namespace {

// Exit codes: 0 all assertions held, 1 an assertion failed, 2 the run
// itself failed (bad config, numerical error, I/O).
constexpr int kAssertionFailed = 1;
constexpr int kRunFailed = 2;

int report_error(cnplab_status s) {
  std::cerr << "cnplab: " << cnplab_status_name(s) << ": " << cnplab_last_error() << "\n";
  return kRunFailed;
}

int cmd_list() {
  char* names = nullptr;
  const cnplab_status s = cnplab_list_experiments(&names);
  if (s != CNPLAB_OK) return report_error(s);
  std::cout << names;
  cnplab_string_free(names);
  return 0;
}

int cmd_run(const std::string& config_path, const std::string& out_dir, const std::optional<std::uint64_t>& seed,
            bool quiet) {
  std::ifstream in(config_path);
  if (!in) {
    std::cerr << "cnplab: cannot read " << config_path << "\n";
    return kRunFailed;
  }
  std::stringstream buf;
  buf << in.rdbuf();
  const std::string text = buf.str();

  char* report = nullptr;
  char* dir = nullptr;
  int passed = 0;
  const std::uint64_t seed_value = seed.value_or(0);
  const cnplab_status s = cnplab_run_config(text.c_str(), out_dir.empty() ? nullptr : out_dir.c_str(),
                                            seed ? &seed_value : nullptr, &report, &dir, &passed);
  if (s != CNPLAB_OK) return report_error(s);
  if (!quiet) std::cout << report << "\n";
  std::cerr << "cnplab: report written to " << dir << (passed ? " (pass)" : " (FAIL)") << "\n";
  cnplab_string_free(report);
  cnplab_string_free(dir);
  return passed ? 0 : kAssertionFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cnplab: finite-sample experiments on complete Nevanlinna-Pick spaces"};
  app.set_version_flag("--version", std::string(cnplab_version()));
  app.require_subcommand(1);

  auto* run = app.add_subcommand("run", "Run one experiment config and write its report");
  std::string config_path;
  std::string out_dir;
  std::optional<std::uint64_t> seed;
  bool quiet = false;
  run->add_option("config", config_path, "Experiment config (JSON)")->required()->check(CLI::ExistingFile);
  run->add_option("--out", out_dir, "Output directory (default: $CNPLAB_OUT_DIR or ./cnplab-out)");
  run->add_option("--seed", seed, "Seed; overrides the one in the config");
  run->add_flag("-q,--quiet", quiet, "Do not print the report to stdout");

  app.add_subcommand("list", "List the experiment names");

  CLI11_PARSE(app, argc, argv);

  if (run->parsed()) return cmd_run(config_path, out_dir, seed, quiet);
  return cmd_list();
}
