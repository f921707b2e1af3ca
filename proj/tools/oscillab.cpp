#include <cstdio>
#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "oscillab/error.hpp"
#include "oscillab/parallel.hpp"
#include "oscillab/version.hpp"
#include "runner/experiments.hpp"

namespace {

using namespace oscillab;
using namespace oscillab::runner;

int run_command(const std::string& path, const std::vector<std::string>& overrides,
                const std::string& csv, const std::string& json, const std::string& seed, int threads) {
  ExperimentConfig config = ExperimentConfig::load(path);
  for (const auto& o : overrides) config.override_key(o);
  if (!seed.empty()) config.override_key("seed=" + seed);
  if (!csv.empty()) config.set("output_csv", csv);
  if (!json.empty()) config.set("output_json", json);
  if (threads > 0) config.set("threads", threads);
  const RunResult r = run_and_write(config);
  std::cout << config.id() << ": " << (r.report.passed() ? "pass" : "FAIL") << " ("
            << r.report.rows().size() << " rows, " << r.report.failures() << " failing)\n";
  return r.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical laboratory for commutators of singular and fractional integrals"};
  app.require_subcommand(1);

  std::string config_path;
  std::vector<std::string> overrides;
  std::string csv;
  std::string json;
  std::string seed;
  int threads = 0;
  auto* run = app.add_subcommand("run", "Run an experiment described by a JSON config");
  run->add_option("config", config_path, "Experiment config file")->required();
  run->add_option("--set", overrides, "Override a config key (key=value)");
  run->add_option("--csv", csv, "CSV output path");
  run->add_option("--json", json, "JSON summary path");
  run->add_option("--seed", seed, "Seed for randomized probes");
  run->add_option("--threads", threads, "Worker threads (capped by OSCILLAB_THREADS)")
      ->check(CLI::PositiveNumber);

  auto* list = app.add_subcommand("list-fixtures", "List kernels, weights, symbols and exponents");
  auto* version = app.add_subcommand("version", "Print the library version");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfigError;
  }

  try {
    if (*version) {
      std::cout << "oscillab " << kVersion << "\n";
      return kExitPass;
    }
    if (*list) {
      std::cout << fixture_listing();
      return kExitPass;
    }
    return run_command(config_path, overrides, csv, json, seed, threads);
  } catch (const Error& e) {
    std::cerr << "oscillab: " << to_string(e.code()) << ": " << e.what() << "\n";
    return e.code() == ErrorCode::ConfigError ? kExitConfigError : kExitNumericalFailure;
  } catch (const std::exception& e) {
    std::cerr << "oscillab: " << e.what() << "\n";
    return kExitConfigError;
  }
}
