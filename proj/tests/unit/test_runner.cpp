#include <doctest.h>

#include <string>

#include "oscillab/error.hpp"
#include "oscillab/parallel.hpp"
#include "runner/experiments.hpp"

using namespace oscillab;
using namespace oscillab::runner;

namespace {

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return ErrorCode::InvalidArgument;
}

}  // namespace

TEST_CASE("config validation") {
  CHECK(code_of([] { ExperimentConfig::parse(R"({"experiment": "norms", "bogus": 1})"); }) == ErrorCode::ConfigError);
  CHECK(code_of([] { ExperimentConfig::parse(R"({"experiment": "nothing"})"); }) == ErrorCode::ConfigError);
  CHECK(code_of([] { ExperimentConfig::parse("not json"); }) == ErrorCode::ConfigError);
  const ExperimentConfig c = ExperimentConfig::parse(R"({"experiment": "maximal"})");
  CHECK(code_of([&] { (void)c.seed(); }) == ErrorCode::ConfigError);
  CHECK(code_of([&] { run_experiment(c); }) == ErrorCode::ConfigError);
}

TEST_CASE("overrides and space descriptors") {
  ExperimentConfig c = ExperimentConfig::parse(R"({"experiment": "norms", "seed": 1})");
  c.override_key("m=64");
  c.override_key("x=lebesgue:3");
  CHECK(c.integer("m", 0) == 64);
  CHECK(c.text("x") == "lebesgue:3");
  CHECK(code_of([&] { c.override_key("novalue"); }) == ErrorCode::ConfigError);
  const Grid g = c.grid();
  CHECK(parse_space("weighted:2:power:0.5", g).is_weighted());
  CHECK(parse_space("variable:arctan_profile", g).is_variable());
  CHECK(code_of([&] { parse_space("sobolev:2", g); }) == ErrorCode::ConfigError);
  CHECK(code_of([&] { parse_space("weighted:2:power:q", g); }) == ErrorCode::ConfigError);
}

TEST_CASE("csv layout and exit codes") {
  const ExperimentConfig c = ExperimentConfig::parse(
      R"({"experiment": "conditions", "id": "c", "m": 64, "level_max": 3, "x": "lebesgue:2", "y": "lebesgue:2", "expected": 1})");
  const RunResult r = run_experiment(c);
  CHECK(r.exit_code == kExitPass);
  const std::string csv = r.report.csv();
  CHECK(csv.rfind("experiment,quantity,cube_center,cube_side,value,tolerance,verdict\n", 0) == 0);

  const ExperimentConfig bad = ExperimentConfig::parse(
      R"({"experiment": "conditions", "id": "c", "m": 64, "level_max": 3, "x": "lebesgue:2", "y": "lebesgue:4", "expected": 1})");
  CHECK(run_experiment(bad).exit_code == kExitNumericalFailure);
}

TEST_CASE("unknown fixtures are config errors") {
  const ExperimentConfig c = ExperimentConfig::parse(
      R"({"experiment": "commutator", "seed": 3, "kernel": "mystery", "m": 64})");
  CHECK(code_of([&] { run_experiment(c); }) == ErrorCode::ConfigError);
}

TEST_CASE("csv output does not depend on the thread count") {
  const std::string text =
      R"({"experiment": "maximal", "id": "t", "seed": 5, "m": 128, "level_max": 5, "samples": 4})";
  ExperimentConfig one = ExperimentConfig::parse(text);
  one.set("threads", 1);
  ExperimentConfig three = ExperimentConfig::parse(text);
  three.set("threads", 3);
  const std::string a = run_experiment(one).report.csv();
  const std::string b = run_experiment(three).report.csv();
  set_max_threads(1);
  CHECK(a == b);
}

TEST_CASE("chain with a zero symbol reports zero stages") {
  const ExperimentConfig c = ExperimentConfig::parse(R"({"experiment": "chain", "id": "z", "seed": 1,
    "lower": -8, "upper": 8, "m": 256, "kernel": "bilinear_riesz", "symbol": "constant:0", "modes": 13,
    "fourier_tolerance": 1e-3, "tolerance": 1e-3, "base_center": [0], "base_side": 1, "level_min": 2, "level_max": 2})");
  const RunResult r = run_experiment(c);
  CHECK(r.exit_code == kExitPass);
  std::size_t zero_rows = 0;
  for (const auto& row : r.report.rows()) {
    if (row.quantity.rfind("stage_", 0) == 0 && row.quantity != "stage_max_abs") CHECK(row.value == 0.0);
    zero_rows += row.quantity == "stage_max_abs";
  }
  CHECK(zero_rows == 4);
}
