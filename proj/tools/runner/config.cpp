#include "runner/config.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#include "oscillab/fixtures.hpp"

namespace oscillab::runner {

namespace {

const std::set<std::string>& known_keys() {
  static const std::set<std::string> keys{
      "experiment", "id", "seed", "dimension", "lower", "upper", "m", "level_min", "level_max",
      "cells_per_finest", "base_center", "base_side", "x", "x1", "x2", "y", "alpha", "p", "q",
      "p1", "p2", "weight", "weight2", "symbol", "kernel", "truncation_radius", "delta", "modes",
      "fourier_method", "fourier_tolerance", "max_terms", "trials", "probes", "expect",
      "expected", "tolerance", "output_csv", "output_json", "samples", "threads", "sweep_min",
      "growth_threshold"};
  return keys;
}

[[noreturn]] void config_error(const std::string& what) { fail(ErrorCode::ConfigError, what); }

}  // namespace

const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names{"norms",       "weight-constants", "conditions",
                                              "maximal",     "commutator",       "chain",
                                              "necessity"};
  return names;
}

ExperimentConfig ExperimentConfig::parse(const std::string& text) {
  ExperimentConfig c;
  try {
    c.data_ = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    config_error(std::string("config is not valid JSON: ") + e.what());
  }
  if (!c.data_.is_object()) config_error("config must be a JSON object");
  c.validate();
  return c;
}

ExperimentConfig ExperimentConfig::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) config_error("cannot open config '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

void ExperimentConfig::validate() {
  for (const auto& [key, value] : data_.items()) {
    if (!known_keys().count(key)) config_error("unknown config key '" + key + "'");
    if (value.is_object() || (value.is_array() && key != "base_center")) {
      config_error("config key '" + key + "' must be a scalar");
    }
  }
  if (!data_.contains("experiment") || !data_["experiment"].is_string()) {
    config_error("config needs a string 'experiment'");
  }
  experiment_ = data_["experiment"].get<std::string>();
  const auto& names = experiment_names();
  if (std::find(names.begin(), names.end(), experiment_) == names.end()) {
    config_error("unknown experiment '" + experiment_ + "'");
  }
  if (data_.contains("tolerance") && !(number("tolerance") > 0.0)) config_error("tolerance must be > 0");
  if (data_.contains("fourier_tolerance") && !(number("fourier_tolerance") > 0.0)) {
    config_error("fourier_tolerance must be > 0");
  }
}

void ExperimentConfig::override_key(const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0) config_error("override '" + assignment + "' is not key=value");
  const std::string key = assignment.substr(0, eq);
  const std::string raw = assignment.substr(eq + 1);
  nlohmann::json value = nlohmann::json::parse(raw, nullptr, false);
  if (value.is_discarded()) value = raw;
  set(key, std::move(value));
}

void ExperimentConfig::set(const std::string& key, nlohmann::json value) {
  data_[key] = std::move(value);
  validate();
}

std::string ExperimentConfig::id() const { return text("id", experiment_); }

double ExperimentConfig::number(const std::string& key, double fallback) const {
  return data_.contains(key) ? number(key) : fallback;
}

double ExperimentConfig::number(const std::string& key) const {
  if (!data_.contains(key)) config_error("missing config key '" + key + "'");
  const auto& v = data_.at(key);
  if (!v.is_number()) config_error("config key '" + key + "' must be a number");
  return v.get<double>();
}

int ExperimentConfig::integer(const std::string& key, int fallback) const {
  if (!data_.contains(key)) return fallback;
  const auto& v = data_.at(key);
  if (!v.is_number_integer()) config_error("config key '" + key + "' must be an integer");
  return v.get<int>();
}

std::string ExperimentConfig::text(const std::string& key, const std::string& fallback) const {
  return data_.contains(key) ? text(key) : fallback;
}

std::string ExperimentConfig::text(const std::string& key) const {
  if (!data_.contains(key)) config_error("missing config key '" + key + "'");
  const auto& v = data_.at(key);
  if (!v.is_string()) config_error("config key '" + key + "' must be a string");
  return v.get<std::string>();
}

bool ExperimentConfig::flag(const std::string& key, bool fallback) const {
  if (!data_.contains(key)) return fallback;
  const auto& v = data_.at(key);
  if (!v.is_boolean()) config_error("config key '" + key + "' must be true or false");
  return v.get<bool>();
}

std::uint64_t ExperimentConfig::seed() const {
  if (!data_.contains("seed")) config_error("experiment '" + experiment_ + "' draws random probes and needs a 'seed'");
  const auto& v = data_.at("seed");
  if (!v.is_number_unsigned()) config_error("seed must be a non-negative integer");
  return v.get<std::uint64_t>();
}

Grid ExperimentConfig::grid() const {
  const int n = dimension();
  if (n != 1 && n != 2) config_error("dimension must be 1 or 2");
  const double lo = number("lower", -1.0);
  const double hi = number("upper", 1.0);
  const int m = integer("m", 256);
  try {
    return n == 1 ? Grid::line(lo, hi, m) : Grid::square(lo, lo, hi - lo, m);
  } catch (const Error& e) {
    config_error(std::string("invalid grid: ") + e.what());
  }
}

SpaceSpec parse_space(const std::string& spec, const Grid& grid) {
  auto number_of = [&](const std::string& s) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(s, &used);
    } catch (const std::exception&) {
      config_error("space '" + spec + "' has a malformed exponent");
    }
    if (used != s.size()) config_error("space '" + spec + "' has a malformed exponent");
    return v;
  };
  const auto colon = spec.find(':');
  if (colon == std::string::npos) config_error("space '" + spec + "' needs kind:parameters");
  const std::string kind = spec.substr(0, colon);
  const std::string rest = spec.substr(colon + 1);
  try {
    if (kind == "lebesgue") return SpaceSpec::lebesgue(number_of(rest));
    if (kind == "weighted") {
      const auto c2 = rest.find(':');
      if (c2 == std::string::npos) config_error("weighted space needs weighted:<p>:<weight>");
      return SpaceSpec::weighted(number_of(rest.substr(0, c2)), weight_library(rest.substr(c2 + 1), grid));
    }
    if (kind == "variable") return SpaceSpec::variable(exponent_library(rest, grid));
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ConfigError) throw;
    config_error("space '" + spec + "': " + e.what());
  }
  config_error("unknown space kind '" + kind + "'");
}

}  // namespace oscillab::runner
