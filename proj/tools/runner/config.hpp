#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "oscillab/grid.hpp"
#include "oscillab/spaces.hpp"

namespace oscillab::runner {

/// Flat JSON experiment description. Unknown keys are rejected.
class ExperimentConfig {
 public:
  static ExperimentConfig parse(const std::string& text);
  static ExperimentConfig load(const std::string& path);

  /// key=value; the value is read as JSON when it parses, else as a string.
  void override_key(const std::string& assignment);
  void set(const std::string& key, nlohmann::json value);

  const std::string& experiment() const { return experiment_; }
  std::string id() const;

  bool has(const std::string& key) const { return data_.contains(key); }
  double number(const std::string& key, double fallback) const;
  double number(const std::string& key) const;
  int integer(const std::string& key, int fallback) const;
  std::string text(const std::string& key, const std::string& fallback) const;
  std::string text(const std::string& key) const;
  bool flag(const std::string& key, bool fallback) const;
  /// Mandatory for experiments that draw random probes.
  std::uint64_t seed() const;

  Grid grid() const;
  int dimension() const { return integer("dimension", 1); }

  const nlohmann::json& data() const { return data_; }

 private:
  void validate();

  nlohmann::json data_;
  std::string experiment_;
};

/// Space descriptors: lebesgue:<p>, weighted:<p>:<weight fixture>, variable:<exponent fixture>.
SpaceSpec parse_space(const std::string& spec, const Grid& grid);

const std::vector<std::string>& experiment_names();

}  // namespace oscillab::runner
