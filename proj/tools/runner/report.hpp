#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "oscillab/grid.hpp"

namespace oscillab::runner {

enum class Verdict { Pass, Fail, Info };

struct ReportRow {
  std::string quantity;
  std::optional<Cube> cube;
  double value = 0.0;
  std::optional<double> tolerance;
  Verdict verdict = Verdict::Info;
};

class Report {
 public:
  Report(std::string experiment, int dimension);

  void info(const std::string& quantity, double value, std::optional<Cube> cube = std::nullopt);
  /// Pass when value <= tolerance.
  void at_most(const std::string& quantity, double value, double tolerance,
               std::optional<Cube> cube = std::nullopt);
  /// Pass when value >= tolerance.
  void at_least(const std::string& quantity, double value, double tolerance,
                std::optional<Cube> cube = std::nullopt);
  void check(const std::string& quantity, bool ok, double value, std::optional<double> tolerance,
             std::optional<Cube> cube = std::nullopt);

  void constant(const std::string& name, double value);
  void argmax(const std::string& name, const Cube& cube);
  void note(const std::string& key, nlohmann::json value);
  void error(const std::string& code, const std::string& message);

  const std::vector<ReportRow>& rows() const { return rows_; }
  bool passed() const;
  std::size_t failures() const;

  std::string csv() const;
  std::string json_summary(const nlohmann::json& config) const;

 private:
  std::string experiment_;
  int dimension_;
  std::vector<ReportRow> rows_;
  nlohmann::ordered_json constants_ = nlohmann::ordered_json::object();
  nlohmann::ordered_json argmax_ = nlohmann::ordered_json::object();
  nlohmann::ordered_json notes_ = nlohmann::ordered_json::object();
  nlohmann::ordered_json errors_ = nlohmann::ordered_json::array();
};

std::string format_number(double v);

}  // namespace oscillab::runner
