#include "runner/report.hpp"

#include <cmath>

#include <fmt/format.h>

namespace oscillab::runner {

namespace {

std::string_view verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Pass: return "pass";
    case Verdict::Fail: return "fail";
    case Verdict::Info: return "info";
  }
  return "info";
}

nlohmann::ordered_json json_number(double v) {
  if (std::isfinite(v)) return v;
  return format_number(v);
}

}  // namespace

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return fmt::format("{:.17g}", v);
}

Report::Report(std::string experiment, int dimension)
    : experiment_(std::move(experiment)), dimension_(dimension) {}

void Report::info(const std::string& quantity, double value, std::optional<Cube> cube) {
  rows_.push_back({quantity, cube, value, std::nullopt, Verdict::Info});
}

void Report::at_most(const std::string& quantity, double value, double tolerance,
                     std::optional<Cube> cube) {
  check(quantity, value <= tolerance, value, tolerance, cube);
}

void Report::at_least(const std::string& quantity, double value, double tolerance,
                      std::optional<Cube> cube) {
  check(quantity, value >= tolerance, value, tolerance, cube);
}

void Report::check(const std::string& quantity, bool ok, double value,
                   std::optional<double> tolerance, std::optional<Cube> cube) {
  rows_.push_back({quantity, cube, value, tolerance, ok ? Verdict::Pass : Verdict::Fail});
}

void Report::constant(const std::string& name, double value) { constants_[name] = json_number(value); }

void Report::argmax(const std::string& name, const Cube& cube) {
  nlohmann::ordered_json c;
  c["center"] = nlohmann::ordered_json::array();
  for (int a = 0; a < dimension_; ++a) c["center"].push_back(cube.center[a]);
  c["side"] = cube.side;
  argmax_[name] = c;
}

void Report::note(const std::string& key, nlohmann::json value) { notes_[key] = value; }

void Report::error(const std::string& code, const std::string& message) {
  errors_.push_back({{"code", code}, {"message", message}});
  rows_.push_back({"error:" + code, std::nullopt, std::nan(""), std::nullopt, Verdict::Fail});
}

bool Report::passed() const { return failures() == 0; }

std::size_t Report::failures() const {
  std::size_t n = 0;
  for (const auto& r : rows_) n += r.verdict == Verdict::Fail ? 1 : 0;
  return n;
}

std::string Report::csv() const {
  std::string out = "experiment,quantity,cube_center,cube_side,value,tolerance,verdict\n";
  for (const auto& r : rows_) {
    std::string center;
    std::string side;
    if (r.cube) {
      center = format_number(r.cube->center[0]);
      if (dimension_ == 2) center += ";" + format_number(r.cube->center[1]);
      side = format_number(r.cube->side);
    }
    out += fmt::format("{},{},{},{},{},{},{}\n", experiment_, r.quantity, center, side,
                       format_number(r.value), r.tolerance ? format_number(*r.tolerance) : "",
                       verdict_name(r.verdict));
  }
  return out;
}

std::string Report::json_summary(const nlohmann::json& config) const {
  nlohmann::ordered_json j;
  j["experiment"] = experiment_;
  j["passed"] = passed();
  j["rows"] = rows_.size();
  j["failed_rows"] = failures();
  nlohmann::ordered_json fixtures = nlohmann::ordered_json::object();
  for (const char* key : {"kernel", "symbol", "weight", "x", "x1", "x2", "y"}) {
    if (config.contains(key)) fixtures[key] = config.at(key);
  }
  nlohmann::ordered_json failing = nlohmann::ordered_json::array();
  for (const auto& r : rows_) {
    if (r.verdict != Verdict::Fail) continue;
    nlohmann::ordered_json f;
    f["quantity"] = r.quantity;
    f["value"] = json_number(r.value);
    if (r.cube) {
      f["cube_center"] = nlohmann::ordered_json::array();
      for (int a = 0; a < dimension_; ++a) f["cube_center"].push_back(r.cube->center[a]);
      f["cube_side"] = r.cube->side;
    } else {
      f["fixtures"] = fixtures;
    }
    failing.push_back(f);
  }
  j["failing"] = failing;
  j["constants"] = constants_;
  j["argmax_cubes"] = argmax_;
  j["notes"] = notes_;
  j["errors"] = errors_;
  j["config"] = nlohmann::ordered_json::parse(config.dump());
  return j.dump(2) + "\n";
}

}  // namespace oscillab::runner
