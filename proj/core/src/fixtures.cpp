#include "oscillab/fixtures.hpp"

#include <cmath>
#include <numbers>
#include <optional>

#include "oscillab/kernel.hpp"

namespace oscillab {

namespace {

double radius(const Point& x, int n) { return n == 1 ? std::abs(x[0]) : std::hypot(x[0], x[1]); }

std::optional<double> parameter(const std::string& name, const std::string& prefix) {
  if (name.rfind(prefix, 0) != 0) return std::nullopt;
  const std::string tail = name.substr(prefix.size());
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(tail, &used);
  } catch (const std::exception&) {
    fail(ErrorCode::InvalidArgument, "fixture '" + name + "' has a malformed parameter");
  }
  if (used != tail.size() || !std::isfinite(v)) {
    fail(ErrorCode::InvalidArgument, "fixture '" + name + "' has a malformed parameter");
  }
  return v;
}

void require_off_origin(const Grid& grid, const std::string& name) {
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (radius(grid.cell_center(i), grid.dimension()) == 0.0) {
      fail(ErrorCode::InvalidArgument, "fixture '" + name + "' is singular at a cell center");
    }
  }
}

}  // namespace

GridFunction symbol_library(const std::string& name, const Grid& grid) {
  const int n = grid.dimension();
  if (auto c = parameter(name, "constant:")) return GridFunction(grid, *c);
  if (name == "abs") {
    return GridFunction::sample(grid, [n](const Point& x) { return radius(x, n); });
  }
  if (name == "log_abs") {
    require_off_origin(grid, name);
    return GridFunction::sample(grid, [n](const Point& x) { return std::log(radius(x, n)); });
  }
  if (name == "sgn_log") {
    require_off_origin(grid, name);
    return GridFunction::sample(grid, [n](const Point& x) {
      const double s = x[0] > 0.0 ? 1.0 : (x[0] < 0.0 ? -1.0 : 0.0);
      return s * std::log(radius(x, n));
    });
  }
  if (name == "inv") {
    require_off_origin(grid, name);
    return GridFunction::sample(grid, [n](const Point& x) { return 1.0 / radius(x, n); });
  }
  fail(ErrorCode::InvalidArgument, "unknown symbol '" + name + "'");
}

GridFunction weight_library(const std::string& name, const Grid& grid) {
  const int n = grid.dimension();
  if (auto a = parameter(name, "power:")) {
    if (*a != 0.0) require_off_origin(grid, name);
    const double e = *a;
    return GridFunction::sample(grid, [n, e](const Point& x) { return std::pow(radius(x, n), e); });
  }
  fail(ErrorCode::InvalidArgument, "unknown weight '" + name + "'");
}

ExponentFunction exponent_library(const std::string& name, const Grid& grid) {
  if (auto p = parameter(name, "constant:")) {
    require(*p >= 1.0, ErrorCode::InvalidArgument, "constant exponent must be >= 1");
    return ExponentFunction(GridFunction(grid, *p), LogHolder{0.0, 0.0, *p});
  }
  if (name == "arctan_profile") {
    GridFunction p = GridFunction::sample(
        grid, [](const Point& x) { return 2.0 + std::atan(x[0]) / std::numbers::pi; });
    const LogHolder lh = estimate_log_holder(p, 2.0);
    return ExponentFunction(std::move(p), lh);
  }
  fail(ErrorCode::InvalidArgument, "unknown exponent '" + name + "'");
}

FixtureRegistry fixture_registry() {
  return {kernel_names(),
          {"power:a"},
          {"log_abs", "abs", "sgn_log", "inv", "constant:c"},
          {"constant:p", "arctan_profile"}};
}

}  // namespace oscillab
