#include "oscillab/sweep.hpp"

#include <cmath>
#include <limits>

namespace oscillab {

ResolutionLevel resolution_level(int dimension, double lower, double upper, int level_min,
                                 int level_max, int cells_per_finest) {
  require(cells_per_finest >= 1 && level_max >= 0 && level_max <= 24, ErrorCode::InvalidArgument,
          "resolution level needs cells_per_finest >= 1 and 0 <= level_max <= 24");
  const int m = std::max(4, cells_per_finest << level_max);
  Grid grid = dimension == 1 ? Grid::line(lower, upper, m)
                             : Grid::square(lower, lower, upper - lower, m);
  CubeFamily family = enumerate_dyadic(grid, level_min, level_max);
  return {level_max, grid, std::move(family)};
}

double relative_growth(double prev, double next) {
  if (prev == 0.0) return next == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  return (next - prev) / std::abs(prev);
}

Stability assess_stability(std::span<const double> sups, double threshold) {
  require(sups.size() >= 2, ErrorCode::InvalidArgument, "stability needs at least two values");
  Stability s;
  const std::size_t n = sups.size();
  s.last_growth = relative_growth(sups[n - 2], sups[n - 1]);
  s.previous_growth = n >= 3 ? relative_growth(sups[n - 3], sups[n - 2]) : s.last_growth;
  s.stable = s.last_growth < threshold && s.previous_growth < threshold;
  return s;
}

bool grows_every_step(std::span<const double> values, double threshold) {
  if (values.size() < 2) return false;
  for (std::size_t i = 1; i < values.size(); ++i) {
    if (!(relative_growth(values[i - 1], values[i]) > threshold)) return false;
  }
  return true;
}

}  // namespace oscillab
