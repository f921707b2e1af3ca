#pragma once

#include <span>
#include <vector>

#include "oscillab/grid.hpp"

namespace oscillab {

/// A grid refined together with its dyadic family. The finest generation
/// always has `cells_per_finest` cells per axis, and each added generation
/// doubles the resolution.
struct ResolutionLevel {
  int level_max;
  Grid grid;
  CubeFamily family;
};

ResolutionLevel resolution_level(int dimension, double lower, double upper, int level_min,
                                 int level_max, int cells_per_finest);

/// (next - prev) / |prev|; +inf when prev == 0 < next, 0 when both are 0.
double relative_growth(double prev, double next);

/// A sup sequence indexed by level_max is stable when each of its last two
/// relative growths is below `threshold`.
struct Stability {
  bool stable = false;
  double last_growth = 0.0;
  double previous_growth = 0.0;
};

Stability assess_stability(std::span<const double> sups, double threshold = 0.05);

/// True when every step of the sequence grows by more than `threshold`.
bool grows_every_step(std::span<const double> values, double threshold);

}  // namespace oscillab
