#include "oscillab/bmo.hpp"

#include <algorithm>
#include <cmath>

#include "oscillab/summation.hpp"

namespace oscillab {

double mean_oscillation(const GridFunction& b, const Cube& q) {
  return mean_oscillation_shifted(b, q, q);
}

double mean_oscillation_shifted(const GridFunction& b, const Cube& q, const Cube& q_shift) {
  const double mean = cube_average(b, q_shift);
  const Grid& grid = b.grid();
  const CellRange range = grid.cells_in(q);
  std::vector<double> dev;
  dev.reserve(range.count());
  grid.for_each_cell(range, [&](std::size_t i) { dev.push_back(std::abs(b[i] - mean)); });
  return pairwise_sum<double>(dev) / static_cast<double>(dev.size());
}

OscillationReport bmo_seminorm(const GridFunction& b, const CubeFamily& family) {
  require_same_grid(b.grid(), family.grid);
  CubeSup s = sup_over(family, [&](const Cube& q) { return mean_oscillation(b, q); });
  OscillationReport report;
  report.seminorm = s.value;
  report.argmax = s.argmax;
  report.argmax_index = s.argmax_index;
  report.per_cube = std::move(s.per_cube);
  report.kind = family.kind;
  report.level_min = family.level_min;
  report.level_max = family.level_max;
  return report;
}

std::vector<double> oscillation_by_generation(const GridFunction& b, const CubeFamily& family) {
  require(family.kind == CubeFamily::Kind::Dyadic, ErrorCode::InvalidArgument,
          "per-generation oscillation needs a dyadic family");
  const OscillationReport report = bmo_seminorm(b, family);
  std::vector<double> out(static_cast<std::size_t>(family.level_max - family.level_min + 1), 0.0);
  for (std::size_t i = 0; i < family.size(); ++i) {
    auto& slot = out[static_cast<std::size_t>(family.levels[i] - family.level_min)];
    slot = std::max(slot, report.per_cube[i]);
  }
  return out;
}

}  // namespace oscillab
