#pragma once

#include "oscillab/grid.hpp"

namespace oscillab {

/// avg_Q |b - avg_Q b|.
double mean_oscillation(const GridFunction& b, const Cube& q);
/// avg_Q |b - avg_{Q'} b|.
double mean_oscillation_shifted(const GridFunction& b, const Cube& q, const Cube& q_shift);

struct OscillationReport {
  double seminorm = 0.0;
  Cube argmax;
  std::size_t argmax_index = 0;
  std::vector<double> per_cube;
  CubeFamily::Kind kind = CubeFamily::Kind::Explicit;
  int level_min = 0;
  int level_max = 0;
};

/// Sup over the family of the mean oscillation.
OscillationReport bmo_seminorm(const GridFunction& b, const CubeFamily& family);

/// Per-generation maxima of the mean oscillation, one entry per level in
/// [family.level_min, family.level_max].
std::vector<double> oscillation_by_generation(const GridFunction& b, const CubeFamily& family);

}  // namespace oscillab
