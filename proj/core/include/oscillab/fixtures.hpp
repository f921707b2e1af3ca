#pragma once

#include <string>
#include <vector>

#include "oscillab/grid.hpp"
#include "oscillab/spaces.hpp"

namespace oscillab {

/// Named symbols b: constant:<c>, log_abs, abs, sgn_log, inv.
/// |x| is the Euclidean norm; sgn uses the first coordinate.
GridFunction symbol_library(const std::string& name, const Grid& grid);
/// Named weights: power:<a> gives |x|^a.
GridFunction weight_library(const std::string& name, const Grid& grid);
/// Named exponents: constant:<p>, arctan_profile (2 + arctan(x_1)/pi).
/// Both carry log-Hoelder metadata.
ExponentFunction exponent_library(const std::string& name, const Grid& grid);

struct FixtureRegistry {
  std::vector<std::string> kernels;
  std::vector<std::string> weights;
  std::vector<std::string> symbols;
  std::vector<std::string> exponents;
};

FixtureRegistry fixture_registry();

}  // namespace oscillab
