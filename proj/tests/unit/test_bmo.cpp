#include <doctest.h>

#include <cmath>
#include <numbers>

#include "oscillab/bmo.hpp"
#include "oscillab/fixtures.hpp"

using namespace oscillab;

TEST_CASE("mean oscillation of the identity on the unit interval is one quarter") {
  const Grid g = Grid::line(0.0, 1.0, 64);
  const GridFunction x = GridFunction::sample(g, [](const Point& p) { return p[0]; });
  CHECK(mean_oscillation(x, g.box()) == doctest::Approx(0.25).epsilon(1e-14));
}

TEST_CASE("constants have zero oscillation") {
  const Grid g = Grid::square(-1.0, -1.0, 2.0, 16);
  const OscillationReport r = bmo_seminorm(GridFunction(g, 4.0), enumerate_dyadic(g, 0, 3));
  CHECK(r.seminorm == 0.0);
}

TEST_CASE("log|x| has scale-invariant oscillation 2/e on intervals at the origin") {
  const Grid g = Grid::line(-1.0, 1.0, 4096);
  const GridFunction b = symbol_library("log_abs", g);
  for (double r : {1.0, 0.5, 0.25}) {
    CHECK(mean_oscillation(b, Cube{{r / 2.0, 0.0}, r}) == doctest::Approx(2.0 / std::numbers::e).epsilon(5e-3));
  }
  const std::vector<double> gens = oscillation_by_generation(b, enumerate_dyadic(g, 0, 6));
  CHECK(gens.size() == 7);
  for (double v : gens) CHECK(v < 1.0);
}

TEST_CASE("sgn(x) log|x| oscillation grows towards the origin") {
  const Grid g = Grid::line(-1.0, 1.0, 4096);
  const GridFunction b = symbol_library("sgn_log", g);
  const double wide = mean_oscillation(b, Cube{{0.0, 0.0}, 0.5});
  const double narrow = mean_oscillation(b, Cube{{0.0, 0.0}, 0.0625});
  CHECK(narrow > wide + 1.0);
}

TEST_CASE("shifted oscillation uses the other cube's average") {
  const Grid g = Grid::line(0.0, 2.0, 64);
  const GridFunction x = GridFunction::sample(g, [](const Point& p) { return p[0]; });
  // avg over [0,1] of |x - 1.5| = 1.
  CHECK(mean_oscillation_shifted(x, Cube{{0.5, 0.0}, 1.0}, Cube{{1.5, 0.0}, 1.0}) == doctest::Approx(1.0).epsilon(1e-14));
}
