#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "oscillab/error.hpp"
#include "oscillab/grid.hpp"
#include "oscillab/parallel.hpp"
#include "oscillab/summation.hpp"
#include "oscillab/sweep.hpp"

using namespace oscillab;

TEST_CASE("cell centers and membership are half-open") {
  const Grid g = Grid::line(0.0, 1.0, 8);
  CHECK(g.spacing() == doctest::Approx(0.125));
  CHECK(g.center_coordinate(0, 0) == doctest::Approx(0.0625));
  // [0.25, 0.5) holds centers 0.3125 and 0.4375 only.
  const CellRange r = g.cells_in(Cube{{0.375, 0.0}, 0.25});
  CHECK(r.lo[0] == 2);
  CHECK(r.hi[0] == 4);
  CHECK(g.measure(Cube{{0.375, 0.0}, 0.25}) == doctest::Approx(0.25));
}

TEST_CASE("square grid indexing round-trips") {
  const Grid g = Grid::square(-1.0, -1.0, 2.0, 16);
  for (std::size_t i = 0; i < g.size(); i += 7) {
    CHECK(g.index(g.multi_index(i)) == i);
  }
  CHECK(g.cell_measure() == doctest::Approx(1.0 / 64.0));
}

TEST_CASE("cubes outside the box or without centers are rejected") {
  const Grid g = Grid::line(-1.0, 1.0, 16);
  CHECK_THROWS_AS(g.cells_in(Cube{{0.9, 0.0}, 0.5}), Error);
  try {
    g.cells_in(Cube{{0.9, 0.0}, 0.5});
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::OutOfDomain);
  }
  try {
    g.cells_in(Cube{{0.0, 0.0}, 0.01});
    FAIL("expected EmptyCube");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::EmptyCube);
  }
}

TEST_CASE("averages of indicators and affine functions") {
  const Grid g = Grid::line(0.0, 1.0, 64);
  const Cube q{{0.5, 0.0}, 0.5};
  CHECK(cube_average(indicator(g, q), q) == 1.0);
  const GridFunction x = GridFunction::sample(g, [](const Point& p) { return p[0]; });
  CHECK(cube_average(x, q) == doctest::Approx(0.5).epsilon(1e-14));
  CHECK(integral(x) == doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("interpolation reproduces affine functions") {
  const Grid g = Grid::square(0.0, 0.0, 1.0, 8);
  const GridFunction f = GridFunction::sample(g, [](const Point& p) { return 2.0 * p[0] - 3.0 * p[1] + 1.0; });
  CHECK(interpolate(f, {0.33, 0.71}) == doctest::Approx(2.0 * 0.33 - 3.0 * 0.71 + 1.0));
  CHECK_THROWS_AS(interpolate(f, {0.01, 0.5}), Error);
}

TEST_CASE("dyadic families count 2^(l n) cubes per generation") {
  const Grid g = Grid::square(0.0, 0.0, 1.0, 32);
  const CubeFamily fam = enumerate_dyadic(g, 0, 3);
  CHECK(fam.size() == 1 + 4 + 16 + 64);
  CHECK(fam.generation(2).size() == 16);
  const Grid line = Grid::line(-8.0, 8.0, 512);
  const CubeFamily sub = enumerate_dyadic(line, Cube{{0.0, 0.0}, 1.0}, 2, 4);
  CHECK(sub.size() == 4 + 8 + 16);
  for (const Cube& c : sub.cubes) CHECK(std::abs(c.center[0]) < 0.5);
}

TEST_CASE("sup over a family keeps the first maximiser") {
  const Grid g = Grid::line(0.0, 1.0, 64);
  const CubeFamily fam = enumerate_dyadic(g, 1, 1);
  const CubeSup s = sup_over(fam, [](const Cube&) { return 3.0; });
  CHECK(s.value == 3.0);
  CHECK(s.argmax_index == 0);
}

TEST_CASE("pairwise summation is exact on integers and independent of thread count") {
  std::vector<double> v(10007);
  std::iota(v.begin(), v.end(), 1.0);
  CHECK(pairwise_sum<double>(v) == 10007.0 * 10008.0 / 2.0);

  std::vector<int> hits(1000, 0);
  set_max_threads(4);
  parallel_for(hits.size(), [&](std::size_t i) { hits[i] += 1; });
  set_max_threads(1);
  CHECK(std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; }));
}

TEST_CASE("growth and stability verdicts") {
  CHECK(relative_growth(2.0, 3.0) == doctest::Approx(0.5));
  CHECK(relative_growth(0.0, 0.0) == 0.0);
  CHECK(std::isinf(relative_growth(0.0, 1.0)));
  const std::vector<double> flat{1.0, 1.2, 1.21, 1.215};
  CHECK(assess_stability(flat).stable);
  const std::vector<double> late{1.0, 1.01, 1.2};
  CHECK_FALSE(assess_stability(late).stable);
  const std::vector<double> geometric{1.0, 2.0, 4.0, 8.0};
  CHECK(grows_every_step(geometric, 0.5));
  CHECK_FALSE(grows_every_step(flat, 0.5));
}

TEST_CASE("resolution levels refine the grid with the family") {
  const ResolutionLevel a = resolution_level(1, -1.0, 1.0, 0, 5, 2);
  const ResolutionLevel b = resolution_level(1, -1.0, 1.0, 0, 6, 2);
  CHECK(a.grid.points_per_axis() == 64);
  CHECK(b.grid.points_per_axis() == 128);
  CHECK(b.family.size() == 2 * a.family.size() + 1);
}
