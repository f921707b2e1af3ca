#include <doctest.h>

#include <cmath>

#include "oscillab/error.hpp"
#include "oscillab/fixtures.hpp"
#include "oscillab/weights.hpp"

using namespace oscillab;

namespace {

// Average of x^a over [1, 2].
double power_average(double a) { return (std::pow(2.0, a + 1.0) - 1.0) / (a + 1.0); }

}  // namespace

TEST_CASE("unit weight has constant one") {
  const Grid g = Grid::line(-1.0, 1.0, 256);
  const GridFunction one(g, 1.0);
  const CubeFamily fam = enumerate_dyadic(g, 0, 6);
  CHECK(ap_constant(one, 2.0, fam).value == doctest::Approx(1.0).epsilon(1e-14));
  CHECK(ap_constant(one, 1.5, fam).value == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("A_p quantity of a power weight off the origin") {
  const Grid g = Grid::line(0.0, 4.0, 4096);
  const GridFunction w = weight_library("power:1.5", g);
  const Cube q{{1.5, 0.0}, 1.0};
  const double p = 3.0;
  const double expected = power_average(1.5) * std::pow(power_average(-1.5 / (p - 1.0)), p - 1.0);
  CHECK(ap_quantity(w, p, q) == doctest::Approx(expected).epsilon(1e-6));
}

TEST_CASE("A_p duality identity per cube") {
  const Grid g = Grid::line(-1.0, 1.0, 256);
  const GridFunction w = weight_library("power:0.5", g);
  const double p = 3.0;
  const double pc = 1.5;
  const GridFunction dual = transform(w, [pc](double v) { return std::pow(v, 1.0 - pc); });
  for (const Cube& q : enumerate_dyadic(g, 0, 6).cubes) {
    const double a = ap_quantity(w, p, q);
    CHECK(ap_quantity(dual, pc, q) == doctest::Approx(std::pow(a, pc - 1.0)).epsilon(1e-12));
  }
}

TEST_CASE("A_{p,q} quantity and target exponent") {
  CHECK(apq_target_exponent(1.5, 0.5, 1) == doctest::Approx(6.0));
  CHECK_THROWS_AS(apq_target_exponent(2.0, 0.5, 1), Error);
  const Grid g = Grid::line(0.0, 4.0, 4096);
  const GridFunction w = weight_library("power:0.25", g);
  const Cube q{{1.5, 0.0}, 1.0};
  const double p = 1.5;
  const double qq = 6.0;
  const double pc = 3.0;
  const double expected = std::pow(power_average(0.25 * qq), 1.0 / qq) * std::pow(power_average(-0.25 * pc), 1.0 / pc);
  CHECK(apq_quantity(w, p, qq, q) == doctest::Approx(expected).epsilon(1e-6));
  CHECK(apq_linear_condition_quantity(w, p, qq, q) <= apq_quantity(w, p, qq, q) * (1.0 + 1e-12));
}

TEST_CASE("power weight dichotomy at p = 2") {
  const Grid g = Grid::line(-1.0, 1.0, 512);
  const CubeFamily fam = enumerate_dyadic(g, 0, 8);
  const double good = ap_constant(weight_library("power:0.5", g), 2.0, fam).value;
  const double bad = ap_constant(weight_library("power:3", g), 2.0, fam).value;
  // On [0, r] the continuum value is 1 / ((1 + a)(1 - a)).
  CHECK(good < 1.0 / (1.5 * 0.5) + 1e-9);
  CHECK(bad > 1e4);
}

TEST_CASE("vector weights") {
  const Grid g = Grid::line(-1.0, 1.0, 128);
  const ExponentVector p = ExponentVector::from(4.0, 4.0);
  CHECK(p.p == doctest::Approx(2.0));
  const GridFunction w1 = weight_library("power:0.5", g);
  const GridFunction w2(g, 1.0);
  const WeightTuple t = WeightTuple::singular(w1, w2, p);
  CHECK(t.w[3] == doctest::Approx(std::sqrt(w1[3])));
  const CubeFamily fam = enumerate_dyadic(g, 0, 5);
  CHECK(vector_ap_constant(t, p, fam).value >= 1.0 - 1e-12);
  const CubeSup rh = reverse_holder_defect(t, p, fam);
  CHECK(rh.value >= 1.0 - 1e-12);
}

TEST_CASE("weights must be positive") {
  const Grid g = Grid::line(-1.0, 1.0, 16);
  CHECK_THROWS_AS(require_positive_weight(GridFunction(g, -1.0)), Error);
  CHECK_THROWS_AS(weight_library("power:x", g), Error);
}
