#include <doctest.h>

#include <cmath>
#include <random>

#include "oscillab/error.hpp"
#include "oscillab/fixtures.hpp"
#include "oscillab/spaces.hpp"

using namespace oscillab;

namespace {

GridFunction noise(const Grid& g, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> v(g.size());
  for (double& x : v) x = u(rng);
  return GridFunction(g, v);
}

double direct_lp(const GridFunction& f, double p) {
  double s = 0.0;
  for (double v : f.values()) s += std::pow(std::abs(v), p);
  return std::pow(s * f.grid().cell_measure(), 1.0 / p);
}

}  // namespace

TEST_CASE("lebesgue norms match a direct sum") {
  const Grid g = Grid::line(-1.0, 1.0, 256);
  const GridFunction f = noise(g, 1);
  for (double p : {1.25, 1.5, 2.0, 4.0}) {
    CHECK(norm(f, SpaceSpec::lebesgue(p)) == doctest::Approx(direct_lp(f, p)).epsilon(1e-12));
  }
}

TEST_CASE("weighted norm is the lebesgue norm of f w^(1/p)") {
  const Grid g = Grid::line(0.0, 2.0, 128);
  const GridFunction w = weight_library("power:0.5", g);
  const GridFunction f = noise(g, 2);
  const double p = 3.0;
  const GridFunction fw = combine(f, w, [p](double a, double b) { return a * std::pow(b, 1.0 / p); });
  CHECK(norm(f, SpaceSpec::weighted(p, w)) == doctest::Approx(direct_lp(fw, p)).epsilon(1e-12));
}

TEST_CASE("luxemburg norm of a two-step exponent") {
  // p = 2 on [-1, 0), 4 on [0, 1); f = 1 gives t + t^2 = 1 with t = lambda^-2.
  const Grid g = Grid::line(-1.0, 1.0, 64);
  const ExponentFunction p(GridFunction::sample(g, [](const Point& x) { return x[0] < 0.0 ? 2.0 : 4.0; }));
  const double t = (std::sqrt(5.0) - 1.0) / 2.0;
  CHECK(luxemburg_norm(GridFunction(g, 1.0), p) == doctest::Approx(1.0 / std::sqrt(t)).epsilon(1e-10));
}

TEST_CASE("constant exponents reduce to lebesgue") {
  const Grid g = Grid::line(-1.0, 1.0, 200);
  const GridFunction f = noise(g, 3);
  const ExponentFunction p = ExponentFunction::constant(g, 2.5);
  CHECK(luxemburg_norm(f, p) == doctest::Approx(direct_lp(f, 2.5)).epsilon(1e-8));
  const Cube q{{0.25, 0.0}, 0.5};
  CHECK(indicator_norm(SpaceSpec::variable(p), g, q) == doctest::Approx(std::pow(0.5, 1.0 / 2.5)).epsilon(1e-8));
}

TEST_CASE("modular of the normalised function is one") {
  const Grid g = Grid::line(-1.0, 1.0, 128);
  const ExponentFunction p = exponent_library("arctan_profile", g);
  const GridFunction f = noise(g, 4);
  CHECK(modular(f, p, luxemburg_norm(f, p)) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("associate spaces and duality") {
  const Grid g = Grid::line(-1.0, 1.0, 128);
  const GridFunction f = noise(g, 5);
  const SpaceSpec x = SpaceSpec::lebesgue(3.0);
  CHECK(associate(associate(x)) == x);
  CHECK(holder_defect(f, noise(g, 6), x) <= 1.0 + 1e-12);
  const DualityEstimate d = duality_gap(f, x, 8, 7);
  CHECK(d.extremizer_ratio == doctest::Approx(1.0).epsilon(1e-10));
  CHECK(d.random_ratio <= 1.0 + 1e-12);

  const ExponentFunction p = exponent_library("arctan_profile", g);
  CHECK(associate(associate(SpaceSpec::variable(p))) == SpaceSpec::variable(p));
}

TEST_CASE("linear condition is identically one on matched lebesgue pairs") {
  const Grid g = Grid::line(-1.0, 1.0, 256);
  const CubeFamily fam = enumerate_dyadic(g, 0, 6);
  for (double p : {1.5, 2.0, 4.0}) {
    const CubeSup s = condition_linear(SpaceSpec::lebesgue(p), SpaceSpec::lebesgue(p), 0.0, fam);
    for (double v : s.per_cube) CHECK(v == doctest::Approx(1.0).epsilon(1e-12));
  }
  // 1/q = 1/p - alpha/n keeps the fractional condition at one.
  const CubeSup s = condition_linear(SpaceSpec::lebesgue(1.5), SpaceSpec::lebesgue(6.0), 0.5, fam);
  for (double v : s.per_cube) CHECK(v == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("bilinear condition with holder exponents") {
  const Grid g = Grid::line(-1.0, 1.0, 128);
  const CubeFamily fam = enumerate_dyadic(g, 0, 5);
  const CubeSup s = condition_bilinear(SpaceSpec::lebesgue(4.0), SpaceSpec::lebesgue(4.0),
                                       SpaceSpec::lebesgue(2.0), 0.0, fam);
  CHECK(s.value == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("norm ratio for a log-hoelder exponent stays near one") {
  const Grid g = Grid::line(-1.0, 1.0, 256);
  const ExponentFunction p = exponent_library("arctan_profile", g);
  const NormRatioRange r = chiQ_norm_ratio(p, enumerate_dyadic(g, 0, 6));
  CHECK(r.min > 0.9);
  CHECK(r.max < 1.1);
  const ExponentFunction bare(p.values());
  CHECK_THROWS_AS(chiQ_norm_ratio(bare, enumerate_dyadic(g, 0, 2)), Error);
}

TEST_CASE("space errors") {
  const Grid g = Grid::line(-1.0, 1.0, 32);
  CHECK_THROWS_AS(SpaceSpec::lebesgue(0.5), Error);
  CHECK_THROWS_AS(ExponentFunction::constant(g, 1.0).conjugate(), Error);
  CHECK_THROWS_AS(SpaceSpec::weighted(2.0, GridFunction(g, 0.0)), Error);
  CHECK_THROWS_AS(holder_defect(GridFunction(g, 0.0), GridFunction(g, 1.0), SpaceSpec::lebesgue(2.0)), Error);
  const CubeFamily fam = enumerate_dyadic(g, 0, 1);
  CHECK_THROWS_AS(condition_linear(SpaceSpec::lebesgue(2.0), SpaceSpec::lebesgue(2.0), 1.5, fam), Error);
}
