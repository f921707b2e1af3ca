#include <doctest.h>

#include <array>
#include <cmath>
#include <numbers>
#include <random>

#include "oscillab/error.hpp"
#include "oscillab/fixtures.hpp"
#include "oscillab/kernel.hpp"
#include "oscillab/operators.hpp"

using namespace oscillab;

namespace {

// Gauss-Legendre nodes and weights on [-1, 1].
constexpr std::array<double, 5> kNodes{-0.9061798459386640, -0.5384693101056831, 0.0, 0.5384693101056831,
                                       0.9061798459386640};
constexpr std::array<double, 5> kWeights{0.2369268850561891, 0.4786286704993665, 0.5688888888888889,
                                         0.4786286704993665, 0.2369268850561891};

// Composite Gauss-Legendre over [a, b] x [c, d].
template <class F>
double gauss2(F&& f, double a, double b, double c, double d, int panels) {
  double s = 0.0;
  const double hx = (b - a) / panels;
  const double hy = (d - c) / panels;
  for (int i = 0; i < panels; ++i)
    for (int j = 0; j < panels; ++j)
      for (int k = 0; k < 5; ++k)
        for (int l = 0; l < 5; ++l) {
          const double x = a + hx * (i + 0.5 + 0.5 * kNodes[k]);
          const double y = c + hy * (j + 0.5 + 0.5 * kNodes[l]);
          s += kWeights[k] * kWeights[l] * f(x, y) * 0.25 * hx * hy;
        }
  return s;
}

GridFunction noise(const Grid& g, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  std::vector<double> v(g.size());
  for (double& x : v) x = u(rng);
  return GridFunction(g, v);
}

}  // namespace

TEST_CASE("kernel fixtures") {
  const KernelSpec h = make_kernel("hilbert", 1);
  CHECK(h(KernelPoint{2.0}) == doctest::Approx(0.5));
  CHECK(h(KernelPoint{-4.0}) == doctest::Approx(-0.25));
  CHECK_THROWS_AS(h(KernelPoint{0.0}), Error);
  const KernelSpec br = make_kernel("bilinear_riesz", 1);
  CHECK(br.degree() == doctest::Approx(2.0));
  CHECK(br(KernelPoint{3.0, 4.0}) == doctest::Approx(3.0 / 125.0));
  CHECK(std::abs(br.sphere_mean()) < 1e-12);
  const KernelSpec r2 = make_kernel("riesz_2", 2);
  CHECK(std::abs(r2.sphere_mean()) < 1e-12);
  const KernelSpec fa = make_kernel("frac_alpha", 1, 0.5);
  CHECK(fa(KernelPoint{4.0}) == doctest::Approx(0.5));
  CHECK_THROWS_AS(make_kernel("riesz_3", 2), Error);
  CHECK_THROWS_AS(make_kernel("nope", 1), Error);
}

TEST_CASE("singular kernels need mean-zero symbols") {
  const KernelSpec even("even", KernelSpec::Arity::Linear, 1, 0.0, [](const KernelPoint&) { return 1.0; }, false);
  CHECK_THROWS_AS(make_operator(even), Error);
}

TEST_CASE("homogeneous cell integrals against closed forms") {
  // |u|^(alpha-1) over [-1/2, 1/2].
  const double alpha = 0.5;
  const double line = homogeneous_cell_integral(
      [alpha](const KernelPoint& u) { return std::pow(std::abs(u[0]), alpha - 1.0); }, 1, alpha - 1.0);
  CHECK(line == doctest::Approx(2.0 * std::pow(0.5, alpha) / alpha).epsilon(1e-10));
  // 1/|u| over the unit square: 4 ln(1 + sqrt 2).
  const double square = homogeneous_cell_integral(
      [](const KernelPoint& u) { return 1.0 / std::hypot(u[0], u[1]); }, 2, -1.0);
  CHECK(square == doctest::Approx(4.0 * std::log(1.0 + std::sqrt(2.0))).epsilon(1e-8));
}

TEST_CASE("hilbert transform of an interval") {
  const Grid g = Grid::line(-4.0, 4.0, 2048);
  const GridFunction chi = indicator(g, Cube{{0.0, 0.0}, 2.0});
  const GridFunction hf = singular_integral(chi, make_kernel("hilbert", 1));
  for (double x : {2.0, -3.0, 1.5}) {
    const double exact = std::log(std::abs((x + 1.0) / (x - 1.0)));
    CHECK(interpolate(hf, {x, 0.0}) == doctest::Approx(exact).epsilon(2e-3));
  }
}

TEST_CASE("fractional integral of an interval") {
  const Grid g = Grid::line(-2.0, 2.0, 1024);
  const GridFunction chi = indicator(g, Cube{{0.5, 0.0}, 1.0});
  const double alpha = 0.5;
  const GridFunction v = fractional_integral(chi, alpha);
  CHECK(interpolate(v, {0.0, 0.0}) == doctest::Approx(1.0 / alpha).epsilon(0.02));
  const double x = 1.5;
  const double exact = (std::pow(x, alpha) - std::pow(x - 1.0, alpha)) / alpha;
  CHECK(interpolate(v, {x, 0.0}) == doctest::Approx(exact).epsilon(5e-3));
}

TEST_CASE("bilinear riesz operator against two-dimensional quadrature") {
  const Grid g = Grid::line(-4.0, 4.0, 512);
  const GridFunction a = indicator(g, Cube{{1.5, 0.0}, 1.0});
  const GridFunction b = indicator(g, Cube{{-2.0, 0.0}, 1.0});
  const KernelSpec k = make_kernel("bilinear_riesz", 1);
  const GridFunction t = bilinear_singular_integral(a, b, k);
  // x = 0 sits between the supports; K(u, v) = u / (u^2 + v^2)^(3/2).
  const double exact = gauss2(
      [](double y, double z) {
        const double u = -y;
        const double v = -z;
        return u / std::pow(u * u + v * v, 1.5);
      },
      1.0, 2.0, -2.5, -1.5, 8);
  CHECK(interpolate(t, {0.0, 0.0}) == doctest::Approx(exact).epsilon(1e-3));
}

TEST_CASE("truncated operators annihilate constants on valid cells") {
  const Grid g = Grid::line(-2.0, 2.0, 256);
  const GridFunction one(g, 1.0);
  const OperatorHandle h = make_operator(make_kernel("hilbert", 1), 0.5);
  const auto mask = validity_mask(h, g);
  const GridFunction th = apply(h, one);
  const OperatorHandle br = make_operator(make_kernel("bilinear_riesz", 1), 0.5);
  const GridFunction tb = apply(br, one, one);
  std::size_t valid = 0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (!mask[i]) continue;
    ++valid;
    CHECK(std::abs(th[i]) < 1e-12);
    CHECK(std::abs(tb[i]) < 1e-12);
  }
  CHECK(valid == 192);
}

TEST_CASE("riesz transform is odd in its coordinate") {
  const Grid g = Grid::square(-1.0, -1.0, 2.0, 32);
  const GridFunction f = GridFunction::sample(g, [](const Point& x) { return std::exp(-4.0 * (x[0] * x[0] + x[1] * x[1])); });
  const GridFunction r = singular_integral(f, make_kernel("riesz_1", 2));
  for (std::size_t i = 0; i < g.size(); i += 37) {
    auto k = g.multi_index(i);
    const std::size_t mirror = g.index({31 - k[0], k[1]});
    CHECK(r[i] == doctest::Approx(-r[mirror]).epsilon(1e-10));
  }
}

TEST_CASE("commutators") {
  const Grid g = Grid::line(-2.0, 2.0, 128);
  const GridFunction f = noise(g, 1);
  const GridFunction f2 = noise(g, 2);
  const OperatorHandle h = make_operator(make_kernel("hilbert", 1));
  const GridFunction c = commutator(GridFunction(g, 3.0), h, f);
  for (double v : c.values()) CHECK(v == 0.0);
  // [b, T] f = b T f - T(b f).
  const GridFunction b = symbol_library("log_abs", g);
  const GridFunction direct = combine(multiply(b, apply(h, f)), apply(h, multiply(b, f)),
                                      [](double u, double v) { return u - v; });
  const GridFunction cb = commutator(b, h, f);
  for (std::size_t i = 0; i < g.size(); ++i) CHECK(cb[i] == doctest::Approx(direct[i]).epsilon(1e-9).scale(1.0));
  const OperatorHandle br = make_operator(make_kernel("bilinear_riesz", 1));
  const GridFunction c1 = bilinear_commutator(b, br, f, f2, 1);
  const GridFunction d1 = combine(multiply(b, apply(br, f, f2)), apply(br, multiply(b, f), f2),
                                  [](double u, double v) { return u - v; });
  for (std::size_t i = 0; i < g.size(); i += 5) CHECK(c1[i] == doctest::Approx(d1[i]).epsilon(1e-9).scale(1.0));
  CHECK_THROWS_AS(bilinear_commutator(b, br, f, f2, 3), Error);
}

TEST_CASE("maximal functions dominate averages") {
  const Grid g = Grid::line(-1.0, 1.0, 128);
  const CubeFamily fam = enumerate_dyadic(g, 0, 5);
  const GridFunction f = noise(g, 3);
  const GridFunction g2 = noise(g, 4);
  const GridFunction m = maximal(f, 0.0, fam);
  // Brute-force oracle over the family.
  for (std::size_t i = 0; i < g.size(); i += 9) {
    const double x = g.cell_center(i)[0];
    double best = 0.0;
    for (const Cube& q : fam.cubes) {
      if (x >= q.lower(0) && x < q.upper(0)) {
        best = std::max(best, cube_average(abs(f), q));
      }
    }
    CHECK(m[i] == doctest::Approx(best).epsilon(1e-12));
  }
  const Cube q = fam.cubes[5];
  const GridFunction a = bilinear_averaging(f, g2, q, 0.7);
  const GridFunction mb = bilinear_maximal(f, g2, 0.7, fam);
  for (std::size_t i = 0; i < g.size(); ++i) CHECK(std::abs(a[i]) <= mb[i] * (1.0 + 1e-12));
  CHECK_THROWS_AS(maximal(f, 0.0, explicit_family(g, {Cube{{0.5, 0.0}, 0.5}})), Error);
}

TEST_CASE("probe norm estimates are lower bounds") {
  const Grid g = Grid::line(-2.0, 2.0, 256);
  const OperatorHandle h = make_operator(make_kernel("hilbert", 1));
  std::vector<GridFunction> probes{indicator(g, Cube{{0.0, 0.0}, 1.0}), indicator(g, Cube{{0.5, 0.0}, 0.5})};
  const NormEstimate e = operator_norm_estimate([&](const GridFunction& u) { return apply(h, u); },
                                                SpaceSpec::lebesgue(2.0), SpaceSpec::lebesgue(2.0), probes);
  CHECK(e.value > 0.5);
  CHECK(e.value <= std::numbers::pi * 1.01);
  CHECK(e.ratios.size() == 2);
}
