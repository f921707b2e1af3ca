#include <doctest.h>

#include <cmath>
#include <complex>

#include "oscillab/error.hpp"
#include "oscillab/extraction.hpp"
#include "oscillab/fixtures.hpp"
#include "oscillab/fourier.hpp"
#include "oscillab/operators.hpp"

using namespace oscillab;

TEST_CASE("ball sampling stays inside the ball and is seeded") {
  const Ball b{{1.0, 2.0}, 0.5, 2};
  const auto p = sample_ball(b, 200, 9);
  const auto q = sample_ball(b, 200, 9);
  CHECK(p == q);
  for (const auto& u : p) CHECK(std::hypot(u[0] - 1.0, u[1] - 2.0) <= 0.5);
}

TEST_CASE("fourier expansion of the reciprocal hilbert kernel") {
  const KernelSpec k = make_kernel("hilbert", 1);
  const ExtractionGeometry geo = select_geometry(k, 0.5);
  CHECK(std::abs(geo.base[0]) == doctest::Approx(3.0));
  const FourierExpansion e = fourier_reciprocal(k, geo, 33);
  CHECK(e.residual <= 1e-6);
  CHECK(e.reconstruction_defect <= 1e-5);
  // Independent check on fresh points: 1/K(u) = u.
  double worst = 0.0;
  for (const auto& u : sample_ball(geo.ball(), 500, 777)) {
    worst = std::max(worst, std::abs(e.evaluate(u) - std::complex<double>(u[0], 0.0)));
  }
  CHECK(worst <= 1e-6);
  for (std::size_t j = 1; j < e.terms.size(); ++j) {
    CHECK(std::abs(e.terms[j].coefficient) <= std::abs(e.terms[j - 1].coefficient));
  }
}

TEST_CASE("windowed dft is available and term truncation records the tail") {
  const KernelSpec k = make_kernel("hilbert", 1);
  const ExtractionGeometry geo = select_geometry(k, 0.5);
  FourierOptions opt;
  opt.method = FourierExpansion::Method::WindowedDft;
  const FourierExpansion e = fourier_reciprocal(k, geo, 63, opt);
  CHECK(e.residual < 1e-3);
  FourierOptions cut;
  cut.max_terms = 5;
  const FourierExpansion t = fourier_reciprocal(k, geo, 33, cut);
  CHECK(t.terms.size() == 5);
  CHECK(t.l1_tail > 0.0);
  FourierOptions strict;
  strict.tolerance = 1e-30;
  CHECK_THROWS_AS(fourier_reciprocal(k, geo, 9, strict), Error);
}

TEST_CASE("extraction geometry for the bilinear riesz kernel") {
  const KernelSpec k = make_kernel("bilinear_riesz", 1);
  const ExtractionGeometry geo = select_geometry(k, 0.5);
  CHECK(std::hypot(geo.base[0], geo.base[1]) == doctest::Approx(3.0));
  CHECK(geo.ball_radius == doctest::Approx(0.5 * std::sqrt(2.0)));
  CHECK(geo.min_abs_kernel > 0.0);
  const Cube q{{0.0, 0.0}, 0.25};
  const CubeGeometryCheck c = check_cube_geometry(geo, q);
  CHECK(c.disjoint);
  CHECK(c.contained);
  CHECK(c.separation);
  CHECK_THROWS_AS(select_geometry(k, 0.0), Error);
  CHECK_THROWS_AS(select_geometry(k, 1.5), Error);
}

TEST_CASE("oscillation sign") {
  const Grid g = Grid::line(-1.0, 1.0, 16);
  const GridFunction x = GridFunction::sample(g, [](const Point& p) { return p[0]; });
  const GridFunction s = oscillation_sign(x, Cube{{0.5, 0.0}, 1.0});
  CHECK(s[0] == -1.0);
  CHECK(s[15] == 1.0);
}

TEST_CASE("master chain on a small grid") {
  const Grid g = Grid::line(-8.0, 8.0, 256);
  const KernelSpec k = make_kernel("bilinear_riesz", 1);
  const OperatorHandle op = make_operator(k);
  const ExtractionGeometry geo = select_geometry(k, 0.5);
  const FourierExpansion e = fourier_reciprocal(k, geo, 17);
  const ChainSpaces sp{SpaceSpec::lebesgue(4.0), SpaceSpec::lebesgue(4.0), SpaceSpec::lebesgue(2.0)};
  const Cube q{{0.0625, 0.0}, 0.125};

  const ChainReport r = verify_master_chain(symbol_library("log_abs", g), op, sp, q, geo, e);
  CHECK(r.oscillation > 0.0);
  CHECK(r.kernel_form == doctest::Approx(r.oscillation).epsilon(1e-9));
  CHECK(std::abs(r.kernel_form - r.fourier_form) <= r.truncation_bound + 1e-12);
  CHECK(r.fourier_form <= r.holder_form + 1e-9);
  CHECK(r.holder_form <= r.final_bound + 1e-9);

  const ChainReport z = verify_master_chain(GridFunction(g, 2.0), op, sp, q, geo, e);
  CHECK(std::abs(z.oscillation) < 1e-10);
  CHECK(std::abs(z.fourier_form) < 1e-10);
  CHECK(std::abs(z.final_bound) < 1e-10);
}
