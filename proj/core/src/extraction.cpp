#include "oscillab/extraction.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "oscillab/summation.hpp"

namespace oscillab {

namespace {

using cd = std::complex<double>;

std::vector<KernelPoint> scan_directions(int k, int steps) {
  const double pi = std::numbers::pi;
  std::vector<KernelPoint> dirs;
  if (k == 1) return {{1.0, 0, 0, 0}, {-1.0, 0, 0, 0}};
  if (k == 2) {
    for (int s = 0; s < steps; ++s) {
      const double t = 2.0 * pi * s / steps;
      dirs.push_back({std::cos(t), std::sin(t), 0, 0});
    }
    return dirs;
  }
  const int ne = std::max(2, steps / 8);
  const int nx = std::max(4, steps / 4);
  for (int a = 0; a <= ne; ++a) {
    const double eta = 0.5 * pi * a / ne;
    for (int b = 0; b < nx; ++b) {
      const double x1 = 2.0 * pi * b / nx;
      for (int c = 0; c < nx; ++c) {
        const double x2 = 2.0 * pi * c / nx;
        dirs.push_back({std::cos(eta) * std::cos(x1), std::cos(eta) * std::sin(x1),
                        std::sin(eta) * std::cos(x2), std::sin(eta) * std::sin(x2)});
        if (a == 0 || a == ne) break;
      }
    }
  }
  return dirs;
}

bool inside_dilate(const Cube& inner, const Cube& outer_base, double factor, int n) {
  const Cube outer = outer_base.dilate(factor);
  const double tol = 1e-12 * outer_base.side;
  for (int a = 0; a < n; ++a) {
    if (inner.lower(a) < outer.lower(a) - tol || inner.upper(a) > outer.upper(a) + tol) return false;
  }
  return true;
}

bool disjoint(const Cube& a, const Cube& b, int n) {
  for (int axis = 0; axis < n; ++axis) {
    if (std::abs(a.center[axis] - b.center[axis]) >= 0.5 * (a.side + b.side) * (1.0 - 1e-12)) return true;
  }
  return false;
}

std::vector<std::size_t> cells(const Grid& grid, const Cube& q) {
  std::vector<std::size_t> out;
  grid.for_each_cell(grid.cells_in(q), [&](std::size_t i) { out.push_back(i); });
  return out;
}

double sum(std::vector<double>& v) { return pairwise_sum<double>(v); }

}  // namespace

Ball ExtractionGeometry::ball() const {
  return Ball{base, ball_radius, bilinear ? 2 * dimension : dimension};
}

double ExtractionGeometry::containment_factor() const {
  return std::sqrt(static_cast<double>(dimension)) * (1.0 + 8.0 / delta);
}

double ExtractionGeometry::enclosing_factor() const { return 2.0 * containment_factor(); }

Cube ExtractionGeometry::first_shift(const Cube& q) const {
  Cube c = q;
  for (int a = 0; a < dimension; ++a) c.center[a] = q.center[a] - q.side * scaled[a];
  return c;
}

Cube ExtractionGeometry::second_shift(const Cube& q) const {
  if (!bilinear) return q;
  Cube c = q;
  for (int a = 0; a < dimension; ++a) c.center[a] = q.center[a] - q.side * scaled[dimension + a];
  return c;
}

Cube ExtractionGeometry::enclosing(const Cube& q) const { return q.dilate(enclosing_factor()); }

ExtractionGeometry select_geometry(const KernelSpec& kernel, double delta, int angular_steps) {
  if (!(delta > 0.0 && delta < 1.0)) fail(ErrorCode::BadDelta, "delta must lie in (0, 1)");
  require(angular_steps >= 4, ErrorCode::InvalidArgument, "angular scan needs at least 4 steps");
  const int n = kernel.dimension();
  const int k = kernel.argument_dimension();
  const double radius = 3.0 * std::sqrt(static_cast<double>(n));
  const double ball_radius = delta * std::sqrt(2.0 * n);
  const auto probes = sample_ball(Ball{{}, 1.0, k}, 128, 0x5eed);

  ExtractionGeometry g;
  g.dimension = n;
  g.bilinear = kernel.bilinear();
  g.delta = delta;
  g.ball_radius = ball_radius;
  double best = -1.0;
  for (const KernelPoint& dir : scan_directions(k, angular_steps)) {
    KernelPoint c{};
    for (int i = 0; i < k; ++i) c[i] = radius * dir[i];
    double low = std::abs(kernel(c));
    for (const KernelPoint& p : probes) {
      KernelPoint u{};
      for (int i = 0; i < k; ++i) u[i] = c[i] + ball_radius * p[i];
      low = std::min(low, std::abs(kernel(u)));
    }
    if (low > best) {
      best = low;
      g.base = c;
    }
  }
  if (!(best > 1e-8)) fail(ErrorCode::KernelVanishes, "kernel vanishes on every scanned ball");
  g.min_abs_kernel = best;
  for (int i = 0; i < k; ++i) g.scaled[i] = g.base[i] / delta;

  const double norm = kernel.norm(g.base);
  require(norm > 2.0 * std::sqrt(n) && norm < 4.0 * std::sqrt(n), ErrorCode::InvalidArgument,
          "base point leaves the admissible annulus");
  require(norm > ball_radius, ErrorCode::KernelVanishes, "ball reaches the origin");
  return g;
}

CubeGeometryCheck check_cube_geometry(const ExtractionGeometry& g, const Cube& q) {
  const int n = g.dimension;
  CubeGeometryCheck c;
  const Cube q1 = g.first_shift(q);
  const Cube q2 = g.second_shift(q);
  c.disjoint = disjoint(q, q1, n) || (g.bilinear && disjoint(q, q2, n));
  c.contained = inside_dilate(q1, q, g.containment_factor(), n) &&
                inside_dilate(q2, q, g.containment_factor(), n);
  double ny = 0.0;
  double nz = 0.0;
  for (int a = 0; a < n; ++a) {
    ny += g.base[a] * g.base[a];
    nz += g.bilinear ? g.base[n + a] * g.base[n + a] : 0.0;
  }
  c.separation = std::sqrt(std::max(ny, nz)) >= std::sqrt(2.0 * n);
  return c;
}

FourierExpansion fourier_reciprocal(const KernelSpec& kernel, const ExtractionGeometry& g,
                                    int modes_per_axis, const FourierOptions& options) {
  require(kernel.bilinear() == g.bilinear && kernel.dimension() == g.dimension,
          ErrorCode::InvalidArgument, "geometry was selected for a different kernel shape");
  return fourier_reciprocal(kernel, g.ball(), modes_per_axis, options);
}

GridFunction oscillation_sign(const GridFunction& b, const Cube& q_shift) {
  const double mean = cube_average(b, q_shift);
  return transform(b, [mean](double v) { return v > mean ? 1.0 : (v < mean ? -1.0 : 0.0); });
}

TestFunctionTriple build_test_functions(const Grid& grid, const Cube& q, const ExtractionGeometry& g,
                                        const KernelPoint& frequency, const GridFunction& sigma) {
  require_same_grid(grid, sigma.grid());
  const int n = g.dimension;
  const double s = g.delta / q.side;
  const Cube q1 = g.first_shift(q);
  const Cube q2 = g.second_shift(q);
  std::vector<cd> f(grid.size());
  std::vector<cd> gg(grid.size());
  std::vector<cd> h(grid.size());
  auto phase = [&](const Point& x, int offset) {
    double t = 0.0;
    for (int a = 0; a < n; ++a) t += frequency[offset + a] * x[a];
    return s * t;
  };
  grid.for_each_cell(grid.cells_in(q1), [&](std::size_t i) {
    f[i] = std::polar(1.0, -phase(grid.cell_center(i), 0));
  });
  grid.for_each_cell(grid.cells_in(q2), [&](std::size_t i) {
    gg[i] = g.bilinear ? std::polar(1.0, -phase(grid.cell_center(i), n)) : cd(1.0);
  });
  grid.for_each_cell(grid.cells_in(q), [&](std::size_t i) {
    const Point x = grid.cell_center(i);
    const double t = phase(x, 0) + (g.bilinear ? phase(x, n) : 0.0);
    h[i] = sigma[i] * std::polar(1.0, t);
  });
  return {ComplexGridFunction(grid, std::move(f)), ComplexGridFunction(grid, std::move(gg)),
          ComplexGridFunction(grid, std::move(h))};
}

ChainReport verify_master_chain(const GridFunction& b, const OperatorHandle& op,
                                const ChainSpaces& spaces, const Cube& q,
                                const ExtractionGeometry& g, const FourierExpansion& e,
                                std::optional<double> probe_norm) {
  const Grid& grid = b.grid();
  const KernelSpec& kernel = op.kernel;
  require(kernel.bilinear() == g.bilinear && kernel.dimension() == g.dimension &&
              grid.dimension() == g.dimension,
          ErrorCode::InvalidArgument, "geometry, kernel and grid shapes differ");
  require(!g.bilinear || spaces.x2.has_value(), ErrorCode::InvalidArgument,
          "bilinear chain needs X2");
  const int n = g.dimension;
  const double d = kernel.degree();
  const double r = q.side;
  const double hn = grid.cell_measure();

  ChainReport rep;
  rep.cube = q;
  rep.first_shift = g.first_shift(q);
  rep.second_shift = g.second_shift(q);
  rep.enclosing = g.enclosing(q);
  rep.geometry = check_cube_geometry(g, q);
  require(rep.geometry.disjoint, ErrorCode::InvalidArgument, "Q meets both shifted cubes");

  const auto xs = cells(grid, q);
  const auto ys = cells(grid, rep.first_shift);
  const auto zs = g.bilinear ? cells(grid, rep.second_shift) : std::vector<std::size_t>{};
  (void)grid.cells_in(rep.enclosing);
  const double m1 = static_cast<double>(ys.size()) * hn;
  const double m2 = g.bilinear ? static_cast<double>(zs.size()) * hn : 1.0;
  rep.prefactor = std::pow(g.delta, -d) * std::pow(r, d) / (m1 * m2);

  const double b1 = cube_average(b, rep.first_shift);
  const GridFunction sigma = oscillation_sign(b, rep.first_shift);

  // (i)
  {
    std::vector<double> v;
    for (std::size_t x : xs) v.push_back(std::abs(b[x] - b1) * hn);
    rep.oscillation = sum(v);
  }

  // (ii) and the truncation mass
  {
    std::vector<double> exact_rows;
    std::vector<double> mass_rows;
    for (std::size_t x : xs) {
      const Point px = grid.cell_center(x);
      std::vector<double> ex;
      std::vector<double> ms;
      for (std::size_t y : ys) {
        const Point py = grid.cell_center(y);
        const double db = b[x] - b[y];
        auto add = [&](const KernelPoint& u) {
          KernelPoint ur{};
          for (int i = 0; i < kernel.argument_dimension(); ++i) ur[i] = u[i] / r;
          const double k = kernel(u);
          ex.push_back(db * sigma[x] * std::pow(r, d) * k / kernel(ur));
          ms.push_back(std::abs(db) * std::abs(k));
        };
        if (!g.bilinear) {
          KernelPoint u{};
          for (int a = 0; a < n; ++a) u[a] = px[a] - py[a];
          add(u);
          continue;
        }
        for (std::size_t z : zs) {
          const Point pz = grid.cell_center(z);
          KernelPoint u{};
          for (int a = 0; a < n; ++a) {
            u[a] = px[a] - py[a];
            u[n + a] = px[a] - pz[a];
          }
          add(u);
        }
      }
      exact_rows.push_back(pairwise_sum<double>(ex));
      mass_rows.push_back(pairwise_sum<double>(ms));
    }
    const double cells3 = std::pow(hn, g.bilinear ? 3 : 2);
    rep.kernel_form = sum(exact_rows) * cells3 / (m1 * m2);
    rep.truncation_bound = rep.prefactor * e.residual * sum(mass_rows) * cells3;
  }

  const SpaceSpec y_dual = associate(spaces.y);
  const double nf = indicator_norm(spaces.x1, grid, rep.first_shift);
  const double ng = g.bilinear ? indicator_norm(*spaces.x2, grid, rep.second_shift) : 1.0;

  std::vector<cd> fourier_terms;
  std::vector<double> absolute_terms;
  std::vector<double> holder_terms;
  double l1 = 0.0;
  for (const FourierTerm& t : e.terms) {
    const TestFunctionTriple tf = build_test_functions(grid, q, g, t.frequency, sigma);
    const ComplexGridFunction c = g.bilinear ? bilinear_commutator(b, op, tf.f, tf.g, 1)
                                             : commutator(b, op, tf.f);
    std::vector<cd> inner;
    std::vector<double> inner_abs;
    for (std::size_t x : xs) {
      inner.push_back(tf.h[x] * c[x] * hn);
      inner_abs.push_back(std::abs(tf.h[x]) * std::abs(c[x]) * hn);
    }
    const double nc = norm(c, spaces.y);
    const double nh = norm(tf.h, y_dual);
    fourier_terms.push_back(t.coefficient * pairwise_sum<cd>(inner));
    absolute_terms.push_back(std::abs(t.coefficient) * pairwise_sum<double>(inner_abs));
    holder_terms.push_back(std::abs(t.coefficient) * nh * nc);
    rep.chain_norm_ratio = std::max(rep.chain_norm_ratio, nc / (nf * ng));
    l1 += std::abs(t.coefficient);
  }
  rep.fourier_form = rep.prefactor * pairwise_sum<cd>(fourier_terms).real();
  rep.absolute_form = rep.prefactor * pairwise_sum<double>(absolute_terms);
  rep.holder_form = rep.prefactor * pairwise_sum<double>(holder_terms);

  rep.norm_used = std::max(probe_norm.value_or(0.0), rep.chain_norm_ratio);
  const Cube& p = rep.enclosing;
  double chi_p = indicator_norm(y_dual, grid, p) * indicator_norm(spaces.x1, grid, p);
  if (g.bilinear) chi_p *= indicator_norm(*spaces.x2, grid, p);
  rep.final_bound = rep.prefactor * rep.norm_used * l1 * chi_p;
  rep.enclosing_constant = std::pow(grid.measure(p) / grid.measure(q), kernel.alpha() / n);

  const double chi_q = indicator_norm(y_dual, grid, q) * nf * ng;
  const double denom = rep.prefactor * l1 * chi_q;
  rep.forced_norm = denom > 0.0 ? std::max(rep.fourier_form, 0.0) / denom : 0.0;
  return rep;
}

NecessityReport necessity_experiment(const GridFunction& b, const OperatorHandle& op,
                                     const ChainSpaces& spaces, const CubeFamily& family,
                                     const ExtractionGeometry& g, const FourierExpansion& e,
                                     std::optional<double> probe_norm) {
  require_same_grid(b.grid(), family.grid);
  NecessityReport rep;
  rep.probe_norm = probe_norm;
  const bool dyadic = family.kind == CubeFamily::Kind::Dyadic;
  if (dyadic) {
    const auto levels = static_cast<std::size_t>(family.level_max - family.level_min + 1);
    rep.ratio_by_generation.assign(levels, 0.0);
    rep.forced_norm_by_generation.assign(levels, 0.0);
  }
  for (std::size_t i = 0; i < family.size(); ++i) {
    const Cube& q = family.cubes[i];
    ChainReport c = verify_master_chain(b, op, spaces, q, g, e, probe_norm);
    const double mq = family.grid.measure(q);
    const double ratio = c.oscillation / mq;
    rep.oscillation_ratio.push_back(ratio);
    rep.bound_ratio.push_back(c.final_bound / mq);
    rep.sup_ratio = std::max(rep.sup_ratio, ratio);
    rep.sup_forced_norm = std::max(rep.sup_forced_norm, c.forced_norm);
    if (dyadic) {
      const auto slot = static_cast<std::size_t>(family.levels[i] - family.level_min);
      rep.ratio_by_generation[slot] = std::max(rep.ratio_by_generation[slot], ratio);
      rep.forced_norm_by_generation[slot] = std::max(rep.forced_norm_by_generation[slot], c.forced_norm);
    }
    rep.chains.push_back(std::move(c));
  }
  return rep;
}

}  // namespace oscillab
