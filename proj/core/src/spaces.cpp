#include "oscillab/spaces.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "oscillab/parallel.hpp"
#include "oscillab/summation.hpp"

namespace oscillab {
namespace {

double max_abs(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

/// Solves sum_i exp(p_i (log a_i - log lambda)) * cell = 1 for lambda.
/// `log_values` holds log a_i for the nonzero entries only.
double solve_luxemburg(std::span<const double> log_values, std::span<const double> exponents,
                       double cell) {
  if (log_values.empty()) return 0.0;
  std::vector<double> terms(log_values.size());
  auto rho = [&](double log_lambda) {
    for (std::size_t i = 0; i < terms.size(); ++i) {
      terms[i] = std::exp(exponents[i] * (log_values[i] - log_lambda));
    }
    return pairwise_sum(std::span<const double>(terms)) * cell;
  };
  const double log_start = *std::max_element(log_values.begin(), log_values.end());
  double lo = log_start;
  double hi = log_start;
  const double step = std::log(2.0);
  if (rho(log_start) > 1.0) {
    int doublings = 0;
    while (rho(hi) > 1.0) {
      if (++doublings > 60) fail(ErrorCode::BracketFailure, "Luxemburg norm: no upper bracket");
      lo = hi;
      hi += step;
    }
  } else {
    int halvings = 0;
    while (rho(lo) < 1.0) {
      if (++halvings > 60) fail(ErrorCode::BracketFailure, "Luxemburg norm: no lower bracket");
      hi = lo;
      lo -= step;
    }
  }
  double mid = 0.5 * (lo + hi);
  for (int it = 0; it < 200; ++it) {
    mid = 0.5 * (lo + hi);
    const double r = rho(mid);
    if (std::abs(r - 1.0) <= 1e-14) break;
    if (r > 1.0) {
      lo = mid;
    } else {
      hi = mid;
    }
    if (hi - lo <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(1.0, std::abs(mid))) {
      break;
    }
  }
  return std::exp(mid);
}

double power_sum_norm(std::span<const double> f, const GridFunction* weight, double p,
                      double cell) {
  const double scale = max_abs(f);
  if (scale == 0.0) return 0.0;
  std::vector<double> terms(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    double t = std::pow(std::abs(f[i]) / scale, p);
    if (weight) t *= (*weight)[i];
    terms[i] = t;
  }
  return scale * std::pow(pairwise_sum(std::span<const double>(terms)) * cell, 1.0 / p);
}

void check_exponent(double p) {
  require(std::isfinite(p) && p > 1.0, ErrorCode::InvalidArgument,
          "Lebesgue exponent must satisfy 1 < p < inf");
}

void check_weight(const GridFunction& w) {
  for (double v : w.values()) {
    require(v > 0.0, ErrorCode::NonPositiveWeight, "weight must be positive at every cell");
  }
}

std::uint64_t next_u64(std::mt19937_64& rng) { return rng(); }

double uniform01(std::mt19937_64& rng) {
  return static_cast<double>(next_u64(rng) >> 11) * 0x1.0p-53;
}

}  // namespace

ExponentFunction::ExponentFunction(GridFunction values, std::optional<GridFunction> conjugate,
                                   std::optional<LogHolder> log_holder)
    : values_(std::move(values)), conjugate_(std::move(conjugate)), log_holder_(log_holder) {
  const auto v = values_.values();
  p_minus_ = *std::min_element(v.begin(), v.end());
  p_plus_ = *std::max_element(v.begin(), v.end());
}

ExponentFunction::ExponentFunction(GridFunction p, std::optional<LogHolder> log_holder)
    : values_(std::move(p)), log_holder_(log_holder) {
  const auto v = values_.values();
  p_minus_ = *std::min_element(v.begin(), v.end());
  p_plus_ = *std::max_element(v.begin(), v.end());
  require(p_minus_ >= 1.0, ErrorCode::InvalidArgument, "exponent must satisfy p(x) >= 1");
  if (p_minus_ > 1.0) {
    conjugate_ = transform(values_, conjugate_exponent);
  }
}

ExponentFunction ExponentFunction::constant(const Grid& grid, double p) {
  return ExponentFunction(GridFunction(grid, p), LogHolder{0.0, 0.0, p});
}

ExponentFunction ExponentFunction::conjugate() const {
  if (!conjugate_) fail(ErrorCode::ConjugateUndefined, "p_- = 1: conjugate exponent is infinite");
  std::optional<LogHolder> lh;
  if (log_holder_) {
    // 1/p' = 1 - 1/p, so the local and decay moduli carry over unchanged.
    lh = LogHolder{log_holder_->c0, log_holder_->c_inf, conjugate_exponent(log_holder_->p_inf)};
  }
  return ExponentFunction(*conjugate_, values_, lh);
}

ExponentFunction ExponentFunction::with_log_holder(const LogHolder& constants) const {
  return ExponentFunction(values_, conjugate_, constants);
}

bool ExponentFunction::operator==(const ExponentFunction& other) const {
  if (!(values_.grid() == other.values_.grid())) return false;
  return std::equal(values_.values().begin(), values_.values().end(),
                    other.values_.values().begin());
}

LogHolder estimate_log_holder(const GridFunction& p, double p_inf) {
  const Grid& grid = p.grid();
  const std::size_t n = grid.size();
  const std::size_t stride = n > 4096 ? (n + 4095) / 4096 : 1;
  LogHolder lh;
  lh.p_inf = p_inf;
  for (std::size_t i = 0; i < n; i += stride) {
    const Point x = grid.cell_center(i);
    const double inv_x = 1.0 / p[i];
    const double rx = std::hypot(x[0], x[1]);
    const double inv_inf = std::isinf(p_inf) ? 0.0 : 1.0 / p_inf;
    lh.c_inf = std::max(lh.c_inf, std::abs(inv_x - inv_inf) * std::log(std::exp(1.0) + rx));
    for (std::size_t j = i + stride; j < n; j += stride) {
      const Point y = grid.cell_center(j);
      const double d = std::hypot(x[0] - y[0], x[1] - y[1]);
      if (d > 0.5 || d <= 0.0) continue;
      lh.c0 = std::max(lh.c0, std::abs(inv_x - 1.0 / p[j]) * -std::log(d));
    }
  }
  return lh;
}

double conjugate_exponent(double p) {
  require(p > 1.0, ErrorCode::ConjugateUndefined, "conjugate exponent needs p > 1");
  return p / (p - 1.0);
}

SpaceSpec SpaceSpec::lebesgue(double p) {
  check_exponent(p);
  return SpaceSpec(Lebesgue{p, conjugate_exponent(p)});
}

SpaceSpec SpaceSpec::weighted(double p, GridFunction weight) {
  check_exponent(p);
  check_weight(weight);
  const double pc = conjugate_exponent(p);
  GridFunction dual = transform(weight, [pc](double w) { return std::pow(w, 1.0 - pc); });
  check_weight(dual);
  return SpaceSpec(Weighted{p, pc, std::move(weight), std::move(dual)});
}

SpaceSpec SpaceSpec::variable(ExponentFunction exponent) {
  require(exponent.p_minus() > 1.0, ErrorCode::InvalidArgument,
          "variable Lebesgue spaces here require p_- > 1");
  require(std::isfinite(exponent.p_plus()), ErrorCode::InvalidArgument, "p_+ must be finite");
  return SpaceSpec(Variable{std::move(exponent)});
}

std::optional<Grid> SpaceSpec::grid() const {
  if (const auto* w = std::get_if<Weighted>(&kind_)) return w->weight.grid();
  if (const auto* v = std::get_if<Variable>(&kind_)) return v->exponent.grid();
  return std::nullopt;
}

std::string SpaceSpec::describe() const {
  if (const auto* l = std::get_if<Lebesgue>(&kind_)) return "L^" + std::to_string(l->p);
  if (const auto* w = std::get_if<Weighted>(&kind_)) return "L^" + std::to_string(w->p) + "(w)";
  const auto& v = std::get<Variable>(kind_);
  return "L^p(.) [" + std::to_string(v.exponent.p_minus()) + ", " +
         std::to_string(v.exponent.p_plus()) + "]";
}

bool SpaceSpec::operator==(const SpaceSpec& other) const {
  if (kind_.index() != other.kind_.index()) return false;
  if (const auto* l = std::get_if<Lebesgue>(&kind_)) {
    const auto& o = std::get<Lebesgue>(other.kind_);
    return l->p == o.p && l->p_conjugate == o.p_conjugate;
  }
  if (const auto* w = std::get_if<Weighted>(&kind_)) {
    const auto& o = std::get<Weighted>(other.kind_);
    auto same = [](const GridFunction& a, const GridFunction& b) {
      return a.grid() == b.grid() &&
             std::equal(a.values().begin(), a.values().end(), b.values().begin());
    };
    return w->p == o.p && w->p_conjugate == o.p_conjugate && same(w->weight, o.weight) &&
           same(w->dual_weight, o.dual_weight);
  }
  return std::get<Variable>(kind_).exponent == std::get<Variable>(other.kind_).exponent;
}

double modular(const GridFunction& f, const ExponentFunction& p, double lambda) {
  require_same_grid(f.grid(), p.grid());
  require(lambda > 0.0, ErrorCode::InvalidArgument, "modular needs lambda > 0");
  std::vector<double> terms(f.size());
  for (std::size_t i = 0; i < f.size(); ++i) {
    terms[i] = std::pow(std::abs(f[i]) / lambda, p.values()[i]);
  }
  return pairwise_sum(std::span<const double>(terms)) * f.grid().cell_measure();
}

double luxemburg_norm(const GridFunction& f, const ExponentFunction& p) {
  require_same_grid(f.grid(), p.grid());
  std::vector<double> logs;
  std::vector<double> exps;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f[i] != 0.0) {
      logs.push_back(std::log(std::abs(f[i])));
      exps.push_back(p.values()[i]);
    }
  }
  return solve_luxemburg(logs, exps, f.grid().cell_measure());
}

double norm(const GridFunction& f, const SpaceSpec& space) {
  const double cell = f.grid().cell_measure();
  if (const auto* l = std::get_if<Lebesgue>(&space.kind())) {
    return power_sum_norm(f.values(), nullptr, l->p, cell);
  }
  if (const auto* w = std::get_if<Weighted>(&space.kind())) {
    require_same_grid(f.grid(), w->weight.grid());
    return power_sum_norm(f.values(), &w->weight, w->p, cell);
  }
  return luxemburg_norm(f, std::get<Variable>(space.kind()).exponent);
}

double norm(const ComplexGridFunction& f, const SpaceSpec& space) { return norm(abs(f), space); }

double indicator_norm(const SpaceSpec& space, const Grid& grid, const Cube& q) {
  const CellRange range = grid.cells_in(q);
  const double measure = static_cast<double>(range.count()) * grid.cell_measure();
  if (const auto* l = std::get_if<Lebesgue>(&space.kind())) {
    return std::pow(measure, 1.0 / l->p);
  }
  if (const auto* w = std::get_if<Weighted>(&space.kind())) {
    require_same_grid(grid, w->weight.grid());
    return std::pow(cube_integral(w->weight, q), 1.0 / w->p);
  }
  const auto& p = std::get<Variable>(space.kind()).exponent;
  require_same_grid(grid, p.grid());
  std::vector<double> logs(range.count(), 0.0);
  std::vector<double> exps;
  exps.reserve(range.count());
  grid.for_each_cell(range, [&](std::size_t i) { exps.push_back(p.values()[i]); });
  return solve_luxemburg(logs, exps, grid.cell_measure());
}

SpaceSpec associate(const SpaceSpec& space) {
  if (const auto* l = std::get_if<Lebesgue>(&space.kind())) {
    return SpaceSpec(Lebesgue{l->p_conjugate, l->p});
  }
  if (const auto* w = std::get_if<Weighted>(&space.kind())) {
    return SpaceSpec(Weighted{w->p_conjugate, w->p, w->dual_weight, w->weight});
  }
  return SpaceSpec(Variable{std::get<Variable>(space.kind()).exponent.conjugate()});
}

double holder_defect(const GridFunction& f, const GridFunction& g, const SpaceSpec& space) {
  require_same_grid(f.grid(), g.grid());
  const double nf = norm(f, space);
  const double ng = norm(g, associate(space));
  if (nf == 0.0 || ng == 0.0) fail(ErrorCode::DivisionByZeroNorm, "Hoelder ratio with a zero norm");
  const double fg = integral(abs(multiply(f, g)));
  return fg / (nf * ng);
}

GridFunction duality_extremizer(const GridFunction& f, const SpaceSpec& space) {
  auto sgn = [](double v) { return v > 0.0 ? 1.0 : (v < 0.0 ? -1.0 : 0.0); };
  std::vector<double> g(f.size());
  if (const auto* l = std::get_if<Lebesgue>(&space.kind())) {
    for (std::size_t i = 0; i < g.size(); ++i) g[i] = sgn(f[i]) * std::pow(std::abs(f[i]), l->p - 1.0);
  } else if (const auto* w = std::get_if<Weighted>(&space.kind())) {
    require_same_grid(f.grid(), w->weight.grid());
    for (std::size_t i = 0; i < g.size(); ++i) {
      g[i] = sgn(f[i]) * std::pow(std::abs(f[i]), w->p - 1.0) * w->weight[i];
    }
  } else {
    const auto& p = std::get<Variable>(space.kind()).exponent;
    const double lambda = luxemburg_norm(f, p);
    if (lambda == 0.0) return GridFunction(f.grid(), 0.0);
    for (std::size_t i = 0; i < g.size(); ++i) {
      g[i] = sgn(f[i]) * std::pow(std::abs(f[i]) / lambda, p.values()[i] - 1.0);
    }
  }
  return GridFunction(f.grid(), std::move(g));
}

DualityEstimate duality_gap(const GridFunction& f, const SpaceSpec& space, int trials,
                            std::uint64_t seed) {
  require(trials >= 1, ErrorCode::InvalidArgument, "duality_gap needs trials >= 1");
  const double nf = norm(f, space);
  if (nf == 0.0) fail(ErrorCode::DivisionByZeroNorm, "duality ratio of the zero function");
  const SpaceSpec dual = associate(space);
  auto ratio = [&](const GridFunction& g) {
    const double ng = norm(g, dual);
    if (ng == 0.0) return 0.0;
    return integral(multiply(f, g)) / (ng * nf);
  };
  DualityEstimate est;
  std::mt19937_64 rng(seed);
  est.random_ratio = -std::numeric_limits<double>::infinity();
  for (int t = 0; t < trials; ++t) {
    const double keep = 0.25 + 0.75 * uniform01(rng);
    std::vector<double> g(f.size(), 0.0);
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (uniform01(rng) < keep) {
        const double magnitude = 0.1 + uniform01(rng);
        g[i] = (uniform01(rng) < 0.5 ? -1.0 : 1.0) * magnitude;
      }
    }
    est.random_ratio = std::max(est.random_ratio, ratio(GridFunction(f.grid(), std::move(g))));
  }
  est.extremizer_ratio = ratio(duality_extremizer(f, space));
  est.ratio = std::max(est.random_ratio, est.extremizer_ratio);
  return est;
}

double condition_linear_at(const SpaceSpec& x, const SpaceSpec& y, double alpha, const Grid& grid,
                           const Cube& q) {
  const int n = grid.dimension();
  require(alpha >= 0.0 && alpha < n, ErrorCode::AlphaOutOfRange, "linear condition needs 0 <= alpha < n");
  const double measure = grid.measure(q);
  const double y_dual = indicator_norm(associate(y), grid, q);
  const double x_norm = indicator_norm(x, grid, q);
  return std::pow(measure, -alpha / n) * y_dual * x_norm / measure;
}

CubeSup condition_linear(const SpaceSpec& x, const SpaceSpec& y, double alpha,
                         const CubeFamily& family) {
  const SpaceSpec y_dual = associate(y);
  const Grid& grid = family.grid;
  const int n = grid.dimension();
  require(alpha >= 0.0 && alpha < n, ErrorCode::AlphaOutOfRange, "linear condition needs 0 <= alpha < n");
  return sup_over(family, [&](const Cube& q) {
    const double measure = grid.measure(q);
    return std::pow(measure, -alpha / n) * indicator_norm(y_dual, grid, q) *
           indicator_norm(x, grid, q) / measure;
  });
}

double condition_bilinear_at(const SpaceSpec& x1, const SpaceSpec& x2, const SpaceSpec& y,
                             double alpha, const Grid& grid, const Cube& q) {
  const int n = grid.dimension();
  require(alpha >= 0.0 && alpha < 2 * n, ErrorCode::AlphaOutOfRange,
          "bilinear condition needs 0 <= alpha < 2n");
  const double measure = grid.measure(q);
  return std::pow(measure, -alpha / n) * indicator_norm(associate(y), grid, q) *
         indicator_norm(x1, grid, q) * indicator_norm(x2, grid, q) / measure;
}

CubeSup condition_bilinear(const SpaceSpec& x1, const SpaceSpec& x2, const SpaceSpec& y,
                           double alpha, const CubeFamily& family) {
  const SpaceSpec y_dual = associate(y);
  const Grid& grid = family.grid;
  const int n = grid.dimension();
  require(alpha >= 0.0 && alpha < 2 * n, ErrorCode::AlphaOutOfRange,
          "bilinear condition needs 0 <= alpha < 2n");
  return sup_over(family, [&](const Cube& q) {
    const double measure = grid.measure(q);
    return std::pow(measure, -alpha / n) * indicator_norm(y_dual, grid, q) *
           indicator_norm(x1, grid, q) * indicator_norm(x2, grid, q) / measure;
  });
}

double harmonic_exponent(const ExponentFunction& p, const Cube& q) {
  const GridFunction reciprocal = transform(p.values(), [](double v) { return 1.0 / v; });
  return 1.0 / cube_average(reciprocal, q);
}

NormRatioRange chiQ_norm_ratio(const ExponentFunction& p, const CubeFamily& family) {
  if (!p.log_holder()) fail(ErrorCode::MissingLogHolder, "exponent has no log-Hoelder metadata");
  require_same_grid(p.grid(), family.grid);
  const SpaceSpec space = SpaceSpec::variable(p);
  const Grid& grid = family.grid;
  const GridFunction reciprocal = transform(p.values(), [](double v) { return 1.0 / v; });
  std::vector<double> ratios(family.size());
  parallel_for(family.size(), [&](std::size_t i) {
    const Cube& q = family.cubes[i];
    const double inv_pq = cube_average(reciprocal, q);
    ratios[i] = indicator_norm(space, grid, q) / std::pow(grid.measure(q), inv_pq);
  });
  NormRatioRange range;
  std::size_t imin = 0;
  std::size_t imax = 0;
  for (std::size_t i = 1; i < ratios.size(); ++i) {
    if (ratios[i] < ratios[imin]) imin = i;
    if (ratios[i] > ratios[imax]) imax = i;
  }
  range.min = ratios[imin];
  range.max = ratios[imax];
  range.argmin = family.cubes[imin];
  range.argmax = family.cubes[imax];
  return range;
}

}  // namespace oscillab
