#include "runner/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <random>

#include <fmt/format.h>

#include "oscillab/oscillab.hpp"

namespace oscillab::runner {

namespace {

using Rng = std::mt19937_64;

double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

double uniform(Rng& rng, double a, double b) { return a + (b - a) * uniform01(rng); }

/// Turns fixture or parameter mistakes into config errors (exit 2).
template <class F>
auto configured(const std::string& what, F&& fn) -> decltype(fn()) {
  try {
    return fn();
  } catch (const Error& e) {
    if (e.code() == ErrorCode::InvalidArgument || e.code() == ErrorCode::AlphaOutOfRange ||
        e.code() == ErrorCode::BadDelta || e.code() == ErrorCode::OutOfDomain ||
        e.code() == ErrorCode::ResolutionTooCoarse) {
      fail(ErrorCode::ConfigError, what + ": " + e.what());
    }
    throw;
  }
}

std::string level_tag(const std::string& name, const char* key, int level) {
  return fmt::format("{}[{}={}]", name, key, level);
}

GridFunction random_function(const Grid& grid, Rng& rng) {
  const double keep = uniform(rng, 0.3, 1.0);
  const double scale = std::pow(10.0, uniform(rng, -1.0, 1.0));
  std::vector<double> v(grid.size(), 0.0);
  for (double& x : v) {
    if (uniform01(rng) < keep) x = scale * uniform(rng, -1.0, 1.0);
  }
  v[static_cast<std::size_t>(rng() % grid.size())] = scale;
  return GridFunction(grid, std::move(v));
}

Cube random_family_cube(const CubeFamily& family, Rng& rng) {
  return family.cubes[static_cast<std::size_t>(rng() % family.size())];
}

SpaceSpec space(const ExperimentConfig& c, const std::string& key, const std::string& fallback,
                const Grid& grid) {
  return parse_space(c.text(key, fallback), grid);
}

CubeFamily dyadic_family(const ExperimentConfig& c, const Grid& grid, int lmin, int lmax) {
  return configured("cube family", [&] {
    if (!c.has("base_center") && !c.has("base_side")) return enumerate_dyadic(grid, lmin, lmax);
    Cube base;
    base.side = c.number("base_side", 1.0);
    const auto& data = c.data();
    if (data.contains("base_center")) {
      const auto& v = data.at("base_center");
      if (v.is_number()) {
        base.center[0] = v.get<double>();
      } else {
        for (std::size_t a = 0; a < v.size() && a < 2; ++a) {
          if (!v[a].is_number()) fail(ErrorCode::ConfigError, "base_center entries must be numbers");
          base.center[a] = v[a].get<double>();
        }
      }
    }
    return enumerate_dyadic(grid, base, lmin, lmax);
  });
}

// ---------------------------------------------------------------- norms

void run_norms(const ExperimentConfig& c, Report& rep) {
  const Grid grid = c.grid();
  const SpaceSpec x = space(c, "x", "lebesgue:2", grid);
  const int trials = c.integer("trials", 20);
  if (trials < 1) fail(ErrorCode::ConfigError, "trials must be >= 1");
  Rng rng(c.seed());
  const bool exact_holder = !x.is_variable();
  const SpaceSpec xd = associate(x);

  double homogeneity = 0.0;
  double modular_error = 0.0;
  double lebesgue_error = 0.0;
  double holder_max = 0.0;
  double duality_max = 0.0;
  double duality_min = std::numeric_limits<double>::infinity();
  std::optional<double> constant_p;
  if (const auto* v = std::get_if<Variable>(&x.kind())) {
    if (v->exponent.p_minus() == v->exponent.p_plus()) constant_p = v->exponent.p_minus();
  }
  for (int t = 0; t < trials; ++t) {
    const GridFunction f = random_function(grid, rng);
    const GridFunction g = random_function(grid, rng);
    const double nf = norm(f, x);
    const double lambda = std::pow(10.0, uniform(rng, -3.0, 3.0));
    homogeneity = std::max(homogeneity, std::abs(norm(scale(f, lambda), x) - lambda * nf) / (lambda * nf));
    if (const auto* v = std::get_if<Variable>(&x.kind())) {
      modular_error = std::max(modular_error, std::abs(modular(f, v->exponent, nf) - 1.0));
      if (constant_p) {
        const double lp = norm(f, SpaceSpec::lebesgue(*constant_p));
        lebesgue_error = std::max(lebesgue_error, std::abs(nf - lp) / lp);
      }
    }
    holder_max = std::max(holder_max, holder_defect(f, g, x));
    const DualityEstimate d = duality_gap(f, x, 4, rng());
    duality_max = std::max(duality_max, d.ratio);
    duality_min = std::min(duality_min, d.ratio);
  }
  rep.at_most("homogeneity_max_rel_error", homogeneity, 1e-8);
  if (x.is_variable()) rep.at_most("unit_ball_modular_max_error", modular_error, 1e-8);
  if (constant_p) rep.at_most("constant_exponent_vs_lebesgue_max_rel_error", lebesgue_error, 1e-6);
  if (exact_holder) {
    rep.at_most("holder_defect_max", holder_max, 1.0 + 1e-12);
    rep.at_most("duality_ratio_max", duality_max, 1.0 + 1e-9);
    rep.at_least("duality_ratio_min", duality_min, 1.0 - 1e-6);
  } else {
    rep.at_most("holder_defect_max", holder_max, 4.0);
    rep.info("duality_ratio_max", duality_max);
    rep.info("duality_ratio_min", duality_min);
  }
  rep.constant("holder_constant_measured", holder_max);
  rep.info("indicator_norm_box", indicator_norm(x, grid, grid.box()), grid.box());
  rep.info("indicator_norm_box_associate", indicator_norm(xd, grid, grid.box()), grid.box());

  if (const auto* v = std::get_if<Variable>(&x.kind()); v && v->exponent.log_holder()) {
    const int lmin = c.integer("sweep_min", 3);
    const int lmax = c.integer("level_max", 6);
    if (lmin < 1 || lmin > lmax) fail(ErrorCode::ConfigError, "need 1 <= sweep_min <= level_max");
    std::vector<double> spreads;
    for (int l = lmin; l <= lmax; ++l) {
      const CubeFamily fam = dyadic_family(c, grid, 0, l);
      const NormRatioRange r = chiQ_norm_ratio(v->exponent, fam);
      spreads.push_back(r.spread());
      rep.info(level_tag("chiQ_ratio_min", "lmax", l), r.min, r.argmin);
      rep.info(level_tag("chiQ_ratio_max", "lmax", l), r.max, r.argmax);
      rep.info(level_tag("chiQ_ratio_spread", "lmax", l), r.spread());
    }
    const double change = std::abs(relative_growth(spreads[spreads.size() - 2], spreads.back()));
    const double tol = c.number("tolerance", 0.02);
    rep.at_most("chiQ_spread_last_change", change, tol);
    rep.check("chiQ_spread_finite", std::isfinite(spreads.back()) && spreads.back() > 0.0,
              spreads.back(), std::nullopt);
    rep.constant("chiQ_spread", spreads.back());
  }
}

// ---------------------------------------------------------------- weights

struct SweepSpec {
  int lmin;
  int sweep_min;
  int lmax;
  int cells;
};

SweepSpec sweep_spec(const ExperimentConfig& c) {
  SweepSpec s{c.integer("level_min", 0), c.integer("sweep_min", 3), c.integer("level_max", 8),
              c.integer("cells_per_finest", 2)};
  if (s.lmin < 0 || s.sweep_min < s.lmin || s.lmax < s.sweep_min + 1 || s.lmax > 16 || s.cells < 1) {
    fail(ErrorCode::ConfigError, "sweep needs 0 <= level_min <= sweep_min < level_max <= 16");
  }
  return s;
}

void verdict_for_sweep(const ExperimentConfig& c, Report& rep, const std::string& name,
                       const std::vector<double>& values) {
  const std::string expect = c.text("expect", "none");
  if (expect == "stable") {
    const Stability s = assess_stability(values, 0.05);
    rep.info(name + "_previous_growth", s.previous_growth);
    rep.check(name + "_stable", s.stable, s.last_growth, 0.05);
  } else if (expect == "unbounded") {
    const double threshold = c.number("growth_threshold", 0.5);
    double min_growth = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < values.size(); ++i) {
      min_growth = std::min(min_growth, relative_growth(values[i - 1], values[i]));
    }
    rep.check(name + "_grows_every_generation", grows_every_step(values, threshold), min_growth,
              threshold);
  } else if (expect != "none") {
    fail(ErrorCode::ConfigError, "expect must be stable, unbounded or none");
  }
}

void run_weight_constants(const ExperimentConfig& c, Report& rep) {
  const SweepSpec s = sweep_spec(c);
  const std::string wname = c.text("weight");
  const double p = c.number("p", 2.0);
  const double alpha = c.number("alpha", 0.0);
  const int n = c.dimension();
  const double lower = c.number("lower", -1.0);
  const double upper = c.number("upper", 1.0);
  std::optional<double> q;
  if (alpha > 0.0) {
    q = c.has("q") ? c.number("q") : configured("A_{p,q} exponents", [&] { return apq_target_exponent(p, alpha, n); });
    rep.constant("q", *q);
  }
  const std::string name = q ? "apq_constant" : "ap_constant";
  std::vector<double> sups;
  for (int l = s.sweep_min; l <= s.lmax; ++l) {
    const ResolutionLevel level =
        configured("resolution level", [&] { return resolution_level(n, lower, upper, s.lmin, l, s.cells); });
    const GridFunction w = configured("weight", [&] { return weight_library(wname, level.grid); });
    const CubeSup sup = q ? apq_constant(w, p, *q, level.family) : ap_constant(w, p, level.family);
    sups.push_back(sup.value);
    rep.info(level_tag(name, "lmax", l), sup.value, sup.argmax);
    if (l == s.lmax) {
      rep.constant(name, sup.value);
      rep.argmax(name, sup.argmax);
      double jensen = std::numeric_limits<double>::infinity();
      double duality = 0.0;
      std::size_t chain_violations = 0;
      const double pc = conjugate_exponent(p);
      const GridFunction dual = transform(w, [pc](double v) { return std::pow(v, 1.0 - pc); });
      for (const Cube& cube : level.family.cubes) {
        if (q) {
          const double big = apq_quantity(w, p, *q, cube);
          const double small = apq_linear_condition_quantity(w, p, *q, cube);
          if (small > big * (1.0 + 1e-12)) ++chain_violations;
          jensen = std::min(jensen, big);
        } else {
          const double a = ap_quantity(w, p, cube);
          const double b = ap_quantity(dual, pc, cube);
          duality = std::max(duality, std::abs(b - std::pow(a, pc - 1.0)) / std::pow(a, pc - 1.0));
          jensen = std::min(jensen, a);
        }
      }
      rep.at_least("per_cube_min", jensen, 1.0 - 1e-12);
      if (q) {
        rep.at_most("holder_chain_violations", static_cast<double>(chain_violations), 0.0);
      } else {
        rep.at_most("duality_identity_max_rel_error", duality, 1e-12);
      }
    }
  }
  verdict_for_sweep(c, rep, name, sups);
}

// ---------------------------------------------------------------- conditions

double condition_on(const ExperimentConfig& c, const Grid& grid, const CubeFamily& fam, Report* rep,
                    std::optional<Cube>* where) {
  const SpaceSpec x1 = space(c, c.has("x1") ? "x1" : "x", "lebesgue:2", grid);
  const SpaceSpec y = space(c, "y", "lebesgue:2", grid);
  const double alpha = c.number("alpha", 0.0);
  CubeSup sup = c.has("x2") ? configured("condition", [&] {
    return condition_bilinear(x1, space(c, "x2", "", grid), y, alpha, fam);
  })
                            : configured("condition", [&] { return condition_linear(x1, y, alpha, fam); });
  if (rep && c.has("expected")) {
    const double expected = c.number("expected");
    double dev = 0.0;
    std::size_t worst = 0;
    for (std::size_t i = 0; i < sup.per_cube.size(); ++i) {
      const double d = std::abs(sup.per_cube[i] - expected);
      if (d > dev) {
        dev = d;
        worst = i;
      }
    }
    rep->at_most("per_cube_max_deviation", dev, c.number("tolerance", 1e-12), fam.cubes[worst]);
  }
  if (where) *where = sup.argmax;
  return sup.value;
}

void run_conditions(const ExperimentConfig& c, Report& rep) {
  const std::string expect = c.text("expect", "none");
  if (expect == "none") {
    const Grid grid = c.grid();
    const CubeFamily fam = dyadic_family(c, grid, c.integer("level_min", 0), c.integer("level_max", 6));
    std::optional<Cube> arg;
    const double v = condition_on(c, grid, fam, &rep, &arg);
    rep.info("condition_sup", v, arg);
    rep.constant("condition_sup", v);
    if (arg) rep.argmax("condition_sup", *arg);
    return;
  }
  const SweepSpec s = sweep_spec(c);
  std::vector<double> sups;
  for (int l = s.sweep_min; l <= s.lmax; ++l) {
    const ResolutionLevel level = configured("resolution level", [&] {
      return resolution_level(c.dimension(), c.number("lower", -1.0), c.number("upper", 1.0), s.lmin, l, s.cells);
    });
    std::optional<Cube> arg;
    const double v = condition_on(c, level.grid, level.family, l == s.lmax ? &rep : nullptr, &arg);
    sups.push_back(v);
    rep.info(level_tag("condition_sup", "lmax", l), v, arg);
    if (l == s.lmax) {
      rep.constant("condition_sup", v);
      rep.argmax("condition_sup", *arg);
    }
  }
  verdict_for_sweep(c, rep, "condition_sup", sups);
}

// ---------------------------------------------------------------- maximal

void run_maximal(const ExperimentConfig& c, Report& rep) {
  const Grid grid = c.grid();
  const int n = grid.dimension();
  const CubeFamily fam = dyadic_family(c, grid, c.integer("level_min", 0), c.integer("level_max", 5));
  const int samples = c.integer("samples", 20);
  if (samples < 1) fail(ErrorCode::ConfigError, "samples must be >= 1");
  Rng rng(c.seed());
  std::size_t linear = 0;
  std::size_t bilinear = 0;
  std::size_t product = 0;
  for (int s = 0; s < samples; ++s) {
    const GridFunction f = random_function(grid, rng);
    const GridFunction g = random_function(grid, rng);
    const Cube q = random_family_cube(fam, rng);
    const double alpha = uniform(rng, 0.0, 0.999 * n);
    const double alpha2 = uniform(rng, 0.0, 1.999 * n);
    const GridFunction a = averaging(f, q, alpha);
    const GridFunction m = maximal(f, alpha, fam);
    const GridFunction a2 = bilinear_averaging(f, g, q, alpha2);
    const GridFunction m2 = bilinear_maximal(f, g, alpha2, fam);
    const GridFunction m0 = bilinear_maximal(f, g, 0.0, fam);
    const GridFunction mf = maximal(f, 0.0, fam);
    const GridFunction mg = maximal(g, 0.0, fam);
    for (std::size_t i = 0; i < grid.size(); ++i) {
      if (std::abs(a[i]) > m[i] * (1.0 + 1e-12)) ++linear;
      if (std::abs(a2[i]) > m2[i] * (1.0 + 1e-12)) ++bilinear;
      if (m0[i] > mf[i] * mg[i] * (1.0 + 1e-12)) ++product;
    }
  }
  rep.at_most("linear_domination_violations", static_cast<double>(linear), 0.0);
  rep.at_most("bilinear_domination_violations", static_cast<double>(bilinear), 0.0);
  rep.at_most("bilinear_vs_product_violations", static_cast<double>(product), 0.0);
  rep.info("samples", samples);
}

// ---------------------------------------------------------------- commutator

bool grid_covers(const Grid& grid, double a, double b) {
  return grid.dimension() == 1 && grid.lower(0) <= a && grid.upper(0) >= b;
}

void run_commutator(const ExperimentConfig& c, Report& rep) {
  const Grid grid = c.grid();
  const int n = grid.dimension();
  const std::string kname = c.text("kernel", "hilbert");
  const double alpha = c.number("alpha", 0.5);
  const KernelSpec kernel = configured("kernel", [&] { return make_kernel(kname, n, alpha); });
  const GridFunction b = configured("symbol", [&] { return symbol_library(c.text("symbol", "log_abs"), grid); });
  const double width = grid.upper(0) - grid.lower(0);
  const double radius = c.number("truncation_radius", width / 4.0);
  const OperatorHandle truncated = configured("operator", [&] { return make_operator(kernel, radius); });
  const OperatorHandle full = configured("operator", [&] { return make_operator(kernel); });
  const auto mask = validity_mask(truncated, grid);
  Rng rng(c.seed());
  const GridFunction one(grid, 1.0);
  const GridFunction f = random_function(grid, rng);
  const GridFunction g = random_function(grid, rng);
  const GridFunction constant_b(grid, uniform(rng, -3.0, 3.0));

  auto masked_max = [&](const GridFunction& v) {
    double m = 0.0;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (mask[i]) m = std::max(m, std::abs(v[i]));
    }
    return m;
  };
  std::size_t valid = 0;
  for (auto v : mask) valid += v;
  rep.info("valid_cells", static_cast<double>(valid));

  if (kernel.bilinear()) {
    if (!kernel.fractional()) rep.at_most("t_constant_max_abs", masked_max(apply(truncated, one, one)), 1e-10);
    rep.at_most("commutator_constant_b_max_abs",
                masked_max(bilinear_commutator(constant_b, truncated, f, g, 1)), 1e-10);
    const GridFunction c1 = bilinear_commutator(b, full, f, g, 1);
    const GridFunction c2 = bilinear_commutator(b, full, f, g, 2);
    rep.info("commutator_slot1_l2", norm(c1, SpaceSpec::lebesgue(2)));
    rep.info("commutator_slot2_l2", norm(c2, SpaceSpec::lebesgue(2)));
  } else {
    if (!kernel.fractional()) rep.at_most("t_constant_max_abs", masked_max(apply(truncated, one)), 1e-10);
    rep.at_most("commutator_constant_b_max_abs", masked_max(commutator(constant_b, truncated, f)), 1e-10);
    const GridFunction b2 = random_function(grid, rng);
    const GridFunction sum = combine(b, b2, [](double u, double v) { return u + v; });
    const GridFunction lhs = commutator(sum, full, f);
    const GridFunction r1 = commutator(b, full, f);
    const GridFunction r2 = commutator(b2, full, f);
    double add = 0.0;
    double size = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      add = std::max(add, std::abs(lhs[i] - r1[i] - r2[i]));
      size = std::max(size, std::abs(lhs[i]));
    }
    rep.at_most("commutator_additivity_rel_error", size > 0 ? add / size : add, 1e-10);
  }

  if (kname == "hilbert" && grid_covers(grid, -1.0, 2.5)) {
    const GridFunction chi = indicator(grid, Cube{{0.0, 0.0}, 2.0});
    const double v = interpolate(apply(full, chi), {2.0, 0.0});
    rep.at_most("hilbert_log3_rel_error", std::abs(v - std::log(3.0)) / std::log(3.0), 0.02,
                Cube{{2.0, 0.0}, grid.spacing()});
  }
  if (kname == "frac_alpha" && n == 1 && grid_covers(grid, -0.5, 1.5)) {
    const GridFunction chi = indicator(grid, Cube{{0.5, 0.0}, 1.0});
    const double v = interpolate(apply(full, chi), {0.0, 0.0});
    const double exact = 1.0 / alpha;
    rep.at_most("fractional_origin_rel_error", std::abs(v - exact) / exact, 0.02,
                Cube{{0.0, 0.0}, grid.spacing()});
  }

  const int probes = c.integer("probes", 8);
  if (probes > 0) {
    const SpaceSpec x = space(c, "x", "lebesgue:2", grid);
    const SpaceSpec y = space(c, "y", "lebesgue:2", grid);
    const CubeFamily fam = dyadic_family(c, grid, 1, std::min(5, c.integer("level_max", 5)));
    if (kernel.bilinear()) {
      const SpaceSpec x2 = space(c, "x2", "lebesgue:4", grid);
      std::vector<std::pair<GridFunction, GridFunction>> ps;
      for (int i = 0; i < probes; ++i) {
        ps.emplace_back(indicator(grid, random_family_cube(fam, rng)), indicator(grid, random_family_cube(fam, rng)));
      }
      const NormEstimate est = operator_norm_estimate(
          [&](const GridFunction& u, const GridFunction& v) { return bilinear_commutator(b, full, u, v, 1); },
          x, x2, y, ps);
      rep.info("commutator_norm_lower_bound", est.value);
      rep.constant("commutator_norm_lower_bound", est.value);
    } else {
      std::vector<GridFunction> ps;
      for (int i = 0; i < probes; ++i) ps.push_back(indicator(grid, random_family_cube(fam, rng)));
      const NormEstimate est = operator_norm_estimate(
          [&](const GridFunction& u) { return commutator(b, full, u); }, x, y, ps);
      rep.info("commutator_norm_lower_bound", est.value);
      rep.constant("commutator_norm_lower_bound", est.value);
    }
  }
}

// ---------------------------------------------------------------- chain / necessity

struct ChainSetup {
  Grid grid;
  KernelSpec kernel;
  OperatorHandle op;
  ExtractionGeometry geometry;
  FourierExpansion expansion;
  ChainSpaces spaces;
  GridFunction b;
  CubeFamily family;
};

ChainSetup chain_setup(const ExperimentConfig& c, Report& rep, int default_lmax) {
  const Grid grid = c.grid();
  const int n = grid.dimension();
  const std::string kname = c.text("kernel", "bilinear_riesz");
  const KernelSpec kernel = configured("kernel", [&] { return make_kernel(kname, n, c.number("alpha", 0.5)); });
  const OperatorHandle op = configured("operator", [&] { return make_operator(kernel); });
  const ExtractionGeometry geometry = configured("geometry", [&] { return select_geometry(kernel, c.number("delta", 0.5)); });
  FourierOptions opt;
  opt.seed = c.seed();
  const std::string method = c.text("fourier_method", "least_squares");
  if (method == "windowed_dft") {
    opt.method = FourierExpansion::Method::WindowedDft;
  } else if (method != "least_squares") {
    fail(ErrorCode::ConfigError, "fourier_method must be least_squares or windowed_dft");
  }
  if (c.has("max_terms")) {
    const int mt = c.integer("max_terms", 0);
    if (mt < 1) fail(ErrorCode::ConfigError, "max_terms must be >= 1");
    opt.max_terms = static_cast<std::size_t>(mt);
  }
  const int modes = c.integer("modes", kernel.bilinear() ? 17 : 33);
  FourierExpansion e = configured("fourier", [&] { return fourier_reciprocal(kernel, geometry, modes, opt); });
  const double ftol = c.number("fourier_tolerance", 1e-4);
  rep.at_most("fourier_residual", e.residual, ftol);
  rep.at_most("fourier_reconstruction_defect", e.reconstruction_defect, c.number("tolerance", 1e-5));
  rep.info("fourier_l1", e.l1_norm);
  rep.info("fourier_terms", static_cast<double>(e.terms.size()));
  rep.info("fourier_l1_tail", e.l1_tail);
  rep.constant("fourier_residual", e.residual);
  rep.constant("fourier_l1", e.l1_norm);
  rep.constant("min_abs_kernel_on_ball", geometry.min_abs_kernel);
  nlohmann::json base = nlohmann::json::array();
  for (int i = 0; i < kernel.argument_dimension(); ++i) base.push_back(geometry.base[i]);
  rep.note("geometry_base", base);
  rep.note("geometry_ball_radius", geometry.ball_radius);
  rep.note("geometry_delta", geometry.delta);

  ChainSpaces spaces{space(c, "x1", kernel.bilinear() ? "lebesgue:4" : "lebesgue:2", grid),
                     kernel.bilinear() ? std::optional<SpaceSpec>(space(c, "x2", "lebesgue:4", grid)) : std::nullopt,
                     space(c, "y", "lebesgue:2", grid)};
  GridFunction b = configured("symbol", [&] { return symbol_library(c.text("symbol", "log_abs"), grid); });
  CubeFamily family = dyadic_family(c, grid, c.integer("level_min", 2), c.integer("level_max", default_lmax));
  for (const Cube& q : family.cubes) {
    if (!grid.contains(geometry.enclosing(q))) {
      fail(ErrorCode::ConfigError, "enclosing cube P of a family cube leaves the grid box");
    }
  }
  return {grid, kernel, op, geometry, std::move(e), std::move(spaces), std::move(b), std::move(family)};
}

bool is_constant_symbol(const ExperimentConfig& c) {
  return c.text("symbol", "log_abs").rfind("constant:", 0) == 0;
}

void chain_rows(Report& rep, const ChainReport& r, bool constant) {
  const Cube& q = r.cube;
  rep.info("stage_i_oscillation", r.oscillation, q);
  rep.info("stage_ii_kernel_form", r.kernel_form, q);
  rep.info("stage_iii_fourier_form", r.fourier_form, q);
  rep.info("stage_iii_absolute_form", r.absolute_form, q);
  rep.info("stage_iv_holder_form", r.holder_form, q);
  rep.info("stage_v_final_bound", r.final_bound, q);
  rep.info("norm_used", r.norm_used, q);
  const double gap = std::abs(r.oscillation - r.fourier_form);
  const double rel = r.oscillation > 0.0 ? gap / r.oscillation : gap;
  const double allowed = std::max(0.05, r.oscillation > 0.0 ? r.truncation_bound / r.oscillation : 0.0);
  rep.at_most("i_vs_iii_rel_gap", rel, allowed, q);
  rep.at_most("i_vs_ii_abs_gap", std::abs(r.oscillation - r.kernel_form), 1e-9 * std::max(1.0, r.oscillation), q);
  rep.at_most("ii_vs_iii_gap_minus_truncation_bound", std::abs(r.kernel_form - r.fourier_form) - r.truncation_bound,
              1e-12, q);
  rep.at_least("iv_minus_iii", r.holder_form - r.fourier_form, -1e-9, q);
  rep.at_least("v_minus_iv", r.final_bound - r.holder_form, -1e-9, q);
  rep.check("geometry_disjoint", r.geometry.disjoint && r.geometry.separation, r.geometry.disjoint ? 1.0 : 0.0,
            std::nullopt, q);
  rep.check("geometry_contained", r.geometry.contained, r.geometry.contained ? 1.0 : 0.0, std::nullopt, q);
  if (constant) {
    const double m = std::max({std::abs(r.oscillation), std::abs(r.kernel_form), std::abs(r.fourier_form),
                               std::abs(r.holder_form), std::abs(r.final_bound)});
    rep.at_most("stage_max_abs", m, 1e-10, q);
  }
}

void run_chain(const ExperimentConfig& c, Report& rep) {
  const ChainSetup s = chain_setup(c, rep, 4);
  const bool constant = is_constant_symbol(c);
  for (const Cube& q : s.family.cubes) {
    chain_rows(rep, verify_master_chain(s.b, s.op, s.spaces, q, s.geometry, s.expansion), constant);
  }
}

std::optional<double> probe_norm(const ExperimentConfig& c, const ChainSetup& s, Rng& rng) {
  const int probes = c.integer("probes", 0);
  if (probes <= 0) return std::nullopt;
  std::vector<std::pair<GridFunction, GridFunction>> pairs;
  std::vector<GridFunction> singles;
  for (int i = 0; i < probes; ++i) {
    const Cube q = random_family_cube(s.family, rng);
    const Cube q1 = s.geometry.first_shift(q);
    const Cube q2 = s.geometry.second_shift(q);
    if (s.kernel.bilinear()) {
      pairs.emplace_back(indicator(s.grid, q1), indicator(s.grid, q2));
    } else {
      singles.push_back(indicator(s.grid, q1));
    }
  }
  if (s.kernel.bilinear()) {
    return operator_norm_estimate(
               [&](const GridFunction& u, const GridFunction& v) { return bilinear_commutator(s.b, s.op, u, v, 1); },
               s.spaces.x1, *s.spaces.x2, s.spaces.y, pairs)
        .value;
  }
  return operator_norm_estimate([&](const GridFunction& u) { return commutator(s.b, s.op, u); }, s.spaces.x1,
                                s.spaces.y, singles)
      .value;
}

void run_necessity(const ExperimentConfig& c, Report& rep) {
  const ChainSetup s = chain_setup(c, rep, 5);
  Rng rng(c.seed());
  const std::optional<double> pn = probe_norm(c, s, rng);
  if (pn) {
    rep.info("commutator_probe_norm", *pn);
    rep.constant("commutator_probe_norm", *pn);
  }
  const NecessityReport r = necessity_experiment(s.b, s.op, s.spaces, s.family, s.geometry, s.expansion, pn);
  std::size_t bound_violations = 0;
  for (std::size_t i = 0; i < r.chains.size(); ++i) {
    if (r.oscillation_ratio[i] > r.bound_ratio[i] * (1.0 + 1e-9) + 1e-12) ++bound_violations;
  }
  rep.at_most("ratio_above_bound_violations", static_cast<double>(bound_violations), 0.0);
  std::vector<double> cumulative;
  for (std::size_t l = 0; l < r.ratio_by_generation.size(); ++l) {
    const int level = s.family.level_min + static_cast<int>(l);
    rep.info(level_tag("oscillation_ratio_max", "level", level), r.ratio_by_generation[l]);
    rep.info(level_tag("forced_norm_max", "level", level), r.forced_norm_by_generation[l]);
    cumulative.push_back(std::max(r.ratio_by_generation[l], cumulative.empty() ? 0.0 : cumulative.back()));
  }
  rep.constant("sup_oscillation_ratio", r.sup_ratio);
  rep.constant("sup_forced_norm", r.sup_forced_norm);
  const std::string expect = c.text("expect", "none");
  if (expect == "bounded") {
    const Stability st = assess_stability(cumulative, 0.05);
    rep.check("oscillation_ratio_bounded", st.stable, st.last_growth, 0.05);
  } else if (expect == "growing") {
    double min_growth = std::numeric_limits<double>::infinity();
    for (std::size_t i = 1; i < r.ratio_by_generation.size(); ++i) {
      min_growth = std::min(min_growth, relative_growth(r.ratio_by_generation[i - 1], r.ratio_by_generation[i]));
    }
    rep.check("oscillation_ratio_growing", grows_every_step(r.ratio_by_generation, 0.0), min_growth, 0.0);
    rep.check("forced_norm_growing", grows_every_step(r.forced_norm_by_generation, 0.0),
              r.forced_norm_by_generation.back(), std::nullopt);
  } else if (expect != "none") {
    fail(ErrorCode::ConfigError, "expect must be bounded, growing or none");
  }
}

using Runner = std::function<void(const ExperimentConfig&, Report&)>;

const std::map<std::string, Runner>& runners() {
  static const std::map<std::string, Runner> table{
      {"norms", run_norms},           {"weight-constants", run_weight_constants},
      {"conditions", run_conditions}, {"maximal", run_maximal},
      {"commutator", run_commutator}, {"chain", run_chain},
      {"necessity", run_necessity}};
  return table;
}

}  // namespace

RunResult run_experiment(const ExperimentConfig& config) {
  if (config.has("threads")) {
    const int t = config.integer("threads", 1);
    if (t < 1) fail(ErrorCode::ConfigError, "threads must be >= 1");
    set_max_threads(static_cast<std::size_t>(t));
  }
  RunResult result{Report(config.id(), config.dimension()), kExitPass};
  try {
    runners().at(config.experiment())(config, result.report);
  } catch (const Error& e) {
    if (e.code() == ErrorCode::ConfigError) throw;
    result.report.error(std::string(to_string(e.code())), e.what());
  }
  result.exit_code = result.report.passed() ? kExitPass : kExitNumericalFailure;
  return result;
}

RunResult run_and_write(const ExperimentConfig& config) {
  RunResult result = run_experiment(config);
  const std::string csv_path = config.text("output_csv", config.id() + ".csv");
  const std::string json_path = config.text("output_json", config.id() + ".json");
  std::ofstream csv(csv_path, std::ios::binary);
  if (!csv) fail(ErrorCode::ConfigError, "cannot write '" + csv_path + "'");
  csv << result.report.csv();
  std::ofstream json(json_path, std::ios::binary);
  if (!json) fail(ErrorCode::ConfigError, "cannot write '" + json_path + "'");
  json << result.report.json_summary(config.data());
  return result;
}

std::string fixture_listing() {
  const FixtureRegistry r = fixture_registry();
  std::string out;
  auto section = [&](const char* title, const std::vector<std::string>& names) {
    out += title;
    out += ":\n";
    for (const auto& n : names) out += "  " + n + "\n";
  };
  section("kernels", r.kernels);
  section("weights", r.weights);
  section("symbols", r.symbols);
  section("exponents", r.exponents);
  section("experiments", experiment_names());
  return out;
}

}  // namespace oscillab::runner
