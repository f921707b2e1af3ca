#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "oscillab/oscillab.hpp"
#include "runner/experiments.hpp"

namespace fs = std::filesystem;
using namespace oscillab;
using namespace oscillab::runner;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond) {
      ok = false;
      if (!detail.empty()) detail += "; ";
      detail += what;
    }
  }
};

fs::path config_dir() { return fs::path(OSCILLAB_CONFIG_DIR); }

fs::path output_dir(const std::string& tag) {
  fs::path dir = fs::temp_directory_path() / ("oscillab_acceptance_" + tag);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

/// Every run of the first pass, keyed by config id.
std::map<std::string, RunResult> g_runs;
std::map<std::string, std::string> g_csv;

ExperimentConfig load(const std::string& name, const fs::path& out, int threads) {
  ExperimentConfig c = ExperimentConfig::load((config_dir() / (name + ".json")).string());
  c.set("output_csv", (out / (name + ".csv")).string());
  c.set("output_json", (out / (name + ".json")).string());
  c.set("threads", threads);
  return c;
}

const RunResult& run(const std::string& name) {
  auto it = g_runs.find(name);
  if (it != g_runs.end()) return it->second;
  const fs::path out = output_dir("first");
  const RunResult r = run_and_write(load(name, out, 1));
  g_csv[name] = slurp(out / (name + ".csv"));
  return g_runs.emplace(name, r).first->second;
}

const ReportRow* find_row(const Report& rep, const std::string& quantity) {
  for (const auto& row : rep.rows()) {
    if (row.quantity == quantity) return &row;
  }
  return nullptr;
}

/// The config passed and every named row exists with a pass verdict.
void require_run(Outcome& o, const std::string& name, const std::vector<std::string>& rows) {
  const RunResult& r = run(name);
  o.require(r.exit_code == kExitPass, fmt::format("{} exit {} ({} failing rows)", name, r.exit_code, r.report.failures()));
  for (const auto& q : rows) {
    const ReportRow* row = find_row(r.report, q);
    if (!row) {
      o.require(false, name + " lacks " + q);
    } else {
      o.require(row->verdict == Verdict::Pass, fmt::format("{} {} = {:.6g}", name, q, row->value));
    }
  }
}

Outcome exact_algebra() {
  Outcome o;
  for (const char* n : {"conditions_lebesgue_p1_5", "conditions_lebesgue_p2", "conditions_lebesgue_p4"}) {
    require_run(o, n, {"per_cube_max_deviation"});
  }
  const Grid grid = Grid::line(-1.0, 1.0, 256);
  const CubeFamily fam = enumerate_dyadic(grid, 0, 6);
  const GridFunction one(grid, 1.0);
  const GridFunction w = weight_library("power:0.5", grid);
  double unit = 0.0;
  double avg = 0.0;
  double duality = 0.0;
  for (double p : {1.5, 2.0, 4.0}) {
    const double pc = conjugate_exponent(p);
    const GridFunction dual = transform(w, [pc](double v) { return std::pow(v, 1.0 - pc); });
    for (const Cube& q : fam.cubes) {
      unit = std::max(unit, std::abs(ap_quantity(one, p, q) - 1.0));
      avg = std::max(avg, std::abs(cube_average(indicator(grid, q), q) - 1.0));
      const double a = std::pow(ap_quantity(w, p, q), pc - 1.0);
      duality = std::max(duality, std::abs(ap_quantity(dual, pc, q) - a) / a);
    }
  }
  o.require(unit <= 1e-12, fmt::format("A_p(1) deviation {:.3g}", unit));
  o.require(avg <= 1e-12, fmt::format("indicator average deviation {:.3g}", avg));
  o.require(duality <= 1e-12, fmt::format("duality identity error {:.3g}", duality));
  require_run(o, "ap_unit_weight", {"duality_identity_max_rel_error", "per_cube_min"});
  return o;
}

Outcome luxemburg() {
  Outcome o;
  require_run(o, "norms_variable_constant",
              {"homogeneity_max_rel_error", "unit_ball_modular_max_error", "constant_exponent_vs_lebesgue_max_rel_error"});
  require_run(o, "norms_variable_arctan", {"homogeneity_max_rel_error", "unit_ball_modular_max_error"});
  return o;
}

Outcome norm_ratio() {
  Outcome o;
  require_run(o, "norms_variable_arctan", {"chiQ_spread_last_change", "chiQ_spread_finite"});
  const ReportRow* s5 = find_row(run("norms_variable_arctan").report, "chiQ_ratio_spread[lmax=5]");
  const ReportRow* s6 = find_row(run("norms_variable_arctan").report, "chiQ_ratio_spread[lmax=6]");
  o.require(s5 && s6, "spread rows for lmax 5 and 6 missing");
  if (s5 && s6) o.require(std::abs(s6->value / s5->value - 1.0) < 0.02, "spread changes by 2% or more");
  return o;
}

Outcome operator_oracles() {
  Outcome o;
  require_run(o, "commutator_hilbert",
              {"hilbert_log3_rel_error", "t_constant_max_abs", "commutator_constant_b_max_abs"});
  o.require(ExperimentConfig::load((config_dir() / "commutator_hilbert.json").string()).grid().points_per_axis() >= 1024,
            "hilbert grid coarser than m = 1024");
  require_run(o, "commutator_fractional", {"fractional_origin_rel_error", "commutator_constant_b_max_abs"});
  require_run(o, "commutator_bilinear", {"t_constant_max_abs", "commutator_constant_b_max_abs"});
  return o;
}

Outcome weight_dichotomy() {
  Outcome o;
  require_run(o, "weights_sqrt", {"ap_constant_stable"});
  require_run(o, "weights_cubic", {"ap_constant_grows_every_generation"});
  return o;
}

Outcome domination() {
  Outcome o;
  for (const char* n : {"maximal_line", "maximal_square"}) {
    require_run(o, n, {"linear_domination_violations", "bilinear_domination_violations"});
    const ReportRow* s = find_row(run(n).report, "samples");
    o.require(s && s->value >= 20, std::string(n) + " uses fewer than 20 samples");
  }
  return o;
}

Outcome fourier() {
  Outcome o;
  require_run(o, "chain_hilbert", {"fourier_residual", "fourier_reconstruction_defect"});
  const ExperimentConfig c = ExperimentConfig::load((config_dir() / "chain_hilbert.json").string());
  o.require(c.integer("modes", 0) <= 64, "more than 64 modes");
  o.require(c.number("fourier_tolerance", 1.0) <= 1e-6, "residual tolerance looser than 1e-6");
  const ReportRow* d = find_row(run("chain_hilbert").report, "fourier_reconstruction_defect");
  o.require(d && d->value <= 1e-5, "reconstruction defect above 1e-5");
  return o;
}

Outcome master_chain() {
  Outcome o;
  require_run(o, "chain_bilinear_log_abs", {"fourier_residual"});
  require_run(o, "chain_bilinear_constant_2", {"fourier_residual"});
  std::size_t ordering = 0;
  std::size_t gaps = 0;
  std::size_t cubes = 0;
  for (const auto& row : run("chain_bilinear_log_abs").report.rows()) {
    if (row.quantity == "i_vs_iii_rel_gap") {
      ++cubes;
      gaps += row.verdict != Verdict::Pass;
    }
    if (row.quantity == "iv_minus_iii" || row.quantity == "v_minus_iv") ordering += row.verdict != Verdict::Pass;
  }
  o.require(cubes == 4 + 8 + 16, fmt::format("{} cubes tested", cubes));
  o.require(gaps == 0, fmt::format("{} cubes with (i) far from (iii)", gaps));
  o.require(ordering == 0, fmt::format("{} ordering violations", ordering));
  std::size_t zero = 0;
  for (const auto& row : run("chain_bilinear_constant_2").report.rows()) {
    if (row.quantity == "stage_max_abs") zero += row.verdict == Verdict::Pass;
  }
  o.require(zero == cubes, "constant symbol stages not all zero");
  return o;
}

Outcome necessity() {
  Outcome o;
  require_run(o, "necessity_log_abs", {"oscillation_ratio_bounded"});
  require_run(o, "necessity_sgn_log", {"oscillation_ratio_growing"});
  return o;
}

Outcome determinism() {
  Outcome o;
  const fs::path out = output_dir("second");
  std::vector<std::string> names;
  for (const auto& e : fs::directory_iterator(config_dir())) {
    if (e.path().extension() == ".json") names.push_back(e.path().stem().string());
  }
  std::sort(names.begin(), names.end());
  for (const auto& n : names) {
    run(n);
    run_and_write(load(n, out, 2));
    const std::string again = slurp(out / (n + ".csv"));
    o.require(again == g_csv.at(n), n + " CSV differs between runs");
  }
  set_max_threads(1);
  o.require(names.size() >= 10, "suite has fewer than ten configs");
  return o;
}

}  // namespace

int main() {
  using Clock = std::chrono::steady_clock;
  struct Criterion {
    int number;
    const char* title;
    double budget_seconds;
    std::function<Outcome()> fn;
  };
  const std::vector<Criterion> criteria{
      {1, "exact algebra", 5.0, exact_algebra},
      {2, "luxemburg norm", 10.0, luxemburg},
      {3, "variable-exponent indicator ratio", 0.0, norm_ratio},
      {4, "operator oracles", 0.0, operator_oracles},
      {5, "weight dichotomy", 0.0, weight_dichotomy},
      {6, "pointwise domination", 0.0, domination},
      {7, "fourier reciprocal", 0.0, fourier},
      {8, "master chain", 300.0, master_chain},
      {9, "necessity contrast", 0.0, necessity},
      {10, "determinism", 0.0, determinism},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = c.fn();
    } catch (const std::exception& e) {
      o.require(false, std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(Clock::now() - t0).count();
    if (c.budget_seconds > 0.0) o.require(secs < c.budget_seconds, fmt::format("over {:.0f} s budget", c.budget_seconds));
    failed += !o.ok;
    std::cout << fmt::format("criterion {:2d} {:<36} {} ({:.2f} s){}{}\n", c.number, c.title, o.ok ? "PASS" : "FAIL",
                             secs, o.detail.empty() ? "" : ": ", o.detail);
  }
  std::cout << fmt::format("{} of {} criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
