#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <variant>

#include "oscillab/grid.hpp"

namespace oscillab {

/// Log-Hoelder constants of an exponent: the local modulus C0, the decay
/// constant C_inf and the limit exponent p_inf.
struct LogHolder {
  double c0 = 0.0;
  double c_inf = 0.0;
  double p_inf = 2.0;
};

/// Variable exponent p(.) sampled on a grid, 1 <= p_- <= p_+ < inf.
/// Stores the pointwise conjugate p'(x) alongside when p_- > 1; conjugating
/// twice returns the original samples bit for bit.
class ExponentFunction {
 public:
  explicit ExponentFunction(GridFunction p, std::optional<LogHolder> log_holder = std::nullopt);

  static ExponentFunction constant(const Grid& grid, double p);

  const GridFunction& values() const noexcept { return values_; }
  const Grid& grid() const noexcept { return values_.grid(); }
  double p_minus() const noexcept { return p_minus_; }
  double p_plus() const noexcept { return p_plus_; }
  const std::optional<LogHolder>& log_holder() const noexcept { return log_holder_; }

  /// p'(.) with 1/p + 1/p' = 1. Throws ConjugateUndefined if p_- = 1.
  ExponentFunction conjugate() const;
  ExponentFunction with_log_holder(const LogHolder& constants) const;

  bool operator==(const ExponentFunction& other) const;

 private:
  ExponentFunction(GridFunction values, std::optional<GridFunction> conjugate,
                   std::optional<LogHolder> log_holder);

  GridFunction values_;
  std::optional<GridFunction> conjugate_;
  double p_minus_ = 1.0;
  double p_plus_ = 1.0;
  std::optional<LogHolder> log_holder_;
};

/// Grid estimate of the log-Hoelder constants for a given limit exponent.
LogHolder estimate_log_holder(const GridFunction& p, double p_inf);

struct Lebesgue {
  double p;
  double p_conjugate;
};

/// L^p(w) together with its dual weight w^{1-p'}.
struct Weighted {
  double p;
  double p_conjugate;
  GridFunction weight;
  GridFunction dual_weight;
};

struct Variable {
  ExponentFunction exponent;
};

/// One of the three concrete Banach function spaces.
class SpaceSpec {
 public:
  using Kind = std::variant<Lebesgue, Weighted, Variable>;

  static SpaceSpec lebesgue(double p);
  static SpaceSpec weighted(double p, GridFunction weight);
  static SpaceSpec variable(ExponentFunction exponent);

  const Kind& kind() const noexcept { return kind_; }
  bool is_lebesgue() const noexcept { return std::holds_alternative<Lebesgue>(kind_); }
  bool is_weighted() const noexcept { return std::holds_alternative<Weighted>(kind_); }
  bool is_variable() const noexcept { return std::holds_alternative<Variable>(kind_); }
  /// The grid a weighted or variable space is tied to; Lebesgue spaces have none.
  std::optional<Grid> grid() const;
  std::string describe() const;

  bool operator==(const SpaceSpec& other) const;

 private:
  friend SpaceSpec associate(const SpaceSpec& space);
  explicit SpaceSpec(Kind kind) : kind_(std::move(kind)) {}
  Kind kind_;
};

/// Conjugate exponent p / (p - 1).
double conjugate_exponent(double p);

double norm(const GridFunction& f, const SpaceSpec& space);
double norm(const ComplexGridFunction& f, const SpaceSpec& space);

/// rho(f / lambda) = sum |f/lambda|^p(x) h^n.
double modular(const GridFunction& f, const ExponentFunction& p, double lambda);

/// inf{lambda > 0 : rho(f/lambda) <= 1}, by bracketing then bisection in log lambda.
/// Returns 0 for f == 0; throws BracketFailure when 60 doublings do not bracket.
double luxemburg_norm(const GridFunction& f, const ExponentFunction& p);

/// ||chi_Q||_X computed from the cells of Q only.
double indicator_norm(const SpaceSpec& space, const Grid& grid, const Cube& q);

/// X -> X': L^p -> L^p', L^p(w) -> L^p'(w^{1-p'}), L^p(.) -> L^p'(.).
SpaceSpec associate(const SpaceSpec& space);

/// int |f g| / (||f||_X ||g||_X'); at most 1 for Lebesgue and weighted spaces.
double holder_defect(const GridFunction& f, const GridFunction& g, const SpaceSpec& space);

/// The g attaining (or, for variable exponents, nearly attaining) the
/// duality sup for f.
GridFunction duality_extremizer(const GridFunction& f, const SpaceSpec& space);

struct DualityEstimate {
  /// sup_g int f g / ||g||_X' divided by ||f||_X.
  double ratio = 0.0;
  /// Best ratio among random candidates only.
  double random_ratio = 0.0;
  /// Ratio of the analytic extremizer.
  double extremizer_ratio = 0.0;
};

/// Seeded random sign/support candidates plus the analytic extremizer.
DualityEstimate duality_gap(const GridFunction& f, const SpaceSpec& space, int trials,
                            std::uint64_t seed);

/// |Q|^{-alpha/n} ||chi_Q||_Y' ||chi_Q||_X / |Q| for one cube.
double condition_linear_at(const SpaceSpec& x, const SpaceSpec& y, double alpha, const Grid& grid,
                           const Cube& q);
CubeSup condition_linear(const SpaceSpec& x, const SpaceSpec& y, double alpha,
                         const CubeFamily& family);

/// |Q|^{-alpha/n} ||chi_Q||_Y' ||chi_Q||_X1 ||chi_Q||_X2 / |Q| for one cube.
double condition_bilinear_at(const SpaceSpec& x1, const SpaceSpec& x2, const SpaceSpec& y,
                             double alpha, const Grid& grid, const Cube& q);
CubeSup condition_bilinear(const SpaceSpec& x1, const SpaceSpec& x2, const SpaceSpec& y,
                           double alpha, const CubeFamily& family);

/// Harmonic-mean exponent p_Q: 1/p_Q is the average of 1/p over Q.
double harmonic_exponent(const ExponentFunction& p, const Cube& q);

struct NormRatioRange {
  double min = 0.0;
  double max = 0.0;
  Cube argmin;
  Cube argmax;

  double spread() const { return max / min; }
};

/// Range over the family of ||chi_Q||_{p(.)} / |Q|^{1/p_Q}. Needs log-Hoelder metadata.
NormRatioRange chiQ_norm_ratio(const ExponentFunction& p, const CubeFamily& family);

}  // namespace oscillab
