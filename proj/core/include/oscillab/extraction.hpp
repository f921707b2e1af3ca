#pragma once

#include <complex>
#include <optional>
#include <vector>

#include "oscillab/fourier.hpp"
#include "oscillab/grid.hpp"
#include "oscillab/kernel.hpp"
#include "oscillab/operators.hpp"
#include "oscillab/spaces.hpp"

namespace oscillab {

/// Base point (y0[, z0]) on the sphere of radius 3 sqrt(n), the ball
/// B((y0, z0), delta sqrt(2n)) on which 1/K is expanded, and the scaled
/// point (y1, z1) = (y0, z0) / delta.
struct ExtractionGeometry {
  int dimension = 1;
  bool bilinear = false;
  double delta = 0.5;
  KernelPoint base{};
  KernelPoint scaled{};
  double ball_radius = 0.0;
  /// Smallest |K| seen on the ball for the chosen direction.
  double min_abs_kernel = 0.0;

  Ball ball() const;
  /// sqrt(n)(1 + 8/delta): Q' and Q'' lie in this dilate of Q.
  double containment_factor() const;
  /// 2 sqrt(n)(1 + 8/delta): side ratio of P to Q.
  double enclosing_factor() const;
  /// Q' = Q(x0 - r y1, r); (x - y)/r lies near y1 for x in Q, y in Q'.
  Cube first_shift(const Cube& q) const;
  /// Q'' = Q(x0 - r z1, r); equal to Q when z1 = 0.
  Cube second_shift(const Cube& q) const;
  Cube enclosing(const Cube& q) const;
};

/// Scans directions on the admissible sphere and keeps the first one that
/// maximises min |K| over sampled ball points.
ExtractionGeometry select_geometry(const KernelSpec& kernel, double delta, int angular_steps = 64);

struct CubeGeometryCheck {
  /// Q is disjoint from Q' or from Q''.
  bool disjoint = false;
  /// Q', Q'' inside containment_factor * Q.
  bool contained = false;
  /// max(|y0|, |z0|) >= sqrt(2n).
  bool separation = false;
};

CubeGeometryCheck check_cube_geometry(const ExtractionGeometry& g, const Cube& q);

/// Expansion of 1/K on the geometry's ball.
FourierExpansion fourier_reciprocal(const KernelSpec& kernel, const ExtractionGeometry& g,
                                    int modes_per_axis, const FourierOptions& options = {});

/// sgn(b - avg_{Q'} b); sgn(0) = 0.
GridFunction oscillation_sign(const GridFunction& b, const Cube& q_shift);

struct TestFunctionTriple {
  ComplexGridFunction f;
  ComplexGridFunction g;
  ComplexGridFunction h;
};

/// f(y) = e^{-i (delta/r) nu1.y} chi_{Q'}, g(z) = e^{-i (delta/r) nu2.z} chi_{Q''},
/// h(x) = e^{i (delta/r) nu.(x, x)} sigma(x) chi_Q. For linear geometries g is
/// chi_Q and carries no phase.
TestFunctionTriple build_test_functions(const Grid& grid, const Cube& q, const ExtractionGeometry& g,
                                        const KernelPoint& frequency, const GridFunction& sigma);

struct ChainReport {
  Cube cube;
  Cube first_shift;
  Cube second_shift;
  Cube enclosing;
  /// delta^{-d} r^d / (|Q'| |Q''|) with cell-measured cubes.
  double prefactor = 0.0;
  // Stages of the chain.
  double oscillation = 0.0;       // (i)   int_Q |b - b_{Q'}|
  double kernel_form = 0.0;       // (ii)  exact-kernel triple sum
  double fourier_form = 0.0;      // (iii) Re prefactor sum a_j int h_j [b,T](f_j, g_j)
  double absolute_form = 0.0;     //       prefactor sum |a_j| int |h_j| |[b,T](f_j, g_j)|
  double holder_form = 0.0;       // (iv)  prefactor sum |a_j| ||h_j||_Y' ||[b,T](f_j,g_j)||_Y
  double final_bound = 0.0;       // (v)   prefactor N sum |a_j| ||chi_P||_Y' ||chi_P||_X1 ||chi_P||_X2
  /// Bound on |(ii) - (iii)| from the measured Fourier residual.
  double truncation_bound = 0.0;
  /// Norm used in (v): the larger of the supplied probe bound and the
  /// largest ratio ||[b,T](f_j,g_j)||_Y / (||f_j||_X1 ||g_j||_X2) of the chain.
  double norm_used = 0.0;
  double chain_norm_ratio = 0.0;
  /// (|P|/|Q|)^{alpha/n}, the factor between (v) and the |P|^{-alpha/n} form.
  double enclosing_constant = 1.0;
  /// The commutator norm the chain forces: (i) / (prefactor sum |a_j| ||chi_Q||_Y' ||chi_Q'||_X1 ||chi_Q''||_X2).
  double forced_norm = 0.0;
  CubeGeometryCheck geometry;
};

struct ChainSpaces {
  SpaceSpec x1;
  std::optional<SpaceSpec> x2;
  SpaceSpec y;
};

/// Executes the estimate chain on one cube. X2 is ignored for linear operators.
ChainReport verify_master_chain(const GridFunction& b, const OperatorHandle& op,
                                const ChainSpaces& spaces, const Cube& q,
                                const ExtractionGeometry& g, const FourierExpansion& e,
                                std::optional<double> probe_norm = std::nullopt);

struct NecessityReport {
  std::vector<ChainReport> chains;
  /// int_Q |b - b_{Q'}| / |Q| per cube, and (v)/|Q|.
  std::vector<double> oscillation_ratio;
  std::vector<double> bound_ratio;
  /// Maxima per dyadic generation (level_min .. level_max).
  std::vector<double> ratio_by_generation;
  std::vector<double> forced_norm_by_generation;
  double sup_ratio = 0.0;
  double sup_forced_norm = 0.0;
  std::optional<double> probe_norm;
};

NecessityReport necessity_experiment(const GridFunction& b, const OperatorHandle& op,
                                     const ChainSpaces& spaces, const CubeFamily& family,
                                     const ExtractionGeometry& g, const FourierExpansion& e,
                                     std::optional<double> probe_norm = std::nullopt);

}  // namespace oscillab
