#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include "oscillab/kernel.hpp"

namespace oscillab {

/// Euclidean ball in the kernel-argument space R^{a n}.
struct Ball {
  KernelPoint center{};
  double radius = 1.0;
  int dimension = 1;
};

struct FourierTerm {
  std::complex<double> coefficient;
  KernelPoint frequency{};
};

/// sum_j a_j e^{i nu_j . u}, approximating 1/K on a ball only.
struct FourierExpansion {
  enum class Method { LeastSquares, WindowedDft };

  /// Sorted by |a_j| descending.
  std::vector<FourierTerm> terms;
  Ball ball;
  Method method = Method::LeastSquares;
  int modes_per_axis = 0;
  /// Period of the frequency lattice on every axis.
  double period = 0.0;
  /// max over sampled ball points of |1/K - sum|.
  double residual = 0.0;
  /// max over the same points of |K sum - 1|.
  double reconstruction_defect = 0.0;
  /// sum of |a_j| over kept terms and over dropped terms.
  double l1_norm = 0.0;
  double l1_tail = 0.0;
  std::size_t dropped = 0;

  std::complex<double> evaluate(const KernelPoint& u) const;
};

struct FourierOptions {
  FourierExpansion::Method method = FourierExpansion::Method::LeastSquares;
  /// Period box edge as a multiple of the ball diameter.
  double box_factor = 2.0;
  /// Least-squares ridge, relative to the number of samples.
  double ridge = 1e-15;
  /// Sample points per unknown in the least-squares fit.
  double oversampling = 4.0;
  /// Keep at most this many terms after sorting by |a_j|.
  std::optional<std::size_t> max_terms;
  /// Throw TailTooLarge when the measured residual exceeds this.
  std::optional<double> tolerance;
  int residual_samples = 1000;
  std::uint64_t seed = 12345;
};

/// Fourier expansion of 1/K on `ball`, with a measured sup-norm residual.
/// The default is a regularised least-squares fit on the period box; the
/// windowed DFT multiplies 1/K by a smooth bump equal to 1 on the ball.
FourierExpansion fourier_reciprocal(const KernelSpec& kernel, const Ball& ball, int modes_per_axis,
                                    const FourierOptions& options = {});

/// Uniform seeded points in the ball (rejection sampling).
std::vector<KernelPoint> sample_ball(const Ball& ball, int count, std::uint64_t seed);

}  // namespace oscillab
