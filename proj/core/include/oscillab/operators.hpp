#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "oscillab/grid.hpp"
#include "oscillab/kernel.hpp"
#include "oscillab/spaces.hpp"

namespace oscillab {

/// A kernel bound to a discretisation. Functions are extended by zero
/// outside the grid box. With a truncation radius R only kernel arguments
/// of length <= R contribute, and a cell is valid when every such argument
/// stays inside the box.
struct OperatorHandle {
  KernelSpec kernel;
  std::optional<double> truncation_radius;
  /// Add the integrable self-cell mass of fractional kernels.
  bool self_cell_correction = true;
};

OperatorHandle make_operator(KernelSpec kernel, std::optional<double> truncation_radius = std::nullopt);

/// 1 where the operator output is unbiased by the box edge, 0 elsewhere.
std::vector<std::uint8_t> validity_mask(const OperatorHandle& op, const Grid& grid);

/// Self-cell mass: integral of K over [-h/2, h/2]^{a n} for fractional kernels, 0 otherwise.
double self_cell_mass(const KernelSpec& kernel, double spacing);

template <class T>
BasicGridFunction<T> apply(const OperatorHandle& op, const BasicGridFunction<T>& f);
template <class T>
BasicGridFunction<T> apply(const OperatorHandle& op, const BasicGridFunction<T>& f,
                           const BasicGridFunction<T>& g);

/// [b, T] f = b T f - T(b f), evaluated as the kernel sum of (b(x) - b(y)) K(x - y) f(y).
template <class T>
BasicGridFunction<T> commutator(const GridFunction& b, const OperatorHandle& op,
                                const BasicGridFunction<T>& f);
/// [b, T]_slot (f, g); slot 1 puts b on f, slot 2 on g.
template <class T>
BasicGridFunction<T> bilinear_commutator(const GridFunction& b, const OperatorHandle& op,
                                         const BasicGridFunction<T>& f,
                                         const BasicGridFunction<T>& g, int slot);

GridFunction singular_integral(const GridFunction& f, const KernelSpec& kernel);
GridFunction bilinear_singular_integral(const GridFunction& f, const GridFunction& g,
                                        const KernelSpec& kernel);
GridFunction fractional_integral(const GridFunction& f, double alpha);
GridFunction bilinear_fractional_integral(const GridFunction& f, const GridFunction& g,
                                          double alpha);

/// M_alpha f(x) = sup over cubes of the family containing x of |Q|^{alpha/n} avg_Q |f|.
/// Throws UncoveredPoint if the family misses a cell.
GridFunction maximal(const GridFunction& f, double alpha, const CubeFamily& family);
GridFunction bilinear_maximal(const GridFunction& f, const GridFunction& g, double alpha,
                              const CubeFamily& family);

/// |Q|^{alpha/n} avg_Q(f) chi_Q.
GridFunction averaging(const GridFunction& f, const Cube& q, double alpha);
GridFunction bilinear_averaging(const GridFunction& f, const GridFunction& g, const Cube& q,
                                double alpha);

/// Probe-based lower bound max ||T probe||_Y / ||probe||_X. Never the true norm.
struct NormEstimate {
  double value = 0.0;
  std::size_t argmax = 0;
  std::vector<double> ratios;
};

using LinearMap = std::function<GridFunction(const GridFunction&)>;
using BilinearMap = std::function<GridFunction(const GridFunction&, const GridFunction&)>;

NormEstimate operator_norm_estimate(const LinearMap& op, const SpaceSpec& x, const SpaceSpec& y,
                                    const std::vector<GridFunction>& probes);
NormEstimate operator_norm_estimate(const BilinearMap& op, const SpaceSpec& x1,
                                    const SpaceSpec& x2, const SpaceSpec& y,
                                    const std::vector<std::pair<GridFunction, GridFunction>>& probes);

}  // namespace oscillab
