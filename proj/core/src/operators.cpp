#include "oscillab/operators.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

#include "oscillab/parallel.hpp"

namespace oscillab {

namespace {

constexpr std::size_t kMaxTable = std::size_t{1} << 22;

struct Layout {
  int n;
  int m;
  double h;
  std::size_t size;
  /// Offset bound per axis in cells (m - 1 without truncation).
  int reach;
  double radius;

  explicit Layout(const Grid& grid, const std::optional<double>& truncation)
      : n(grid.dimension()),
        m(grid.points_per_axis()),
        h(grid.spacing()),
        size(grid.size()),
        reach(grid.points_per_axis() - 1),
        radius(std::numeric_limits<double>::infinity()) {
    if (truncation) {
      require(*truncation > 0.0, ErrorCode::InvalidArgument, "truncation radius must be positive");
      radius = *truncation;
      reach = std::min(reach, static_cast<int>(std::floor(*truncation / h + 1e-9)));
    }
  }

  bool inside(int a, int b) const { return a >= 0 && a < m && (n == 1 ? b == 0 : (b >= 0 && b < m)); }
  std::size_t index(int a, int b) const {
    return n == 1 ? static_cast<std::size_t>(a) : static_cast<std::size_t>(a) * m + b;
  }
  int j_reach() const { return n == 1 ? 0 : reach; }
};

/// Kernel weights K(o h) h^{a n} over integer offsets, zero outside the truncation radius.
class WeightTable {
 public:
  WeightTable(const KernelSpec& kernel, const Layout& layout) : kernel_(kernel), layout_(layout) {
    const int k = kernel.argument_dimension();
    cell_ = std::pow(layout.h, k);
    width_ = 2 * layout.reach + 1;
    std::size_t entries = 1;
    for (int i = 0; i < k; ++i) entries *= static_cast<std::size_t>(width_);
    if (entries <= kMaxTable) {
      table_.resize(entries);
      parallel_for(entries, [&](std::size_t e) {
        KernelPoint o{};
        std::size_t rest = e;
        for (int i = k - 1; i >= 0; --i) {
          o[i] = static_cast<double>(static_cast<int>(rest % width_) - layout_.reach);
          rest /= width_;
        }
        table_[e] = evaluate(o);
      });
    }
  }

  /// o holds integer offsets in the kernel-argument layout.
  double operator()(const KernelPoint& o) const {
    if (table_.empty()) return evaluate(o);
    std::size_t e = 0;
    for (int i = 0; i < kernel_.argument_dimension(); ++i) {
      e = e * width_ + static_cast<std::size_t>(static_cast<int>(o[i]) + layout_.reach);
    }
    return table_[e];
  }

 private:
  double evaluate(const KernelPoint& o) const {
    KernelPoint u{};
    double r2 = 0.0;
    bool zero = true;
    for (int i = 0; i < kernel_.argument_dimension(); ++i) {
      u[i] = o[i] * layout_.h;
      r2 += u[i] * u[i];
      zero = zero && o[i] == 0.0;
    }
    if (zero) return 0.0;
    if (std::sqrt(r2) > layout_.radius * (1.0 + 1e-12)) return 0.0;
    return kernel_(u) * cell_;
  }

  const KernelSpec& kernel_;
  const Layout& layout_;
  double cell_ = 1.0;
  int width_ = 1;
  std::vector<double> table_;
};

/// Linear kernel sum out[x] = sum over y != x of W(x - y) phi(x, y).
/// Odd kernels pair y = x - o with y = x + o.
template <class T, class Phi>
std::vector<T> linear_sum(const KernelSpec& kernel, const Layout& L, Phi&& phi) {
  const WeightTable weights(kernel, L);
  std::vector<T> out(L.size);
  const int n = L.n;
  parallel_for(L.size, [&](std::size_t idx) {
    const int i0 = n == 1 ? static_cast<int>(idx) : static_cast<int>(idx / L.m);
    const int i1 = n == 1 ? 0 : static_cast<int>(idx % L.m);
    T acc{};
    if (kernel.odd()) {
      for (int o0 = 0; o0 <= L.reach; ++o0) {
        for (int o1 = (o0 == 0 && n == 2) ? 1 : -L.j_reach(); o1 <= L.j_reach(); ++o1) {
          if (o0 == 0 && o1 <= 0) continue;
          const double w = weights(KernelPoint{double(o0), double(o1), 0, 0});
          if (w == 0.0) continue;
          T a{};
          T b{};
          if (L.inside(i0 - o0, i1 - o1)) a = phi(idx, L.index(i0 - o0, i1 - o1));
          if (L.inside(i0 + o0, i1 + o1)) b = phi(idx, L.index(i0 + o0, i1 + o1));
          acc += w * (a - b);
        }
      }
    } else {
      const int lo0 = std::max(0, i0 - L.reach);
      const int hi0 = std::min(L.m - 1, i0 + L.reach);
      const int lo1 = n == 1 ? 0 : std::max(0, i1 - L.reach);
      const int hi1 = n == 1 ? 0 : std::min(L.m - 1, i1 + L.reach);
      for (int k0 = lo0; k0 <= hi0; ++k0) {
        for (int k1 = lo1; k1 <= hi1; ++k1) {
          if (k0 == i0 && k1 == i1) continue;
          const double w = weights(KernelPoint{double(i0 - k0), double(i1 - k1), 0, 0});
          if (w == 0.0) continue;
          acc += w * phi(idx, L.index(k0, k1));
        }
      }
    }
    out[idx] = acc;
  });
  return out;
}

std::array<int, 2> split(const Layout& L, std::size_t idx) {
  if (L.n == 1) return {static_cast<int>(idx), 0};
  return {static_cast<int>(idx / L.m), static_cast<int>(idx % L.m)};
}

KernelPoint bilinear_offset(const Layout& L, std::array<int, 2> o, std::array<int, 2> p) {
  if (L.n == 1) return {double(o[0]), double(p[0]), 0, 0};
  return {double(o[0]), double(o[1]), double(p[0]), double(p[1])};
}

/// Bilinear kernel sum out[x] = sum over (y, z) != (x, x) of W(x - y, x - z) psi(x, y, z).
/// psi must vanish when either input sample does.
template <class T, class Psi>
std::vector<T> bilinear_sum(const KernelSpec& kernel, const Layout& L, const std::vector<std::size_t>& supp_f,
                            const std::vector<std::size_t>& supp_g, Psi&& psi) {
  std::vector<T> out(L.size);
  const double cell = std::pow(L.h, kernel.argument_dimension());
  const bool dense = kernel.odd() && static_cast<double>(supp_f.size()) * supp_g.size() > static_cast<double>(L.size);
  if (!dense) {
    parallel_for(L.size, [&](std::size_t idx) {
      const auto i = split(L, idx);
      T acc{};
      for (std::size_t y : supp_f) {
        const auto k = split(L, y);
        const std::array<int, 2> o{i[0] - k[0], i[1] - k[1]};
        for (std::size_t z : supp_g) {
          if (y == idx && z == idx) continue;
          const auto l = split(L, z);
          const KernelPoint off = bilinear_offset(L, o, {i[0] - l[0], i[1] - l[1]});
          KernelPoint u{};
          double r2 = 0.0;
          for (int c = 0; c < kernel.argument_dimension(); ++c) {
            u[c] = off[c] * L.h;
            r2 += u[c] * u[c];
          }
          if (std::sqrt(r2) > L.radius * (1.0 + 1e-12)) continue;
          acc += (kernel(u) * cell) * psi(idx, y, z);
        }
      }
      out[idx] = acc;
    });
    return out;
  }
  const WeightTable weights(kernel, L);
  const int R = L.reach;
  const int J = L.j_reach();
  parallel_for(L.size, [&](std::size_t idx) {
    const auto i = split(L, idx);
    T acc{};
    // Half space of nonzero offsets (o, p): first nonzero coordinate positive.
    for (int o0 = 0; o0 <= R; ++o0) {
      for (int o1 = -J; o1 <= J; ++o1) {
        if (o0 == 0 && o1 < 0) continue;
        for (int p0 = -R; p0 <= R; ++p0) {
          if (o0 == 0 && o1 == 0 && p0 < 0) continue;
          for (int p1 = -J; p1 <= J; ++p1) {
            if (o0 == 0 && o1 == 0 && p0 == 0 && p1 <= 0) continue;
            const double w = weights(bilinear_offset(L, {o0, o1}, {p0, p1}));
            if (w == 0.0) continue;
            T a{};
            T b{};
            if (L.inside(i[0] - o0, i[1] - o1) && L.inside(i[0] - p0, i[1] - p1)) {
              a = psi(idx, L.index(i[0] - o0, i[1] - o1), L.index(i[0] - p0, i[1] - p1));
            }
            if (L.inside(i[0] + o0, i[1] + o1) && L.inside(i[0] + p0, i[1] + p1)) {
              b = psi(idx, L.index(i[0] + o0, i[1] + o1), L.index(i[0] + p0, i[1] + p1));
            }
            acc += w * (a - b);
          }
        }
      }
    }
    out[idx] = acc;
  });
  return out;
}

template <class T>
std::vector<std::size_t> support(const BasicGridFunction<T>& f) {
  std::vector<std::size_t> s;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (f[i] != T{}) s.push_back(i);
  }
  return s;
}

void check_linear(const OperatorHandle& op, const Grid& grid) {
  require(!op.kernel.bilinear(), ErrorCode::InvalidArgument, "bilinear kernel used as a linear operator");
  require(op.kernel.dimension() == grid.dimension(), ErrorCode::GridMismatch,
          "kernel and grid dimensions differ");
}

void check_bilinear(const OperatorHandle& op, const Grid& grid) {
  require(op.kernel.bilinear(), ErrorCode::InvalidArgument, "linear kernel used as a bilinear operator");
  require(op.kernel.dimension() == grid.dimension(), ErrorCode::GridMismatch,
          "kernel and grid dimensions differ");
}

}  // namespace

OperatorHandle make_operator(KernelSpec kernel, std::optional<double> truncation_radius) {
  kernel.require_mean_zero(1e-8);
  return OperatorHandle{std::move(kernel), truncation_radius, true};
}

std::vector<std::uint8_t> validity_mask(const OperatorHandle& op, const Grid& grid) {
  std::vector<std::uint8_t> mask(grid.size(), 1);
  if (!op.truncation_radius) return mask;
  const Layout L(grid, op.truncation_radius);
  for (std::size_t idx = 0; idx < grid.size(); ++idx) {
    const auto i = split(L, idx);
    bool ok = i[0] - L.reach >= 0 && i[0] + L.reach <= L.m - 1;
    if (L.n == 2) ok = ok && i[1] - L.reach >= 0 && i[1] + L.reach <= L.m - 1;
    mask[idx] = ok ? 1 : 0;
  }
  return mask;
}

double self_cell_mass(const KernelSpec& kernel, double spacing) {
  if (!kernel.fractional()) return 0.0;
  const double a = kernel.alpha();
  double unit = 0.0;
  if (kernel.dimension() == 1 && !kernel.bilinear() && kernel.name() == "frac_alpha") {
    unit = 2.0 * std::pow(0.5, a) / a;
  } else if (kernel.dimension() == 1 && kernel.name() == "bilinear_frac_alpha") {
    unit = std::abs(a - 1.0) < 1e-12 ? 4.0 * std::numbers::ln2
                                     : 4.0 * (1.0 - std::pow(2.0, 1.0 - a)) / ((a - 1.0) * a);
  } else {
    unit = homogeneous_cell_integral([&kernel](const KernelPoint& u) { return kernel(u); },
                                     kernel.argument_dimension(), -kernel.degree());
  }
  return unit * std::pow(spacing, a);
}

template <class T>
BasicGridFunction<T> apply(const OperatorHandle& op, const BasicGridFunction<T>& f) {
  const Grid& grid = f.grid();
  check_linear(op, grid);
  const Layout L(grid, op.truncation_radius);
  const auto vals = f.values();
  std::vector<T> out =
      linear_sum<T>(op.kernel, L, [&](std::size_t, std::size_t y) { return vals[y]; });
  if (op.self_cell_correction && op.kernel.fractional()) {
    const double c = self_cell_mass(op.kernel, grid.spacing());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += c * vals[i];
  }
  return BasicGridFunction<T>(grid, std::move(out));
}

template <class T>
BasicGridFunction<T> apply(const OperatorHandle& op, const BasicGridFunction<T>& f,
                           const BasicGridFunction<T>& g) {
  const Grid& grid = f.grid();
  require_same_grid(grid, g.grid());
  check_bilinear(op, grid);
  const Layout L(grid, op.truncation_radius);
  const auto fv = f.values();
  const auto gv = g.values();
  std::vector<T> out = bilinear_sum<T>(op.kernel, L, support(f), support(g),
                                       [&](std::size_t, std::size_t y, std::size_t z) {
                                         return fv[y] * gv[z];
                                       });
  if (op.self_cell_correction && op.kernel.fractional()) {
    const double c = self_cell_mass(op.kernel, grid.spacing());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] += c * fv[i] * gv[i];
  }
  return BasicGridFunction<T>(grid, std::move(out));
}

template <class T>
BasicGridFunction<T> commutator(const GridFunction& b, const OperatorHandle& op,
                                const BasicGridFunction<T>& f) {
  const Grid& grid = f.grid();
  require_same_grid(grid, b.grid());
  check_linear(op, grid);
  const Layout L(grid, op.truncation_radius);
  const auto fv = f.values();
  const auto bv = b.values();
  std::vector<T> out = linear_sum<T>(op.kernel, L, [&](std::size_t x, std::size_t y) {
    return (bv[x] - bv[y]) * fv[y];
  });
  return BasicGridFunction<T>(grid, std::move(out));
}

template <class T>
BasicGridFunction<T> bilinear_commutator(const GridFunction& b, const OperatorHandle& op,
                                         const BasicGridFunction<T>& f,
                                         const BasicGridFunction<T>& g, int slot) {
  require(slot == 1 || slot == 2, ErrorCode::InvalidArgument, "commutator slot must be 1 or 2");
  const Grid& grid = f.grid();
  require_same_grid(grid, g.grid());
  require_same_grid(grid, b.grid());
  check_bilinear(op, grid);
  const Layout L(grid, op.truncation_radius);
  const auto fv = f.values();
  const auto gv = g.values();
  const auto bv = b.values();
  std::vector<T> out;
  if (slot == 1) {
    out = bilinear_sum<T>(op.kernel, L, support(f), support(g),
                          [&](std::size_t x, std::size_t y, std::size_t z) {
                            return (bv[x] - bv[y]) * fv[y] * gv[z];
                          });
  } else {
    out = bilinear_sum<T>(op.kernel, L, support(f), support(g),
                          [&](std::size_t x, std::size_t y, std::size_t z) {
                            return (bv[x] - bv[z]) * fv[y] * gv[z];
                          });
  }
  return BasicGridFunction<T>(grid, std::move(out));
}

#define OSCILLAB_INSTANTIATE(T)                                                                  \
  template BasicGridFunction<T> apply(const OperatorHandle&, const BasicGridFunction<T>&);      \
  template BasicGridFunction<T> apply(const OperatorHandle&, const BasicGridFunction<T>&,       \
                                      const BasicGridFunction<T>&);                             \
  template BasicGridFunction<T> commutator(const GridFunction&, const OperatorHandle&,          \
                                           const BasicGridFunction<T>&);                        \
  template BasicGridFunction<T> bilinear_commutator(const GridFunction&, const OperatorHandle&, \
                                                    const BasicGridFunction<T>&,                \
                                                    const BasicGridFunction<T>&, int);

OSCILLAB_INSTANTIATE(double)
OSCILLAB_INSTANTIATE(std::complex<double>)
#undef OSCILLAB_INSTANTIATE

GridFunction singular_integral(const GridFunction& f, const KernelSpec& kernel) {
  require(!kernel.fractional(), ErrorCode::InvalidArgument, "singular_integral needs alpha = 0");
  return apply(make_operator(kernel), f);
}

GridFunction bilinear_singular_integral(const GridFunction& f, const GridFunction& g,
                                        const KernelSpec& kernel) {
  require(!kernel.fractional(), ErrorCode::InvalidArgument, "singular_integral needs alpha = 0");
  return apply(make_operator(kernel), f, g);
}

GridFunction fractional_integral(const GridFunction& f, double alpha) {
  return apply(make_operator(fractional_kernel(f.grid().dimension(), alpha)), f);
}

GridFunction bilinear_fractional_integral(const GridFunction& f, const GridFunction& g,
                                          double alpha) {
  return apply(make_operator(bilinear_fractional_kernel(f.grid().dimension(), alpha)), f, g);
}

namespace {

GridFunction scatter_max(const CubeFamily& family, const std::vector<double>& per_cube) {
  const Grid& grid = family.grid;
  std::vector<double> out(grid.size(), -1.0);
  for (std::size_t c = 0; c < family.size(); ++c) {
    const double v = per_cube[c];
    grid.for_each_cell(grid.cells_in(family.cubes[c]), [&](std::size_t i) { out[i] = std::max(out[i], v); });
  }
  for (double v : out) {
    if (v < 0.0) fail(ErrorCode::UncoveredPoint, "cube family does not cover every cell");
  }
  return GridFunction(grid, std::move(out));
}

void check_maximal_alpha(double alpha, int n) {
  require(alpha >= 0.0 && alpha < n, ErrorCode::AlphaOutOfRange, "M_alpha needs 0 <= alpha < n");
}

}  // namespace

GridFunction maximal(const GridFunction& f, double alpha, const CubeFamily& family) {
  require_same_grid(f.grid(), family.grid);
  const int n = f.grid().dimension();
  check_maximal_alpha(alpha, n);
  const GridFunction af = abs(f);
  const CubeSup s = sup_over(family, [&](const Cube& q) {
    return std::pow(f.grid().measure(q), alpha / n) * cube_average(af, q);
  });
  return scatter_max(family, s.per_cube);
}

GridFunction bilinear_maximal(const GridFunction& f, const GridFunction& g, double alpha,
                              const CubeFamily& family) {
  require_same_grid(f.grid(), family.grid);
  require_same_grid(g.grid(), family.grid);
  const int n = f.grid().dimension();
  require(alpha >= 0.0 && alpha < 2 * n, ErrorCode::AlphaOutOfRange, "M_alpha(f,g) needs 0 <= alpha < 2n");
  const GridFunction af = abs(f);
  const GridFunction ag = abs(g);
  const CubeSup s = sup_over(family, [&](const Cube& q) {
    return std::pow(f.grid().measure(q), alpha / n) * cube_average(af, q) * cube_average(ag, q);
  });
  return scatter_max(family, s.per_cube);
}

GridFunction averaging(const GridFunction& f, const Cube& q, double alpha) {
  const Grid& grid = f.grid();
  const double v = std::pow(grid.measure(q), alpha / grid.dimension()) * cube_average(f, q);
  return scale(indicator(grid, q), v);
}

GridFunction bilinear_averaging(const GridFunction& f, const GridFunction& g, const Cube& q,
                                double alpha) {
  require_same_grid(f.grid(), g.grid());
  const Grid& grid = f.grid();
  const double v =
      std::pow(grid.measure(q), alpha / grid.dimension()) * cube_average(f, q) * cube_average(g, q);
  return scale(indicator(grid, q), v);
}

NormEstimate operator_norm_estimate(const LinearMap& op, const SpaceSpec& x, const SpaceSpec& y,
                                    const std::vector<GridFunction>& probes) {
  require(!probes.empty(), ErrorCode::InvalidArgument, "norm estimate needs at least one probe");
  NormEstimate est;
  est.ratios.resize(probes.size());
  for (std::size_t i = 0; i < probes.size(); ++i) {
    const double nx = norm(probes[i], x);
    if (nx == 0.0) fail(ErrorCode::DivisionByZeroNorm, "probe has zero norm");
    est.ratios[i] = norm(op(probes[i]), y) / nx;
    if (i == 0 || est.ratios[i] > est.value) {
      est.value = est.ratios[i];
      est.argmax = i;
    }
  }
  return est;
}

NormEstimate operator_norm_estimate(const BilinearMap& op, const SpaceSpec& x1,
                                    const SpaceSpec& x2, const SpaceSpec& y,
                                    const std::vector<std::pair<GridFunction, GridFunction>>& probes) {
  require(!probes.empty(), ErrorCode::InvalidArgument, "norm estimate needs at least one probe");
  NormEstimate est;
  est.ratios.resize(probes.size());
  for (std::size_t i = 0; i < probes.size(); ++i) {
    const double nx = norm(probes[i].first, x1) * norm(probes[i].second, x2);
    if (nx == 0.0) fail(ErrorCode::DivisionByZeroNorm, "probe has zero norm");
    est.ratios[i] = norm(op(probes[i].first, probes[i].second), y) / nx;
    if (i == 0 || est.ratios[i] > est.value) {
      est.value = est.ratios[i];
      est.argmax = i;
    }
  }
  return est;
}

}  // namespace oscillab
