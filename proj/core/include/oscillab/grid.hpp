#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

#include "oscillab/error.hpp"

namespace oscillab {

inline constexpr int kMaxDimension = 2;

/// A point of R^n, n <= 2. Unused trailing coordinates are zero.
using Point = std::array<double, kMaxDimension>;

/// Axis-parallel cube Q(center, side).
struct Cube {
  Point center{0.0, 0.0};
  double side = 1.0;

  double lower(int axis) const { return center[axis] - 0.5 * side; }
  double upper(int axis) const { return center[axis] + 0.5 * side; }
  /// Same center, side scaled by factor.
  Cube dilate(double factor) const { return {center, side * factor}; }

  bool operator==(const Cube&) const = default;
};

/// Half-open per-axis index ranges [lo, hi) of the cells whose centers lie in a cube.
struct CellRange {
  std::array<int, kMaxDimension> lo{0, 0};
  std::array<int, kMaxDimension> hi{1, 1};

  std::size_t count() const {
    return static_cast<std::size_t>(hi[0] - lo[0]) * static_cast<std::size_t>(hi[1] - lo[1]);
  }
};

/// Uniform cell-centered grid over a box in R^n (n = 1 or 2) with the same
/// spacing on every axis. Cell k on an axis has center lower + (k + 1/2) h.
class Grid {
 public:
  Grid(int dimension, Point lower, Point upper, int points_per_axis);

  static Grid line(double a, double b, int m);
  static Grid square(double ax, double ay, double side, int m);

  int dimension() const noexcept { return dimension_; }
  int points_per_axis() const noexcept { return m_; }
  double spacing() const noexcept { return h_; }
  double lower(int axis) const { return lower_[axis]; }
  double upper(int axis) const { return upper_[axis]; }
  std::size_t size() const noexcept { return size_; }
  /// h^n, the measure of one cell.
  double cell_measure() const noexcept { return cell_measure_; }

  double center_coordinate(int axis, int k) const { return lower_[axis] + (k + 0.5) * h_; }
  Point cell_center(std::size_t index) const;
  std::size_t index(std::array<int, kMaxDimension> k) const;
  std::array<int, kMaxDimension> multi_index(std::size_t index) const;

  /// The box itself as a cube.
  Cube box() const;

  /// Cells whose centers satisfy center - side/2 <= x < center + side/2 on every axis.
  /// Throws OutOfDomain if the cube leaves the box and EmptyCube if no center is inside.
  CellRange cells_in(const Cube& q) const;
  bool contains(const Cube& q) const;
  /// Cell-measured |Q| = (number of cells in Q) * h^n.
  double measure(const Cube& q) const;

  template <class Fn>
  void for_each_cell(const CellRange& range, Fn&& fn) const {
    for (int i = range.lo[0]; i < range.hi[0]; ++i)
      for (int j = range.lo[1]; j < range.hi[1]; ++j) fn(index({i, j}));
  }

  bool operator==(const Grid& other) const = default;

 private:
  int dimension_;
  Point lower_;
  Point upper_;
  int m_;
  double h_;
  std::size_t size_;
  double cell_measure_;
};

/// Samples stored at cell centers in row-major order (axis 0 slowest).
template <class T>
class BasicGridFunction {
 public:
  using value_type = T;

  BasicGridFunction(Grid grid, std::vector<T> values);
  explicit BasicGridFunction(Grid grid, T fill = T{});

  /// Values fn(cell_center) at every cell.
  static BasicGridFunction sample(const Grid& grid, const std::function<T(const Point&)>& fn);

  const Grid& grid() const noexcept { return grid_; }
  std::span<const T> values() const noexcept { return values_; }
  std::size_t size() const noexcept { return values_.size(); }
  const T& operator[](std::size_t i) const { return values_[i]; }

 private:
  Grid grid_;
  std::vector<T> values_;
};

using GridFunction = BasicGridFunction<double>;
using ComplexGridFunction = BasicGridFunction<std::complex<double>>;

extern template class BasicGridFunction<double>;
extern template class BasicGridFunction<std::complex<double>>;

void require_same_grid(const Grid& a, const Grid& b);

GridFunction transform(const GridFunction& f, const std::function<double(double)>& op);
GridFunction combine(const GridFunction& f, const GridFunction& g,
                     const std::function<double(double, double)>& op);
GridFunction abs(const GridFunction& f);
GridFunction abs(const ComplexGridFunction& f);
GridFunction multiply(const GridFunction& f, const GridFunction& g);
GridFunction scale(const GridFunction& f, double c);
ComplexGridFunction to_complex(const GridFunction& f);
ComplexGridFunction multiply(const GridFunction& f, const ComplexGridFunction& g);

/// Sum of f * h^n over the cells of Q (pairwise summation, row by row in 2D).
template <class T>
T cube_integral(const BasicGridFunction<T>& f, const Cube& q);

/// Cell-measured average: cube_integral / measure, so the average of 1 is exactly 1.
double cube_average(const GridFunction& f, const Cube& q);

/// Sum of f * h^n over the whole grid.
template <class T>
T integral(const BasicGridFunction<T>& f);

/// Multilinear interpolation between cell centers. Throws OutOfDomain
/// outside the hull of the centers.
double interpolate(const GridFunction& f, const Point& x);

/// 1 on cells with center in Q, 0 elsewhere.
GridFunction indicator(const Grid& grid, const Cube& q);

/// A finite stand-in for "all cubes".
struct CubeFamily {
  enum class Kind { Dyadic, Translated, Explicit };

  CubeFamily(Grid g, Kind k) : grid(std::move(g)), kind(k), base(grid.box()) {}

  /// Grid every cube is valid for.
  Grid grid;
  Kind kind;
  std::vector<Cube> cubes;
  /// Dyadic generation of each cube relative to `base`; -1 for other kinds.
  std::vector<int> levels;
  Cube base;
  int level_min = 0;
  int level_max = 0;

  std::size_t size() const noexcept { return cubes.size(); }
  /// Sub-family of the cubes at one dyadic generation.
  CubeFamily generation(int level) const;
  /// Sub-family with levels in [lmin, lmax].
  CubeFamily generations(int lmin, int lmax) const;
};

/// Dyadic subcubes of the grid box at generations lmin..lmax; generation l has 2^(l n) cubes.
CubeFamily enumerate_dyadic(const Grid& grid, int level_min, int level_max);
/// Dyadic subcubes of an arbitrary base cube lying inside the box.
CubeFamily enumerate_dyadic(const Grid& grid, const Cube& base, int level_min, int level_max);
/// Cell-aligned cubes of side_cells cells, origins stepped by stride_cells.
CubeFamily enumerate_translated(const Grid& grid, int side_cells, int stride_cells);
/// Every cell-aligned cube with side between min_cells and max_cells cells.
CubeFamily enumerate_aligned(const Grid& grid, int min_cells, int max_cells);
CubeFamily explicit_family(const Grid& grid, std::vector<Cube> cubes);

/// Result of a sup over a cube family; the argmax is kept for diagnosis.
struct CubeSup {
  double value = 0.0;
  std::size_t argmax_index = 0;
  Cube argmax;
  std::vector<double> per_cube;
};

/// Evaluates fn on every cube (in parallel) and returns the sup with its
/// first maximiser. Deterministic for any thread count.
CubeSup sup_over(const CubeFamily& family, const std::function<double(const Cube&)>& fn);

}  // namespace oscillab
