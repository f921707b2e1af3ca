#include "oscillab/grid.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "oscillab/parallel.hpp"
#include "oscillab/summation.hpp"

namespace oscillab {

Grid::Grid(int dimension, Point lower, Point upper, int points_per_axis)
    : dimension_(dimension), lower_(lower), upper_(upper), m_(points_per_axis) {
  require(dimension == 1 || dimension == 2, ErrorCode::InvalidArgument,
          "grid dimension must be 1 or 2");
  require(points_per_axis >= 4, ErrorCode::InvalidArgument, "grid needs m >= 4");
  const double width = upper[0] - lower[0];
  require(std::isfinite(width) && width > 0.0, ErrorCode::InvalidArgument, "degenerate grid box");
  if (dimension == 2) {
    const double width1 = upper[1] - lower[1];
    require(std::isfinite(width1) && width1 > 0.0, ErrorCode::InvalidArgument,
            "degenerate grid box");
    require(std::abs(width1 - width) <= 1e-12 * width, ErrorCode::InvalidArgument,
            "grid spacing must be equal on all axes");
  } else {
    lower_[1] = 0.0;
    upper_[1] = 0.0;
  }
  h_ = width / m_;
  size_ = dimension == 1 ? static_cast<std::size_t>(m_)
                         : static_cast<std::size_t>(m_) * static_cast<std::size_t>(m_);
  cell_measure_ = dimension == 1 ? h_ : h_ * h_;
}

Grid Grid::line(double a, double b, int m) { return Grid(1, {a, 0.0}, {b, 0.0}, m); }

Grid Grid::square(double ax, double ay, double side, int m) {
  return Grid(2, {ax, ay}, {ax + side, ay + side}, m);
}

Point Grid::cell_center(std::size_t index) const {
  const auto k = multi_index(index);
  Point p{center_coordinate(0, k[0]), 0.0};
  if (dimension_ == 2) p[1] = center_coordinate(1, k[1]);
  return p;
}

std::size_t Grid::index(std::array<int, kMaxDimension> k) const {
  if (dimension_ == 1) return static_cast<std::size_t>(k[0]);
  return static_cast<std::size_t>(k[0]) * static_cast<std::size_t>(m_) +
         static_cast<std::size_t>(k[1]);
}

std::array<int, kMaxDimension> Grid::multi_index(std::size_t index) const {
  if (dimension_ == 1) return {static_cast<int>(index), 0};
  return {static_cast<int>(index / static_cast<std::size_t>(m_)),
          static_cast<int>(index % static_cast<std::size_t>(m_))};
}

Cube Grid::box() const {
  Point c{0.5 * (lower_[0] + upper_[0]), 0.5 * (lower_[1] + upper_[1])};
  return {c, upper_[0] - lower_[0]};
}

CellRange Grid::cells_in(const Cube& q) const {
  require(std::isfinite(q.side) && q.side > 0.0, ErrorCode::InvalidArgument,
          "cube side must be positive");
  CellRange range;
  const double tol = 1e-9 * h_;
  for (int axis = 0; axis < dimension_; ++axis) {
    const double lo = q.lower(axis);
    const double hi = q.upper(axis);
    if (lo < lower_[axis] - tol || hi > upper_[axis] + tol) {
      fail(ErrorCode::OutOfDomain, "cube [" + std::to_string(lo) + ", " + std::to_string(hi) +
                                       ") leaves the grid box on axis " + std::to_string(axis));
    }
    int k_lo = static_cast<int>(std::ceil((lo - lower_[axis]) / h_ - 0.5));
    int k_hi = static_cast<int>(std::ceil((hi - lower_[axis]) / h_ - 0.5));
    k_lo = std::clamp(k_lo, 0, m_);
    k_hi = std::clamp(k_hi, 0, m_);
    if (k_hi <= k_lo) {
      fail(ErrorCode::EmptyCube, "cube of side " + std::to_string(q.side) +
                                     " contains no cell center");
    }
    range.lo[axis] = k_lo;
    range.hi[axis] = k_hi;
  }
  return range;
}

bool Grid::contains(const Cube& q) const {
  try {
    (void)cells_in(q);
    return true;
  } catch (const Error&) {
    return false;
  }
}

double Grid::measure(const Cube& q) const {
  return static_cast<double>(cells_in(q).count()) * cell_measure_;
}

template <class T>
BasicGridFunction<T>::BasicGridFunction(Grid grid, std::vector<T> values)
    : grid_(std::move(grid)), values_(std::move(values)) {
  require(values_.size() == grid_.size(), ErrorCode::GridMismatch,
          "value count does not match the grid");
  for (const T& v : values_) {
    if constexpr (std::is_same_v<T, double>) {
      require(std::isfinite(v), ErrorCode::NonFinite, "grid function has a non-finite value");
    } else {
      require(std::isfinite(v.real()) && std::isfinite(v.imag()), ErrorCode::NonFinite,
              "grid function has a non-finite value");
    }
  }
}

template <class T>
BasicGridFunction<T>::BasicGridFunction(Grid grid, T fill)
    : BasicGridFunction(grid, std::vector<T>(grid.size(), fill)) {}

template <class T>
BasicGridFunction<T> BasicGridFunction<T>::sample(const Grid& grid,
                                                  const std::function<T(const Point&)>& fn) {
  std::vector<T> values(grid.size());
  for (std::size_t i = 0; i < values.size(); ++i) values[i] = fn(grid.cell_center(i));
  return BasicGridFunction(grid, std::move(values));
}

template class BasicGridFunction<double>;
template class BasicGridFunction<std::complex<double>>;

void require_same_grid(const Grid& a, const Grid& b) {
  require(a == b, ErrorCode::GridMismatch, "operands live on different grids");
}

GridFunction transform(const GridFunction& f, const std::function<double(double)>& op) {
  std::vector<double> out(f.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = op(f[i]);
  return GridFunction(f.grid(), std::move(out));
}

GridFunction combine(const GridFunction& f, const GridFunction& g,
                     const std::function<double(double, double)>& op) {
  require_same_grid(f.grid(), g.grid());
  std::vector<double> out(f.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = op(f[i], g[i]);
  return GridFunction(f.grid(), std::move(out));
}

GridFunction abs(const GridFunction& f) {
  return transform(f, [](double v) { return std::abs(v); });
}

GridFunction abs(const ComplexGridFunction& f) {
  std::vector<double> out(f.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = std::abs(f[i]);
  return GridFunction(f.grid(), std::move(out));
}

GridFunction multiply(const GridFunction& f, const GridFunction& g) {
  return combine(f, g, [](double a, double b) { return a * b; });
}

GridFunction scale(const GridFunction& f, double c) {
  return transform(f, [c](double v) { return c * v; });
}

ComplexGridFunction to_complex(const GridFunction& f) {
  std::vector<std::complex<double>> out(f.values().begin(), f.values().end());
  return ComplexGridFunction(f.grid(), std::move(out));
}

ComplexGridFunction multiply(const GridFunction& f, const ComplexGridFunction& g) {
  require_same_grid(f.grid(), g.grid());
  std::vector<std::complex<double>> out(f.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = f[i] * g[i];
  return ComplexGridFunction(f.grid(), std::move(out));
}

template <class T>
T cube_integral(const BasicGridFunction<T>& f, const Cube& q) {
  const Grid& grid = f.grid();
  const CellRange range = grid.cells_in(q);
  const auto values = f.values();
  T total{};
  if (grid.dimension() == 1) {
    total = pairwise_sum(values.subspan(static_cast<std::size_t>(range.lo[0]),
                                        static_cast<std::size_t>(range.hi[0] - range.lo[0])));
  } else {
    std::vector<T> rows;
    rows.reserve(static_cast<std::size_t>(range.hi[0] - range.lo[0]));
    for (int i = range.lo[0]; i < range.hi[0]; ++i) {
      const std::size_t start = grid.index({i, range.lo[1]});
      rows.push_back(pairwise_sum(
          values.subspan(start, static_cast<std::size_t>(range.hi[1] - range.lo[1]))));
    }
    total = pairwise_sum(std::span<const T>(rows));
  }
  return total * grid.cell_measure();
}

template double cube_integral(const GridFunction&, const Cube&);
template std::complex<double> cube_integral(const ComplexGridFunction&, const Cube&);

double cube_average(const GridFunction& f, const Cube& q) {
  const CellRange range = f.grid().cells_in(q);
  return cube_integral(f, q) / (static_cast<double>(range.count()) * f.grid().cell_measure());
}

template <class T>
T integral(const BasicGridFunction<T>& f) {
  return pairwise_sum(f.values()) * f.grid().cell_measure();
}

template double integral(const GridFunction&);
template std::complex<double> integral(const ComplexGridFunction&);

GridFunction indicator(const Grid& grid, const Cube& q) {
  const CellRange range = grid.cells_in(q);
  std::vector<double> values(grid.size(), 0.0);
  grid.for_each_cell(range, [&](std::size_t i) { values[i] = 1.0; });
  return GridFunction(grid, std::move(values));
}

CubeFamily CubeFamily::generation(int level) const { return generations(level, level); }

CubeFamily CubeFamily::generations(int lmin, int lmax) const {
  CubeFamily out(grid, kind);
  out.base = base;
  out.level_min = lmin;
  out.level_max = lmax;
  for (std::size_t i = 0; i < cubes.size(); ++i) {
    if (levels[i] >= lmin && levels[i] <= lmax) {
      out.cubes.push_back(cubes[i]);
      out.levels.push_back(levels[i]);
    }
  }
  require(!out.cubes.empty(), ErrorCode::InvalidArgument, "no cubes at the requested generations");
  return out;
}

CubeFamily enumerate_dyadic(const Grid& grid, const Cube& base, int level_min, int level_max) {
  require(level_min >= 0 && level_min <= level_max, ErrorCode::InvalidArgument,
          "dyadic levels need 0 <= level_min <= level_max");
  require(level_max <= 30, ErrorCode::InvalidArgument, "dyadic level too deep");
  (void)grid.cells_in(base);
  CubeFamily family(grid, CubeFamily::Kind::Dyadic);
  family.base = base;
  family.level_min = level_min;
  family.level_max = level_max;
  const int n = grid.dimension();
  for (int level = level_min; level <= level_max; ++level) {
    const int per_axis = 1 << level;
    const double side = base.side / per_axis;
    const int rows = per_axis;
    const int cols = n == 2 ? per_axis : 1;
    for (int i = 0; i < rows; ++i) {
      for (int j = 0; j < cols; ++j) {
        Cube q;
        q.side = side;
        q.center[0] = base.lower(0) + (i + 0.5) * side;
        q.center[1] = n == 2 ? base.lower(1) + (j + 0.5) * side : 0.0;
        try {
          (void)grid.cells_in(q);
        } catch (const Error& e) {
          if (e.code() == ErrorCode::EmptyCube) {
            fail(ErrorCode::ResolutionTooCoarse,
                 "dyadic generation " + std::to_string(level) + " has cubes with no cell");
          }
          throw;
        }
        family.cubes.push_back(q);
        family.levels.push_back(level);
      }
    }
  }
  return family;
}

CubeFamily enumerate_dyadic(const Grid& grid, int level_min, int level_max) {
  require(level_min >= 0 && level_min <= level_max, ErrorCode::InvalidArgument,
          "dyadic levels need 0 <= level_min <= level_max");
  if (level_max > 30 || (1 << level_max) > grid.points_per_axis()) {
    fail(ErrorCode::ResolutionTooCoarse, "2^level_max exceeds the points per axis");
  }
  return enumerate_dyadic(grid, grid.box(), level_min, level_max);
}

CubeFamily enumerate_translated(const Grid& grid, int side_cells, int stride_cells) {
  const int m = grid.points_per_axis();
  require(side_cells >= 1 && side_cells <= m && stride_cells >= 1, ErrorCode::InvalidArgument,
          "translated lattice needs 1 <= side <= m and stride >= 1");
  CubeFamily family(grid, CubeFamily::Kind::Translated);
  const double h = grid.spacing();
  const double side = side_cells * h;
  const int n = grid.dimension();
  for (int i = 0; i + side_cells <= m; i += stride_cells) {
    const int jmax = n == 2 ? m : side_cells;
    for (int j = 0; j + side_cells <= jmax; j += stride_cells) {
      Cube q;
      q.side = side;
      q.center[0] = grid.lower(0) + i * h + 0.5 * side;
      q.center[1] = n == 2 ? grid.lower(1) + j * h + 0.5 * side : 0.0;
      family.cubes.push_back(q);
      family.levels.push_back(-1);
      if (n == 1) break;
    }
  }
  return family;
}

CubeFamily enumerate_aligned(const Grid& grid, int min_cells, int max_cells) {
  require(min_cells >= 1 && min_cells <= max_cells, ErrorCode::InvalidArgument,
          "aligned family needs 1 <= min_cells <= max_cells");
  CubeFamily family(grid, CubeFamily::Kind::Translated);
  const int top = std::min(max_cells, grid.points_per_axis());
  for (int s = min_cells; s <= top; ++s) {
    CubeFamily part = enumerate_translated(grid, s, 1);
    family.cubes.insert(family.cubes.end(), part.cubes.begin(), part.cubes.end());
    family.levels.insert(family.levels.end(), part.levels.begin(), part.levels.end());
  }
  return family;
}

CubeFamily explicit_family(const Grid& grid, std::vector<Cube> cubes) {
  require(!cubes.empty(), ErrorCode::InvalidArgument, "cube family must be nonempty");
  for (const Cube& q : cubes) (void)grid.cells_in(q);
  CubeFamily family(grid, CubeFamily::Kind::Explicit);
  family.levels.assign(cubes.size(), -1);
  family.cubes = std::move(cubes);
  return family;
}

CubeSup sup_over(const CubeFamily& family, const std::function<double(const Cube&)>& fn) {
  require(!family.cubes.empty(), ErrorCode::InvalidArgument, "cube family must be nonempty");
  CubeSup result;
  result.per_cube.resize(family.cubes.size());
  parallel_for(family.cubes.size(), [&](std::size_t i) { result.per_cube[i] = fn(family.cubes[i]); });
  result.argmax_index = 0;
  for (std::size_t i = 1; i < result.per_cube.size(); ++i) {
    if (result.per_cube[i] > result.per_cube[result.argmax_index]) result.argmax_index = i;
  }
  result.value = result.per_cube[result.argmax_index];
  result.argmax = family.cubes[result.argmax_index];
  return result;
}

double interpolate(const GridFunction& f, const Point& x) {
  const Grid& grid = f.grid();
  const int n = grid.dimension();
  std::array<int, kMaxDimension> k{0, 0};
  std::array<double, kMaxDimension> t{0.0, 0.0};
  for (int axis = 0; axis < n; ++axis) {
    const double s = (x[axis] - grid.lower(axis)) / grid.spacing() - 0.5;
    const int m = grid.points_per_axis();
    if (!(s >= -1e-12 && s <= m - 1 + 1e-12)) {
      fail(ErrorCode::OutOfDomain, "interpolation point outside the cell-center hull");
    }
    k[axis] = std::min(static_cast<int>(std::floor(s)), m - 2);
    k[axis] = std::max(k[axis], 0);
    t[axis] = s - k[axis];
  }
  if (n == 1) return (1.0 - t[0]) * f[grid.index(k)] + t[0] * f[grid.index({k[0] + 1, 0})];
  const double f00 = f[grid.index(k)];
  const double f01 = f[grid.index({k[0], k[1] + 1})];
  const double f10 = f[grid.index({k[0] + 1, k[1]})];
  const double f11 = f[grid.index({k[0] + 1, k[1] + 1})];
  return (1.0 - t[0]) * ((1.0 - t[1]) * f00 + t[1] * f01) + t[0] * ((1.0 - t[1]) * f10 + t[1] * f11);
}

}  // namespace oscillab
