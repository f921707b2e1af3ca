#include "oscillab/kernel.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "oscillab/error.hpp"
#include "oscillab/summation.hpp"

namespace oscillab {

KernelSpec::KernelSpec(std::string name, Arity arity, int dimension, double alpha, Symbol omega,
                       bool odd)
    : name_(std::move(name)),
      arity_(arity),
      dimension_(dimension),
      alpha_(alpha),
      omega_(std::move(omega)),
      odd_(odd) {
  require(dimension == 1 || dimension == 2, ErrorCode::InvalidArgument, "kernel dimension must be 1 or 2");
  const int total = argument_dimension();
  require(alpha >= 0.0 && alpha < total, ErrorCode::AlphaOutOfRange, "kernel needs 0 <= alpha < a n");
  require(static_cast<bool>(omega_), ErrorCode::InvalidArgument, "kernel symbol is empty");
  degree_ = total - alpha;
}

double KernelSpec::norm(const KernelPoint& u) const {
  double s = 0.0;
  for (int i = 0; i < argument_dimension(); ++i) s += u[i] * u[i];
  return std::sqrt(s);
}

double KernelSpec::operator()(const KernelPoint& u) const {
  const double r = norm(u);
  if (r == 0.0) fail(ErrorCode::InvalidArgument, "kernel evaluated at the origin");
  KernelPoint s{};
  for (int i = 0; i < argument_dimension(); ++i) s[i] = u[i] / r;
  return omega_(s) / std::pow(r, degree_);
}

double KernelSpec::sphere_mean() const {
  const int k = argument_dimension();
  if (k == 1) return 0.5 * (omega_({1.0, 0, 0, 0}) + omega_({-1.0, 0, 0, 0}));
  const double pi = std::numbers::pi;
  if (k == 2) {
    constexpr int steps = 4096;
    std::vector<double> v(steps);
    for (int t = 0; t < steps; ++t) {
      const double th = 2.0 * pi * (t + 0.5) / steps;
      v[t] = omega_({std::cos(th), std::sin(th), 0, 0});
    }
    return pairwise_sum<double>(v) / steps;
  }
  // Hopf coordinates on S^3, surface element sin(eta) cos(eta).
  constexpr int ne = 64;
  constexpr int nx = 128;
  std::vector<double> v;
  std::vector<double> w;
  v.reserve(ne * nx * nx);
  w.reserve(ne * nx * nx);
  for (int a = 0; a < ne; ++a) {
    const double eta = 0.5 * pi * (a + 0.5) / ne;
    const double weight = std::sin(eta) * std::cos(eta);
    for (int b = 0; b < nx; ++b) {
      const double x1 = 2.0 * pi * (b + 0.5) / nx;
      for (int c = 0; c < nx; ++c) {
        const double x2 = 2.0 * pi * (c + 0.5) / nx;
        const KernelPoint s{std::cos(eta) * std::cos(x1), std::cos(eta) * std::sin(x1),
                            std::sin(eta) * std::cos(x2), std::sin(eta) * std::sin(x2)};
        v.push_back(weight * omega_(s));
        w.push_back(weight);
      }
    }
  }
  return pairwise_sum<double>(v) / pairwise_sum<double>(w);
}

void KernelSpec::require_mean_zero(double tolerance) const {
  if (fractional()) return;
  const double mean = sphere_mean();
  if (!(std::abs(mean) <= tolerance)) {
    fail(ErrorCode::MeanZeroViolation, "kernel " + name_ + " has symbol mean " + std::to_string(mean));
  }
}

KernelSpec fractional_kernel(int dimension, double alpha) {
  require(alpha > 0.0 && alpha < dimension, ErrorCode::AlphaOutOfRange, "I_alpha needs 0 < alpha < n");
  return KernelSpec("frac_alpha", KernelSpec::Arity::Linear, dimension, alpha,
                    [](const KernelPoint&) { return 1.0; }, false);
}

KernelSpec bilinear_fractional_kernel(int dimension, double alpha) {
  require(alpha > 0.0 && alpha < 2 * dimension, ErrorCode::AlphaOutOfRange,
          "bilinear I_alpha needs 0 < alpha < 2n");
  const double e = alpha - 2.0 * dimension;
  return KernelSpec(
      "bilinear_frac_alpha", KernelSpec::Arity::Bilinear, dimension, alpha,
      [dimension, e](const KernelPoint& s) {
        double nu = 0.0;
        double nv = 0.0;
        for (int i = 0; i < dimension; ++i) {
          nu += s[i] * s[i];
          nv += s[dimension + i] * s[dimension + i];
        }
        return std::pow(std::sqrt(nu) + std::sqrt(nv), e);
      },
      false);
}

KernelSpec make_kernel(const std::string& name, int dimension, double alpha) {
  using Arity = KernelSpec::Arity;
  if (name == "hilbert") {
    require(dimension == 1, ErrorCode::InvalidArgument, "hilbert kernel is one-dimensional");
    return KernelSpec(name, Arity::Linear, 1, 0.0, [](const KernelPoint& s) { return s[0]; }, true);
  }
  if (name.rfind("riesz_", 0) == 0) {
    const int j = std::stoi(name.substr(6));
    require(j >= 1 && j <= dimension, ErrorCode::InvalidArgument, "riesz index out of range");
    return KernelSpec(name, Arity::Linear, dimension, 0.0,
                      [j](const KernelPoint& s) { return s[j - 1]; }, true);
  }
  if (name == "bilinear_riesz") {
    return KernelSpec(name, Arity::Bilinear, dimension, 0.0,
                      [](const KernelPoint& s) { return s[0]; }, true);
  }
  if (name == "frac_alpha") return fractional_kernel(dimension, alpha);
  if (name == "bilinear_frac_alpha") return bilinear_fractional_kernel(dimension, alpha);
  fail(ErrorCode::InvalidArgument, "unknown kernel '" + name + "'");
}

std::vector<std::string> kernel_names() {
  return {"hilbert", "riesz_j", "bilinear_riesz", "frac_alpha", "bilinear_frac_alpha"};
}

namespace {

constexpr std::array<double, 8> kGaussNodes{
    -0.9602898564975363, -0.7966664774136267, -0.5255324099163290, -0.1834346424956498,
    0.1834346424956498,  0.5255324099163290,  0.7966664774136267,  0.9602898564975363};
constexpr std::array<double, 8> kGaussWeights{
    0.1012285362903763, 0.2223810344533745, 0.3137066458778873, 0.3626837833783620,
    0.3626837833783620, 0.3137066458778873, 0.2223810344533745, 0.1012285362903763};

}  // namespace

double homogeneous_cell_integral(const std::function<double(const KernelPoint&)>& fn, int k,
                                 double degree) {
  require(k >= 1 && k <= 4, ErrorCode::InvalidArgument, "cell integral supports 1 to 4 variables");
  require(k + degree > 0.0, ErrorCode::InvalidArgument, "cell integral diverges");
  // Subcubes of side 1/4 tiling [-1/2, 1/2]^k, skipping the central 2^k.
  int tiles = 1;
  for (int i = 0; i < k; ++i) tiles *= 4;
  int nodes = 1;
  for (int i = 0; i < k; ++i) nodes *= 8;
  std::vector<double> parts;
  parts.reserve(tiles);
  std::vector<double> vals(nodes);
  for (int t = 0; t < tiles; ++t) {
    std::array<int, 4> idx{};
    bool central = true;
    for (int i = 0, rest = t; i < k; ++i, rest /= 4) {
      idx[i] = rest % 4;
      central = central && (idx[i] == 1 || idx[i] == 2);
    }
    if (central) continue;
    for (int q = 0; q < nodes; ++q) {
      KernelPoint u{};
      double w = 1.0;
      for (int i = 0, rest = q; i < k; ++i, rest /= 8) {
        const int g = rest % 8;
        const double lo = -0.5 + 0.25 * idx[i];
        u[i] = lo + 0.125 * (kGaussNodes[g] + 1.0);
        w *= 0.125 * kGaussWeights[g];
      }
      vals[q] = w * fn(u);
    }
    parts.push_back(pairwise_sum<double>(vals));
  }
  const double shell = pairwise_sum<double>(parts);
  return shell / (1.0 - std::pow(2.0, -(k + degree)));
}

}  // namespace oscillab
