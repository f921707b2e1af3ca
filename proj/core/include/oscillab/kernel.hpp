#pragma once

#include <array>
#include <functional>
#include <string>
#include <vector>

namespace oscillab {

/// Argument of a kernel: u in R^n (linear) or (u, v) in R^{2n} (bilinear),
/// stored as u_1..u_n, v_1..v_n. Unused entries are zero.
using KernelPoint = std::array<double, 4>;

/// Homogeneous kernel K(u) = Omega(u/|u|) / |u|^d of degree d = a n - alpha
/// where a is the arity.
class KernelSpec {
 public:
  enum class Arity { Linear = 1, Bilinear = 2 };
  /// Omega evaluated on a point of the unit sphere of R^{a n}.
  using Symbol = std::function<double(const KernelPoint&)>;

  KernelSpec(std::string name, Arity arity, int dimension, double alpha, Symbol omega, bool odd);

  const std::string& name() const noexcept { return name_; }
  Arity arity() const noexcept { return arity_; }
  bool bilinear() const noexcept { return arity_ == Arity::Bilinear; }
  int dimension() const noexcept { return dimension_; }
  /// Number of coordinates of a kernel argument, a n.
  int argument_dimension() const noexcept { return static_cast<int>(arity_) * dimension_; }
  double alpha() const noexcept { return alpha_; }
  double degree() const noexcept { return degree_; }
  /// Omega(-s) = -Omega(s); the discretisation pairs opposite offsets.
  bool odd() const noexcept { return odd_; }
  bool fractional() const noexcept { return alpha_ > 0.0; }

  double omega(const KernelPoint& s) const { return omega_(s); }
  double norm(const KernelPoint& u) const;
  /// K(u); throws InvalidArgument at u = 0.
  double operator()(const KernelPoint& u) const;

  /// Average of Omega over the unit sphere by a fixed deterministic quadrature.
  double sphere_mean() const;
  /// Throws MeanZeroViolation for a singular (alpha = 0) kernel whose symbol
  /// does not average to zero within `tolerance`.
  void require_mean_zero(double tolerance = 1e-10) const;

 private:
  std::string name_;
  Arity arity_;
  int dimension_;
  double alpha_;
  double degree_;
  Symbol omega_;
  bool odd_;
};

/// Built-in kernels: hilbert, riesz_<j>, bilinear_riesz, frac_alpha, bilinear_frac_alpha.
/// `alpha` is read only by the fractional fixtures.
KernelSpec make_kernel(const std::string& name, int dimension, double alpha = 0.0);
std::vector<std::string> kernel_names();

/// (|u| + |v|)^{alpha - 2n}, the bilinear fractional kernel.
KernelSpec bilinear_fractional_kernel(int dimension, double alpha);
/// |u|^{alpha - n}.
KernelSpec fractional_kernel(int dimension, double alpha);

/// Integral over the unit cell [-1/2, 1/2]^k of a function homogeneous of
/// degree `degree` > -k that is smooth away from 0. Uses
/// I(C) = I(C minus C/2) / (1 - 2^{-(k + degree)}) and Gauss-Legendre
/// quadrature on the shell.
double homogeneous_cell_integral(const std::function<double(const KernelPoint&)>& fn, int k,
                                 double degree);

}  // namespace oscillab
