#include "oscillab/fourier.hpp"

#include <fftw3.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include <Eigen/Dense>

#include "oscillab/error.hpp"

namespace oscillab {

namespace {

using cd = std::complex<double>;

constexpr std::size_t kMaxUnknowns = 5000;

double dot(const KernelPoint& a, const KernelPoint& b, int d) {
  double s = 0.0;
  for (int i = 0; i < d; ++i) s += a[i] * b[i];
  return s;
}

double distance(const KernelPoint& a, const KernelPoint& b, int d) {
  double s = 0.0;
  for (int i = 0; i < d; ++i) s += (a[i] - b[i]) * (a[i] - b[i]);
  return std::sqrt(s);
}

/// Axis mode indices -floor((N-1)/2) .. floor(N/2).
std::vector<int> axis_modes(int n) {
  std::vector<int> k;
  for (int i = -(n - 1) / 2; i <= n / 2; ++i) k.push_back(i);
  return k;
}

std::vector<KernelPoint> lattice(const std::vector<int>& modes, int d, double period) {
  std::size_t total = 1;
  for (int i = 0; i < d; ++i) total *= modes.size();
  std::vector<KernelPoint> out(total);
  for (std::size_t e = 0; e < total; ++e) {
    std::size_t rest = e;
    for (int i = d - 1; i >= 0; --i) {
      out[e][i] = 2.0 * std::numbers::pi * modes[rest % modes.size()] / period;
      rest /= modes.size();
    }
  }
  return out;
}

double smooth_step(double t) {
  if (t <= 0.0) return 0.0;
  if (t >= 1.0) return 1.0;
  const double a = std::exp(-1.0 / t);
  const double b = std::exp(-1.0 / (1.0 - t));
  return a / (a + b);
}

double reciprocal(const KernelSpec& kernel, const KernelPoint& u) {
  const double k = kernel(u);
  if (k == 0.0) fail(ErrorCode::KernelVanishes, "kernel vanishes at a fitting point");
  return 1.0 / k;
}

std::vector<cd> fit_least_squares(const KernelSpec& kernel, const Ball& ball,
                                  const std::vector<KernelPoint>& freqs, const FourierOptions& opt) {
  const int d = ball.dimension;
  const double frac = d == 1 ? 1.0 : (d == 2 ? std::numbers::pi / 4.0 : std::numbers::pi * std::numbers::pi / 32.0);
  const double target = opt.oversampling * static_cast<double>(freqs.size()) / frac;
  const int per_axis = std::max(3, static_cast<int>(std::ceil(std::pow(target, 1.0 / d))));
  std::vector<KernelPoint> pts;
  std::size_t total = 1;
  for (int i = 0; i < d; ++i) total *= static_cast<std::size_t>(per_axis);
  for (std::size_t e = 0; e < total; ++e) {
    KernelPoint u{};
    std::size_t rest = e;
    for (int i = d - 1; i >= 0; --i) {
      const int k = static_cast<int>(rest % per_axis);
      rest /= per_axis;
      u[i] = ball.center[i] - ball.radius + 2.0 * ball.radius * k / (per_axis - 1);
    }
    if (distance(u, ball.center, d) <= ball.radius * (1.0 + 1e-12)) pts.push_back(u);
  }
  const Eigen::Index rows = static_cast<Eigen::Index>(pts.size());
  const Eigen::Index cols = static_cast<Eigen::Index>(freqs.size());
  Eigen::MatrixXcd a(rows + cols, cols);
  Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(rows + cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    for (Eigen::Index c = 0; c < cols; ++c) a(r, c) = std::polar(1.0, dot(freqs[c], pts[r], d));
    rhs(r) = reciprocal(kernel, pts[r]);
  }
  const double lambda = std::sqrt(opt.ridge * static_cast<double>(rows));
  a.bottomRows(cols).setZero();
  for (Eigen::Index c = 0; c < cols; ++c) a(rows + c, c) = lambda;
  const Eigen::VectorXcd sol = a.householderQr().solve(rhs);
  return std::vector<cd>(sol.data(), sol.data() + sol.size());
}

std::vector<cd> fit_windowed_dft(const KernelSpec& kernel, const Ball& ball, const std::vector<int>& modes,
                                 double period) {
  const int d = ball.dimension;
  int p = 64;
  while (p < 8 * static_cast<int>(modes.size())) p *= 2;
  std::size_t total = 1;
  for (int i = 0; i < d; ++i) total *= static_cast<std::size_t>(p);
  const double outer = std::min(2.0 * ball.radius, 0.5 * period);
  KernelPoint start{};
  for (int i = 0; i < d; ++i) start[i] = ball.center[i] - 0.5 * period;
  fftw_complex* buf = fftw_alloc_complex(total);
  for (std::size_t e = 0; e < total; ++e) {
    KernelPoint u{};
    std::size_t rest = e;
    for (int i = d - 1; i >= 0; --i) {
      u[i] = start[i] + period * static_cast<double>(rest % p) / p;
      rest /= p;
    }
    const double r = distance(u, ball.center, d);
    const double w = 1.0 - smooth_step((r - ball.radius) / (outer - ball.radius));
    double v = 0.0;
    if (w > 0.0 && kernel.norm(u) > 0.0) {
      const double k = kernel(u);
      if (k != 0.0) v = w / k;
    }
    buf[e][0] = v;
    buf[e][1] = 0.0;
  }
  std::vector<int> dims(d, p);
  fftw_plan plan = fftw_plan_dft(d, dims.data(), buf, buf, FFTW_FORWARD, FFTW_ESTIMATE);
  fftw_execute(plan);
  fftw_destroy_plan(plan);
  const auto freqs = lattice(modes, d, period);
  std::vector<cd> coeff(freqs.size());
  for (std::size_t j = 0; j < freqs.size(); ++j) {
    std::size_t rest = j;
    std::size_t flat = 0;
    std::size_t stride = 1;
    for (int i = d - 1; i >= 0; --i) {
      const int k = modes[rest % modes.size()];
      rest /= modes.size();
      flat += static_cast<std::size_t>((k % p + p) % p) * stride;
      stride *= static_cast<std::size_t>(p);
    }
    const cd c(buf[flat][0], buf[flat][1]);
    coeff[j] = c / static_cast<double>(total) * std::polar(1.0, -dot(freqs[j], start, d));
  }
  fftw_free(buf);
  return coeff;
}

}  // namespace

std::complex<double> FourierExpansion::evaluate(const KernelPoint& u) const {
  cd s{};
  for (const auto& t : terms) s += t.coefficient * std::polar(1.0, dot(t.frequency, u, ball.dimension));
  return s;
}

std::vector<KernelPoint> sample_ball(const Ball& ball, int count, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(-1.0, 1.0);
  std::vector<KernelPoint> out;
  out.reserve(static_cast<std::size_t>(count));
  while (static_cast<int>(out.size()) < count) {
    KernelPoint v{};
    double r2 = 0.0;
    for (int i = 0; i < ball.dimension; ++i) {
      v[i] = unit(rng);
      r2 += v[i] * v[i];
    }
    if (r2 > 1.0) continue;
    for (int i = 0; i < ball.dimension; ++i) v[i] = ball.center[i] + ball.radius * v[i];
    out.push_back(v);
  }
  return out;
}

FourierExpansion fourier_reciprocal(const KernelSpec& kernel, const Ball& ball, int modes_per_axis,
                                    const FourierOptions& options) {
  const int d = ball.dimension;
  require(d == kernel.argument_dimension(), ErrorCode::InvalidArgument,
          "ball dimension differs from the kernel argument dimension");
  require(modes_per_axis >= 1, ErrorCode::InvalidArgument, "need at least one mode per axis");
  require(ball.radius > 0.0, ErrorCode::InvalidArgument, "ball radius must be positive");
  require(options.box_factor >= 1.0, ErrorCode::InvalidArgument, "period box must contain the ball");
  require(kernel.norm(ball.center) > ball.radius, ErrorCode::KernelVanishes, "ball contains the origin");

  FourierExpansion e;
  e.ball = ball;
  e.method = options.method;
  e.modes_per_axis = modes_per_axis;
  e.period = options.box_factor * 2.0 * ball.radius;
  const auto modes = axis_modes(modes_per_axis);
  const auto freqs = lattice(modes, d, e.period);
  require(freqs.size() <= kMaxUnknowns, ErrorCode::InvalidArgument, "too many Fourier modes");

  const std::vector<cd> coeff = options.method == FourierExpansion::Method::LeastSquares
                                    ? fit_least_squares(kernel, ball, freqs, options)
                                    : fit_windowed_dft(kernel, ball, modes, e.period);
  std::vector<FourierTerm> terms(freqs.size());
  for (std::size_t j = 0; j < freqs.size(); ++j) terms[j] = {coeff[j], freqs[j]};
  std::stable_sort(terms.begin(), terms.end(), [](const FourierTerm& a, const FourierTerm& b) {
    return std::abs(a.coefficient) > std::abs(b.coefficient);
  });
  std::size_t keep = terms.size();
  if (options.max_terms) keep = std::min(keep, *options.max_terms);
  for (std::size_t j = keep; j < terms.size(); ++j) e.l1_tail += std::abs(terms[j].coefficient);
  e.dropped = terms.size() - keep;
  terms.resize(keep);
  for (const auto& t : terms) e.l1_norm += std::abs(t.coefficient);
  e.terms = std::move(terms);

  for (const KernelPoint& u : sample_ball(ball, options.residual_samples, options.seed)) {
    const double k = kernel(u);
    const cd s = e.evaluate(u);
    e.residual = std::max(e.residual, std::abs(1.0 / k - s));
    e.reconstruction_defect = std::max(e.reconstruction_defect, std::abs(k * s - 1.0));
  }
  if (options.tolerance && !(e.residual <= *options.tolerance)) {
    fail(ErrorCode::TailTooLarge, "Fourier residual " + std::to_string(e.residual) +
                                      " exceeds tolerance " + std::to_string(*options.tolerance));
  }
  return e;
}

}  // namespace oscillab
