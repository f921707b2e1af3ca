#include "oscillab/weights.hpp"

#include <cmath>
#include <string>

#include "oscillab/spaces.hpp"

namespace oscillab {

namespace {

GridFunction power(const GridFunction& w, double e) {
  return transform(w, [e](double v) { return std::pow(v, e); });
}

void check_p(double p) {
  require(std::isfinite(p) && p > 1.0, ErrorCode::InvalidArgument, "weight exponent needs 1 < p < inf");
}

}  // namespace

ExponentVector ExponentVector::from(double p1, double p2) {
  check_p(p1);
  check_p(p2);
  return {p1, p2, 1.0 / (1.0 / p1 + 1.0 / p2)};
}

void require_positive_weight(const GridFunction& w) {
  for (double v : w.values()) {
    if (!(v > 0.0)) fail(ErrorCode::NonPositiveWeight, "weight has a non-positive sample");
  }
}

WeightTuple WeightTuple::singular(GridFunction w1, GridFunction w2, const ExponentVector& p) {
  require_same_grid(w1.grid(), w2.grid());
  require_positive_weight(w1);
  require_positive_weight(w2);
  const double e1 = p.p / p.p1;
  const double e2 = p.p / p.p2;
  GridFunction w = combine(w1, w2, [e1, e2](double a, double b) {
    return std::pow(a, e1) * std::pow(b, e2);
  });
  return {std::move(w1), std::move(w2), std::move(w), Case::Singular};
}

WeightTuple WeightTuple::fractional(GridFunction w1, GridFunction w2) {
  require_same_grid(w1.grid(), w2.grid());
  require_positive_weight(w1);
  require_positive_weight(w2);
  GridFunction w = multiply(w1, w2);
  return {std::move(w1), std::move(w2), std::move(w), Case::Fractional};
}

double ap_quantity(const GridFunction& w, double p, const Cube& q) {
  check_p(p);
  require_positive_weight(w);
  const double pc = conjugate_exponent(p);
  return cube_average(w, q) * std::pow(cube_average(power(w, 1.0 - pc), q), p - 1.0);
}

CubeSup ap_constant(const GridFunction& w, double p, const CubeFamily& family) {
  check_p(p);
  require_positive_weight(w);
  require_same_grid(w.grid(), family.grid);
  const GridFunction dual = power(w, 1.0 - conjugate_exponent(p));
  return sup_over(family, [&](const Cube& q) {
    return cube_average(w, q) * std::pow(cube_average(dual, q), p - 1.0);
  });
}

double apq_target_exponent(double p, double alpha, int dimension) {
  require(alpha > 0.0 && alpha < dimension, ErrorCode::AlphaOutOfRange, "A_{p,q} needs 0 < alpha < n");
  require(p > 1.0 && p < dimension / alpha, ErrorCode::InvalidArgument, "A_{p,q} needs 1 < p < n/alpha");
  return 1.0 / (1.0 / p - alpha / dimension);
}

double apq_quantity(const GridFunction& w, double p, double q, const Cube& cube) {
  check_p(p);
  require_positive_weight(w);
  const double pc = conjugate_exponent(p);
  return std::pow(cube_average(power(w, q), cube), 1.0 / q) *
         std::pow(cube_average(power(w, -pc), cube), 1.0 / pc);
}

CubeSup apq_constant(const GridFunction& w, double p, double q, const CubeFamily& family) {
  check_p(p);
  require(q > p, ErrorCode::InvalidArgument, "A_{p,q} needs q > p");
  require_positive_weight(w);
  require_same_grid(w.grid(), family.grid);
  const double pc = conjugate_exponent(p);
  const GridFunction wq = power(w, q);
  const GridFunction wp = power(w, -pc);
  return sup_over(family, [&](const Cube& c) {
    return std::pow(cube_average(wq, c), 1.0 / q) * std::pow(cube_average(wp, c), 1.0 / pc);
  });
}

double apq_linear_condition_quantity(const GridFunction& w, double p, double q, const Cube& cube) {
  check_p(p);
  check_p(q);
  require_positive_weight(w);
  const double qc = conjugate_exponent(q);
  return std::pow(cube_average(power(w, -qc), cube), 1.0 / qc) *
         std::pow(cube_average(power(w, p), cube), 1.0 / p);
}

double vector_ap_quantity(const WeightTuple& t, const ExponentVector& p, const Cube& q) {
  const double c1 = conjugate_exponent(p.p1);
  const double c2 = conjugate_exponent(p.p2);
  return std::pow(cube_average(t.w, q), 1.0 / p.p) *
         std::pow(cube_average(power(t.w1, 1.0 - c1), q), 1.0 / c1) *
         std::pow(cube_average(power(t.w2, 1.0 - c2), q), 1.0 / c2);
}

CubeSup vector_ap_constant(const WeightTuple& t, const ExponentVector& p, const CubeFamily& family) {
  require_same_grid(t.w.grid(), family.grid);
  const double c1 = conjugate_exponent(p.p1);
  const double c2 = conjugate_exponent(p.p2);
  const GridFunction d1 = power(t.w1, 1.0 - c1);
  const GridFunction d2 = power(t.w2, 1.0 - c2);
  return sup_over(family, [&](const Cube& q) {
    return std::pow(cube_average(t.w, q), 1.0 / p.p) * std::pow(cube_average(d1, q), 1.0 / c1) *
           std::pow(cube_average(d2, q), 1.0 / c2);
  });
}

double main_bilinear_quantity(const WeightTuple& t, const ExponentVector& p, const Cube& q) {
  check_p(p.p);
  const double pc = conjugate_exponent(p.p);
  return std::pow(cube_average(power(t.w, 1.0 - pc), q), 1.0 / pc) *
         std::pow(cube_average(t.w1, q), 1.0 / p.p1) * std::pow(cube_average(t.w2, q), 1.0 / p.p2);
}

CubeSup main_bilinear_constant(const WeightTuple& t, const ExponentVector& p,
                               const CubeFamily& family) {
  check_p(p.p);
  require_same_grid(t.w.grid(), family.grid);
  const double pc = conjugate_exponent(p.p);
  const GridFunction dual = power(t.w, 1.0 - pc);
  return sup_over(family, [&](const Cube& q) {
    return std::pow(cube_average(dual, q), 1.0 / pc) * std::pow(cube_average(t.w1, q), 1.0 / p.p1) *
           std::pow(cube_average(t.w2, q), 1.0 / p.p2);
  });
}

double vector_apq_quantity(const WeightTuple& t, const ExponentVector& p, double q,
                           const Cube& cube) {
  const double c1 = conjugate_exponent(p.p1);
  const double c2 = conjugate_exponent(p.p2);
  return std::pow(cube_average(power(t.w, q), cube), 1.0 / q) *
         std::pow(cube_average(power(t.w1, -c1), cube), 1.0 / c1) *
         std::pow(cube_average(power(t.w2, -c2), cube), 1.0 / c2);
}

CubeSup vector_apq_constant(const WeightTuple& t, const ExponentVector& p, double q,
                            const CubeFamily& family) {
  require(q > 0.0, ErrorCode::InvalidArgument, "A_{p,q} needs q > 0");
  require_same_grid(t.w.grid(), family.grid);
  const double c1 = conjugate_exponent(p.p1);
  const double c2 = conjugate_exponent(p.p2);
  const GridFunction wq = power(t.w, q);
  const GridFunction d1 = power(t.w1, -c1);
  const GridFunction d2 = power(t.w2, -c2);
  return sup_over(family, [&](const Cube& c) {
    return std::pow(cube_average(wq, c), 1.0 / q) * std::pow(cube_average(d1, c), 1.0 / c1) *
           std::pow(cube_average(d2, c), 1.0 / c2);
  });
}

double bilinear_frac_quantity(const WeightTuple& t, const ExponentVector& p, double q,
                              const Cube& cube) {
  check_p(q);
  const double qc = conjugate_exponent(q);
  return std::pow(cube_average(power(t.w, -qc), cube), 1.0 / qc) *
         std::pow(cube_average(power(t.w1, p.p1), cube), 1.0 / p.p1) *
         std::pow(cube_average(power(t.w2, p.p2), cube), 1.0 / p.p2);
}

CubeSup bilinear_frac_constant(const WeightTuple& t, const ExponentVector& p, double q,
                               const CubeFamily& family) {
  check_p(q);
  require_same_grid(t.w.grid(), family.grid);
  const double qc = conjugate_exponent(q);
  const GridFunction dual = power(t.w, -qc);
  const GridFunction a1 = power(t.w1, p.p1);
  const GridFunction a2 = power(t.w2, p.p2);
  return sup_over(family, [&](const Cube& c) {
    return std::pow(cube_average(dual, c), 1.0 / qc) * std::pow(cube_average(a1, c), 1.0 / p.p1) *
           std::pow(cube_average(a2, c), 1.0 / p.p2);
  });
}

double reverse_holder_quantity(const WeightTuple& t, const ExponentVector& p, const Cube& q) {
  return std::pow(cube_average(t.w1, q), p.p / p.p1) * std::pow(cube_average(t.w2, q), p.p / p.p2) /
         cube_average(t.w, q);
}

CubeSup reverse_holder_defect(const WeightTuple& t, const ExponentVector& p,
                              const CubeFamily& family) {
  require(t.kind == WeightTuple::Case::Singular, ErrorCode::InvalidArgument,
          "reverse Hoelder check needs the singular-case product weight");
  require_same_grid(t.w.grid(), family.grid);
  return sup_over(family, [&](const Cube& q) { return reverse_holder_quantity(t, p, q); });
}

}  // namespace oscillab
