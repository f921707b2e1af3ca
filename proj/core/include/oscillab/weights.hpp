#pragma once

#include "oscillab/grid.hpp"

namespace oscillab {

/// Bilinear exponent vector (p1, p2, p) with 1/p = 1/p1 + 1/p2.
struct ExponentVector {
  double p1;
  double p2;
  double p;

  static ExponentVector from(double p1, double p2);
};

/// (w1, w2, w) where w = w1^{p/p1} w2^{p/p2} (singular case) or w = w1 w2 (fractional case).
struct WeightTuple {
  enum class Case { Singular, Fractional };

  GridFunction w1;
  GridFunction w2;
  GridFunction w;
  Case kind;

  static WeightTuple singular(GridFunction w1, GridFunction w2, const ExponentVector& p);
  static WeightTuple fractional(GridFunction w1, GridFunction w2);
};

/// Throws NonPositiveWeight unless every sample is > 0.
void require_positive_weight(const GridFunction& w);

/// Per-cube Muckenhoupt quantity avg(w) * avg(w^{1-p'})^{p-1}.
double ap_quantity(const GridFunction& w, double p, const Cube& q);
CubeSup ap_constant(const GridFunction& w, double p, const CubeFamily& family);

/// q from 1/p - 1/q = alpha/n; needs 1 < p < n/alpha.
double apq_target_exponent(double p, double alpha, int dimension);

/// Per-cube avg(w^q)^{1/q} avg(w^{-p'})^{1/p'}.
double apq_quantity(const GridFunction& w, double p, double q, const Cube& cube);
CubeSup apq_constant(const GridFunction& w, double p, double q, const CubeFamily& family);

/// The weaker per-cube quantity avg(w^{-q'})^{1/q'} avg(w^p)^{1/p} that the
/// A_{p,q} quantity dominates by two applications of Hoelder.
double apq_linear_condition_quantity(const GridFunction& w, double p, double q, const Cube& cube);

/// avg(w)^{1/p} avg(w1^{1-p1'})^{1/p1'} avg(w2^{1-p2'})^{1/p2'}.
double vector_ap_quantity(const WeightTuple& t, const ExponentVector& p, const Cube& q);
CubeSup vector_ap_constant(const WeightTuple& t, const ExponentVector& p, const CubeFamily& family);

/// avg(w^{1-p'})^{1/p'} avg(w1)^{1/p1} avg(w2)^{1/p2}; needs p > 1.
double main_bilinear_quantity(const WeightTuple& t, const ExponentVector& p, const Cube& q);
CubeSup main_bilinear_constant(const WeightTuple& t, const ExponentVector& p,
                               const CubeFamily& family);

/// avg(w^q)^{1/q} avg(w1^{-p1'})^{1/p1'} avg(w2^{-p2'})^{1/p2'}.
double vector_apq_quantity(const WeightTuple& t, const ExponentVector& p, double q,
                           const Cube& cube);
CubeSup vector_apq_constant(const WeightTuple& t, const ExponentVector& p, double q,
                            const CubeFamily& family);

/// avg(w^{-q'})^{1/q'} avg(w1^{p1})^{1/p1} avg(w2^{p2})^{1/p2}.
double bilinear_frac_quantity(const WeightTuple& t, const ExponentVector& p, double q,
                              const Cube& cube);
CubeSup bilinear_frac_constant(const WeightTuple& t, const ExponentVector& p, double q,
                               const CubeFamily& family);

/// avg(w1)^{p/p1} avg(w2)^{p/p2} / avg(w). At least 1 by Hoelder; bounded above
/// for w1, w2 in A_{p1}, A_{p2} by reverse Hoelder.
double reverse_holder_quantity(const WeightTuple& t, const ExponentVector& p, const Cube& q);
CubeSup reverse_holder_defect(const WeightTuple& t, const ExponentVector& p,
                              const CubeFamily& family);

}  // namespace oscillab
