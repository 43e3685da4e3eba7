#pragma once

#include <vector>

namespace anderson {

struct CpInterval {
    double lo = 0.0;
    double hi = 1.0;
};

// Exact two-sided binomial confidence interval (Clopper-Pearson).
CpInterval clopper_pearson(long successes, long trials, double confidence = 0.95);

// Regularized incomplete beta function I_x(a, b).
double regularized_beta(double x, double a, double b);

// Inverse of I_x(a, b) in x for fixed (a, b).
double beta_quantile(double p, double a, double b);

// Least squares slope of y on x. Requires at least two points.
double regression_slope(const std::vector<double>& x, const std::vector<double>& y);

// Linear interpolation quantile of an ascending vector, q in [0, 1].
double quantile_sorted(const std::vector<double>& ascending, double q);

}  // namespace anderson
