#include "anderson/stats.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>

namespace anderson {

namespace {

// Continued fraction for the incomplete beta function (modified Lentz).
double beta_cf(double x, double a, double b) {
    constexpr int kMaxIter = 300;
    constexpr double kEps = 3e-16;
    constexpr double kFpMin = 1e-300;

    const double qab = a + b;
    const double qap = a + 1.0;
    const double qam = a - 1.0;
    double c = 1.0;
    double d = 1.0 - qab * x / qap;
    if (std::fabs(d) < kFpMin) d = kFpMin;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= kMaxIter; ++m) {
        const int m2 = 2 * m;
        double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kFpMin) d = kFpMin;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kFpMin) c = kFpMin;
        d = 1.0 / d;
        h *= d * c;
        aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
        d = 1.0 + aa * d;
        if (std::fabs(d) < kFpMin) d = kFpMin;
        c = 1.0 + aa / c;
        if (std::fabs(c) < kFpMin) c = kFpMin;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < kEps) break;
    }
    return h;
}

}  // namespace

double regularized_beta(double x, double a, double b) {
    if (!(a > 0.0) || !(b > 0.0)) throw std::invalid_argument("regularized_beta: shape parameters must be positive");
    if (x <= 0.0) return 0.0;
    if (x >= 1.0) return 1.0;
    const double ln_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                            a * std::log(x) + b * std::log1p(-x);
    const double front = std::exp(ln_front);
    if (x < (a + 1.0) / (a + b + 2.0)) {
        return front * beta_cf(x, a, b) / a;
    }
    return 1.0 - front * beta_cf(1.0 - x, b, a) / b;
}

double beta_quantile(double p, double a, double b) {
    if (!(p >= 0.0) || !(p <= 1.0)) throw std::invalid_argument("beta_quantile: p outside [0, 1]");
    if (p == 0.0) return 0.0;
    if (p == 1.0) return 1.0;
    double lo = 0.0, hi = 1.0;
    for (int i = 0; i < 200; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (regularized_beta(mid, a, b) < p) {
            lo = mid;
        } else {
            hi = mid;
        }
        if (hi - lo < 1e-15) break;
    }
    return 0.5 * (lo + hi);
}

CpInterval clopper_pearson(long successes, long trials, double confidence) {
    if (trials <= 0) throw std::invalid_argument("clopper_pearson: trials must be positive");
    if (successes < 0 || successes > trials) throw std::invalid_argument("clopper_pearson: successes outside [0, trials]");
    if (!(confidence > 0.0) || !(confidence < 1.0)) throw std::invalid_argument("clopper_pearson: confidence outside (0, 1)");

    const double alpha = 1.0 - confidence;
    const double k = static_cast<double>(successes);
    const double n = static_cast<double>(trials);
    CpInterval ci;
    if (successes == 0) {
        ci.lo = 0.0;
    } else if (successes == trials) {
        ci.lo = std::pow(alpha / 2.0, 1.0 / n);
    } else {
        ci.lo = beta_quantile(alpha / 2.0, k, n - k + 1.0);
    }
    if (successes == trials) {
        ci.hi = 1.0;
    } else if (successes == 0) {
        ci.hi = 1.0 - std::pow(alpha / 2.0, 1.0 / n);
    } else {
        ci.hi = beta_quantile(1.0 - alpha / 2.0, k + 1.0, n - k);
    }
    return ci;
}

double regression_slope(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) throw std::invalid_argument("regression_slope: need at least two matched points");
    const double n = static_cast<double>(x.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    const double denom = n * sxx - sx * sx;
    if (denom == 0.0) throw std::invalid_argument("regression_slope: degenerate abscissae");
    return (n * sxy - sx * sy) / denom;
}

double quantile_sorted(const std::vector<double>& ascending, double q) {
    if (ascending.empty()) throw std::invalid_argument("quantile_sorted: empty sample");
    if (!(q >= 0.0) || !(q <= 1.0)) throw std::invalid_argument("quantile_sorted: q outside [0, 1]");
    const double pos = q * static_cast<double>(ascending.size() - 1);
    const size_t lo = static_cast<size_t>(pos);
    if (lo + 1 >= ascending.size()) return ascending.back();
    const double frac = pos - static_cast<double>(lo);
    return ascending[lo] * (1.0 - frac) + ascending[lo + 1] * frac;
}

}  // namespace anderson
