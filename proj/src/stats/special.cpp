#include "niouc/stats/special.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace niouc::stats {

namespace {

constexpr int kMaxIter = 500;
constexpr double kEps = 1e-16;

// Series representation of P(a,x), valid and fast for x < a + 1.
double gamma_p_series(double a, double x) {
    double ap = a;
    double sum = 1.0 / a;
    double term = sum;
    for (int n = 0; n < kMaxIter; ++n) {
        ap += 1.0;
        term *= x / ap;
        sum += term;
        if (std::fabs(term) < std::fabs(sum) * kEps) break;
    }
    return sum * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

// Continued fraction for Q(a,x) = 1 - P(a,x), modified Lentz.
double gamma_q_cf(double a, double x) {
    const double tiny = 1e-300;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= kMaxIter; ++i) {
        const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny) d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double delta = d * c;
        h *= delta;
        if (std::fabs(delta - 1.0) < kEps) break;
    }
    return h * std::exp(-x + a * std::log(x) - std::lgamma(a));
}

} // namespace

double regularized_gamma_p(double a, double x) {
    if (!(a > 0.0)) throw std::domain_error("regularized_gamma_p: a must be positive");
    if (x < 0.0) throw std::domain_error("regularized_gamma_p: x must be nonnegative");
    if (x == 0.0) return 0.0;
    if (x < a + 1.0) return gamma_p_series(a, x);
    return 1.0 - gamma_q_cf(a, x);
}

double normal_cdf(double x) {
    return 0.5 * std::erfc(-x * M_SQRT1_2);
}

double inverse_normal_cdf(double p) {
    if (!(p > 0.0 && p < 1.0)) throw std::domain_error("inverse_normal_cdf: p must be in (0,1)");

    // Acklam's rational approximation, |relative error| < 1.15e-9.
    static const double a[] = {-3.969683028665376e+01, 2.209460984245205e+02,
                               -2.759285104469687e+02, 1.383577518672690e+02,
                               -3.066479806614716e+01, 2.506628277459239e+00};
    static const double b[] = {-5.447609879822406e+01, 1.615858368580409e+02,
                               -1.556989798598866e+02, 6.680131188771972e+01,
                               -1.328068155288572e+01};
    static const double c[] = {-7.784894002430293e-03, -3.223964580411365e-01,
                               -2.400758277161838e+00, -2.549732539343734e+00,
                               4.374664141464968e+00,  2.938163982698783e+00};
    static const double d[] = {7.784695709041462e-03, 3.224671290700398e-01,
                               2.445134137142996e+00, 3.754408661907416e+00};
    const double plow = 0.02425;
    double x;
    if (p < plow) {
        const double q = std::sqrt(-2.0 * std::log(p));
        x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    } else if (p <= 1.0 - plow) {
        const double q = p - 0.5;
        const double r = q * q;
        x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
            (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
    } else {
        const double q = std::sqrt(-2.0 * std::log(1.0 - p));
        x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
            ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
    }

    // Two Newton corrections push the error to a few ulps.
    for (int it = 0; it < 2; ++it) {
        const double err = normal_cdf(x) - p;
        const double pdf = std::exp(-0.5 * x * x) / std::sqrt(2.0 * M_PI);
        if (pdf <= 0.0) break;
        x -= err / pdf;
    }
    return x;
}

double chi2_quantile(int dof, double prob) {
    if (dof < 1) throw std::domain_error("chi2_quantile: dof must be >= 1");
    if (!(prob > 0.0 && prob < 1.0)) throw std::domain_error("chi2_quantile: prob must be in (0,1)");

    const double a = 0.5 * dof;
    const double k = static_cast<double>(dof);

    // Wilson-Hilferty starting point.
    const double z = inverse_normal_cdf(prob);
    const double t = 1.0 - 2.0 / (9.0 * k) + z * std::sqrt(2.0 / (9.0 * k));
    double x = k * t * t * t;
    if (!(x > 0.0)) x = 0.5;

    // Bracket the root, then run Newton with bisection safeguards.
    double lo = 0.0, hi = x;
    while (regularized_gamma_p(a, 0.5 * hi) < prob) {
        lo = hi;
        hi *= 2.0;
        if (hi > 1e302) throw std::runtime_error("chi2_quantile: bracketing failed");
    }
    if (regularized_gamma_p(a, 0.5 * x) >= prob) lo = 0.0;

    const double log_norm = -a * std::log(2.0) - std::lgamma(a);
    for (int it = 0; it < 200; ++it) {
        const double f = regularized_gamma_p(a, 0.5 * x) - prob;
        if (f > 0.0)
            hi = x;
        else
            lo = x;
        if (std::fabs(f) < 1e-13) break;
        const double log_pdf = (a - 1.0) * std::log(x) - 0.5 * x + log_norm;
        double step_x = x - f / std::exp(log_pdf);
        if (!(step_x > lo && step_x < hi)) step_x = 0.5 * (lo + hi);
        if (std::fabs(step_x - x) < 1e-15 * (1.0 + x)) {
            x = step_x;
            break;
        }
        x = step_x;
    }
    return x;
}

} // namespace niouc::stats
