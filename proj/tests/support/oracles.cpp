#include "support/oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

namespace oracles {

namespace {

double simpson(const std::function<double(double)>& f, double a, double b, double fa, double fm, double fb,
               double whole, double tol, int depth) {
    const double m = 0.5 * (a + b);
    const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    const double flm = f(lm), frm = f(rm);
    const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth <= 0 || std::fabs(left + right - whole) < 15.0 * tol)
        return left + right + (left + right - whole) / 15.0;
    return simpson(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
           simpson(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double tol) {
    const double m = 0.5 * (a + b);
    const double fa = f(a), fm = f(m), fb = f(b);
    const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return simpson(f, a, b, fa, fm, fb, whole, tol, 60);
}

} // namespace

double gamma_p_quadrature(double a, double x) {
    if (x <= 0.0) return 0.0;
    // gamma(a, x) = 2 int_0^sqrt(x) u^(2a-1) exp(-u^2) du
    const double log_gamma = std::lgamma(a);
    auto integrand = [a, log_gamma](double u) {
        if (u <= 0.0) return 0.0;
        return 2.0 * std::exp((2.0 * a - 1.0) * std::log(u) - u * u - log_gamma);
    };
    const double v = adaptive_simpson(integrand, 0.0, std::sqrt(x), 1e-14);
    return std::min(1.0, std::max(0.0, v));
}

double chi2_quantile_bisect(int dof, double prob) {
    const double a = 0.5 * dof;
    double lo = 0.0, hi = 1.0;
    while (gamma_p_quadrature(a, 0.5 * hi) < prob) hi *= 2.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (gamma_p_quadrature(a, 0.5 * mid) < prob)
            lo = mid;
        else
            hi = mid;
        if (hi - lo < 1e-12 * (1.0 + hi)) break;
    }
    return 0.5 * (lo + hi);
}

double inverse_normal_bisect(double p) {
    auto cdf = [](double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); };
    double lo = -40.0, hi = 40.0;
    for (int it = 0; it < 500; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (cdf(mid) < p)
            lo = mid;
        else
            hi = mid;
        if (hi - lo < 1e-14) break;
    }
    return 0.5 * (lo + hi);
}

double max_indep_chi2_quantile(int d, double alpha) {
    // P(max <= x) = P(chi2_1 <= x)^d = 1 - alpha.
    const double per_coord = std::pow(1.0 - alpha, 1.0 / d);
    const double z = inverse_normal_bisect(0.5 * (1.0 + per_coord));
    return z * z;
}

std::pair<double, double> weight_bound_roots_fixed_point(double radius) {
    const double half = 0.5 * radius;
    double u = 2.0 + half;
    for (int it = 0; it < 10000; ++it) {
        const double next = 1.0 + half + std::log(u);
        if (std::fabs(next - u) < 1e-15 * u) {
            u = next;
            break;
        }
        u = next;
    }
    double l = std::exp(-1.0 - half);
    for (int it = 0; it < 10000; ++it) {
        const double next = std::exp(l - 1.0 - half);
        if (std::fabs(next - l) < 1e-16 * std::max(l, 1e-300)) {
            l = next;
            break;
        }
        l = next;
    }
    return {l, u};
}

namespace {

using Weights = std::vector<std::vector<double>>;

double el_distance(const Weights& w) {
    double g = 0.0;
    for (const auto& block : w) {
        const double n = static_cast<double>(block.size());
        for (double v : block) {
            if (!(v > 0.0)) return std::numeric_limits<double>::infinity();
            g -= 2.0 * std::log(n * v);
        }
    }
    return g;
}

// Euclidean projection onto {w : el_distance(w) <= radius}. The KKT system
// gives w_pj = (y_pj + sqrt(y_pj^2 + 8 nu)) / 2 for a multiplier nu >= 0
// found by bisection; the distance is decreasing in nu.
Weights project_el_ball(const Weights& y, double radius) {
    bool inside = true;
    for (const auto& block : y)
        for (double v : block)
            if (!(v > 0.0)) inside = false;
    if (inside && el_distance(y) <= radius) return y;

    auto lift = [&y](double nu) {
        Weights w = y;
        for (auto& block : w)
            for (double& v : block) v = 0.5 * (v + std::sqrt(v * v + 8.0 * nu));
        return w;
    };
    double hi = 1.0;
    while (el_distance(lift(hi)) > radius) hi *= 2.0;
    double lo = 0.0;
    for (int it = 0; it < 120; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (el_distance(lift(mid)) > radius)
            lo = mid;
        else
            hi = mid;
    }
    return lift(hi);
}

void project_mean_one(Weights& w) {
    for (auto& block : w) {
        double sum = 0.0;
        for (double v : block) sum += v;
        const double shift = (1.0 - sum) / block.size();
        for (double& v : block) v += shift;
    }
}

Weights dykstra_project(const Weights& y, double radius) {
    Weights x = y;
    Weights p = y, q = y;
    for (auto& b : p)
        for (double& v : b) v = 0.0;
    q = p;
    for (int cycle = 0; cycle < 300; ++cycle) {
        Weights prev = x;
        // first set: EL ball
        Weights t = x;
        for (std::size_t s = 0; s < t.size(); ++s)
            for (std::size_t j = 0; j < t[s].size(); ++j) t[s][j] += p[s][j];
        Weights x1 = project_el_ball(t, radius);
        for (std::size_t s = 0; s < t.size(); ++s)
            for (std::size_t j = 0; j < t[s].size(); ++j) p[s][j] = t[s][j] - x1[s][j];
        // second set: mean-one hyperplanes
        Weights t2 = x1;
        for (std::size_t s = 0; s < t2.size(); ++s)
            for (std::size_t j = 0; j < t2[s].size(); ++j) t2[s][j] += q[s][j];
        Weights x2 = t2;
        project_mean_one(x2);
        for (std::size_t s = 0; s < t2.size(); ++s)
            for (std::size_t j = 0; j < t2[s].size(); ++j) q[s][j] = t2[s][j] - x2[s][j];
        x = x2;
        double change = 0.0;
        for (std::size_t s = 0; s < x.size(); ++s)
            for (std::size_t j = 0; j < x[s].size(); ++j) change = std::max(change, std::fabs(x[s][j] - prev[s][j]));
        if (change < 1e-14) break;
    }
    return x;
}

double objective(const std::vector<std::vector<double>>& c, const Weights& w) {
    double v = 0.0;
    for (std::size_t s = 0; s < c.size(); ++s)
        for (std::size_t j = 0; j < c[s].size(); ++j) v += c[s][j] * w[s][j];
    return v;
}

} // namespace

double max_linear_projected_gradient(const std::vector<int>& counts,
                                     const std::vector<std::vector<double>>& coeffs, double radius,
                                     std::uint64_t seed) {
    const int m = static_cast<int>(counts.size());
    Weights uniform(m);
    for (int s = 0; s < m; ++s) uniform[s].assign(counts[s], 1.0 / counts[s]);
    if (radius <= 0.0) return objective(coeffs, uniform);

    double cmax = 0.0;
    for (const auto& block : coeffs)
        for (double v : block) cmax = std::max(cmax, std::fabs(v));
    if (cmax == 0.0) return 0.0;

    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> unif(0.05, 1.0);

    std::vector<Weights> starts;
    starts.push_back(uniform);
    for (int s = 0; s < 4; ++s) {
        Weights w(m);
        for (int p = 0; p < m; ++p) {
            w[p].resize(counts[p]);
            double sum = 0.0;
            for (double& v : w[p]) {
                v = unif(gen);
                sum += v;
            }
            for (double& v : w[p]) v /= sum;
        }
        starts.push_back(dykstra_project(w, radius));
    }

    double best = -std::numeric_limits<double>::infinity();
    for (const Weights& start : starts) {
        Weights w = dykstra_project(start, radius);
        double step = 0.5 / cmax;
        double level_best = objective(coeffs, w);
        while (step > 1e-11 / cmax) {
            int stall = 0;
            for (int it = 0; it < 400 && stall < 12; ++it) {
                Weights cand = w;
                for (int p = 0; p < m; ++p)
                    for (int j = 0; j < counts[p]; ++j) cand[p][j] += step * coeffs[p][j];
                cand = dykstra_project(cand, radius);
                const double v = objective(coeffs, cand);
                if (v > level_best + 1e-15 * (1.0 + std::fabs(level_best))) {
                    level_best = v;
                    w = std::move(cand);
                    stall = 0;
                } else {
                    ++stall;
                }
            }
            step *= 0.25;
        }
        best = std::max(best, level_best);
    }
    return best;
}

double one_sample_el_log_ratio(std::span<const double> y, double mu) {
    const double n = static_cast<double>(y.size());
    double mn = y[0], mx = y[0];
    for (double v : y) {
        mn = std::min(mn, v);
        mx = std::max(mx, v);
    }
    if (!(mu > mn && mu < mx)) return std::numeric_limits<double>::infinity();

    // dual: find lambda with sum (y - mu) / (1 + lambda (y - mu)) = 0 on the
    // open interval keeping all 1 + lambda (y - mu) positive.
    const double lo_bound = -1.0 / (mx - mu);
    const double hi_bound = 1.0 / (mu - mn);
    auto g = [&](double lam) {
        double s = 0.0;
        for (double v : y) s += (v - mu) / (1.0 + lam * (v - mu));
        return s;
    };
    double lo = lo_bound + 1e-12 * (hi_bound - lo_bound);
    double hi = hi_bound - 1e-12 * (hi_bound - lo_bound);
    for (int it = 0; it < 300; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (g(mid) > 0.0)
            lo = mid;
        else
            hi = mid;
    }
    const double lam = 0.5 * (lo + hi);
    double val = 0.0;
    for (double v : y) val += 2.0 * std::log(1.0 + lam * (v - mu));
    (void)n;
    return val;
}

McbOracle mcb_formulas(int k, const std::vector<double>& bounds) {
    auto at = [&](int i, int l) { return bounds[static_cast<std::size_t>(i) * k + l]; };
    McbOracle out;
    out.upper.resize(k);
    out.lower.assign(k, 0.0);
    for (int i = 0; i < k; ++i) {
        double mn = std::numeric_limits<double>::infinity();
        for (int l = 0; l < k; ++l)
            if (l != i) mn = std::min(mn, at(i, l));
        out.upper[i] = std::max(0.0, mn);
        if (out.upper[i] > 0.0) out.set.push_back(i);
    }
    for (int i = 0; i < k; ++i) {
        if (out.set.size() == 1 && out.set[0] == i) {
            out.lower[i] = 0.0;
            continue;
        }
        double mn = std::numeric_limits<double>::infinity();
        for (int l : out.set)
            if (l != i) mn = std::min(mn, -at(l, i));
        const double neg_part = std::max(0.0, -mn);
        out.lower[i] = -neg_part;
    }
    return out;
}

double tandem_lindley_infinite_buffer(std::span<const double> gaps,
                                      const std::array<std::vector<double>, 3>& service) {
    const std::size_t n = gaps.size();
    std::vector<double> arrive(n);
    double t = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        t += gaps[j];
        arrive[j] = t;
    }
    std::array<std::vector<double>, 3> depart;
    for (auto& d : depart) d.assign(n, 0.0);
    for (std::size_t j = 0; j < n; ++j) {
        double upstream = arrive[j];
        for (int s = 0; s < 3; ++s) {
            const double free_at = j == 0 ? 0.0 : depart[s][j - 1];
            const double start = std::max(upstream, free_at);
            depart[s][j] = start + service[s][j];
            upstream = depart[s][j];
        }
    }
    double total = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        double w = depart[2][j] - arrive[j];
        for (int s = 0; s < 3; ++s) w -= service[s][j];
        total += w;
    }
    return total / n;
}

double gauss_hermite_expectation(const std::function<double(double)>& f, double mean, double var) {
    // Physicists' Gauss-Hermite nodes/weights by Newton iteration (n = 64).
    constexpr int n = 64;
    static std::vector<double> nodes, weights;
    if (nodes.empty()) {
        nodes.resize(n);
        weights.resize(n);
        const int mhalf = (n + 1) / 2;
        double z = 0.0;
        for (int i = 0; i < mhalf; ++i) {
            if (i == 0)
                z = std::sqrt(2.0 * n + 1.0) - 1.85575 * std::pow(2.0 * n + 1.0, -1.0 / 6.0);
            else if (i == 1)
                z -= 1.14 * std::pow(static_cast<double>(n), 0.426) / z;
            else if (i == 2)
                z = 1.86 * z - 0.86 * nodes[0];
            else if (i == 3)
                z = 1.91 * z - 0.91 * nodes[1];
            else
                z = 2.0 * z - nodes[i - 2];
            double pp = 0.0;
            for (int it = 0; it < 200; ++it) {
                double p1 = 0.7511255444649425; // pi^(-1/4)
                double p2 = 0.0;
                for (int j = 0; j < n; ++j) {
                    const double p3 = p2;
                    p2 = p1;
                    p1 = z * std::sqrt(2.0 / (j + 1.0)) * p2 - std::sqrt(static_cast<double>(j) / (j + 1.0)) * p3;
                }
                pp = std::sqrt(2.0 * n) * p2;
                const double z1 = z;
                z = z1 - p1 / pp;
                if (std::fabs(z - z1) < 1e-15) break;
            }
            nodes[i] = z;
            nodes[n - 1 - i] = -z;
            weights[i] = 2.0 / (pp * pp);
            weights[n - 1 - i] = weights[i];
        }
    }
    const double sigma = std::sqrt(var);
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += weights[i] * f(mean + std::sqrt(2.0) * sigma * nodes[i]);
    return s / std::sqrt(M_PI);
}

double binomial_upper_tail_half(int n, int x) {
    double tail = 0.0;
    for (int j = std::max(0, x); j <= n; ++j) {
        const double log_c = std::lgamma(n + 1.0) - std::lgamma(j + 1.0) - std::lgamma(n - j + 1.0);
        tail += std::exp(log_c - n * std::log(2.0));
    }
    return std::min(1.0, tail);
}

} // namespace oracles
