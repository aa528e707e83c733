#include "niouc/el/solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace niouc::el {

namespace {

constexpr double kConstantSpread = 1e-12;
constexpr int kMaxOuter = 200;

struct SourceInfo {
    double max_c = 0.0;
    double mean_c = 0.0;
    bool constant = false;
};

// Root of sum_j 2 theta / (nu - c_j) = 1 on (max_c, inf). The LHS falls from
// +inf to 0, so the root is unique; Newton from the bracket midpoint with
// bisection safeguards.
double solve_nu(const std::vector<double>& c, double max_c, double theta) {
    const double n = static_cast<double>(c.size());
    double lo = max_c + 2.0 * theta;       // LHS >= 1 here (max term alone is 1)
    double hi = max_c + 2.0 * theta * n;   // LHS <= 1 here
    double nu = 0.5 * (lo + hi);
    for (int it = 0; it < 100; ++it) {
        double f = -1.0, fp = 0.0;
        for (double cj : c) {
            const double d = nu - cj;
            const double t = 2.0 * theta / d;
            f += t;
            fp -= t / d;
        }
        if (f > 0.0)
            lo = nu;
        else
            hi = nu;
        if (std::fabs(f) < 1e-14) break;
        double next = nu - f / fp;
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (std::fabs(next - nu) < 1e-16 * (std::fabs(nu) + 1.0)) {
            nu = next;
            break;
        }
        nu = next;
    }
    return nu;
}

struct Evaluation {
    double el_distance = 0.0;   // -2 sum log(n_p w_pj)
    double derivative = 0.0;    // d el_distance / d theta
    std::vector<double> nu;
};

Evaluation evaluate_theta(const std::vector<std::vector<double>>& coeffs,
                          const std::vector<SourceInfo>& info, double theta) {
    const int m = static_cast<int>(coeffs.size());
    Evaluation ev;
    ev.nu.resize(m);
    for (int p = 0; p < m; ++p) {
        const auto& c = coeffs[p];
        const double n = static_cast<double>(c.size());
        if (info[p].constant) {
            ev.nu[p] = info[p].mean_c + 2.0 * theta * n; // uniform block, zero EL term
            continue;
        }
        const double nu = solve_nu(c, info[p].max_c, theta);
        ev.nu[p] = nu;
        double sum_log = 0.0, b2 = 0.0;
        for (double cj : c) {
            const double d = nu - cj;
            sum_log += std::log(n * 2.0 * theta / d);
            b2 += 1.0 / (d * d);
        }
        ev.el_distance += -2.0 * sum_log;
        ev.derivative += -2.0 * n / theta + 1.0 / (2.0 * theta * theta * theta * b2);
    }
    return ev;
}

WeightVector weights_for(const std::vector<std::vector<double>>& coeffs,
                         const std::vector<SourceInfo>& info, double theta, const std::vector<double>& nu) {
    WeightVector w;
    w.blocks.resize(coeffs.size());
    for (std::size_t p = 0; p < coeffs.size(); ++p) {
        const auto& c = coeffs[p];
        auto& block = w.blocks[p];
        block.resize(c.size());
        if (info[p].constant) {
            std::fill(block.begin(), block.end(), 1.0 / c.size());
        } else {
            for (std::size_t j = 0; j < c.size(); ++j) block[j] = 2.0 * theta / (nu[p] - c[j]);
        }
    }
    return w;
}

double objective(const std::vector<std::vector<double>>& coeffs, const WeightVector& w) {
    double v = 0.0;
    for (std::size_t p = 0; p < coeffs.size(); ++p)
        for (std::size_t j = 0; j < coeffs[p].size(); ++j) v += coeffs[p][j] * w.blocks[p][j];
    return v;
}

ElSolveReport uniform_report(const AmbiguitySpec& spec, const std::vector<std::vector<double>>& coeffs,
                             const std::vector<SourceInfo>& info) {
    ElSolveReport rep;
    rep.weights = WeightVector::uniform(spec.sizes);
    rep.value = objective(coeffs, rep.weights);
    rep.theta = 0.0;
    rep.nu.resize(coeffs.size());
    for (std::size_t p = 0; p < coeffs.size(); ++p) rep.nu[p] = info[p].max_c;
    rep.kkt_residual = 0.0;
    rep.budget_active = false;
    rep.converged = true;
    return rep;
}

} // namespace

ElSolveReport max_linear(const AmbiguitySpec& spec, const std::vector<std::vector<double>>& coeffs) {
    spec.sizes.validate();
    if (spec.radius < 0.0) throw std::invalid_argument("max_linear: radius must be nonnegative");
    const int m = spec.sizes.num_sources();
    if (static_cast<int>(coeffs.size()) != m) throw std::invalid_argument("max_linear: coefficient shape mismatch");
    for (int p = 0; p < m; ++p)
        if (static_cast<int>(coeffs[p].size()) != spec.sizes.counts[p])
            throw std::invalid_argument("max_linear: coefficient shape mismatch");

    std::vector<SourceInfo> info(m);
    double max_spread = 0.0;
    bool all_constant = true;
    for (int p = 0; p < m; ++p) {
        const auto& c = coeffs[p];
        const auto [mn, mx] = std::minmax_element(c.begin(), c.end());
        info[p].max_c = *mx;
        double mean = 0.0;
        for (double cj : c) mean += cj;
        info[p].mean_c = mean / c.size();
        const double spread = *mx - *mn;
        info[p].constant = spread < kConstantSpread * std::max(1.0, std::fabs(*mx));
        if (!info[p].constant) {
            all_constant = false;
            max_spread = std::max(max_spread, spread);
        }
    }

    // Degenerate objective or zero budget: the maximum-entropy point wins.
    if (spec.radius == 0.0 || all_constant) return uniform_report(spec, coeffs, info);

    // Bracket theta: el_distance decreases from +inf (theta -> 0) to 0.
    double theta = 0.25 * max_spread;
    Evaluation ev = evaluate_theta(coeffs, info, theta);
    double theta_lo, theta_hi; // g(theta_lo) > B > g(theta_hi)
    int iters = 1;
    if (ev.el_distance > spec.radius) {
        theta_lo = theta;
        do {
            theta *= 4.0;
            ev = evaluate_theta(coeffs, info, theta);
            ++iters;
        } while (ev.el_distance > spec.radius && iters < kMaxOuter);
        theta_hi = theta;
    } else {
        theta_hi = theta;
        do {
            theta *= 0.25;
            ev = evaluate_theta(coeffs, info, theta);
            ++iters;
        } while (ev.el_distance <= spec.radius && iters < kMaxOuter && theta > 1e-280);
        theta_lo = theta;
    }

    // Safeguarded Newton for el_distance(theta) = radius.
    const double tol = 1e-11 * std::max(1.0, spec.radius);
    double best_theta = theta;
    Evaluation best_ev = ev;
    double best_gap = std::fabs(ev.el_distance - spec.radius);
    while (iters < kMaxOuter) {
        const double gap = ev.el_distance - spec.radius;
        if (std::fabs(gap) < best_gap) {
            best_gap = std::fabs(gap);
            best_theta = theta;
            best_ev = ev;
        }
        if (std::fabs(gap) <= tol) break;
        if (gap > 0.0)
            theta_lo = theta;
        else
            theta_hi = theta;
        double next = (ev.derivative != 0.0) ? theta - gap / ev.derivative : 0.0;
        if (!(next > theta_lo && next < theta_hi)) next = std::sqrt(theta_lo * theta_hi); // geometric bisection
        if (next == theta) break;
        theta = next;
        ev = evaluate_theta(coeffs, info, theta);
        ++iters;
    }
    if (best_gap < std::fabs(ev.el_distance - spec.radius)) {
        theta = best_theta;
        ev = best_ev;
    }

    ElSolveReport rep;
    rep.weights = weights_for(coeffs, info, theta, ev.nu);
    rep.value = objective(coeffs, rep.weights);
    rep.theta = theta;
    rep.nu = ev.nu;
    rep.iterations = iters;
    rep.budget_active = true;

    double res = std::fabs(ev.el_distance - spec.radius) / std::max(1.0, spec.radius);
    for (int p = 0; p < m; ++p) {
        double sum = 0.0;
        for (double w : rep.weights.blocks[p]) sum += w;
        res = std::max(res, std::fabs(sum - 1.0));
    }
    rep.kkt_residual = res;
    rep.converged = res <= 1e-6;
    return rep;
}

} // namespace niouc::el
