#include "niouc/el/profile.hpp"

#include "niouc/el/solver.hpp"
#include "niouc/stats/matrix.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace niouc::el {

namespace {

constexpr double kLambdaDivergence = 1e8;
constexpr int kMaxNewton = 200;

// Root of sum_j 1 / (beta - s_j) = 1 on (max_s, inf); same structure as the
// normalizer search in max_linear with 2*theta = 1.
double solve_beta(const std::vector<double>& s, double max_s) {
    const double n = static_cast<double>(s.size());
    double lo = max_s + 1.0;
    double hi = max_s + n;
    double beta = 0.5 * (lo + hi);
    for (int it = 0; it < 100; ++it) {
        double f = -1.0, fp = 0.0;
        for (double sj : s) {
            const double d = beta - sj;
            f += 1.0 / d;
            fp -= 1.0 / (d * d);
        }
        if (f > 0.0)
            lo = beta;
        else
            hi = beta;
        if (std::fabs(f) < 1e-14) break;
        double next = beta - f / fp;
        if (!(next > lo && next < hi)) next = 0.5 * (lo + hi);
        if (std::fabs(next - beta) < 1e-16 * (std::fabs(beta) + 1.0)) {
            beta = next;
            break;
        }
        beta = next;
    }
    return beta;
}

struct DualState {
    double value = 0.0;              // dual objective q(lambda)
    std::vector<double> gradient;    // 2 (mu - attained mean)
    stats::Matrix hessian;           // of the dual, negative semidefinite
    WeightVector weights;
};

DualState evaluate_dual(const SourceSizes& sizes, const VectorObservations& obs,
                        const std::vector<double>& mu, const std::vector<double>& lambda,
                        bool need_hessian) {
    const int m = sizes.num_sources();
    const int q = static_cast<int>(mu.size());
    DualState st;
    st.gradient.assign(q, 0.0);
    st.weights.blocks.resize(m);
    if (need_hessian) st.hessian = stats::Matrix(q, q);

    std::vector<double> attained(q, 0.0);
    double neg2loglik = 0.0;
    std::vector<double> s;
    for (int p = 0; p < m; ++p) {
        const auto& ys = obs[p];
        const int n = static_cast<int>(ys.size());
        s.resize(n);
        double max_s = -std::numeric_limits<double>::infinity();
        for (int j = 0; j < n; ++j) {
            double dot = 0.0;
            for (int d = 0; d < q; ++d) dot += lambda[d] * ys[j][d];
            s[j] = dot;
            max_s = std::max(max_s, dot);
        }
        const double beta = solve_beta(s, max_s);
        auto& block = st.weights.blocks[p];
        block.resize(n);

        std::vector<double> w2y(q, 0.0);
        double w2sum = 0.0;
        for (int j = 0; j < n; ++j) {
            const double w = 1.0 / (beta - s[j]);
            block[j] = w;
            neg2loglik += -2.0 * std::log(n * w);
            for (int d = 0; d < q; ++d) attained[d] += w * ys[j][d];
            if (need_hessian) {
                const double w2 = w * w;
                w2sum += w2;
                for (int d = 0; d < q; ++d) w2y[d] += w2 * ys[j][d];
                for (int d = 0; d < q; ++d)
                    for (int e = d; e < q; ++e) st.hessian(d, e) -= 2.0 * w2 * ys[j][d] * ys[j][e];
            }
        }
        if (need_hessian && w2sum > 0.0) {
            for (int d = 0; d < q; ++d)
                for (int e = d; e < q; ++e) st.hessian(d, e) += 2.0 * w2y[d] * w2y[e] / w2sum;
        }
    }
    if (need_hessian)
        for (int d = 0; d < q; ++d)
            for (int e = 0; e < d; ++e) st.hessian(d, e) = st.hessian(e, d);

    double lam_dot = 0.0;
    for (int d = 0; d < q; ++d) {
        st.gradient[d] = 2.0 * (mu[d] - attained[d]);
        lam_dot += lambda[d] * (mu[d] - attained[d]);
    }
    st.value = neg2loglik + 2.0 * lam_dot;
    return st;
}

} // namespace

ElRatioResult el_log_ratio(const SourceSizes& sizes, const VectorObservations& obs,
                           const std::vector<double>& mu) {
    sizes.validate();
    const int m = sizes.num_sources();
    const int q = static_cast<int>(mu.size());
    if (static_cast<int>(obs.size()) != m) throw std::invalid_argument("el_log_ratio: observation shape mismatch");
    for (int p = 0; p < m; ++p) {
        if (static_cast<int>(obs[p].size()) != sizes.counts[p])
            throw std::invalid_argument("el_log_ratio: observation shape mismatch");
        for (const auto& y : obs[p])
            if (static_cast<int>(y.size()) != q)
                throw std::invalid_argument("el_log_ratio: observation dimension mismatch");
    }

    ElRatioResult res;

    // Fast interval pre-check in one dimension: attainable means form
    // [sum_p min_j Y, sum_p max_j Y]; the endpoints need degenerate weights.
    if (q == 1) {
        double lo = 0.0, hi = 0.0;
        for (int p = 0; p < m; ++p) {
            double mn = obs[p][0][0], mx = obs[p][0][0];
            for (const auto& y : obs[p]) {
                mn = std::min(mn, y[0]);
                mx = std::max(mx, y[0]);
            }
            lo += mn;
            hi += mx;
        }
        const double tol = 1e-12 * (1.0 + std::fabs(lo) + std::fabs(hi));
        if (hi - lo < tol) {
            // Point-mass data: only the degenerate mean itself is attainable.
            if (std::fabs(mu[0] - lo) <= tol) {
                res.feasible = true;
                res.weights = WeightVector::uniform(sizes);
                return res;
            }
            return res;
        }
        if (mu[0] <= lo + tol || mu[0] >= hi - tol) return res; // infeasible
    }

    std::vector<double> lambda(q, 0.0);
    DualState st = evaluate_dual(sizes, obs, mu, lambda, true);
    const double grad_scale = [&] {
        double s = 1.0;
        for (int p = 0; p < m; ++p)
            for (const auto& y : obs[p])
                for (double v : y) s = std::max(s, std::fabs(v));
        return s;
    }();

    int it = 0;
    for (; it < kMaxNewton; ++it) {
        double gnorm = 0.0;
        for (double g : st.gradient) gnorm = std::max(gnorm, std::fabs(g));
        if (gnorm <= 1e-11 * grad_scale) break;

        // Newton direction from the (negated, jittered) Hessian.
        stats::Matrix neg_h(q, q);
        for (int d = 0; d < q; ++d)
            for (int e = 0; e < q; ++e) neg_h(d, e) = -st.hessian(d, e) + (d == e ? 1e-12 : 0.0);
        auto chol = stats::cholesky(neg_h);
        std::vector<double> dir(q);
        if (chol) {
            // Solve L L' dir = gradient.
            const stats::Matrix& l = *chol;
            std::vector<double> tmp(q);
            for (int d = 0; d < q; ++d) {
                double v = st.gradient[d];
                for (int e = 0; e < d; ++e) v -= l(d, e) * tmp[e];
                tmp[d] = v / l(d, d);
            }
            for (int d = q - 1; d >= 0; --d) {
                double v = tmp[d];
                for (int e = d + 1; e < q; ++e) v -= l(e, d) * dir[e];
                dir[d] = v / l(d, d);
            }
        } else {
            dir = st.gradient; // gradient ascent fallback
        }

        // Backtracking on the concave dual.
        double step = 1.0;
        bool moved = false;
        for (int bt = 0; bt < 60; ++bt, step *= 0.5) {
            std::vector<double> cand(q);
            for (int d = 0; d < q; ++d) cand[d] = lambda[d] + step * dir[d];
            DualState trial = evaluate_dual(sizes, obs, mu, cand, true);
            if (trial.value >= st.value - 1e-14 * std::fabs(st.value)) {
                lambda = std::move(cand);
                st = std::move(trial);
                moved = true;
                break;
            }
        }
        double lnorm = 0.0;
        for (double l : lambda) lnorm += l * l;
        if (std::sqrt(lnorm) > kLambdaDivergence) {
            res.iterations = it + 1;
            return res; // dual diverging: mu is not attainable
        }
        if (!moved) break;
    }

    double gnorm = 0.0;
    for (double g : st.gradient) gnorm = std::max(gnorm, std::fabs(g));
    if (gnorm > 1e-6 * grad_scale) {
        res.iterations = it;
        return res; // failed to match the mean constraint: treat as infeasible
    }

    res.feasible = true;
    res.value = std::max(0.0, st.weights.el_distance());
    res.weights = std::move(st.weights);
    res.iterations = it;
    return res;
}

std::vector<std::vector<double>> region_boundary(const SourceSizes& sizes, const VectorObservations& obs,
                                                 double radius,
                                                 const std::vector<std::vector<double>>& directions) {
    sizes.validate();
    const int m = sizes.num_sources();
    if (static_cast<int>(obs.size()) != m) throw std::invalid_argument("region_boundary: observation shape mismatch");
    const int q = obs[0].empty() ? 0 : static_cast<int>(obs[0][0].size());

    AmbiguitySpec spec{sizes, radius, 0.0};
    std::vector<std::vector<double>> points;
    points.reserve(directions.size());
    std::vector<std::vector<double>> coeffs(m);
    for (const auto& dir : directions) {
        if (static_cast<int>(dir.size()) != q)
            throw std::invalid_argument("region_boundary: direction dimension mismatch");
        for (int p = 0; p < m; ++p) {
            coeffs[p].resize(obs[p].size());
            for (std::size_t j = 0; j < obs[p].size(); ++j) {
                double dot = 0.0;
                for (int d = 0; d < q; ++d) dot += dir[d] * obs[p][j][d];
                coeffs[p][j] = dot;
            }
        }
        ElSolveReport rep = max_linear(spec, coeffs);
        if (!rep.converged)
            throw std::runtime_error("region_boundary: max_linear failed to converge for a direction");
        std::vector<double> point(q, 0.0);
        for (int p = 0; p < m; ++p)
            for (std::size_t j = 0; j < obs[p].size(); ++j)
                for (int d = 0; d < q; ++d) point[d] += rep.weights.blocks[p][j] * obs[p][j][d];
        points.push_back(std::move(point));
    }
    return points;
}

} // namespace niouc::el
