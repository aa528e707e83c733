#include "niouc/ext/quantile.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace niouc::ext {

QuantileReport estimate_extension_quantile(const infl::InfluenceTable& table, int reference, double alpha,
                                           int draws, stats::RngStream& rng) {
    const int k = table.num_solutions();
    const int m = table.num_sources();
    if (k < 2) throw std::invalid_argument("estimate_extension_quantile: need k >= 2");
    if (reference < 0 || reference >= k)
        throw std::out_of_range("estimate_extension_quantile: reference out of range");
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("estimate_extension_quantile: alpha in (0,1)");
    if (draws < 1000) throw std::invalid_argument("estimate_extension_quantile: need at least 1000 draws");

    QuantileReport rep;
    rep.reference = reference;
    rep.alpha = alpha;
    rep.draws = draws;

    const int d = k - 1;
    std::vector<int> others;
    others.reserve(d);
    for (int l = 0; l < k; ++l)
        if (l != reference) others.push_back(l);

    // Per-source moments of v_l(X_pj) = phi[i][p][j] - phi[l][p][j], with the
    // n_p/(n_p-1) small-sample weighting, pooled with n_p weights.
    rep.source_means.assign(m, std::vector<double>(d, 0.0));
    rep.source_covariances.assign(m, stats::Matrix(d, d));
    stats::Matrix sigma(d, d);
    double total_n = 0.0;
    for (int p = 0; p < m; ++p) {
        const auto& phi_i = table.values[reference][p];
        const int n_p = static_cast<int>(phi_i.size());
        total_n += n_p;

        std::vector<std::vector<double>> v(d, std::vector<double>(n_p));
        for (int a = 0; a < d; ++a) {
            const auto& phi_l = table.values[others[a]][p];
            double mean = 0.0;
            for (int j = 0; j < n_p; ++j) {
                v[a][j] = phi_i[j] - phi_l[j];
                mean += v[a][j];
            }
            rep.source_means[p][a] = mean / n_p;
        }
        for (int a = 0; a < d; ++a)
            for (int b = a; b < d; ++b) {
                double s = 0.0;
                for (int j = 0; j < n_p; ++j)
                    s += (v[a][j] - rep.source_means[p][a]) * (v[b][j] - rep.source_means[p][b]);
                s /= (n_p - 1);
                rep.source_covariances[p](a, b) = s;
                rep.source_covariances[p](b, a) = s;
                sigma(a, b) += n_p * s;
                sigma(b, a) = sigma(a, b);
            }
    }
    for (int a = 0; a < d; ++a)
        for (int b = 0; b < d; ++b) sigma(a, b) /= total_n;

    double max_var = 0.0;
    for (int a = 0; a < d; ++a) max_var = std::max(max_var, sigma(a, a));
    for (int a = 0; a < d; ++a) {
        if (sigma(a, a) < 1e-14 * std::max(max_var, 1e-300)) {
            rep.degenerate = true;
            rep.correlation = stats::Matrix::identity(d);
            return rep;
        }
    }

    stats::Matrix corr(d, d);
    for (int a = 0; a < d; ++a) {
        corr(a, a) = 1.0;
        for (int b = 0; b < a; ++b) {
            double r = sigma(a, b) / std::sqrt(sigma(a, a) * sigma(b, b));
            r = std::clamp(r, -1.0, 1.0);
            corr(a, b) = r;
            corr(b, a) = r;
        }
    }
    rep.correlation = corr;

    const stats::CorrelationMatrix cm(corr);
    const stats::Matrix xi = stats::sample_mvn(cm, draws, rng);
    std::vector<double> maxima(draws);
    for (int t = 0; t < draws; ++t) {
        double s = 0.0;
        for (int a = 0; a < d; ++a) s = std::max(s, xi(t, a) * xi(t, a));
        maxima[t] = s;
    }
    // Ceiling-index order statistic of the sorted maxima.
    int idx = static_cast<int>(std::ceil((1.0 - alpha) * draws));
    idx = std::clamp(idx, 1, draws);
    std::nth_element(maxima.begin(), maxima.begin() + (idx - 1), maxima.end());
    rep.q_hat = maxima[idx - 1];
    return rep;
}

} // namespace niouc::ext
