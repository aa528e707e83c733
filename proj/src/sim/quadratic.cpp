#include "niouc/sim/quadratic.hpp"

#include <stdexcept>

namespace niouc::sim {

void QuadraticModelParams::validate() const {
    if (a.empty() || c.empty()) throw std::invalid_argument("QuadraticModelParams: need solutions and sources");
    if (c.size() != tau2.size()) throw std::invalid_argument("QuadraticModelParams: c and tau2 sizes differ");
    if (replication_length < 1) throw std::invalid_argument("QuadraticModelParams: replication length must be >= 1");
    for (double t2 : tau2)
        if (t2 < 0.0) throw std::invalid_argument("QuadraticModelParams: variances must be nonnegative");
}

double quadratic_output(const QuadraticModelParams& params, int solution,
                        const std::vector<std::vector<double>>& z) {
    const int m = params.num_sources();
    const int T = params.replication_length;
    if (static_cast<int>(z.size()) != m) throw std::invalid_argument("quadratic_output: source count mismatch");
    for (const auto& zp : z)
        if (static_cast<int>(zp.size()) != T) throw std::invalid_argument("quadratic_output: replication length mismatch");

    const double ai = params.a[solution];
    double total = 0.0;
    for (int t = 0; t < T; ++t) {
        double quad = 0.0, cross = 0.0;
        for (int p = 0; p < m; ++p) {
            const double d = z[p][t] - ai;
            quad += d * d;
            for (int p2 = p + 1; p2 < m; ++p2) cross += d * (z[p2][t] - ai);
        }
        total += ai * (quad + cross);
    }
    return total / T;
}

double quadratic_true_eta(const QuadraticModelParams& params, int solution) {
    const int m = params.num_sources();
    const double ai = params.a[solution];
    double v = 0.0;
    for (int p = 0; p < m; ++p) {
        const double d = params.c[p] - ai;
        v += ai * (params.tau2[p] + d * d);
        for (int p2 = p + 1; p2 < m; ++p2) v += ai * d * (params.c[p2] - ai);
    }
    return v;
}

double quadratic_true_if(const QuadraticModelParams& params, int solution, int source, double x) {
    const int m = params.num_sources();
    const double ai = params.a[solution];
    const double dx = x - ai;
    const double dc = params.c[source] - ai;
    double v = ai * dx * dx - ai * params.tau2[source] - ai * dc * dc;
    for (int p2 = 0; p2 < m; ++p2) {
        if (p2 == source) continue;
        v += ai * (x - params.c[source]) * (params.c[p2] - ai);
    }
    return v;
}

double quadratic_eta_weighted(const QuadraticModelParams& params, int solution, const InputDataset& data,
                              const el::WeightVector& weights) {
    const int m = params.num_sources();
    if (data.num_sources() != m || weights.num_sources() != m)
        throw std::invalid_argument("quadratic_eta_weighted: source count mismatch");

    // Weighted first/second moments per source; the mean is linear in them.
    std::vector<double> m1(m, 0.0), m2(m, 0.0);
    for (int p = 0; p < m; ++p) {
        const auto& obs = data.sources[p];
        const auto& w = weights.blocks[p];
        if (obs.size() != w.size()) throw std::invalid_argument("quadratic_eta_weighted: weight size mismatch");
        for (std::size_t j = 0; j < obs.size(); ++j) {
            m1[p] += w[j] * obs[j];
            m2[p] += w[j] * obs[j] * obs[j];
        }
    }
    const double ai = params.a[solution];
    double v = 0.0;
    for (int p = 0; p < m; ++p) {
        v += ai * (m2[p] - 2.0 * ai * m1[p] + ai * ai);
        for (int p2 = p + 1; p2 < m; ++p2) v += ai * (m1[p] - ai) * (m1[p2] - ai);
    }
    return v;
}

QuadraticModel::QuadraticModel(QuadraticModelParams params) : params_(std::move(params)) {
    params_.validate();
}

double QuadraticModel::evaluate(int solution, const std::vector<std::vector<double>>& inputs,
                                std::span<const double>) const {
    return quadratic_output(params_, solution, inputs);
}

} // namespace niouc::sim
