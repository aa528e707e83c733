#include "niouc/harness/experiment.hpp"

#include "niouc/harness/benchmarks.hpp"
#include "niouc/util/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace niouc::harness {

void TrueInputModel::validate() const {
    switch (kind) {
    case Kind::gaussian:
        if (!(variance > 0.0)) throw std::invalid_argument("TrueInputModel: gaussian variance must be positive");
        break;
    case Kind::exponential:
        if (!(service_mean > 0.0)) throw std::invalid_argument("TrueInputModel: exponential mean must be positive");
        break;
    case Kind::bimodal_beta:
        if (!(mix >= 0.0 && mix <= 1.0)) throw std::invalid_argument("TrueInputModel: mix must be in [0,1]");
        for (int idx : {1, 2, 4, 5})
            if (!(bimodal[idx] > 0.0)) throw std::invalid_argument("TrueInputModel: beta shapes must be positive");
        if (!(bimodal[0] > 0.0 && bimodal[3] > 0.0))
            throw std::invalid_argument("TrueInputModel: beta scales must be positive");
        break;
    }
}

double TrueInputModel::sample(stats::RngStream& rng) const {
    switch (kind) {
    case Kind::gaussian:
        return mean + std::sqrt(variance) * rng.next_normal();
    case Kind::exponential:
        return rng.next_exponential(1.0 / service_mean);
    case Kind::bimodal_beta: {
        const bool first = rng.next_uniform() < mix;
        if (first) return bimodal[0] * rng.next_beta(bimodal[1], bimodal[2]);
        return bimodal[3] * rng.next_beta(bimodal[4], bimodal[5]);
    }
    }
    return 0.0;
}

double TrueInputModel::true_mean() const {
    switch (kind) {
    case Kind::gaussian:
        return mean;
    case Kind::exponential:
        return service_mean;
    case Kind::bimodal_beta:
        return mix * bimodal[0] * bimodal[1] / (bimodal[1] + bimodal[2]) +
               (1.0 - mix) * bimodal[3] * bimodal[4] / (bimodal[4] + bimodal[5]);
    }
    return 0.0;
}

int ExperimentConfig::num_solutions() const {
    if (const auto* q = std::get_if<sim::QuadraticModelParams>(&model)) return q->num_solutions();
    return static_cast<int>(sim::enumerate_solutions(std::get<sim::TandemQueueParams>(model)).size());
}

int ExperimentConfig::num_sources() const {
    if (const auto* q = std::get_if<sim::QuadraticModelParams>(&model)) return q->num_sources();
    return 3;
}

std::unique_ptr<sim::ModelSpec> ExperimentConfig::make_model() const {
    if (const auto* q = std::get_if<sim::QuadraticModelParams>(&model))
        return std::make_unique<sim::QuadraticModel>(*q);
    return std::make_unique<sim::TandemQueueModel>(std::get<sim::TandemQueueParams>(model));
}

std::unique_ptr<mcb::AnalyticBenchmark> ExperimentConfig::make_benchmark() const {
    if (const auto* q = std::get_if<sim::QuadraticModelParams>(&model))
        return std::make_unique<QuadraticBenchmark>(*q);
    throw std::invalid_argument("benchmark runs need the analytic (quadratic) model");
}

int budget_parity_total(int n) {
    const int design = 4 * static_cast<int>(std::ceil(std::pow(static_cast<double>(n), 1.1)));
    return design + 4 * n;
}

std::pair<int, int> budget_parity_split(int total, int k) {
    const int r1 = std::max(2, total / 2);
    const int r2 = std::max(1, total / (4 * (k - 1)));
    return {r1, r2};
}

void ExperimentConfig::finalize() {
    const int m = num_sources();
    if (static_cast<int>(true_inputs.size()) != m)
        throw std::invalid_argument("ExperimentConfig: need one true input model per source");
    for (const auto& t : true_inputs) t.validate();
    if (static_cast<int>(n.size()) == 1 && m > 1) n.assign(m, n[0]);
    if (static_cast<int>(n.size()) != m) throw std::invalid_argument("ExperimentConfig: need n per source");
    for (int np : n)
        if (np < 2) throw std::invalid_argument("ExperimentConfig: n_p >= 2");
    if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("ExperimentConfig: alpha in (0,1)");
    if (macro_runs < 1) throw std::invalid_argument("ExperimentConfig: macro_runs >= 1");

    if (budget_parity) {
        const int avg_n = static_cast<int>(std::llround(
            static_cast<double>(std::accumulate(n.begin(), n.end(), 0LL)) / n.size()));
        std::tie(r1, r2) = budget_parity_split(budget_parity_total(avg_n), num_solutions());
    }
    if (!benchmark && (r1 < 2 || r2 < 1))
        throw std::invalid_argument("ExperimentConfig: need r1 >= 2 and r2 >= 1 (or budget_parity)");

    if (const auto* q = std::get_if<sim::QuadraticModelParams>(&model)) {
        q->validate();
        true_etas.resize(q->num_solutions());
        for (int i = 0; i < q->num_solutions(); ++i) true_etas[i] = sim::quadratic_true_eta(*q, i);
    }
    if (static_cast<int>(true_etas.size()) != num_solutions())
        throw std::invalid_argument("ExperimentConfig: true_etas must list every solution");
}

sim::InputDataset generate_dataset(const std::vector<TrueInputModel>& models, const std::vector<int>& n,
                                   stats::StreamRange streams) {
    if (models.size() != n.size()) throw std::invalid_argument("generate_dataset: size mismatch");
    sim::InputDataset ds;
    ds.sources.resize(models.size());
    stats::RngStream rng = streams.at(0);
    for (std::size_t p = 0; p < models.size(); ++p) {
        models[p].validate();
        ds.sources[p].resize(n[p]);
        for (int j = 0; j < n[p]; ++j) ds.sources[p][j] = models[p].sample(rng);
    }
    ds.validate();
    return ds;
}

bool evaluate_mcb_coverage(const mcb::McbOutcome& outcome, const std::vector<double>& true_etas) {
    const int k = static_cast<int>(true_etas.size());
    if (static_cast<int>(outcome.upper.size()) != k)
        throw std::invalid_argument("evaluate_mcb_coverage: size mismatch");
    for (int i = 0; i < k; ++i) {
        double best_other = -std::numeric_limits<double>::infinity();
        for (int l = 0; l < k; ++l)
            if (l != i) best_other = std::max(best_other, true_etas[l]);
        const double d = true_etas[i] - best_other;
        if (d < outcome.lower[i] || d > outcome.upper[i]) return false;
    }
    return true;
}

ExperimentResult run_experiment(const ExperimentConfig& config_in) {
    ExperimentConfig config = config_in;
    config.finalize();

    const auto model = config.make_model();
    std::unique_ptr<mcb::AnalyticBenchmark> bench;
    if (config.benchmark) bench = config.make_benchmark();

    const int k = model->num_solutions();
    ExperimentResult result;
    result.i_best = static_cast<int>(std::max_element(config.true_etas.begin(), config.true_etas.end()) -
                                     config.true_etas.begin());
    result.runs.resize(config.macro_runs);

    // Inner parallelism only pays off when there are fewer runs than workers.
    const unsigned inner_threads =
        (config.macro_runs >= static_cast<int>(std::max(1u, config.threads))) ? 1 : config.threads;

    util::parallel_for(static_cast<std::size_t>(config.macro_runs), config.threads, [&](std::size_t r) {
        try {
            const std::uint64_t base = static_cast<std::uint64_t>(r) * mcb::StreamLayout::per_run_stride;
            const sim::InputDataset data = generate_dataset(
                config.true_inputs, config.n, {config.seed, base + mcb::StreamLayout::dataset});

            mcb::RunConfig rc;
            rc.variant = config.variant;
            rc.benchmark = config.benchmark;
            rc.alpha = config.alpha;
            rc.r1 = config.r1;
            rc.r2 = config.r2;
            rc.quantile_draws = config.quantile_draws;
            rc.crn = config.crn;
            rc.threads = inner_threads;

            const mcb::RunResult rr = mcb::run_niouc(*model, data, rc, {config.seed, base}, bench.get());

            RunRecord& rec = result.runs[r];
            rec.run = static_cast<int>(r);
            rec.coverage = evaluate_mcb_coverage(rr.outcome, config.true_etas);
            rec.includes_best = rr.outcome.contains(result.i_best);
            rec.set_size = static_cast<int>(rr.outcome.confidence_set.size());
            rec.width = rr.outcome.upper[result.i_best] - rr.outcome.lower[result.i_best];
            rec.degenerate = rr.outcome.degenerate_fallback;
            rec.included.assign(k, 0);
            for (int i : rr.outcome.confidence_set) rec.included[i] = 1;
            rec.lower = rr.outcome.lower;
            rec.upper = rr.outcome.upper;
            rec.radius = rr.diagnostics.radius_per_solution;
            rec.u_table = rr.bounds.bounds;
            rec.replications = rr.diagnostics.replications_used;
        } catch (const std::exception& e) {
            throw std::runtime_error("macro-run " + std::to_string(r) + " (seed " +
                                     std::to_string(config.seed) + "): " + e.what());
        }
    });

    // Deterministic fold in run order.
    MacroMetrics& m = result.metrics;
    m.macro_runs = config.macro_runs;
    m.per_solution_inclusion.assign(k, 0.0);
    m.set_size_histogram.assign(k, 0);
    double sum_size = 0.0, sum_size2 = 0.0, sum_width = 0.0, sum_width2 = 0.0;
    int cov = 0, inc = 0;
    for (const RunRecord& rec : result.runs) {
        cov += rec.coverage ? 1 : 0;
        inc += rec.includes_best ? 1 : 0;
        sum_size += rec.set_size;
        sum_size2 += static_cast<double>(rec.set_size) * rec.set_size;
        sum_width += rec.width;
        sum_width2 += rec.width * rec.width;
        for (int i = 0; i < k; ++i) m.per_solution_inclusion[i] += rec.included[i];
        m.set_size_histogram[std::clamp(rec.set_size, 1, k) - 1] += 1;
        m.total_replications += rec.replications;
    }
    const double R = static_cast<double>(config.macro_runs);
    auto binomial_se = [R](double p) { return std::sqrt(std::max(0.0, p * (1.0 - p)) / R); };
    m.mcb_coverage = cov / R;
    m.mcb_coverage_se = binomial_se(m.mcb_coverage);
    m.inclusion_prob = inc / R;
    m.inclusion_prob_se = binomial_se(m.inclusion_prob);
    m.mean_set_size = sum_size / R;
    m.mean_width = sum_width / R;
    if (config.macro_runs > 1) {
        m.mean_set_size_se = std::sqrt(std::max(0.0, sum_size2 / R - m.mean_set_size * m.mean_set_size) / (R - 1.0));
        m.mean_width_se = std::sqrt(std::max(0.0, sum_width2 / R - m.mean_width * m.mean_width) / (R - 1.0));
    }
    for (double& f : m.per_solution_inclusion) f /= R;
    return result;
}

} // namespace niouc::harness
