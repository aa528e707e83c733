#include "niouc/mcb/procedure.hpp"

#include "niouc/el/solver.hpp"
#include "niouc/sim/sampling.hpp"
#include "niouc/stats/special.hpp"
#include "niouc/util/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace niouc::mcb {

bool McbOutcome::contains(int i) const {
    return std::binary_search(confidence_set.begin(), confidence_set.end(), i);
}

McbOutcome mcb_from_bounds(int k, const std::vector<double>& bounds) {
    if (k < 2) throw std::invalid_argument("mcb_from_bounds: need k >= 2");
    if (static_cast<int>(bounds.size()) != k * k) throw std::invalid_argument("mcb_from_bounds: bound table shape");
    for (int i = 0; i < k; ++i)
        for (int l = 0; l < k; ++l)
            if (i != l && !std::isfinite(bounds[static_cast<std::size_t>(i) * k + l]))
                throw std::invalid_argument("mcb_from_bounds: non-finite bound");

    auto at = [&](int i, int l) { return bounds[static_cast<std::size_t>(i) * k + l]; };

    McbOutcome out;
    out.upper.resize(k);
    out.lower.assign(k, 0.0);

    std::vector<double> min_u(k);
    for (int i = 0; i < k; ++i) {
        double mn = std::numeric_limits<double>::infinity();
        for (int l = 0; l < k; ++l)
            if (l != i) mn = std::min(mn, at(i, l));
        min_u[i] = mn;
        out.upper[i] = std::max(0.0, mn);
        if (out.upper[i] > 0.0) out.confidence_set.push_back(i);
    }

    if (out.confidence_set.empty()) {
        // All upper bounds clipped to zero: keep every maximizer of
        // min_l U[i][l] so exchangeable ties stay symmetric.
        const double best = *std::max_element(min_u.begin(), min_u.end());
        for (int i = 0; i < k; ++i)
            if (min_u[i] == best) out.confidence_set.push_back(i);
        out.degenerate_fallback = true;
    }

    for (int i = 0; i < k; ++i) {
        if (out.confidence_set.size() == 1 && out.confidence_set[0] == i) {
            out.lower[i] = 0.0;
            continue;
        }
        double mn = std::numeric_limits<double>::infinity();
        for (int l : out.confidence_set)
            if (l != i) mn = std::min(mn, -at(l, i));
        out.lower[i] = -std::max(0.0, -mn);
    }
    return out;
}

double estimate_pair_bound(const sim::ModelSpec& model, const sim::InputDataset& data,
                           const el::WeightVector& weights, int i, int l, int r2, stats::RngStream& rng,
                           bool crn) {
    if (r2 < 1) throw std::invalid_argument("estimate_pair_bound: need R2 >= 1");
    const int m = model.num_sources();
    if (data.num_sources() != m || weights.num_sources() != m)
        throw std::invalid_argument("estimate_pair_bound: source count mismatch");

    std::vector<std::vector<double>> cum(m);
    for (int p = 0; p < m; ++p) {
        if (weights.blocks[p].size() != data.sources[p].size())
            throw std::invalid_argument("estimate_pair_bound: weight/data size mismatch");
        cum[p] = sim::cumulative_weights(weights.blocks[p]);
    }

    const int aux_len = model.aux_length();
    std::vector<double> aux(aux_len);
    std::vector<std::vector<std::uint32_t>> idx(m);
    std::vector<std::vector<double>> inputs(m);

    auto materialize = [&](int solution) {
        for (int p = 0; p < m; ++p) {
            const int t_ip = model.inputs_per_replication(solution, p);
            inputs[p].resize(t_ip);
            for (int t = 0; t < t_ip; ++t) inputs[p][t] = data.sources[p][idx[p][t]];
        }
    };

    double sum = 0.0;
    for (int r = 0; r < r2; ++r) {
        if (crn) {
            if (aux_len > 0) model.generate_aux(rng, aux);
            for (int p = 0; p < m; ++p) {
                const int need = std::max(model.inputs_per_replication(i, p), model.inputs_per_replication(l, p));
                sim::sample_indices(cum[p], need, rng, idx[p]);
            }
            materialize(i);
            const double yi = model.evaluate(i, inputs, aux);
            materialize(l);
            const double yl = model.evaluate(l, inputs, aux);
            sum += yi - yl;
        } else {
            if (aux_len > 0) model.generate_aux(rng, aux);
            for (int p = 0; p < m; ++p) sim::sample_indices(cum[p], model.inputs_per_replication(i, p), rng, idx[p]);
            materialize(i);
            const double yi = model.evaluate(i, inputs, aux);
            if (aux_len > 0) model.generate_aux(rng, aux);
            for (int p = 0; p < m; ++p) sim::sample_indices(cum[p], model.inputs_per_replication(l, p), rng, idx[p]);
            materialize(l);
            const double yl = model.evaluate(l, inputs, aux);
            sum += yi - yl;
        }
    }
    return sum / r2;
}

RunResult run_niouc(const sim::ModelSpec& model, const sim::InputDataset& data, const RunConfig& config,
                    stats::StreamRange run_streams, const AnalyticBenchmark* benchmark) {
    if (!(config.alpha > 0.0 && config.alpha < 1.0)) throw std::invalid_argument("run_niouc: alpha in (0,1)");
    const int k = model.num_solutions();
    if (k < 2) throw std::invalid_argument("run_niouc: need at least two solutions");
    if (config.benchmark && benchmark == nullptr)
        throw std::invalid_argument("run_niouc: benchmark run without analytic benchmark");
    if (!config.benchmark && (config.r1 < 2 || config.r2 < 1))
        throw std::invalid_argument("run_niouc: need R1 >= 2 and R2 >= 1 outside benchmark runs");
    data.validate();

    RunResult res;
    RunDiagnostics& diag = res.diagnostics;

    // Steps 1-5: influence table at the empirical distribution.
    if (config.benchmark) {
        res.influence = benchmark->exact_influence(data);
    } else {
        res.influence = infl::estimate_influence(model, data, config.r1,
                                           {run_streams.seed, run_streams.base + StreamLayout::influence},
                                           config.crn, config.threads);
        diag.replications_used += static_cast<std::uint64_t>(k) * config.r1;
    }

    // One radius per reference solution.
    diag.chi2_radius = stats::chi2_quantile(k - 1, 1.0 - config.alpha);
    diag.radius_per_solution.assign(k, diag.chi2_radius);
    if (config.variant == Variant::extension) {
        diag.quantile_reports.resize(k);
        for (int i = 0; i < k; ++i) {
            stats::RngStream qrng = run_streams.at(StreamLayout::quantile + static_cast<std::uint64_t>(i));
            ext::QuantileReport rep = ext::estimate_extension_quantile(res.influence, i, config.alpha,
                                                                  config.quantile_draws, qrng);
            if (rep.degenerate) {
                diag.quantile_fallback = true; // keep the chi-square radius for this block
            } else {
                diag.radius_per_solution[i] = rep.q_hat;
            }
            diag.quantile_reports[i] = std::move(rep);
        }
    }

    // Steps 6-11: the k(k-1) independent pair programs.
    const el::SourceSizes sizes = data.sizes();
    res.bounds.k = k;
    res.bounds.r2 = config.benchmark ? 0 : config.r2;
    res.bounds.bounds.assign(static_cast<std::size_t>(k) * k, 0.0);
    res.bounds.argmax_weights.resize(static_cast<std::size_t>(k) * k);

    struct PairTask {
        int i, l;
    };
    std::vector<PairTask> tasks;
    tasks.reserve(static_cast<std::size_t>(k) * (k - 1));
    for (int i = 0; i < k; ++i)
        for (int l = 0; l < k; ++l)
            if (i != l) tasks.push_back({i, l});

    std::vector<int> iterations(tasks.size(), 0);
    util::parallel_for(tasks.size(), config.threads, [&](std::size_t t) {
        const auto [i, l] = tasks[t];
        const el::AmbiguitySpec spec{sizes, diag.radius_per_solution[i], config.alpha};
        const auto coeffs = infl::surrogate_diff_coeffs(res.influence, i, l);
        el::ElSolveReport rep = el::max_linear(spec, coeffs);
        if (!rep.converged)
            throw std::runtime_error("run_niouc: pair program (" + std::to_string(i + 1) + "," +
                                     std::to_string(l + 1) + ") did not converge, residual " +
                                     std::to_string(rep.kkt_residual));
        iterations[t] = rep.iterations;

        double u;
        if (config.benchmark) {
            u = benchmark->exact_eta_weighted(i, data, rep.weights) -
                benchmark->exact_eta_weighted(l, data, rep.weights);
        } else {
            stats::RngStream prng =
                run_streams.at(StreamLayout::pairs + static_cast<std::uint64_t>(i) * k + l);
            u = estimate_pair_bound(model, data, rep.weights, i, l, config.r2, prng, config.crn);
        }
        res.bounds.at(i, l) = u;
        res.bounds.argmax_weights[static_cast<std::size_t>(i) * k + l] = std::move(rep.weights);
    });
    if (!config.benchmark)
        diag.replications_used += 2ull * static_cast<std::uint64_t>(k) * (k - 1) * config.r2;
    diag.pair_solver_iterations_max = tasks.empty() ? 0 : *std::max_element(iterations.begin(), iterations.end());

    // Step 12: intervals and confidence set.
    res.outcome = mcb_from_bounds(k, res.bounds.bounds);
    res.outcome.alpha = config.alpha;
    res.outcome.radius_used = diag.radius_per_solution;
    return res;
}

} // namespace niouc::mcb
