#pragma once

#include "niouc/ext/quantile.hpp"
#include "niouc/infl/influence.hpp"
#include "niouc/sim/dataset.hpp"
#include "niouc/sim/model.hpp"
#include "niouc/stats/rng.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace niouc::mcb {

/// Worst-case pairwise bounds U[i][l] for all ordered pairs, together with
/// the maximizing weights of each pair program.
struct PairwiseBoundSet {
    int k = 0;
    std::vector<double> bounds;                  // k*k row-major, diagonal unused
    std::vector<el::WeightVector> argmax_weights; // k*k, diagonal empty
    int r2 = 0;

    double at(int i, int l) const { return bounds[static_cast<std::size_t>(i) * k + l]; }
    double& at(int i, int l) { return bounds[static_cast<std::size_t>(i) * k + l]; }
};

/// Per-solution MCB interval [lower_i, upper_i] around eta_i - max_{l != i}
/// eta_l, and the confidence set of solutions whose upper bound is positive.
struct McbOutcome {
    std::vector<double> lower;
    std::vector<double> upper;
    std::vector<int> confidence_set; // ascending solution indices
    double alpha = 0.0;
    std::vector<double> radius_used; // per reference solution
    bool degenerate_fallback = false;

    bool contains(int i) const;
};

/// Interval and confidence-set assembly from a full off-diagonal bound table
/// (row-major k*k). When every upper bound clips to zero the set would be
/// empty; in that case it falls back to all maximizers of min_l U[i][l] and
/// flags the outcome.
McbOutcome mcb_from_bounds(int k, const std::vector<double>& bounds);

/// Monte Carlo estimate of the pairwise gap at the given weights: R2
/// replications of solutions i and l with inputs resampled from the
/// reweighted data, sharing draws between the two solutions when crn is set.
double estimate_pair_bound(const sim::ModelSpec& model, const sim::InputDataset& data,
                           const el::WeightVector& weights, int i, int l, int r2, stats::RngStream& rng,
                           bool crn);

/// Exact quantities a model can provide for benchmark runs: the analytic
/// influence table at the data and the exact mean under any reweighting.
class AnalyticBenchmark {
public:
    virtual ~AnalyticBenchmark() = default;
    virtual infl::InfluenceTable exact_influence(const sim::InputDataset& data) const = 0;
    virtual double exact_eta_weighted(int solution, const sim::InputDataset& data,
                                      const el::WeightVector& weights) const = 0;
};

enum class Variant { standard, extension };

struct RunConfig {
    Variant variant = Variant::standard;
    bool benchmark = false; // exact influence + exact bounds, no simulation
    double alpha = 0.1;
    int r1 = 0;
    int r2 = 0;
    int quantile_draws = 20000; // M of the extension quantile
    bool crn = true;
    unsigned threads = 1;
};

struct RunDiagnostics {
    double chi2_radius = 0.0;
    std::vector<double> radius_per_solution;
    std::vector<ext::QuantileReport> quantile_reports; // extension variant only
    bool quantile_fallback = false;                    // some report was degenerate
    std::uint64_t replications_used = 0;
    int pair_solver_iterations_max = 0;
};

struct RunResult {
    McbOutcome outcome;
    PairwiseBoundSet bounds;
    infl::InfluenceTable influence;
    RunDiagnostics diagnostics;
};

/// Stream-id offsets of one procedure run relative to a per-run base; keeps
/// influence replications, pair programs and quantile draws on disjoint
/// streams.
struct StreamLayout {
    static constexpr std::uint64_t influence = 0;
    static constexpr std::uint64_t pairs = std::uint64_t{1} << 28;
    static constexpr std::uint64_t quantile = (std::uint64_t{1} << 28) + (std::uint64_t{1} << 20);
    static constexpr std::uint64_t dataset = (std::uint64_t{1} << 28) + (std::uint64_t{2} << 20);
    static constexpr std::uint64_t per_run_stride = std::uint64_t{1} << 32;
};

/// The full procedure: influence estimation (exact in benchmark runs), one
/// radius per reference solution (chi-square, or the extension quantile),
/// the k(k-1) pair programs, bound estimation and MCB assembly. Solver
/// failures carry the offending pair in the exception message.
RunResult run_niouc(const sim::ModelSpec& model, const sim::InputDataset& data, const RunConfig& config,
                    stats::StreamRange run_streams, const AnalyticBenchmark* benchmark = nullptr);

} // namespace niouc::mcb
