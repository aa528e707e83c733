#pragma once

#include "niouc/mcb/procedure.hpp"
#include "niouc/sim/quadratic.hpp"
#include "niouc/sim/tandem.hpp"

#include <array>
#include <memory>
#include <string>
#include <variant>
#include <vector>

namespace niouc::harness {

/// Generative law of one real-world input source, used to draw fresh
/// datasets for each macro-run.
struct TrueInputModel {
    enum class Kind { gaussian, exponential, bimodal_beta };

    Kind kind = Kind::gaussian;
    double mean = 0.0;     // gaussian
    double variance = 1.0; // gaussian, must be positive

    double service_mean = 1.0; // exponential (mean, not rate)

    std::array<double, 6> bimodal{}; // (scale1, a1, b1, scale2, a2, b2)
    double mix = 0.5;                // probability of the first component

    void validate() const;
    double sample(stats::RngStream& rng) const;
    double true_mean() const;
};

struct ExperimentConfig {
    std::string name = "experiment";
    std::variant<sim::QuadraticModelParams, sim::TandemQueueParams> model;
    std::vector<TrueInputModel> true_inputs;
    std::vector<int> n; // observations per source

    double alpha = 0.1;
    int r1 = 0;
    int r2 = 0;
    bool budget_parity = false; // derive (r1, r2) from n via the parity rule
    mcb::Variant variant = mcb::Variant::standard;
    bool benchmark = false;
    bool crn = true;
    int quantile_draws = 20000;

    int macro_runs = 1;
    std::uint64_t seed = 1;
    unsigned threads = 1;

    /// Reference means on the maximization scale; filled analytically for
    /// the quadratic model, supplied (or regenerated at high precision) for
    /// the queue.
    std::vector<double> true_etas;

    int num_solutions() const;
    int num_sources() const;
    std::unique_ptr<sim::ModelSpec> make_model() const;
    std::unique_ptr<mcb::AnalyticBenchmark> make_benchmark() const; // quadratic only
    void finalize(); // validate, apply budget parity, derive true etas
};

/// Total per-solution simulation budget R = 4 ceil(n^1.1) + 4n of the
/// budget-parity rule, and its even split into (r1, r2).
int budget_parity_total(int n);
std::pair<int, int> budget_parity_split(int total, int k);

sim::InputDataset generate_dataset(const std::vector<TrueInputModel>& models, const std::vector<int>& n,
                                   stats::StreamRange streams);

/// The joint MCB event: eta_i - max_{l != i} eta_l inside [lower_i, upper_i]
/// for every solution.
bool evaluate_mcb_coverage(const mcb::McbOutcome& outcome, const std::vector<double>& true_etas);

struct RunRecord {
    int run = 0;
    bool coverage = false;
    bool includes_best = false;
    int set_size = 0;
    double width = 0.0;
    bool degenerate = false;
    std::vector<char> included;  // per solution
    std::vector<double> lower, upper;
    std::vector<double> radius;
    std::vector<double> u_table; // k*k row-major
    std::uint64_t replications = 0;
};

struct MacroMetrics {
    int macro_runs = 0;
    double mcb_coverage = 0.0, mcb_coverage_se = 0.0;
    double inclusion_prob = 0.0, inclusion_prob_se = 0.0;
    double mean_set_size = 0.0, mean_set_size_se = 0.0;
    double mean_width = 0.0, mean_width_se = 0.0;
    std::vector<double> per_solution_inclusion;
    std::vector<int> set_size_histogram; // index s-1 counts |I| = s
    std::uint64_t total_replications = 0;
};

struct ExperimentResult {
    MacroMetrics metrics;
    std::vector<RunRecord> runs;
    int i_best = 0;
};

/// Repeat the procedure over macro_runs fresh datasets (stream id space
/// partitioned by run index) and aggregate the four metrics with Monte Carlo
/// standard errors. Fails fast on the first unrecoverable run error,
/// reporting the run index and seed.
ExperimentResult run_experiment(const ExperimentConfig& config);

} // namespace niouc::harness
