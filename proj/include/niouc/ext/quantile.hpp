#pragma once

#include "niouc/infl/influence.hpp"
#include "niouc/stats/matrix.hpp"
#include "niouc/stats/rng.hpp"

#include <vector>

namespace niouc::ext {

/// Monte Carlo quantile that replaces the chi-square radius for one
/// reference solution: the pairwise influence differences define k-1
/// correlated chi-square-1 statistics; q_hat is the empirical (1-alpha)
/// quantile of the maximum over M multivariate-normal draws.
struct QuantileReport {
    int reference = 0;
    double alpha = 0.0;
    int draws = 0;
    double q_hat = 0.0;
    bool degenerate = false; // some pooled variance vanished; caller falls back

    stats::Matrix correlation;                    // (k-1) x (k-1), unit diagonal
    std::vector<std::vector<double>> source_means; // [p][l]: per-source mean of v_l
    std::vector<stats::Matrix> source_covariances; // [p]: n_p/(n_p-1)-weighted
};

/// Estimate the extension radius for reference solution i from an influence
/// table. Uses the ceiling-index order statistic of the sorted maxima; with
/// the same stream the result is nonincreasing in alpha. A degenerate pooled
/// variance is reported, not thrown.
QuantileReport estimate_extension_quantile(const infl::InfluenceTable& table, int reference, double alpha,
                                           int draws, stats::RngStream& rng);

} // namespace niouc::ext
