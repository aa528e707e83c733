#pragma once

#include "niouc/el/types.hpp"
#include "niouc/sim/dataset.hpp"
#include "niouc/sim/model.hpp"
#include "niouc/stats/rng.hpp"

#include <vector>

namespace niouc::infl {

/// Estimated influence-function values phi[i][p][j] for every solution i,
/// source p and observation j. Estimated tables carry the sample-covariance
/// identity sum_j phi[i][p][j] = 0 (up to floating accumulation); analytic
/// benchmark tables do not, since the exact influence function is centered
/// under the true law rather than the sample.
struct InfluenceTable {
    std::vector<std::vector<std::vector<double>>> values; // [i][p][j]
    int replications = 0;
    bool crn = true;

    int num_solutions() const { return static_cast<int>(values.size()); }
    int num_sources() const { return values.empty() ? 0 : static_cast<int>(values[0].size()); }

    /// Largest |phi| entry; the natural scale for the zero-sum tolerance.
    double scale() const;

    /// max over (i,p) of |sum_j phi[i][p][j]|.
    double zero_sum_residual() const;
};

/// Linear surrogate of the mean as a function of the weights: optional
/// plug-in intercepts plus the influence slopes. The pairwise optimizer only
/// ever consumes slope differences; intercepts are reporting sugar.
struct LinearSurrogate {
    std::vector<double> intercepts;
    InfluenceTable slopes;
};

/// Simulation estimator of the influence functions at the empirical
/// distribution: R1 replications with inputs resampled uniformly from the
/// data, phi[i][p][j] the sample covariance between the output of solution i
/// and the centered use-count of observation (p, j).
///
/// With crn set, all solutions share each replication's index draws (the
/// common prefix when the T_ip differ) and its auxiliary sequence; otherwise
/// every solution draws independently. Replication r uses streams.at(r), and
/// accumulation is chunk-ordered so results are identical for any thread
/// count.
InfluenceTable estimate_influence(const sim::ModelSpec& model, const sim::InputDataset& data, int r1,
                                  stats::StreamRange streams, bool crn, unsigned threads = 1);

/// Coefficients of the pairwise surrogate difference, ready for max_linear:
/// c[p][j] = phi[i][p][j] - phi[l][p][j]. Requires i != l.
std::vector<std::vector<double>> surrogate_diff_coeffs(const InfluenceTable& table, int i, int l);

} // namespace niouc::infl
