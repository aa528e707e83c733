#pragma once

#include "niouc/el/types.hpp"
#include "niouc/sim/dataset.hpp"
#include "niouc/stats/rng.hpp"

#include <cstdint>
#include <span>
#include <vector>

namespace niouc::sim {

/// Cumulative weights for inverse-CDF index sampling; cells keep the
/// original observation order.
std::vector<double> cumulative_weights(std::span<const double> weights);

/// Index whose cumulative cell contains u: the deterministic core of
/// sample_inputs, exposed so tests can feed exact uniforms.
std::uint32_t index_for_uniform(std::span<const double> cumulative, double u);

/// Draw `count` observation indices from the weighted empirical distribution.
void sample_indices(std::span<const double> cumulative, int count, stats::RngStream& rng,
                    std::vector<std::uint32_t>& out);

/// Draw `count` values from source p of the dataset reweighted by `weights`
/// (uniform weights reduce to plain resampling).
std::vector<double> sample_inputs(const InputDataset& data, const el::WeightVector& weights, int source,
                                  int count, stats::RngStream& rng);

} // namespace niouc::sim
