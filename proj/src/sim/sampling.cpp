#include "niouc/sim/sampling.hpp"

#include <algorithm>
#include <stdexcept>

namespace niouc::sim {

std::vector<double> cumulative_weights(std::span<const double> weights) {
    std::vector<double> cum(weights.size());
    double acc = 0.0;
    for (std::size_t j = 0; j < weights.size(); ++j) {
        acc += weights[j];
        cum[j] = acc;
    }
    return cum;
}

std::uint32_t index_for_uniform(std::span<const double> cumulative, double u) {
    const auto it = std::upper_bound(cumulative.begin(), cumulative.end(), u);
    std::size_t idx = static_cast<std::size_t>(it - cumulative.begin());
    if (idx >= cumulative.size()) idx = cumulative.size() - 1; // u beyond rounding of the last cell
    return static_cast<std::uint32_t>(idx);
}

void sample_indices(std::span<const double> cumulative, int count, stats::RngStream& rng,
                    std::vector<std::uint32_t>& out) {
    out.resize(count);
    for (int t = 0; t < count; ++t) out[t] = index_for_uniform(cumulative, rng.next_uniform());
}

std::vector<double> sample_inputs(const InputDataset& data, const el::WeightVector& weights, int source,
                                  int count, stats::RngStream& rng) {
    if (source < 0 || source >= data.num_sources())
        throw std::invalid_argument("sample_inputs: source index out of range");
    if (count < 1) throw std::invalid_argument("sample_inputs: count must be >= 1");
    const auto& obs = data.sources[source];
    const auto& w = weights.blocks.at(source);
    if (w.size() != obs.size()) throw std::invalid_argument("sample_inputs: weight/dataset size mismatch");

    const std::vector<double> cum = cumulative_weights(w);
    std::vector<double> out(count);
    for (int t = 0; t < count; ++t) out[t] = obs[index_for_uniform(cum, rng.next_uniform())];
    return out;
}

} // namespace niouc::sim
