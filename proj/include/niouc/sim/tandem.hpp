#pragma once

#include "niouc/sim/model.hpp"

#include <array>
#include <vector>

namespace niouc::sim {

/// Three-station tandem line of FIFO servers with finite waiting buffers at
/// the second and third stations and blocking-after-service. A station's
/// capacity acts as its processing speed: a raw service requirement S takes
/// S / capacity time units. Extra capacity is bought per station within a
/// budget.
struct TandemQueueParams {
    enum class Scenario { exponential, bimodal };

    double arrival_rate = 6.67;
    std::array<int, 3> base_capacity{4, 4, 4};
    // Waiting slots, excluding the in-service position; -1 means unbounded.
    std::array<int, 3> buffer_capacity{-1, 2, 3};
    std::array<int, 3> capacity_cost{2, 5, 6};
    int budget = 9;
    int max_extra_per_station = 3;
    int customers = 100;

    Scenario scenario = Scenario::exponential;
    std::array<double, 3> service_mean{0.73, 0.7, 0.8};
    // Bimodal mixture per station: scale1 * Beta(a1, b1) with prob. mix_s,
    // else scale2 * Beta(a2, b2); entries (scale1, a1, b1, scale2, a2, b2).
    std::array<std::array<double, 6>, 3> bimodal{{{1, 2, 6, 3, 10, 2}, {1, 2, 6, 2.3, 6, 2}, {1, 2, 6, 1, 12, 2}}};
    std::array<double, 3> bimodal_mix{0.785, 0.7, 0.13};
};

/// All capacity-addition vectors within the budget and per-station cap, in
/// lexicographic order.
std::vector<std::array<int, 3>> enumerate_solutions(const TandemQueueParams& params);

/// Mean waiting time (queueing plus blocked-in-upstream-server time, service
/// excluded) of the first `customers` customers, from an event-driven pass
/// over the given interarrival gaps and per-station raw service requirements.
double tandem_queue_output(const TandemQueueParams& params, const std::array<int, 3>& extra_capacity,
                           std::span<const double> arrival_gaps,
                           const std::array<std::span<const double>, 3>& service);

/// One service-time draw for the given station under the scenario's true law.
double sample_service_time(const TandemQueueParams& params, int station, stats::RngStream& rng);

/// ModelSpec adapter. The three data sources are the per-station service
/// times; arrivals follow the known Poisson process and enter through the
/// auxiliary sequence. evaluate() returns the negated mean waiting time so
/// that the ranking-and-selection machinery, which maximizes, minimizes
/// waiting.
class TandemQueueModel : public ModelSpec {
public:
    explicit TandemQueueModel(TandemQueueParams params);

    int num_solutions() const override { return static_cast<int>(solutions_.size()); }
    int num_sources() const override { return 3; }
    int inputs_per_replication(int, int) const override { return params_.customers; }
    int aux_length() const override { return params_.customers; }
    void generate_aux(stats::RngStream& rng, std::span<double> out) const override;
    double evaluate(int solution, const std::vector<std::vector<double>>& inputs,
                    std::span<const double> aux) const override;

    const TandemQueueParams& params() const { return params_; }
    const std::vector<std::array<int, 3>>& solutions() const { return solutions_; }

private:
    TandemQueueParams params_;
    std::vector<std::array<int, 3>> solutions_;
};

} // namespace niouc::sim
