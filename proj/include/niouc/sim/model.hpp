#pragma once

#include "niouc/stats/rng.hpp"

#include <span>
#include <vector>

namespace niouc::sim {

/// Contract every simulation model satisfies: k solutions sharing m data
/// sources, with a fixed known number of inputs T_ip consumed per
/// replication. evaluate() is deterministic given its inputs; all data-driven
/// randomness enters through `inputs` (values resampled from a reweighted
/// empirical distribution), and any randomness with a known true law (for
/// example arrival processes) is materialized into `aux` by generate_aux and
/// passed in explicitly, so that replications can share it under common
/// random numbers.
class ModelSpec {
public:
    virtual ~ModelSpec() = default;

    virtual int num_solutions() const = 0;
    virtual int num_sources() const = 0;

    /// T_ip: inputs consumed from source p by one replication of solution i.
    virtual int inputs_per_replication(int solution, int source) const = 0;

    /// Length of the auxiliary sequence generate_aux fills (0 when the model
    /// has no non-data randomness).
    virtual int aux_length() const { return 0; }

    virtual void generate_aux(stats::RngStream& rng, std::span<double> out) const { (void)rng, (void)out; }

    /// One replication of solution i. inputs[p] holds exactly
    /// inputs_per_replication(i, p) values.
    virtual double evaluate(int solution, const std::vector<std::vector<double>>& inputs,
                            std::span<const double> aux) const = 0;

    /// Largest T_ip over solutions, per source; the common-random-number
    /// scheme draws this many values once per replication and lets each
    /// solution consume its prefix.
    int max_inputs(int source) const {
        int t = 0;
        for (int i = 0; i < num_solutions(); ++i) t = std::max(t, inputs_per_replication(i, source));
        return t;
    }
};

} // namespace niouc::sim
