#pragma once

#include "niouc/mcb/procedure.hpp"
#include "niouc/sim/quadratic.hpp"

namespace niouc::harness {

/// Exact influence functions and reweighted means of the quadratic model,
/// for benchmark runs that isolate input uncertainty from simulation error.
class QuadraticBenchmark : public mcb::AnalyticBenchmark {
public:
    explicit QuadraticBenchmark(sim::QuadraticModelParams params) : params_(std::move(params)) {
        params_.validate();
    }

    infl::InfluenceTable exact_influence(const sim::InputDataset& data) const override {
        infl::InfluenceTable table;
        table.replications = 0;
        table.crn = false;
        const int k = params_.num_solutions();
        const int m = params_.num_sources();
        table.values.resize(k);
        for (int i = 0; i < k; ++i) {
            table.values[i].resize(m);
            for (int p = 0; p < m; ++p) {
                const auto& obs = data.sources[p];
                auto& row = table.values[i][p];
                row.resize(obs.size());
                for (std::size_t j = 0; j < obs.size(); ++j)
                    row[j] = sim::quadratic_true_if(params_, i, p, obs[j]);
            }
        }
        return table;
    }

    double exact_eta_weighted(int solution, const sim::InputDataset& data,
                              const el::WeightVector& weights) const override {
        return sim::quadratic_eta_weighted(params_, solution, data, weights);
    }

private:
    sim::QuadraticModelParams params_;
};

} // namespace niouc::harness
