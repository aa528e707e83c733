#include "niouc/infl/influence.hpp"

#include "niouc/sim/sampling.hpp"
#include "niouc/util/parallel.hpp"

#include <cmath>
#include <stdexcept>

namespace niouc::infl {

double InfluenceTable::scale() const {
    double s = 0.0;
    for (const auto& per_solution : values)
        for (const auto& per_source : per_solution)
            for (double v : per_source) s = std::max(s, std::fabs(v));
    return s;
}

double InfluenceTable::zero_sum_residual() const {
    double r = 0.0;
    for (const auto& per_solution : values)
        for (const auto& per_source : per_solution) {
            double sum = 0.0;
            for (double v : per_source) sum += v;
            r = std::max(r, std::fabs(sum));
        }
    return r;
}

namespace {

constexpr int kChunk = 128; // replications per accumulation chunk (fixed for determinism)

struct Accumulator {
    std::vector<double> sum_h;                            // [i]
    std::vector<std::vector<std::vector<double>>> hc;     // [i][p][j]: sum_r h_ir * C_pj
    std::vector<std::vector<std::vector<double>>> counts; // [i][p][j]: sum_r C_pj
    std::uint64_t evaluations = 0;

    Accumulator(int k, const std::vector<int>& n) {
        sum_h.assign(k, 0.0);
        hc.resize(k);
        counts.resize(k);
        for (int i = 0; i < k; ++i) {
            hc[i].resize(n.size());
            counts[i].resize(n.size());
            for (std::size_t p = 0; p < n.size(); ++p) {
                hc[i][p].assign(n[p], 0.0);
                counts[i][p].assign(n[p], 0.0);
            }
        }
    }

    void fold(const Accumulator& other) {
        for (std::size_t i = 0; i < sum_h.size(); ++i) {
            sum_h[i] += other.sum_h[i];
            for (std::size_t p = 0; p < hc[i].size(); ++p)
                for (std::size_t j = 0; j < hc[i][p].size(); ++j) {
                    hc[i][p][j] += other.hc[i][p][j];
                    counts[i][p][j] += other.counts[i][p][j];
                }
        }
        evaluations += other.evaluations;
    }
};

} // namespace

InfluenceTable estimate_influence(const sim::ModelSpec& model, const sim::InputDataset& data, int r1,
                                  stats::StreamRange streams, bool crn, unsigned threads) {
    if (r1 < 2) throw std::invalid_argument("estimate_influence: need R1 >= 2");
    data.validate();
    const int k = model.num_solutions();
    const int m = model.num_sources();
    if (data.num_sources() != m) throw std::invalid_argument("estimate_influence: model/data source mismatch");

    const el::SourceSizes sizes = data.sizes();
    std::vector<std::vector<double>> cum(m);
    const el::WeightVector uniform = el::WeightVector::uniform(sizes);
    for (int p = 0; p < m; ++p) cum[p] = sim::cumulative_weights(uniform.blocks[p]);

    std::vector<int> max_t(m);
    for (int p = 0; p < m; ++p) max_t[p] = model.max_inputs(p);
    const int aux_len = model.aux_length();

    const std::size_t num_chunks = (static_cast<std::size_t>(r1) + kChunk - 1) / kChunk;
    std::vector<Accumulator> partial(num_chunks, Accumulator(k, sizes.counts));

    util::parallel_for(num_chunks, threads, [&](std::size_t chunk) {
        Accumulator& acc = partial[chunk];
        const int r_begin = static_cast<int>(chunk) * kChunk;
        const int r_end = std::min(r1, r_begin + kChunk);

        std::vector<std::vector<std::uint32_t>> idx(m);
        std::vector<std::vector<double>> inputs(m);
        std::vector<double> aux(aux_len);
        std::vector<double> h(k);

        for (int r = r_begin; r < r_end; ++r) {
            stats::RngStream rng = streams.at(static_cast<std::uint64_t>(r));
            if (crn) {
                if (aux_len > 0) model.generate_aux(rng, aux);
                for (int p = 0; p < m; ++p) sim::sample_indices(cum[p], max_t[p], rng, idx[p]);
                for (int i = 0; i < k; ++i) {
                    for (int p = 0; p < m; ++p) {
                        const int t_ip = model.inputs_per_replication(i, p);
                        inputs[p].resize(t_ip);
                        for (int t = 0; t < t_ip; ++t) inputs[p][t] = data.sources[p][idx[p][t]];
                    }
                    h[i] = model.evaluate(i, inputs, aux);
                    ++acc.evaluations;
                }
                for (int i = 0; i < k; ++i) {
                    acc.sum_h[i] += h[i];
                    for (int p = 0; p < m; ++p) {
                        const int t_ip = model.inputs_per_replication(i, p);
                        for (int t = 0; t < t_ip; ++t) {
                            const std::uint32_t j = idx[p][t];
                            acc.hc[i][p][j] += h[i];
                            acc.counts[i][p][j] += 1.0;
                        }
                    }
                }
            } else {
                for (int i = 0; i < k; ++i) {
                    if (aux_len > 0) model.generate_aux(rng, aux);
                    for (int p = 0; p < m; ++p) {
                        const int t_ip = model.inputs_per_replication(i, p);
                        sim::sample_indices(cum[p], t_ip, rng, idx[p]);
                        inputs[p].resize(t_ip);
                        for (int t = 0; t < t_ip; ++t) inputs[p][t] = data.sources[p][idx[p][t]];
                    }
                    const double hi = model.evaluate(i, inputs, aux);
                    ++acc.evaluations;
                    acc.sum_h[i] += hi;
                    for (int p = 0; p < m; ++p) {
                        const int t_ip = model.inputs_per_replication(i, p);
                        for (int t = 0; t < t_ip; ++t) {
                            const std::uint32_t j = idx[p][t];
                            acc.hc[i][p][j] += hi;
                            acc.counts[i][p][j] += 1.0;
                        }
                    }
                }
            }
        }
    });

    Accumulator total(k, sizes.counts);
    for (const auto& acc : partial) total.fold(acc);

    InfluenceTable table;
    table.replications = r1;
    table.crn = crn;
    table.values.resize(k);
    for (int i = 0; i < k; ++i) {
        const double h_bar = total.sum_h[i] / r1;
        table.values[i].resize(m);
        for (int p = 0; p < m; ++p) {
            const double n_p = static_cast<double>(sizes.counts[p]);
            auto& row = table.values[i][p];
            row.resize(sizes.counts[p]);
            // The centered-count term with C = 0 sums to zero over r, so only
            // realized uses contribute: phi = (n_p/R1) (sum h C - h_bar sum C).
            for (int j = 0; j < sizes.counts[p]; ++j)
                row[j] = n_p / r1 * (total.hc[i][p][j] - h_bar * total.counts[i][p][j]);
        }
    }
    return table;
}

std::vector<std::vector<double>> surrogate_diff_coeffs(const InfluenceTable& table, int i, int l) {
    const int k = table.num_solutions();
    if (i == l) throw std::invalid_argument("surrogate_diff_coeffs: need two distinct solutions");
    if (i < 0 || i >= k || l < 0 || l >= k)
        throw std::out_of_range("surrogate_diff_coeffs: solution index out of range");
    const int m = table.num_sources();
    std::vector<std::vector<double>> coeffs(m);
    for (int p = 0; p < m; ++p) {
        const auto& phi_i = table.values[i][p];
        const auto& phi_l = table.values[l][p];
        coeffs[p].resize(phi_i.size());
        for (std::size_t j = 0; j < phi_i.size(); ++j) coeffs[p][j] = phi_i[j] - phi_l[j];
    }
    return coeffs;
}

} // namespace niouc::infl
