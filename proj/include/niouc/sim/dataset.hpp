#pragma once

#include "niouc/el/types.hpp"

#include <string>
#include <vector>

namespace niouc::sim {

/// Real-world input data: one batch of iid scalar observations per source.
/// The empirical distribution of a source is this data with uniform weights;
/// everything downstream only ever reweights it.
struct InputDataset {
    std::vector<std::vector<double>> sources;

    int num_sources() const { return static_cast<int>(sources.size()); }
    el::SourceSizes sizes() const;
    void validate() const; // n_p >= 2, all entries finite
};

/// Load one numeric column per file (CSV, optional header line), one file
/// per source.
InputDataset load_dataset(const std::vector<std::string>& paths);

} // namespace niouc::sim
