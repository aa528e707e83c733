#pragma once

#include "niouc/harness/experiment.hpp"

#include <string>
#include <vector>

namespace niouc::harness {

/// One row per macro-run with the indicators, intervals and the full bound
/// table; floats printed with %.17g so identical runs produce identical
/// bytes. No wall-clock content.
void write_runs_csv(const std::string& path, const ExperimentConfig& config, const ExperimentResult& result);

/// Aggregate metrics, configuration echo and per-solution frequencies.
/// Timing is reported separately from the reproducible payload.
void write_summary_json(const std::string& path, const ExperimentConfig& config, const ExperimentResult& result,
                        double wall_seconds);

void write_boundary_csv(const std::string& path, const std::vector<std::vector<double>>& directions,
                        const std::vector<std::vector<double>>& points);

void write_influence_csv(const std::string& path, const infl::InfluenceTable& table);
infl::InfluenceTable read_influence_csv(const std::string& path);

/// Experiment configuration from a JSON file; `preset` selects a base design
/// and the remaining keys override it.
ExperimentConfig load_config(const std::string& path);

/// Overrides shared by file- and flag-based configuration.
struct ConfigOverrides {
    std::optional<std::uint64_t> seed;
    std::optional<int> macro_runs;
    std::optional<std::string> variant; // niouc | niouc-e | benchmark | benchmark-e
    std::optional<unsigned> threads;
};
void apply_overrides(ExperimentConfig& config, const ConfigOverrides& overrides);

} // namespace niouc::harness
