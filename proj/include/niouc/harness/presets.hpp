#pragma once

#include "niouc/harness/experiment.hpp"

#include <string>

namespace niouc::harness {

/// Built-in experiment designs. Quadratic cases share T = 10, two Gaussian
/// sources with means (193, 200) and variances (1833, 2000), alpha = 0.1.
/// The queue presets use the budget-parity rule by default and carry
/// reference mean waiting times (high-precision simulation estimates,
/// regenerable via the `etas` tool) negated onto the maximization scale.
ExperimentConfig preset_case1();
ExperimentConfig preset_case2();
ExperimentConfig preset_case3();
ExperimentConfig preset_queue_exponential();
ExperimentConfig preset_queue_bimodal();

/// Lookup by name: case1, case2, case3, queue-exp, queue-bimodal.
ExperimentConfig preset_by_name(const std::string& name);

} // namespace niouc::harness
