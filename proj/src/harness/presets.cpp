#include "niouc/harness/presets.hpp"

#include <stdexcept>

namespace niouc::harness {

namespace {

ExperimentConfig quadratic_base(std::vector<double> a) {
    ExperimentConfig cfg;
    sim::QuadraticModelParams params;
    params.a = std::move(a);
    params.c = {193.0, 200.0};
    params.tau2 = {1833.0, 2000.0};
    params.replication_length = 10;
    cfg.model = params;

    cfg.true_inputs.resize(2);
    for (int p = 0; p < 2; ++p) {
        cfg.true_inputs[p].kind = TrueInputModel::Kind::gaussian;
        cfg.true_inputs[p].mean = params.c[p];
        cfg.true_inputs[p].variance = params.tau2[p];
    }
    cfg.n = {100, 100};
    cfg.alpha = 0.1;
    cfg.r1 = 400;
    cfg.r2 = 100;
    cfg.macro_runs = 1000;
    cfg.seed = 20240901;
    return cfg;
}

ExperimentConfig queue_base(sim::TandemQueueParams::Scenario scenario, std::vector<double> mean_waits) {
    ExperimentConfig cfg;
    sim::TandemQueueParams params;
    params.scenario = scenario;
    cfg.model = params;

    cfg.true_inputs.resize(3);
    for (int p = 0; p < 3; ++p) {
        auto& t = cfg.true_inputs[p];
        if (scenario == sim::TandemQueueParams::Scenario::exponential) {
            t.kind = TrueInputModel::Kind::exponential;
            t.service_mean = params.service_mean[p];
        } else {
            t.kind = TrueInputModel::Kind::bimodal_beta;
            t.bimodal = params.bimodal[p];
            t.mix = params.bimodal_mix[p];
        }
    }
    cfg.n = {100, 100, 100};
    cfg.alpha = 0.1;
    cfg.budget_parity = true;
    cfg.macro_runs = 1000;
    cfg.seed = 20240902;

    // Waiting times are minimized; the procedure maximizes, so the reference
    // means enter negated.
    cfg.true_etas.resize(mean_waits.size());
    for (std::size_t i = 0; i < mean_waits.size(); ++i) cfg.true_etas[i] = -mean_waits[i];
    return cfg;
}

} // namespace

ExperimentConfig preset_case1() {
    ExperimentConfig cfg = quadratic_base({66.0, 69.0, 72.0});
    cfg.name = "case1";
    return cfg;
}

ExperimentConfig preset_case2() {
    ExperimentConfig cfg = quadratic_base({69.0, 70.0, 255.0});
    cfg.name = "case2";
    return cfg;
}

ExperimentConfig preset_case3() {
    std::vector<double> a(10);
    for (int i = 0; i < 10; ++i) a[i] = 64.0 + i;
    ExperimentConfig cfg = quadratic_base(std::move(a));
    cfg.name = "case3";
    return cfg;
}

ExperimentConfig preset_queue_exponential() {
    ExperimentConfig cfg = queue_base(sim::TandemQueueParams::Scenario::exponential,
                                      {3.73, 3.06, 3.28, 3.25, 2.36, 2.76, 3.12, 2.61, 3.08});
    cfg.name = "queue-exp";
    return cfg;
}

ExperimentConfig preset_queue_bimodal() {
    ExperimentConfig cfg = queue_base(sim::TandemQueueParams::Scenario::bimodal,
                                      {3.64, 3.26, 3.12, 2.98, 2.38, 2.47, 2.77, 2.27, 2.70});
    cfg.name = "queue-bimodal";
    return cfg;
}

ExperimentConfig preset_by_name(const std::string& name) {
    if (name == "case1") return preset_case1();
    if (name == "case2") return preset_case2();
    if (name == "case3") return preset_case3();
    if (name == "queue-exp") return preset_queue_exponential();
    if (name == "queue-bimodal") return preset_queue_bimodal();
    throw std::invalid_argument("unknown preset: " + name);
}

} // namespace niouc::harness
