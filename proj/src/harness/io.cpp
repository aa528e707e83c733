#include "niouc/harness/io.hpp"

#include "niouc/harness/presets.hpp"

#include <json.hpp>

#include <cinttypes>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace niouc::harness {

namespace {

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string variant_name(const ExperimentConfig& cfg) {
    if (cfg.benchmark) return cfg.variant == mcb::Variant::extension ? "benchmark-e" : "benchmark";
    return cfg.variant == mcb::Variant::extension ? "niouc-e" : "niouc";
}

void set_variant(ExperimentConfig& cfg, const std::string& name) {
    if (name == "niouc") {
        cfg.variant = mcb::Variant::standard;
        cfg.benchmark = false;
    } else if (name == "niouc-e") {
        cfg.variant = mcb::Variant::extension;
        cfg.benchmark = false;
    } else if (name == "benchmark") {
        cfg.variant = mcb::Variant::standard;
        cfg.benchmark = true;
    } else if (name == "benchmark-e") {
        cfg.variant = mcb::Variant::extension;
        cfg.benchmark = true;
    } else {
        throw std::invalid_argument("unknown variant: " + name +
                                    " (expected niouc, niouc-e, benchmark or benchmark-e)");
    }
}

} // namespace

void write_runs_csv(const std::string& path, const ExperimentConfig& config, const ExperimentResult& result) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    const int k = config.num_solutions();

    out << "run,coverage,includes_best,set_size,width,degenerate,included";
    for (int i = 0; i < k; ++i) out << ",lower_" << (i + 1) << ",upper_" << (i + 1);
    for (int i = 0; i < k; ++i) out << ",radius_" << (i + 1);
    for (int i = 0; i < k; ++i)
        for (int l = 0; l < k; ++l)
            if (i != l) out << ",u_" << (i + 1) << "_" << (l + 1);
    out << "\n";

    for (const RunRecord& rec : result.runs) {
        out << rec.run << ',' << (rec.coverage ? 1 : 0) << ',' << (rec.includes_best ? 1 : 0) << ','
            << rec.set_size << ',' << fmt_double(rec.width) << ',' << (rec.degenerate ? 1 : 0) << ',';
        for (char c : rec.included) out << (c ? '1' : '0');
        for (int i = 0; i < k; ++i) out << ',' << fmt_double(rec.lower[i]) << ',' << fmt_double(rec.upper[i]);
        for (int i = 0; i < k; ++i) out << ',' << fmt_double(rec.radius[i]);
        for (int i = 0; i < k; ++i)
            for (int l = 0; l < k; ++l)
                if (i != l) out << ',' << fmt_double(rec.u_table[static_cast<std::size_t>(i) * k + l]);
        out << "\n";
    }
}

void write_summary_json(const std::string& path, const ExperimentConfig& config, const ExperimentResult& result,
                        double wall_seconds) {
    nlohmann::ordered_json j;
    j["name"] = config.name;
    j["variant"] = variant_name(config);
    j["alpha"] = config.alpha;
    j["n"] = config.n;
    j["r1"] = config.r1;
    j["r2"] = config.r2;
    j["macro_runs"] = config.macro_runs;
    j["seed"] = config.seed;
    j["quantile_draws"] = config.quantile_draws;
    j["crn"] = config.crn;
    j["i_best"] = result.i_best + 1;
    j["true_etas"] = config.true_etas;

    const MacroMetrics& m = result.metrics;
    j["metrics"]["mcb_coverage"] = m.mcb_coverage;
    j["metrics"]["mcb_coverage_se"] = m.mcb_coverage_se;
    j["metrics"]["inclusion_prob"] = m.inclusion_prob;
    j["metrics"]["inclusion_prob_se"] = m.inclusion_prob_se;
    j["metrics"]["mean_set_size"] = m.mean_set_size;
    j["metrics"]["mean_set_size_se"] = m.mean_set_size_se;
    j["metrics"]["mean_width"] = m.mean_width;
    j["metrics"]["mean_width_se"] = m.mean_width_se;
    j["metrics"]["per_solution_inclusion"] = m.per_solution_inclusion;
    j["metrics"]["set_size_histogram"] = m.set_size_histogram;
    j["metrics"]["total_replications"] = m.total_replications;
    j["wall_seconds"] = wall_seconds;

    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << j.dump(2) << "\n";
}

void write_boundary_csv(const std::string& path, const std::vector<std::vector<double>>& directions,
                        const std::vector<std::vector<double>>& points) {
    if (directions.size() != points.size()) throw std::invalid_argument("write_boundary_csv: size mismatch");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    const std::size_t q = points.empty() ? 0 : points[0].size();
    for (std::size_t d = 0; d < q; ++d) out << "dir_" << (d + 1) << ',';
    for (std::size_t d = 0; d < q; ++d) out << "point_" << (d + 1) << (d + 1 < q ? ',' : '\n');
    for (std::size_t r = 0; r < points.size(); ++r) {
        for (std::size_t d = 0; d < q; ++d) out << fmt_double(directions[r][d]) << ',';
        for (std::size_t d = 0; d < q; ++d) out << fmt_double(points[r][d]) << (d + 1 < q ? ',' : '\n');
    }
}

void write_influence_csv(const std::string& path, const infl::InfluenceTable& table) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << "i,p,j,value\n";
    for (int i = 0; i < table.num_solutions(); ++i)
        for (int p = 0; p < table.num_sources(); ++p)
            for (std::size_t j = 0; j < table.values[i][p].size(); ++j)
                out << (i + 1) << ',' << (p + 1) << ',' << (j + 1) << ',' << fmt_double(table.values[i][p][j])
                    << "\n";
}

infl::InfluenceTable read_influence_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read " + path);
    infl::InfluenceTable table;
    std::string line;
    bool header = true;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (header) {
            header = false;
            if (line.rfind("i,", 0) == 0) continue;
        }
        std::istringstream ss(line);
        int i, p;
        std::size_t j;
        double v;
        char comma;
        if (!(ss >> i >> comma >> p >> comma >> j >> comma >> v))
            throw std::runtime_error("bad influence row: " + line);
        if (i < 1 || p < 1 || j < 1) throw std::runtime_error("influence indices are 1-based: " + line);
        if (static_cast<int>(table.values.size()) < i) table.values.resize(i);
        if (static_cast<int>(table.values[i - 1].size()) < p) table.values[i - 1].resize(p);
        if (table.values[i - 1][p - 1].size() < j) table.values[i - 1][p - 1].resize(j);
        table.values[i - 1][p - 1][j - 1] = v;
    }
    if (table.values.empty()) throw std::runtime_error("empty influence table: " + path);
    return table;
}

ExperimentConfig load_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot read config " + path);
    nlohmann::json j;
    in >> j;

    ExperimentConfig cfg;
    if (j.contains("preset")) {
        cfg = preset_by_name(j.at("preset").get<std::string>());
    } else if (j.contains("model")) {
        const auto& mj = j.at("model");
        const std::string type = mj.at("type").get<std::string>();
        if (type == "quadratic") {
            sim::QuadraticModelParams params;
            params.a = mj.at("a").get<std::vector<double>>();
            params.c = mj.at("c").get<std::vector<double>>();
            params.tau2 = mj.at("tau2").get<std::vector<double>>();
            params.replication_length = mj.value("T", 10);
            cfg.model = params;
            cfg.true_inputs.resize(params.num_sources());
            for (int p = 0; p < params.num_sources(); ++p) {
                cfg.true_inputs[p].kind = TrueInputModel::Kind::gaussian;
                cfg.true_inputs[p].mean = params.c[p];
                cfg.true_inputs[p].variance = params.tau2[p];
            }
        } else if (type == "tandem-queue") {
            sim::TandemQueueParams params;
            const std::string scen = mj.value("scenario", std::string("exponential"));
            params.scenario = scen == "bimodal" ? sim::TandemQueueParams::Scenario::bimodal
                                                : sim::TandemQueueParams::Scenario::exponential;
            params.arrival_rate = mj.value("arrival_rate", params.arrival_rate);
            params.customers = mj.value("customers", params.customers);
            params.budget = mj.value("budget", params.budget);
            cfg.model = params;
            cfg.true_inputs.resize(3);
            for (int p = 0; p < 3; ++p) {
                auto& t = cfg.true_inputs[p];
                if (params.scenario == sim::TandemQueueParams::Scenario::exponential) {
                    t.kind = TrueInputModel::Kind::exponential;
                    t.service_mean = params.service_mean[p];
                } else {
                    t.kind = TrueInputModel::Kind::bimodal_beta;
                    t.bimodal = params.bimodal[p];
                    t.mix = params.bimodal_mix[p];
                }
            }
            cfg.budget_parity = true;
        } else {
            throw std::invalid_argument("unknown model type: " + type);
        }
    } else {
        throw std::invalid_argument("config needs a preset or a model block");
    }

    if (j.contains("name")) cfg.name = j.at("name").get<std::string>();
    if (j.contains("n")) {
        if (j.at("n").is_array())
            cfg.n = j.at("n").get<std::vector<int>>();
        else
            cfg.n.assign(1, j.at("n").get<int>());
    }
    if (j.contains("alpha")) cfg.alpha = j.at("alpha").get<double>();
    if (j.contains("r1")) {
        cfg.r1 = j.at("r1").get<int>();
        cfg.budget_parity = false;
    }
    if (j.contains("r2")) {
        cfg.r2 = j.at("r2").get<int>();
        cfg.budget_parity = false;
    }
    if (j.contains("budget_parity")) cfg.budget_parity = j.at("budget_parity").get<bool>();
    if (j.contains("variant")) set_variant(cfg, j.at("variant").get<std::string>());
    if (j.contains("crn")) cfg.crn = j.at("crn").get<bool>();
    if (j.contains("quantile_draws")) cfg.quantile_draws = j.at("quantile_draws").get<int>();
    if (j.contains("macro_runs")) cfg.macro_runs = j.at("macro_runs").get<int>();
    if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("threads")) cfg.threads = j.at("threads").get<unsigned>();
    if (j.contains("true_etas")) cfg.true_etas = j.at("true_etas").get<std::vector<double>>();
    return cfg;
}

void apply_overrides(ExperimentConfig& config, const ConfigOverrides& overrides) {
    if (overrides.seed) config.seed = *overrides.seed;
    if (overrides.macro_runs) config.macro_runs = *overrides.macro_runs;
    if (overrides.variant) set_variant(config, *overrides.variant);
    if (overrides.threads) config.threads = *overrides.threads;
}

} // namespace niouc::harness
