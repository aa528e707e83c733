#include "support/oracles.hpp"

#include "niouc/el/solver.hpp"
#include "niouc/stats/rng.hpp"
#include "niouc/stats/special.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>

using namespace niouc;

namespace {

el::AmbiguitySpec make_spec(std::vector<int> counts, double radius) {
    return {el::SourceSizes{std::move(counts)}, radius, 0.1};
}

std::vector<std::vector<double>> random_coeffs(const std::vector<int>& counts, stats::RngStream& rng,
                                               double scale = 1.0) {
    std::vector<std::vector<double>> c(counts.size());
    for (std::size_t p = 0; p < counts.size(); ++p) {
        c[p].resize(counts[p]);
        for (double& v : c[p]) v = scale * rng.next_normal();
    }
    return c;
}

} // namespace

TEST_CASE("weight_bounds degenerate and oracle-pinned roots") {
    auto [l0, u0] = el::weight_bounds(make_spec({4}, 0.0));
    CHECK(l0 == 1.0);
    CHECK(u0 == 1.0);

    for (double radius : {0.5, 2.706, 4.605, 14.683656573259837, 100.0}) {
        const auto [l, u] = el::weight_bounds(make_spec({4}, radius));
        const auto [lo, uo] = oracles::weight_bound_roots_fixed_point(radius);
        CHECK(l < 1.0);
        CHECK(u > 1.0);
        CHECK(std::fabs(l - lo) < 1e-10 * std::max(1.0, lo));
        CHECK(std::fabs(u - uo) < 1e-10 * uo);
        // Defining equation holds to 1e-10.
        CHECK(std::fabs(l * std::exp(1.0 + 0.5 * radius - l) - 1.0) < 1e-9);
        CHECK(std::fabs(u * std::exp(1.0 + 0.5 * radius - u) - 1.0) < 1e-9);
        // Growth bound: u = 1 + radius/2 + log u and log u <= u / e give
        // u <= (1 + radius/2) / (1 - 1/e).
        CHECK(u <= (1.0 + 0.5 * radius) / (1.0 - std::exp(-1.0)) + 1e-9);
    }
}

TEST_CASE("max_linear constant objective returns the uniform point") {
    const auto spec = make_spec({3, 4}, 4.605);
    std::vector<std::vector<double>> c = {{2.5, 2.5, 2.5}, {-1.0, -1.0, -1.0, -1.0}};
    const auto rep = el::max_linear(spec, c);
    CHECK(rep.converged);
    CHECK(rep.value == Catch::Approx(1.5).margin(1e-12));
    CHECK_FALSE(rep.budget_active);
    for (std::size_t p = 0; p < rep.weights.blocks.size(); ++p)
        for (double w : rep.weights.blocks[p])
            CHECK(w == Catch::Approx(1.0 / rep.weights.blocks[p].size()).margin(1e-12));
}

TEST_CASE("max_linear two-point closed form") {
    // m=1, n=2, c=(1,0): the EL constraint is 4 w1 w2 >= exp(-radius/2),
    // so the maximizer is w1 = (1 + sqrt(1 - exp(-radius/2))) / 2.
    for (double radius : {0.5, 2.706, 4.605}) {
        const auto rep = el::max_linear(make_spec({2}, radius), {{1.0, 0.0}});
        const double w1 = 0.5 * (1.0 + std::sqrt(1.0 - std::exp(-0.5 * radius)));
        CHECK(rep.converged);
        CHECK(rep.value == Catch::Approx(w1).epsilon(1e-9));
        CHECK(rep.weights.blocks[0][0] == Catch::Approx(w1).epsilon(1e-8));
    }
}

TEST_CASE("max_linear agrees with the projected-gradient oracle") {
    stats::RngStream rng(2024, 11);
    const std::vector<int> counts{3, 3};
    const auto spec = make_spec(counts, 4.605);
    for (int trial = 0; trial < 5; ++trial) {
        const auto c = random_coeffs(counts, rng);
        const auto rep = el::max_linear(spec, c);
        REQUIRE(rep.converged);
        const double oracle = oracles::max_linear_projected_gradient(counts, c, spec.radius, 100 + trial);
        CHECK(std::fabs(rep.value - oracle) < 1e-5);
    }
}

TEST_CASE("max_linear invariants on random instances") {
    stats::RngStream rng(77, 0);
    for (int trial = 0; trial < 40; ++trial) {
        const int m = 1 + static_cast<int>(rng.next_uniform() * 3);
        std::vector<int> counts(m);
        for (int& n : counts) n = 2 + static_cast<int>(rng.next_uniform() * 5);
        const double radius = (trial % 4 == 0) ? 0.5 : (trial % 4 == 1 ? 2.706 : 4.605);
        const auto spec = make_spec(counts, radius);
        const auto c = random_coeffs(counts, rng, 2.0);
        const auto rep = el::max_linear(spec, c);
        REQUIRE(rep.converged);
        CHECK(rep.kkt_residual <= 1e-6);

        // Feasibility of the maximizer, including the Lemma-style box bounds.
        CHECK(rep.weights.feasible_for(spec));
        const auto [l, u] = el::weight_bounds(spec);
        for (int p = 0; p < m; ++p)
            for (double w : rep.weights.blocks[p]) {
                CHECK(w >= l / counts[p] - 1e-9);
                CHECK(w <= u / counts[p] + 1e-9);
            }

        // Uniform weights are feasible, so the value dominates the plain mean.
        double mean_value = 0.0;
        for (int p = 0; p < m; ++p) {
            double mp = 0.0;
            for (double v : c[p]) mp += v;
            mean_value += mp / counts[p];
        }
        CHECK(rep.value >= mean_value - 1e-9);

        // Monotone in the radius.
        const auto bigger = el::max_linear(make_spec(counts, radius + 1.0), c);
        CHECK(bigger.value >= rep.value - 1e-9);

        // KKT stationarity: w_pj = 2 theta / (nu_p - c_pj), nu_p > max c.
        if (rep.budget_active) {
            CHECK(rep.theta > 0.0);
            for (int p = 0; p < m; ++p) {
                const double max_c = *std::max_element(c[p].begin(), c[p].end());
                CHECK(rep.nu[p] > max_c);
                double station = 0.0;
                for (int j = 0; j < counts[p]; ++j)
                    station = std::max(station, std::fabs(rep.weights.blocks[p][j] -
                                                          2.0 * rep.theta / (rep.nu[p] - c[p][j])));
                CHECK(station <= 1e-10);
            }
        }

        // Shift invariance: adding a constant to one source moves the value
        // by exactly that constant and keeps the weights.
        auto shifted = c;
        for (double& v : shifted[0]) v += 3.25;
        const auto rep2 = el::max_linear(spec, shifted);
        CHECK(rep2.value - rep.value == Catch::Approx(3.25).margin(1e-7));
        for (int p = 0; p < m; ++p)
            for (int j = 0; j < counts[p]; ++j)
                CHECK(rep2.weights.blocks[p][j] == Catch::Approx(rep.weights.blocks[p][j]).margin(1e-7));
    }
}

TEST_CASE("max_linear rejects bad shapes and radii") {
    CHECK_THROWS_AS(el::max_linear(make_spec({2}, -1.0), {{1.0, 0.0}}), std::invalid_argument);
    CHECK_THROWS_AS(el::max_linear(make_spec({3}, 1.0), {{1.0, 0.0}}), std::invalid_argument);
    CHECK_THROWS_AS(el::max_linear(make_spec({2, 2}, 1.0), {{1.0, 0.0}}), std::invalid_argument);
}
