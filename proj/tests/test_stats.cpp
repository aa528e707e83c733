#include "support/oracles.hpp"

#include "niouc/stats/matrix.hpp"
#include "niouc/stats/rng.hpp"
#include "niouc/stats/special.hpp"

#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <thread>

using namespace niouc;

TEST_CASE("chi2_quantile closed forms at two degrees of freedom") {
    // chi2_2 CDF is 1 - exp(-x/2), so the quantile is -2 log(1-p).
    CHECK(std::fabs(stats::chi2_quantile(2, 0.95) - 5.991464547107979) < 1e-9);
    CHECK(std::fabs(stats::chi2_quantile(2, 0.90) - 4.605170185988091) < 1e-9);
    for (double p : {0.5, 0.9, 0.95, 0.99})
        CHECK(std::fabs(stats::chi2_quantile(2, p) + 2.0 * std::log(1.0 - p)) < 1e-9);
}

TEST_CASE("chi2_quantile matches the quadrature bisection oracle") {
    // Frozen from the oracle: quantile of chi2_1 at 0.95.
    const double q1 = oracles::chi2_quantile_bisect(1, 0.95);
    CHECK(std::fabs(q1 - 3.841458820694124) < 1e-8);
    CHECK(std::fabs(stats::chi2_quantile(1, 0.95) - q1) < 1e-8);
    for (int dof : {1, 2, 3, 9, 25})
        for (double p : {0.05, 0.5, 0.9, 0.99})
            CHECK(std::fabs(stats::chi2_quantile(dof, p) - oracles::chi2_quantile_bisect(dof, p)) < 1e-7);
    // Self-consistency at the stated tolerance.
    for (int dof : {1, 2, 9})
        for (double p : {0.1, 0.9, 0.975}) {
            const double x = stats::chi2_quantile(dof, p);
            CHECK(std::fabs(stats::regularized_gamma_p(0.5 * dof, 0.5 * x) - p) < 1e-10);
        }
}

TEST_CASE("chi2_quantile monotonicity and domain errors") {
    CHECK(stats::chi2_quantile(2, 0.95) > stats::chi2_quantile(2, 0.90));
    CHECK(stats::chi2_quantile(3, 0.9) > stats::chi2_quantile(2, 0.9));
    double prev = 0.0;
    for (double p = 0.05; p < 1.0; p += 0.05) {
        const double q = stats::chi2_quantile(5, p);
        CHECK(q > prev);
        prev = q;
    }
    CHECK_THROWS_AS(stats::chi2_quantile(0, 0.5), std::domain_error);
    CHECK_THROWS_AS(stats::chi2_quantile(2, 0.0), std::domain_error);
    CHECK_THROWS_AS(stats::chi2_quantile(2, 1.0), std::domain_error);
}

TEST_CASE("inverse normal agrees with the bisection oracle") {
    for (double p : {0.001, 0.025, 0.2, 0.5, 0.8, 0.975, 0.994179})
        CHECK(std::fabs(stats::inverse_normal_cdf(p) - oracles::inverse_normal_bisect(p)) < 1e-12);
}

TEST_CASE("cholesky on identity and a hand-checkable matrix") {
    const auto l_id = stats::cholesky(stats::Matrix::identity(3));
    REQUIRE(l_id);
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) CHECK((*l_id)(i, j) == Catch::Approx(i == j ? 1.0 : 0.0).margin(1e-15));

    stats::Matrix a(2, 2);
    a(0, 0) = 4;
    a(0, 1) = 2;
    a(1, 0) = 2;
    a(1, 1) = 5;
    const auto l = stats::cholesky(a);
    REQUIRE(l);
    CHECK((*l)(0, 0) == Catch::Approx(2.0));
    CHECK((*l)(1, 0) == Catch::Approx(1.0));
    CHECK((*l)(1, 1) == Catch::Approx(2.0));
    CHECK((*l)(0, 1) == 0.0);
}

TEST_CASE("cholesky reconstructs a random SPD matrix") {
    stats::RngStream rng(123, 0);
    stats::Matrix b(5, 5);
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) b(i, j) = rng.next_normal();
    stats::Matrix a(5, 5);
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) {
            double v = (i == j) ? 0.5 : 0.0;
            for (int t = 0; t < 5; ++t) v += b(i, t) * b(j, t);
            a(i, j) = v;
        }
    const auto l = stats::cholesky(a);
    REQUIRE(l);
    for (int i = 0; i < 5; ++i)
        for (int j = 0; j < 5; ++j) {
            double rec = 0.0;
            for (int t = 0; t <= std::min(i, j); ++t) rec += (*l)(i, t) * (*l)(j, t);
            CHECK(std::fabs(rec - a(i, j)) < 1e-10);
        }

    stats::Matrix bad(2, 2);
    bad(0, 0) = 1;
    bad(0, 1) = 2;
    bad(1, 0) = 2;
    bad(1, 1) = 1;
    CHECK_FALSE(stats::cholesky(bad));
}

TEST_CASE("correlation matrix validation") {
    stats::Matrix m = stats::Matrix::identity(2);
    m(0, 1) = 0.4;
    m(1, 0) = 0.4;
    CHECK_NOTHROW(stats::CorrelationMatrix(m));
    m(0, 0) = 2.0;
    CHECK_THROWS_AS(stats::CorrelationMatrix(m), std::invalid_argument);
    m = stats::Matrix::identity(2);
    m(0, 1) = 0.3;
    m(1, 0) = -0.3;
    CHECK_THROWS_AS(stats::CorrelationMatrix(m), std::invalid_argument);
    m = stats::Matrix::identity(2);
    m(0, 1) = 1.5;
    m(1, 0) = 1.5;
    CHECK_THROWS_AS(stats::CorrelationMatrix(m), std::invalid_argument);
}

TEST_CASE("sample_mvn sampling moments") {
    const int count = 10000;

    stats::RngStream r1(99, 1);
    stats::Matrix one = stats::Matrix::identity(1);
    const stats::Matrix uni = stats::sample_mvn(stats::CorrelationMatrix(one), count, r1);
    double mean = 0.0, var = 0.0;
    for (int t = 0; t < count; ++t) mean += uni(t, 0);
    mean /= count;
    for (int t = 0; t < count; ++t) var += (uni(t, 0) - mean) * (uni(t, 0) - mean);
    var /= count - 1;
    CHECK(std::fabs(var - 1.0) < 0.05);

    stats::RngStream r2(99, 2);
    const stats::Matrix ind = stats::sample_mvn(stats::CorrelationMatrix(stats::Matrix::identity(3)), count, r2);
    for (int aa = 0; aa < 3; ++aa)
        for (int bb = aa + 1; bb < 3; ++bb) {
            double c = 0.0;
            for (int t = 0; t < count; ++t) c += ind(t, aa) * ind(t, bb);
            CHECK(std::fabs(c / count) < 0.05);
        }

    stats::Matrix corr = stats::Matrix::identity(2);
    corr(0, 1) = 0.4;
    corr(1, 0) = 0.4;
    stats::RngStream r3(99, 3);
    const stats::Matrix xy = stats::sample_mvn(stats::CorrelationMatrix(corr), count, r3);
    double sxx = 0.0, syy = 0.0, sxy = 0.0;
    for (int t = 0; t < count; ++t) {
        sxx += xy(t, 0) * xy(t, 0);
        syy += xy(t, 1) * xy(t, 1);
        sxy += xy(t, 0) * xy(t, 1);
    }
    CHECK(std::fabs(sxy / std::sqrt(sxx * syy) - 0.4) < 0.05);
}

TEST_CASE("sample_mvn repairs a singular correlation with jitter") {
    stats::Matrix ones = stats::Matrix::identity(2);
    ones(0, 1) = 1.0;
    ones(1, 0) = 1.0;
    stats::RngStream rng(5, 5);
    const stats::Matrix draws = stats::sample_mvn(stats::CorrelationMatrix(ones), 100, rng);
    for (int t = 0; t < 100; ++t) CHECK(std::fabs(draws(t, 0) - draws(t, 1)) < 1e-3);
}

TEST_CASE("rng streams are replicable and order-independent") {
    stats::RngStream a(42, 7);
    std::vector<std::uint64_t> seq;
    for (int i = 0; i < 64; ++i) seq.push_back(a.next_u64());

    // Interleave creation of other streams; the (seed, id) pair alone fixes
    // the sequence.
    stats::RngStream noise(42, 8);
    noise.next_u64();
    stats::RngStream b(42, 7);
    for (int i = 0; i < 64; ++i) CHECK(b.next_u64() == seq[i]);

    stats::RngStream c(42, 9);
    bool all_equal = true;
    for (int i = 0; i < 64; ++i) all_equal = all_equal && (c.next_u64() == seq[i]);
    CHECK_FALSE(all_equal);

    // Same streams drawn from different threads give identical bytes.
    std::vector<std::vector<std::uint64_t>> per_thread(4);
    std::vector<std::thread> pool;
    for (int t = 0; t < 4; ++t)
        pool.emplace_back([&per_thread, t]() {
            stats::RngStream s(42, 7);
            for (int i = 0; i < 64; ++i) per_thread[t].push_back(s.next_u64());
        });
    for (auto& th : pool) th.join();
    for (int t = 0; t < 4; ++t) CHECK(per_thread[t] == seq);
}

TEST_CASE("uniform draws live strictly inside (0,1)") {
    stats::RngStream rng(1, 1);
    for (int i = 0; i < 100000; ++i) {
        const double u = rng.next_uniform();
        REQUIRE(u > 0.0);
        REQUIRE(u < 1.0);
    }
}

TEST_CASE("gamma and beta samplers hit their means") {
    stats::RngStream rng(17, 3);
    double sum = 0.0;
    const int n = 20000;
    for (int i = 0; i < n; ++i) sum += rng.next_gamma(2.5);
    CHECK(std::fabs(sum / n - 2.5) < 0.05);
    sum = 0.0;
    for (int i = 0; i < n; ++i) sum += rng.next_beta(2.0, 6.0);
    CHECK(std::fabs(sum / n - 0.25) < 0.01);
    sum = 0.0;
    for (int i = 0; i < n; ++i) sum += rng.next_exponential(2.0);
    CHECK(std::fabs(sum / n - 0.5) < 0.02);
}
