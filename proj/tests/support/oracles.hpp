#pragma once

// Test-only oracles: independent re-implementations used to pin expected
// values. Each deliberately takes a different algorithmic route than the
// library code it checks.

#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <utility>
#include <vector>

namespace oracles {

// Lower regularized incomplete gamma by adaptive Simpson quadrature after
// the substitution t = u^2 (removes the endpoint singularity for a >= 1/2).
double gamma_p_quadrature(double a, double x);

// Chi-square quantile by plain bisection on the quadrature-based CDF.
double chi2_quantile_bisect(int dof, double prob);

// Inverse standard normal by bisection on erfc.
double inverse_normal_bisect(double p);

// (1-alpha) quantile of the max of d independent chi-square(1) variables.
double max_indep_chi2_quantile(int d, double alpha);

// Roots of x exp(1 + radius/2 - x) = 1 by fixed-point iteration:
// u = 1 + radius/2 + log u and l = exp(l - 1 - radius/2).
std::pair<double, double> weight_bound_roots_fixed_point(double radius);

// Maximize sum c_pj w_pj over the EL ambiguity set by multi-start projected
// gradient ascent with Dykstra projections onto {EL distance <= radius} and
// the per-source mean-one hyperplanes.
double max_linear_projected_gradient(const std::vector<int>& counts,
                                     const std::vector<std::vector<double>>& coeffs, double radius,
                                     std::uint64_t seed = 7);

// Classical one-sample empirical likelihood: -2 log R(mu) for scalar data by
// bisection on the single dual multiplier. Returns infinity when mu is
// outside the open hull.
double one_sample_el_log_ratio(std::span<const double> y, double mu);

// MCB interval construction re-derived from the step formulas.
struct McbOracle {
    std::vector<double> lower, upper;
    std::vector<int> set;
};
McbOracle mcb_formulas(int k, const std::vector<double>& bounds);

// Mean waiting time of a single-server three-station tandem line with
// infinite buffers, by the departure-time recursion. `service` holds actual
// durations (already speed-scaled).
double tandem_lindley_infinite_buffer(std::span<const double> gaps,
                                      const std::array<std::vector<double>, 3>& service);

// E[f(X)] for X ~ N(mean, var) by 64-node Gauss-Hermite quadrature.
double gauss_hermite_expectation(const std::function<double(double)>& f, double mean, double var);

// Exact binomial tail P(Bin(n, 1/2) >= x).
double binomial_upper_tail_half(int n, int x);

} // namespace oracles
