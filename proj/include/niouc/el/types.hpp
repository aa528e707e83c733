#pragma once

#include <utility>
#include <vector>

namespace niouc::el {

/// Per-source sample sizes. m sources, n_p observations each; the average
/// n = (1/m) sum n_p is the rate parameter of every asymptotic statement.
struct SourceSizes {
    std::vector<int> counts;

    int num_sources() const { return static_cast<int>(counts.size()); }
    int total() const;
    double average() const;
    void validate() const; // m >= 1, n_p >= 2
};

/// Empirical-likelihood ambiguity set parameters: the budget (radius) is
/// either a chi-square quantile or a Monte Carlo quantile replacing it, so
/// the solver treats it as an opaque nonnegative number. alpha is carried
/// along for reporting only.
struct AmbiguitySpec {
    SourceSizes sizes;
    double radius = 0.0;
    double alpha = 0.0;
};

/// Per-source reweighting of the empirical distributions: one probability
/// block per source. This is the decision variable of every optimization in
/// the pipeline.
struct WeightVector {
    std::vector<std::vector<double>> blocks;

    static WeightVector uniform(const SourceSizes& sizes);

    /// -2 sum_p sum_j log(n_p w_pj): the empirical likelihood distance from
    /// the uniform weighting. +inf when any weight is nonpositive.
    double el_distance() const;

    /// Simplex constraints plus el_distance() <= radius + tol.
    bool feasible_for(const AmbiguitySpec& spec, double tol = 1e-7) const;

    int num_sources() const { return static_cast<int>(blocks.size()); }
};

/// Both roots of x * exp(1 + radius/2 - x) = 1; they bound every feasible
/// weight as l/n_p <= w_pj <= u/n_p. Returns (1,1) at radius 0.
std::pair<double, double> weight_bounds(const AmbiguitySpec& spec);

/// Outcome of maximizing a linear objective over the ambiguity set, with the
/// dual quantities needed to certify optimality: the radius multiplier theta
/// and the per-source normalizers nu_p of the stationarity system
/// w_pj = 2 theta / (nu_p - c_pj).
struct ElSolveReport {
    double value = 0.0;
    WeightVector weights;
    double theta = 0.0;
    std::vector<double> nu;
    int iterations = 0;
    double kkt_residual = 0.0;
    bool budget_active = false;
    bool converged = false;
};

} // namespace niouc::el
