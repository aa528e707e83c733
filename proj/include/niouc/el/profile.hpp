#pragma once

#include "niouc/el/types.hpp"

namespace niouc::el {

/// Observations for the profile program: obs[p][j] is a q-vector, the j-th
/// sample of source p.
using VectorObservations = std::vector<std::vector<std::vector<double>>>;

struct ElRatioResult {
    bool feasible = false;
    double value = 0.0; // -2 log R(mu), nonnegative when feasible
    WeightVector weights;
    int iterations = 0;
};

/// Profile empirical log-likelihood ratio: minimize -2 sum log(n_p w_pj)
/// subject to per-source simplices and sum_p sum_j Y_pj w_pj = mu.
///
/// Solved in the dual: a damped Newton iteration on the q-dimensional mean
/// multiplier, with one scalar root-find per source for the normalizer.
/// mu outside the Minkowski sum of the per-source convex hulls makes the
/// dual unbounded; that is detected (multiplier norm above 1e8, plus an
/// interval pre-check when q = 1) and reported as infeasible rather than
/// thrown.
ElRatioResult el_log_ratio(const SourceSizes& sizes, const VectorObservations& obs,
                           const std::vector<double>& mu);

/// Support points of the confidence region: for each direction a, maximize
/// a' (attained mean) over the ambiguity set and return the attained mean
/// sum_p sum_j Y_pj w*_pj of the maximizer. With directions sweeping the
/// circle this traces the region boundary.
std::vector<std::vector<double>> region_boundary(const SourceSizes& sizes, const VectorObservations& obs,
                                                 double radius,
                                                 const std::vector<std::vector<double>>& directions);

} // namespace niouc::el
