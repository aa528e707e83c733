#pragma once

#include "niouc/el/types.hpp"

namespace niouc::el {

/// Maximize sum_p sum_j c_pj w_pj over the ambiguity set.
///
/// Solved through the KKT structure of the problem: at an optimum with the
/// budget active, w_pj = 2 theta / (nu_p - c_pj) with theta > 0 and
/// nu_p > max_j c_pj. The outer loop is a safeguarded Newton search on theta
/// driving the EL distance to the radius; each evaluation solves one scalar
/// root-find per source for nu_p. Sources whose coefficients are constant
/// (spread below 1e-12) stay at uniform weights, and a radius of zero or an
/// everywhere-constant objective short-circuits to the uniform solution.
///
/// On iteration-cap exhaustion the best iterate is returned with
/// converged = false and its residual; no exception is thrown for that case.
ElSolveReport max_linear(const AmbiguitySpec& spec, const std::vector<std::vector<double>>& coeffs);

} // namespace niouc::el
