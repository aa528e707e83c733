#pragma once

namespace niouc::stats {

/// Lower regularized incomplete gamma P(a, x); series expansion for
/// x < a + 1, Lentz continued fraction otherwise.
double regularized_gamma_p(double a, double x);

/// Standard normal CDF.
double normal_cdf(double x);

/// Inverse standard normal CDF for p in (0,1); accurate to ~1e-15 after
/// Newton refinement of the rational initial guess.
double inverse_normal_cdf(double p);

/// Chi-square quantile: the x with P(dof/2, x/2) = prob, solved by
/// safeguarded Newton with a bisection fallback. Throws std::domain_error
/// for dof < 1 or prob outside (0,1).
double chi2_quantile(int dof, double prob);

} // namespace niouc::stats
