#pragma once

#include "niouc/sim/dataset.hpp"
#include "niouc/sim/model.hpp"

#include <vector>

namespace niouc::sim {

/// Analytic benchmark model: solution i is characterized by an integer a_i,
/// the sources are independent Gaussians N(c_p, tau2_p), and the output of a
/// replication averages a quadratic-plus-cross-terms form over T draws per
/// source. Means and influence functions have closed forms, which is what
/// makes this model the calibration workhorse.
struct QuadraticModelParams {
    std::vector<double> a;    // one per solution
    std::vector<double> c;    // true means, one per source
    std::vector<double> tau2; // true variances, one per source
    int replication_length = 10;

    int num_solutions() const { return static_cast<int>(a.size()); }
    int num_sources() const { return static_cast<int>(c.size()); }
    void validate() const;
};

/// (1/T) sum_t [ sum_p a_i (Z_p(t)-a_i)^2
///             + sum_p sum_{p'>p} a_i (Z_p(t)-a_i)(Z_p'(t)-a_i) ].
double quadratic_output(const QuadraticModelParams& params, int solution,
                        const std::vector<std::vector<double>>& z);

/// Exact mean under the true Gaussian inputs.
double quadratic_true_eta(const QuadraticModelParams& params, int solution);

/// Exact influence function of the mean with respect to source p, evaluated
/// at x, under the true Gaussian inputs.
double quadratic_true_if(const QuadraticModelParams& params, int solution, int source, double x);

/// Exact mean when each source is the dataset reweighted by the given
/// weights (closed form in the weighted first and second sample moments).
double quadratic_eta_weighted(const QuadraticModelParams& params, int solution, const InputDataset& data,
                              const el::WeightVector& weights);

class QuadraticModel : public ModelSpec {
public:
    explicit QuadraticModel(QuadraticModelParams params);

    int num_solutions() const override { return params_.num_solutions(); }
    int num_sources() const override { return params_.num_sources(); }
    int inputs_per_replication(int, int) const override { return params_.replication_length; }
    double evaluate(int solution, const std::vector<std::vector<double>>& inputs,
                    std::span<const double> aux) const override;

    const QuadraticModelParams& params() const { return params_; }

private:
    QuadraticModelParams params_;
};

} // namespace niouc::sim
