#include "niouc/stats/matrix.hpp"

#include <cmath>
#include <stdexcept>

namespace niouc::stats {

std::optional<Matrix> cholesky(const Matrix& a) {
    const int n = a.rows();
    if (n != a.cols()) throw std::invalid_argument("cholesky: matrix must be square");
    Matrix l(n, n);
    for (int j = 0; j < n; ++j) {
        double diag = a(j, j);
        for (int k = 0; k < j; ++k) diag -= l(j, k) * l(j, k);
        if (!(diag > 0.0)) return std::nullopt;
        l(j, j) = std::sqrt(diag);
        for (int i = j + 1; i < n; ++i) {
            double v = a(i, j);
            for (int k = 0; k < j; ++k) v -= l(i, k) * l(j, k);
            l(i, j) = v / l(j, j);
        }
    }
    return l;
}

CorrelationMatrix::CorrelationMatrix(Matrix entries) : entries_(std::move(entries)) {
    const int n = entries_.rows();
    if (n != entries_.cols() || n < 1)
        throw std::invalid_argument("CorrelationMatrix: entries must be square and nonempty");
    for (int i = 0; i < n; ++i) {
        if (std::fabs(entries_(i, i) - 1.0) > 1e-12)
            throw std::invalid_argument("CorrelationMatrix: diagonal must be 1");
        for (int j = 0; j < i; ++j) {
            if (std::fabs(entries_(i, j) - entries_(j, i)) > 1e-12)
                throw std::invalid_argument("CorrelationMatrix: matrix must be symmetric");
            if (std::fabs(entries_(i, j)) > 1.0 + 1e-12)
                throw std::invalid_argument("CorrelationMatrix: entries must lie in [-1,1]");
        }
    }
}

Matrix sample_mvn(const CorrelationMatrix& corr, int count, RngStream& rng) {
    const int dim = corr.dimension();
    if (count < 0) throw std::invalid_argument("sample_mvn: count must be nonnegative");

    std::optional<Matrix> factor = cholesky(corr.entries());
    double jitter = 1e-10;
    for (int attempt = 0; !factor && attempt < 3; ++attempt, jitter *= 10.0) {
        Matrix repaired = corr.entries();
        for (int i = 0; i < dim; ++i) repaired(i, i) += jitter;
        factor = cholesky(repaired);
    }
    if (!factor) throw std::runtime_error("sample_mvn: correlation matrix not factorizable after jitter repair");

    const Matrix& l = *factor;
    Matrix out(count, dim);
    std::vector<double> z(dim);
    for (int r = 0; r < count; ++r) {
        for (int j = 0; j < dim; ++j) z[j] = rng.next_normal();
        for (int i = 0; i < dim; ++i) {
            double v = 0.0;
            for (int j = 0; j <= i; ++j) v += l(i, j) * z[j];
            out(r, i) = v;
        }
    }
    return out;
}

} // namespace niouc::stats
