#pragma once

#include "niouc/stats/rng.hpp"

#include <optional>
#include <vector>

namespace niouc::stats {

/// Minimal dense row-major matrix; everything here is small (dimension up to
/// the number of solutions), so no BLAS is warranted.
class Matrix {
public:
    Matrix() = default;
    Matrix(int rows, int cols) : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * cols, 0.0) {}

    static Matrix identity(int n) {
        Matrix m(n, n);
        for (int i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    double& operator()(int i, int j) { return data_[static_cast<std::size_t>(i) * cols_ + j]; }
    double operator()(int i, int j) const { return data_[static_cast<std::size_t>(i) * cols_ + j]; }

    const std::vector<double>& data() const { return data_; }

private:
    int rows_ = 0;
    int cols_ = 0;
    std::vector<double> data_;
};

/// Lower-triangular Cholesky factor of a symmetric matrix, or nullopt when
/// the matrix is not (numerically) positive definite.
std::optional<Matrix> cholesky(const Matrix& a);

/// Correlation matrix: symmetric, unit diagonal, entries in [-1, 1].
/// Construction validates the shape constraints; positive definiteness is
/// only required (and repaired if needed) at sampling time.
class CorrelationMatrix {
public:
    explicit CorrelationMatrix(Matrix entries);

    int dimension() const { return entries_.rows(); }
    const Matrix& entries() const { return entries_; }

private:
    Matrix entries_;
};

/// Draw `count` iid zero-mean rows with the given correlation. Near-singular
/// inputs get a diagonal jitter of 1e-10 escalated x10 up to three times
/// before failing; deterministic given the stream.
Matrix sample_mvn(const CorrelationMatrix& corr, int count, RngStream& rng);

} // namespace niouc::stats
