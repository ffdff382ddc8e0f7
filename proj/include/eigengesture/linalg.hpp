#pragma once

#include <cstddef>
#include <initializer_list>
#include <vector>

#include "eigengesture/errors.hpp"

namespace eigengesture {

/// Dense real vector, 64-bit floats throughout.
class Vector {
public:
    Vector() = default;
    explicit Vector(std::size_t len, double fill = 0.0) : elems_(len, fill) {}
    explicit Vector(std::vector<double> elems) : elems_(std::move(elems)) {}
    Vector(std::initializer_list<double> elems) : elems_(elems) {}

    std::size_t len() const { return elems_.size(); }
    double& operator[](std::size_t i) { return elems_[i]; }
    double operator[](std::size_t i) const { return elems_[i]; }
    double* data() { return elems_.data(); }
    const double* data() const { return elems_.data(); }
    const std::vector<double>& elems() const { return elems_; }

    auto begin() { return elems_.begin(); }
    auto end() { return elems_.end(); }
    auto begin() const { return elems_.begin(); }
    auto end() const { return elems_.end(); }

    bool operator==(const Vector&) const = default;

private:
    std::vector<double> elems_;
};

/// Dense real matrix, row-major storage.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), elems_(rows * cols, fill) {}
    Matrix(std::size_t rows, std::size_t cols, std::vector<double> row_major);

    static Matrix identity(std::size_t n);
    static Matrix from_rows(std::initializer_list<std::initializer_list<double>> rows);
    static Matrix from_columns(const std::vector<Vector>& columns);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    double& operator()(std::size_t r, std::size_t c) { return elems_[r * cols_ + c]; }
    double operator()(std::size_t r, std::size_t c) const { return elems_[r * cols_ + c]; }
    const std::vector<double>& elems() const { return elems_; }

    Vector column(std::size_t j) const;
    void set_column(std::size_t j, const Vector& v);
    Matrix transposed() const;
    /// The leading k columns as a new rows() x k matrix.
    Matrix first_columns(std::size_t k) const;
    double frobenius_norm() const;

    bool operator==(const Matrix&) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> elems_;
};

/// One eigenvalue with its unit-norm eigenvector. Vectors are sign-normalized:
/// the first element with magnitude above 1e-12 is positive.
struct EigenPair {
    double value = 0.0;
    Vector vector;
};

/// Full eigendecomposition of a symmetric matrix, eigenvalues non-increasing.
struct EigenDecomposition {
    std::vector<EigenPair> pairs;
    std::size_t source_dim = 0;
};

Matrix mat_mul(const Matrix& a, const Matrix& b);

/// Per-row arithmetic mean across columns (the mean of the column set).
Vector column_mean(const Matrix& m);

double euclidean_distance(const Vector& a, const Vector& b);

/// Cyclic Jacobi eigensolver for symmetric matrices. Pivots sweep the upper
/// triangle in row-major order until the off-diagonal Frobenius norm falls to
/// 1e-10 of the input Frobenius norm; at most 100 sweeps, then NoConvergence.
/// Fully deterministic: identical input bits give identical output bits.
EigenDecomposition jacobi_eigh(const Matrix& c);

/// Scale to unit 2-norm and apply the sign convention (first element with
/// magnitude above 1e-12 made positive). Throws ZeroVector below 1e-12 norm.
Vector unit_normalize(const Vector& v);

// Small helpers shared across the pipeline.
double dot(const Vector& a, const Vector& b);
double norm2(const Vector& v);
Vector operator-(const Vector& a, const Vector& b);
Vector operator+(const Vector& a, const Vector& b);
Vector operator*(double s, const Vector& v);
Vector mat_vec(const Matrix& m, const Vector& v);
/// m^T * v without materializing the transpose.
Vector mat_transposed_vec(const Matrix& m, const Vector& v);

}  // namespace eigengesture
