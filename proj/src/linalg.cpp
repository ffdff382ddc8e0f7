#include "eigengesture/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

namespace eigengesture {

namespace {

constexpr double kSignificantElement = 1e-12;
constexpr double kSymmetryTolerance = 1e-9;
constexpr double kOffDiagonalTolerance = 1e-10;
constexpr int kSweepLimit = 100;

std::string dims(const Matrix& m) {
    return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

// Flip the vector so its first element with magnitude above 1e-12 is positive.
void sign_normalize(Vector& v) {
    for (std::size_t i = 0; i < v.len(); ++i) {
        if (std::abs(v[i]) > kSignificantElement) {
            if (v[i] < 0.0) {
                for (auto& x : v) x = -x;
            }
            return;
        }
    }
}

double off_diagonal_norm(const Matrix& a) {
    double sum = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (i != j) sum += a(i, j) * a(i, j);
        }
    }
    return std::sqrt(sum);
}

}  // namespace

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<double> row_major)
    : rows_(rows), cols_(cols), elems_(std::move(row_major)) {
    if (elems_.size() != rows * cols) {
        throw DimensionMismatch("matrix data size " + std::to_string(elems_.size()) +
                                " does not match " + std::to_string(rows) + "x" +
                                std::to_string(cols));
    }
}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Matrix Matrix::from_rows(std::initializer_list<std::initializer_list<double>> rows) {
    const std::size_t r = rows.size();
    const std::size_t c = r == 0 ? 0 : rows.begin()->size();
    Matrix m(r, c);
    std::size_t i = 0;
    for (const auto& row : rows) {
        if (row.size() != c) {
            throw DimensionMismatch("ragged row in matrix literal");
        }
        std::size_t j = 0;
        for (double x : row) m(i, j++) = x;
        ++i;
    }
    return m;
}

Matrix Matrix::from_columns(const std::vector<Vector>& columns) {
    const std::size_t c = columns.size();
    const std::size_t r = c == 0 ? 0 : columns.front().len();
    Matrix m(r, c);
    for (std::size_t j = 0; j < c; ++j) {
        if (columns[j].len() != r) {
            throw DimensionMismatch("ragged column in matrix construction");
        }
        for (std::size_t i = 0; i < r; ++i) m(i, j) = columns[j][i];
    }
    return m;
}

Vector Matrix::column(std::size_t j) const {
    Vector v(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v[i] = (*this)(i, j);
    return v;
}

void Matrix::set_column(std::size_t j, const Vector& v) {
    if (v.len() != rows_) {
        throw DimensionMismatch("column length " + std::to_string(v.len()) +
                                " does not fit matrix " + dims(*this));
    }
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
}

Matrix Matrix::transposed() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    }
    return t;
}

Matrix Matrix::first_columns(std::size_t k) const {
    if (k > cols_) {
        throw DimensionMismatch("cannot take " + std::to_string(k) + " columns of " + dims(*this));
    }
    Matrix m(rows_, k);
    for (std::size_t i = 0; i < rows_; ++i) {
        for (std::size_t j = 0; j < k; ++j) m(i, j) = (*this)(i, j);
    }
    return m;
}

double Matrix::frobenius_norm() const {
    double sum = 0.0;
    for (double x : elems_) sum += x * x;
    return std::sqrt(sum);
}

Matrix mat_mul(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) {
        throw DimensionMismatch("cannot multiply " + dims(a) + " by " + dims(b));
    }
    Matrix r(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const double aik = a(i, k);
            for (std::size_t j = 0; j < b.cols(); ++j) {
                r(i, j) += aik * b(k, j);
            }
        }
    }
    return r;
}

Vector column_mean(const Matrix& m) {
    if (m.cols() == 0) {
        throw DimensionMismatch("column_mean of an empty matrix");
    }
    Vector mean(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        double sum = 0.0;
        for (std::size_t j = 0; j < m.cols(); ++j) sum += m(i, j);
        mean[i] = sum / static_cast<double>(m.cols());
    }
    return mean;
}

double euclidean_distance(const Vector& a, const Vector& b) {
    if (a.len() != b.len()) {
        throw DimensionMismatch("distance between vectors of length " + std::to_string(a.len()) +
                                " and " + std::to_string(b.len()));
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < a.len(); ++i) {
        const double d = a[i] - b[i];
        sum += d * d;
    }
    return std::sqrt(sum);
}

EigenDecomposition jacobi_eigh(const Matrix& c) {
    const std::size_t n = c.rows();
    if (n == 0 || c.cols() != n) {
        throw NotSymmetric("eigensolver requires a square matrix, got " + dims(c));
    }

    const double frob = c.frobenius_norm();
    double max_asym = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            max_asym = std::max(max_asym, std::abs(c(i, j) - c(j, i)));
        }
    }
    if (max_asym > kSymmetryTolerance * frob) {
        throw NotSymmetric("matrix is not symmetric (max asymmetry " + std::to_string(max_asym) +
                           ")");
    }

    // Work on the symmetrized copy so roundoff asymmetry cannot bias pivots.
    Matrix a(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) a(i, j) = 0.5 * (c(i, j) + c(j, i));
    }
    Matrix v = Matrix::identity(n);

    const double stop = kOffDiagonalTolerance * frob;
    bool converged = off_diagonal_norm(a) <= stop;
    for (int sweep = 0; sweep < kSweepLimit && !converged; ++sweep) {
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (apq == 0.0) continue;
                const double app = a(p, p);
                const double aqq = a(q, q);
                // Negligible against the diagonal: annihilate outright.
                const double g = 100.0 * std::abs(apq);
                if (std::abs(app) + g == std::abs(app) && std::abs(aqq) + g == std::abs(aqq)) {
                    a(p, q) = 0.0;
                    a(q, p) = 0.0;
                    continue;
                }
                const double theta = (aqq - app) / (2.0 * apq);
                double t;
                if (theta * theta + 1.0 == theta * theta) {
                    t = 0.5 / theta;  // |theta| huge; exact formula underflows to it anyway
                } else {
                    const double root = std::sqrt(theta * theta + 1.0);
                    t = theta >= 0.0 ? 1.0 / (theta + root) : 1.0 / (theta - root);
                }
                const double cos_r = 1.0 / std::sqrt(t * t + 1.0);
                const double sin_r = t * cos_r;
                const double tau = sin_r / (1.0 + cos_r);

                a(p, p) = app - t * apq;
                a(q, q) = aqq + t * apq;
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                for (std::size_t i = 0; i < n; ++i) {
                    if (i == p || i == q) continue;
                    const double aip = a(i, p);
                    const double aiq = a(i, q);
                    a(i, p) = aip - sin_r * (aiq + tau * aip);
                    a(p, i) = a(i, p);
                    a(i, q) = aiq + sin_r * (aip - tau * aiq);
                    a(q, i) = a(i, q);
                }
                for (std::size_t i = 0; i < n; ++i) {
                    const double vip = v(i, p);
                    const double viq = v(i, q);
                    v(i, p) = vip - sin_r * (viq + tau * vip);
                    v(i, q) = viq + sin_r * (vip - tau * viq);
                }
            }
        }
        converged = off_diagonal_norm(a) <= stop;
    }
    if (!converged) {
        throw NoConvergence("Jacobi eigensolver did not converge in " +
                            std::to_string(kSweepLimit) + " sweeps");
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return a(x, x) > a(y, y); });

    EigenDecomposition dec;
    dec.source_dim = n;
    dec.pairs.reserve(n);
    for (std::size_t idx : order) {
        EigenPair pair;
        pair.value = a(idx, idx);
        pair.vector = v.column(idx);
        // Rotations keep columns orthonormal; renormalize to pin the norm
        // within 1e-12 even after long accumulations.
        const double nrm = norm2(pair.vector);
        for (auto& x : pair.vector) x /= nrm;
        sign_normalize(pair.vector);
        dec.pairs.push_back(std::move(pair));
    }
    return dec;
}

Vector unit_normalize(const Vector& v) {
    const double nrm = norm2(v);
    if (!(nrm > kSignificantElement)) {
        throw ZeroVector("cannot normalize a vector of norm " + std::to_string(nrm));
    }
    Vector out(v.len());
    for (std::size_t i = 0; i < v.len(); ++i) out[i] = v[i] / nrm;
    sign_normalize(out);
    return out;
}

double dot(const Vector& a, const Vector& b) {
    if (a.len() != b.len()) {
        throw DimensionMismatch("dot of vectors of length " + std::to_string(a.len()) + " and " +
                                std::to_string(b.len()));
    }
    double sum = 0.0;
    for (std::size_t i = 0; i < a.len(); ++i) sum += a[i] * b[i];
    return sum;
}

double norm2(const Vector& v) {
    double sum = 0.0;
    for (double x : v) sum += x * x;
    return std::sqrt(sum);
}

Vector operator-(const Vector& a, const Vector& b) {
    if (a.len() != b.len()) {
        throw DimensionMismatch("subtracting vectors of length " + std::to_string(a.len()) +
                                " and " + std::to_string(b.len()));
    }
    Vector r(a.len());
    for (std::size_t i = 0; i < a.len(); ++i) r[i] = a[i] - b[i];
    return r;
}

Vector operator+(const Vector& a, const Vector& b) {
    if (a.len() != b.len()) {
        throw DimensionMismatch("adding vectors of length " + std::to_string(a.len()) + " and " +
                                std::to_string(b.len()));
    }
    Vector r(a.len());
    for (std::size_t i = 0; i < a.len(); ++i) r[i] = a[i] + b[i];
    return r;
}

Vector operator*(double s, const Vector& v) {
    Vector r(v.len());
    for (std::size_t i = 0; i < v.len(); ++i) r[i] = s * v[i];
    return r;
}

Vector mat_vec(const Matrix& m, const Vector& v) {
    if (m.cols() != v.len()) {
        throw DimensionMismatch("cannot apply " + dims(m) + " to a length-" +
                                std::to_string(v.len()) + " vector");
    }
    Vector r(m.rows());
    for (std::size_t i = 0; i < m.rows(); ++i) {
        double sum = 0.0;
        for (std::size_t j = 0; j < m.cols(); ++j) sum += m(i, j) * v[j];
        r[i] = sum;
    }
    return r;
}

Vector mat_transposed_vec(const Matrix& m, const Vector& v) {
    if (m.rows() != v.len()) {
        throw DimensionMismatch("cannot apply transpose of " + dims(m) + " to a length-" +
                                std::to_string(v.len()) + " vector");
    }
    Vector r(m.cols());
    for (std::size_t j = 0; j < m.cols(); ++j) {
        double sum = 0.0;
        for (std::size_t i = 0; i < m.rows(); ++i) sum += m(i, j) * v[i];
        r[j] = sum;
    }
    return r;
}

}  // namespace eigengesture
