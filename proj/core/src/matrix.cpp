#include "commdiag/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "commdiag/errors.hpp"

namespace commdiag {

namespace {

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

std::string dims(const Matrix& m) {
    return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

}  // namespace

void ToleranceConfig::validate() const {
    if (!(rtol > 0) || !(atol > 0) || !(cluster_tol > 0) || !(cond_max > 0)) {
        throw InvalidSpec("tolerances must be strictly positive");
    }
    if (rtol < atol) {
        throw InvalidSpec("rtol must be at least atol");
    }
}

Matrix::Matrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), entries_(rows * cols, Complex{}) {}

Matrix::Matrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), entries_(std::move(entries)) {
    if (entries_.size() != rows_ * cols_) {
        throw DimensionError("entry count " + std::to_string(entries_.size()) + " does not match " +
                             std::to_string(rows_) + "x" + std::to_string(cols_));
    }
    if (!all_finite()) throw InvalidMatrix("matrix entries must be finite");
}

Matrix::Matrix(std::initializer_list<std::initializer_list<Complex>> rows)
    : rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
    entries_.reserve(rows_ * cols_);
    for (const auto& row : rows) {
        if (row.size() != cols_) throw DimensionError("ragged matrix literal");
        entries_.insert(entries_.end(), row.begin(), row.end());
    }
    if (!all_finite()) throw InvalidMatrix("matrix entries must be finite");
}

Matrix Matrix::identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
}

Matrix Matrix::diagonal(std::span<const Complex> values) {
    Matrix m(values.size(), values.size());
    for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
    return m;
}

Matrix Matrix::from_columns(const std::vector<ComplexVector>& columns) {
    if (columns.empty()) return {};
    Matrix m(columns.front().size(), columns.size());
    for (std::size_t j = 0; j < columns.size(); ++j) m.set_column(j, columns[j]);
    return m;
}

ComplexVector Matrix::column(std::size_t j) const {
    ComplexVector out(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out[i] = (*this)(i, j);
    return out;
}

void Matrix::set_column(std::size_t j, std::span<const Complex> values) {
    if (values.size() != rows_) throw DimensionError("column length mismatch");
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = values[i];
}

ComplexVector Matrix::diagonal_entries() const {
    ComplexVector out(std::min(rows_, cols_));
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = (*this)(i, i);
    return out;
}

bool Matrix::all_finite() const noexcept {
    return std::all_of(entries_.begin(), entries_.end(), finite);
}

Matrix& Matrix::operator+=(const Matrix& other) {
    if (rows_ != other.rows_ || cols_ != other.cols_) {
        throw DimensionError("cannot add " + dims(*this) + " and " + dims(other));
    }
    for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] += other.entries_[k];
    return *this;
}

Matrix& Matrix::operator-=(const Matrix& other) {
    if (rows_ != other.rows_ || cols_ != other.cols_) {
        throw DimensionError("cannot subtract " + dims(other) + " from " + dims(*this));
    }
    for (std::size_t k = 0; k < entries_.size(); ++k) entries_[k] -= other.entries_[k];
    return *this;
}

Matrix& Matrix::operator*=(Complex scale) {
    for (auto& z : entries_) z *= scale;
    return *this;
}

Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
Matrix operator*(Matrix a, Complex scale) { return a *= scale; }
Matrix operator*(Complex scale, Matrix a) { return a *= scale; }
Matrix operator*(const Matrix& a, const Matrix& b) { return matmul(a, b); }

Matrix matmul(const Matrix& a, const Matrix& b) {
    if (a.cols() != b.rows()) {
        throw DimensionError("cannot multiply " + dims(a) + " by " + dims(b));
    }
    Matrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t k = 0; k < a.cols(); ++k) {
            const Complex aik = a(i, k);
            if (aik == Complex{}) continue;
            for (std::size_t j = 0; j < b.cols(); ++j) c(i, j) += aik * b(k, j);
        }
    }
    return c;
}

Matrix conj_transpose(const Matrix& a) {
    Matrix t(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = std::conj(a(i, j));
    return t;
}

Matrix transpose(const Matrix& a) {
    Matrix t(a.cols(), a.rows());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) t(j, i) = a(i, j);
    return t;
}

double frobenius_norm(const Matrix& a) {
    // Scaled sum of squares, as in LAPACK's zlassq.
    double scale = 0.0;
    double ssq = 1.0;
    auto accumulate = [&](double x) {
        if (x == 0.0) return;
        const double ax = std::abs(x);
        if (scale < ax) {
            ssq = 1.0 + ssq * (scale / ax) * (scale / ax);
            scale = ax;
        } else {
            ssq += (ax / scale) * (ax / scale);
        }
    };
    for (const Complex& z : a.entries()) {
        accumulate(z.real());
        accumulate(z.imag());
    }
    return scale * std::sqrt(ssq);
}

double max_abs(const Matrix& a) {
    double m = 0.0;
    for (const Complex& z : a.entries()) m = std::max(m, std::abs(z));
    return m;
}

Matrix commutator(const Matrix& a, const Matrix& b) {
    if (!a.is_square() || !b.is_square() || a.rows() != b.rows()) {
        throw DimensionError("commutator needs square matrices of equal order, got " + dims(a) +
                             " and " + dims(b));
    }
    return matmul(a, b) - matmul(b, a);
}

Matrix submatrix(const Matrix& a, std::span<const std::size_t> rows, std::span<const std::size_t> cols) {
    Matrix s(rows.size(), cols.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < cols.size(); ++j) s(i, j) = a(rows[i], cols[j]);
    return s;
}

Matrix permute_columns(const Matrix& a, std::span<const std::size_t> order) {
    if (order.size() != a.cols()) throw DimensionError("column order has wrong length");
    Matrix p(a.rows(), a.cols());
    for (std::size_t j = 0; j < order.size(); ++j)
        for (std::size_t i = 0; i < a.rows(); ++i) p(i, j) = a(i, order[j]);
    return p;
}

double unitarity_defect(const Matrix& a) {
    return frobenius_norm(matmul(conj_transpose(a), a) - Matrix::identity(a.cols()));
}

Complex vdot(std::span<const Complex> x, std::span<const Complex> y) {
    Complex s{};
    for (std::size_t i = 0; i < x.size(); ++i) s += std::conj(x[i]) * y[i];
    return s;
}

double norm2(std::span<const Complex> x) {
    double scale = 0.0;
    for (const Complex& z : x) scale = std::max(scale, std::abs(z));
    if (scale == 0.0) return 0.0;
    double s = 0.0;
    for (const Complex& z : x) s += std::norm(z / scale);
    return scale * std::sqrt(s);
}

LuDecomposition::LuDecomposition(const Matrix& a, const ToleranceConfig& tol) : lu_(a) {
    if (!a.is_square()) throw DimensionError("LU needs a square matrix, got " + dims(a));
    const std::size_t n = a.rows();
    const double floor = tol.atol * frobenius_norm(a);
    pivots_.resize(n);
    min_pivot_ = n ? std::numeric_limits<double>::infinity() : 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t p = k;
        double best = std::abs(lu_(k, k));
        for (std::size_t i = k + 1; i < n; ++i) {
            const double v = std::abs(lu_(i, k));
            if (v > best) {
                best = v;
                p = i;
            }
        }
        min_pivot_ = std::min(min_pivot_, best);
        if (best <= floor || best == 0.0) {
            throw SingularMatrixError(best, "matrix is singular to tolerance: pivot " + std::to_string(best) +
                                                " at column " + std::to_string(k));
        }
        pivots_[k] = p;
        if (p != k) {
            for (std::size_t j = 0; j < n; ++j) std::swap(lu_(k, j), lu_(p, j));
        }
        const Complex pivot = lu_(k, k);
        for (std::size_t i = k + 1; i < n; ++i) {
            const Complex factor = lu_(i, k) / pivot;
            lu_(i, k) = factor;
            if (factor == Complex{}) continue;
            for (std::size_t j = k + 1; j < n; ++j) lu_(i, j) -= factor * lu_(k, j);
        }
    }
}

Matrix LuDecomposition::solve(const Matrix& rhs) const {
    const std::size_t n = lu_.rows();
    if (rhs.rows() != n) {
        throw DimensionError("right-hand side has " + std::to_string(rhs.rows()) + " rows, expected " +
                             std::to_string(n));
    }
    Matrix x = rhs;
    for (std::size_t k = 0; k < n; ++k) {
        if (pivots_[k] != k) {
            for (std::size_t j = 0; j < x.cols(); ++j) std::swap(x(k, j), x(pivots_[k], j));
        }
    }
    for (std::size_t j = 0; j < x.cols(); ++j) {
        for (std::size_t i = 0; i < n; ++i) {
            Complex s = x(i, j);
            for (std::size_t k = 0; k < i; ++k) s -= lu_(i, k) * x(k, j);
            x(i, j) = s;
        }
        for (std::size_t i = n; i-- > 0;) {
            Complex s = x(i, j);
            for (std::size_t k = i + 1; k < n; ++k) s -= lu_(i, k) * x(k, j);
            x(i, j) = s / lu_(i, i);
        }
    }
    return x;
}

Matrix LuDecomposition::inverse() const { return solve(Matrix::identity(lu_.rows())); }

Matrix solve(const Matrix& a, const Matrix& rhs, const ToleranceConfig& tol) {
    return LuDecomposition(a, tol).solve(rhs);
}

Matrix inverse(const Matrix& a, const ToleranceConfig& tol) { return LuDecomposition(a, tol).inverse(); }

double condition_estimate(const Matrix& a, const ToleranceConfig& tol) {
    return frobenius_norm(a) * frobenius_norm(inverse(a, tol));
}

}  // namespace commdiag
