#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "commdiag/tolerance.hpp"

namespace commdiag {

using Complex = std::complex<double>;
using ComplexVector = std::vector<Complex>;

// Dense complex matrix, row-major. Every entry is finite: constructors that
// take caller data reject NaN/Inf with InvalidMatrix.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols);
    Matrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);
    Matrix(std::initializer_list<std::initializer_list<Complex>> rows);

    static Matrix zeros(std::size_t rows, std::size_t cols) { return Matrix(rows, cols); }
    static Matrix identity(std::size_t n);
    static Matrix diagonal(std::span<const Complex> values);
    static Matrix from_columns(const std::vector<ComplexVector>& columns);

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }
    bool is_square() const noexcept { return rows_ == cols_; }
    bool empty() const noexcept { return entries_.empty(); }

    Complex& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
    const Complex& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

    std::span<const Complex> entries() const noexcept { return entries_; }

    ComplexVector column(std::size_t j) const;
    void set_column(std::size_t j, std::span<const Complex> values);
    ComplexVector diagonal_entries() const;

    bool all_finite() const noexcept;

    Matrix& operator+=(const Matrix& other);
    Matrix& operator-=(const Matrix& other);
    Matrix& operator*=(Complex scale);

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Complex> entries_;
};

Matrix operator+(Matrix a, const Matrix& b);
Matrix operator-(Matrix a, const Matrix& b);
Matrix operator*(Matrix a, Complex scale);
Matrix operator*(Complex scale, Matrix a);
Matrix operator*(const Matrix& a, const Matrix& b);

// Textbook product; DimensionError when a.cols() != b.rows().
Matrix matmul(const Matrix& a, const Matrix& b);
Matrix conj_transpose(const Matrix& a);
Matrix transpose(const Matrix& a);

double frobenius_norm(const Matrix& a);
double max_abs(const Matrix& a);

// a*b - b*a for square matrices of equal order.
Matrix commutator(const Matrix& a, const Matrix& b);

// Sub-block selected by row and column index lists.
Matrix submatrix(const Matrix& a, std::span<const std::size_t> rows, std::span<const std::size_t> cols);

// Columns of a rearranged so that column j of the result is column order[j] of a.
Matrix permute_columns(const Matrix& a, std::span<const std::size_t> order);

// ||a^H a - I||_F
double unitarity_defect(const Matrix& a);

// Hermitian inner product x^H y and 2-norm.
Complex vdot(std::span<const Complex> x, std::span<const Complex> y);
double norm2(std::span<const Complex> x);

// Partial-pivot LU factorization. Construction throws SingularMatrixError
// when a pivot falls to atol * ||a||_F or below.
class LuDecomposition {
public:
    LuDecomposition(const Matrix& a, const ToleranceConfig& tol = {});

    Matrix solve(const Matrix& rhs) const;
    Matrix inverse() const;
    std::size_t order() const noexcept { return lu_.rows(); }
    double min_pivot() const noexcept { return min_pivot_; }

private:
    Matrix lu_;
    std::vector<std::size_t> pivots_;
    double min_pivot_ = 0.0;
};

Matrix solve(const Matrix& a, const Matrix& rhs, const ToleranceConfig& tol = {});
Matrix inverse(const Matrix& a, const ToleranceConfig& tol = {});

// ||a||_F * ||a^{-1}||_F; throws SingularMatrixError like solve.
double condition_estimate(const Matrix& a, const ToleranceConfig& tol = {});

}  // namespace commdiag
