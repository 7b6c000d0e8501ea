#pragma once

#include <vector>

#include "commdiag/matrix.hpp"
#include "commdiag/partition.hpp"
#include "commdiag/tolerance.hpp"

namespace commdiag {

// A = Z T Z^H with Z unitary and T upper triangular.
struct SchurForm {
    Matrix t;
    Matrix z;
    int iterations = 0;  // QR sweeps spent
};

// Householder reduction to Hessenberg form followed by Wilkinson-shifted
// complex QR. Throws NonConvergence after 30 * n sweeps.
SchurForm schur_decompose(const Matrix& a, const ToleranceConfig& tol = {});

// Eigenvalues only (diagonal of the Schur factor), canonical order.
ComplexVector eigenvalues(const Matrix& a, const ToleranceConfig& tol = {});

struct EigenDecomposition {
    Matrix s;                   // unit-norm eigenvectors as columns
    ComplexVector eigenvalues;  // aligned with the columns of s
    double residual = 0.0;      // ||A S - S D||_F / ||A||_F
    double cond_estimate = 0.0; // ||S||_F ||S^-1||_F
    bool is_unitary = false;
};

/// Full eigendecomposition of a square matrix.
///
/// Eigenvalues come back in canonical order (descending real part, then
/// descending imaginary part). Each eigenvector has unit 2-norm and its
/// largest-magnitude entry real and positive.
///
/// Throws NotDiagonalizable when the eigenvector matrix is too ill-conditioned
/// (cond_estimate > cond_max) or the residual exceeds rtol, and
/// NonConvergence when the QR sweep budget runs out.
EigenDecomposition eigendecompose(const Matrix& a, const ToleranceConfig& tol = {});

// ||a a^H - a^H a||_F <= rtol ||a||_F^2
bool is_normal(const Matrix& a, const ToleranceConfig& tol = {});

/// Replaces each cluster's eigenvectors with an orthonormal basis of the same
/// span (modified Gram-Schmidt, two passes). `a` is the decomposed matrix; it
/// must be normal for the result to be unitary.
///
/// Throws RankDeficientCluster when a cluster's columns are dependent to
/// within cluster_tol, NotDiagonalizable when `d` does not decompose `a` to
/// rtol, and InternalDiagnostic when the assembled basis is not unitary
/// (a non-normal input).
EigenDecomposition orthonormalize_within_eigenspaces(const Matrix& a, const EigenDecomposition& d,
                                                     const SpectralPartition& partition,
                                                     const ToleranceConfig& tol = {});

// Scales v so its largest-magnitude entry is real and positive. Entries
// within a relative 1e-10 of the maximum count as ties; the lowest row wins.
void canonicalize_phase(std::span<Complex> v);

// ||A S - S diag(values)||_F / ||A||_F (unnormalized when A == 0).
double eigen_residual(const Matrix& a, const Matrix& s, std::span<const Complex> values);

}  // namespace commdiag
