#pragma once

#include <vector>

#include "commdiag/matrix.hpp"
#include "commdiag/simdiag.hpp"
#include "commdiag/tolerance.hpp"

namespace commdiag {

// residual = ||a^H b - b a^H||_F / (||a||_F ||b||_F + atol); ok at rtol.
CommuteCheck check_star_commute(const Matrix& a, const Matrix& b, const ToleranceConfig& tol = {});

// A = U diag(sigma_a) V_A^H and B = U diag(sigma_b) V_B^H with one shared U.
struct CommutingSvdResult {
    Matrix u;
    std::vector<double> sigma_a;
    Matrix v_a;
    std::vector<double> sigma_b;
    Matrix v_b;
    double residual_a = 0.0;  // ||A - U S_A V_A^H||_F / ||A||_F
    double residual_b = 0.0;
};

struct SvdOptions {
    // Reorder columns by descending sigma_a (ties: descending sigma_b)
    // instead of keeping the order inherited from the diagonalization.
    bool sort_descending = false;
};

/// SVD of a commuting, star-commuting pair through a shared left basis.
///
/// A A^H and B B^H commute, so the simultaneous diagonalization of the two
/// Gram matrices gives a common eigenbasis; orthonormalizing it within the
/// joint eigenspaces yields U. Singular values are the column norms of
/// X^H U (the square roots of the Gram eigenvalues), V columns are
/// X^H u_j / sigma_j, and columns belonging to negligible singular values
/// (sigma_j <= rtol * max sigma) are filled by orthonormal completion from the
/// identity's columns in index order.
///
/// Throws NotCommuting, NotStarCommuting, and InternalDiagnostic when the
/// Gram matrices cannot be diagonalized or a result invariant fails.
CommutingSvdResult svd_commuting_pair(const Matrix& a, const Matrix& b, const ToleranceConfig& tol = {},
                                      const SvdOptions& options = {});

struct SvdReport {
    double reconstruction = 0.0;  // ||X - U S V^H||_F / ||X||_F
    double u_unitarity = 0.0;     // ||U^H U - I||_F
    double v_unitarity = 0.0;
    bool reconstruction_ok = false;  // <= rtol
    bool u_ok = false;               // <= rtol * n
    bool v_ok = false;

    bool ok() const noexcept { return reconstruction_ok && u_ok && v_ok; }
};

SvdReport verify_svd(const Matrix& x, const Matrix& u, std::span<const double> sigma, const Matrix& v,
                     const ToleranceConfig& tol = {});

// Singular values of a square matrix through its Gram matrix, descending.
std::vector<double> singular_values(const Matrix& x, const ToleranceConfig& tol = {});

}  // namespace commdiag
