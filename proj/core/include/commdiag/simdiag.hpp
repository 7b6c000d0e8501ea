#pragma once

#include <vector>

#include "commdiag/eigen.hpp"
#include "commdiag/matrix.hpp"
#include "commdiag/partition.hpp"
#include "commdiag/permutation.hpp"
#include "commdiag/tolerance.hpp"

namespace commdiag {

struct CommuteCheck {
    bool ok = false;
    double residual = 0.0;
};

// residual = ||ab - ba||_F / (||a||_F ||b||_F + atol); ok when residual <= rtol.
CommuteCheck check_commute(const Matrix& a, const Matrix& b, const ToleranceConfig& tol = {});

// T = S_A^{-1} B S_A and its diagonal blocks, one per cluster of A's spectrum.
struct RestrictionBlocks {
    Matrix t_full;
    std::vector<Matrix> blocks;       // ordered as the partition's clusters
    double off_block_residual = 0.0;  // ||T outside the block diagonal||_F
};

/// Forms the restriction of `b` to the eigenspaces of A.
///
/// Block i is T restricted to the rows and columns of cluster i. Because B
/// maps each eigenspace of A into itself, everything outside the blocks
/// vanishes in exact arithmetic; BlockLeakage is thrown when the leakage
/// exceeds rtol * ||b||_F (inputs that do not commute, or a clustering that
/// split an eigenspace).
RestrictionBlocks restriction_blocks(const Matrix& b, const EigenDecomposition& eig_a,
                                     const SpectralPartition& partition, const ToleranceConfig& tol = {});

struct SimDiagResult {
    Matrix s_common;          // S_A S_T, unit columns, canonical phase
    ComplexVector diag_a;     // constant on each cluster of A
    ComplexVector diag_b;     // entries of D_T
    double residual_a = 0.0;  // ||S^-1 A S - diag(diag_a)||_F / ||A||_F
    double residual_b = 0.0;
    bool used_shortcut = false;
    SpectralPartition partition_a;  // clusters of diag_a, contiguous column ranges
};

struct SimDiagOptions {
    // Run the block construction even when every eigenvalue of A is simple.
    bool force_full_pipeline = false;
};

/// Common eigenvector matrix of two commuting diagonalizable matrices.
///
/// Eigendecomposes `a`, clusters its spectrum, restricts `b` to each cluster's
/// eigenspace and diagonalizes those blocks; S = S_A blockdiag(S_Ti) then
/// diagonalizes both inputs. Blocks that are already diagonal to rtol keep
/// the identity basis. When every cluster is a singleton S_A is returned
/// directly (used_shortcut).
///
/// Output columns are grouped by A's clusters in canonical eigenvalue order;
/// inside a cluster they follow the canonical order of diag_b.
///
/// Throws NotCommuting, NotDiagonalizable (either input or any block) and
/// BlockLeakage.
SimDiagResult simultaneous_diagonalize(const Matrix& a, const Matrix& b, const ToleranceConfig& tol = {},
                                       const SimDiagOptions& options = {});

// ||S^-1 X S - diag(values)||_F / ||X||_F (unnormalized when X == 0).
double diagonalization_residual(const Matrix& x, const Matrix& s, std::span<const Complex> values,
                                const ToleranceConfig& tol = {});

struct ColumnCorrespondence {
    PermutationSpec permutation;  // column j of s2 matches column image[j] of s1
    ComplexVector scales;         // s2[:, j] ~= scales[j] * s1[:, image[j]]
};

// s2 = s1 P C for a permutation P and a diagonal C, matched column by
// column. Throws NoCorrespondence when some column of s2 is not parallel to
// exactly one unmatched column of s1.
ColumnCorrespondence column_correspondence(const Matrix& s1, const Matrix& s2, const ToleranceConfig& tol = {});

}  // namespace commdiag
