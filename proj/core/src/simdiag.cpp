#include "commdiag/simdiag.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "commdiag/errors.hpp"

namespace commdiag {

CommuteCheck check_commute(const Matrix& a, const Matrix& b, const ToleranceConfig& tol) {
    const double defect = frobenius_norm(commutator(a, b));
    CommuteCheck out;
    out.residual = defect / (frobenius_norm(a) * frobenius_norm(b) + tol.atol);
    out.ok = out.residual <= tol.rtol;
    return out;
}

RestrictionBlocks restriction_blocks(const Matrix& b, const EigenDecomposition& eig_a,
                                     const SpectralPartition& partition, const ToleranceConfig& tol) {
    const std::size_t n = b.rows();
    if (!b.is_square() || eig_a.s.rows() != n || eig_a.s.cols() != n || partition.size() != n) {
        throw DimensionError("restriction_blocks: operand orders do not match");
    }
    RestrictionBlocks out;
    try {
        out.t_full = solve(eig_a.s, matmul(b, eig_a.s), tol);
    } catch (const SingularMatrixError&) {
        throw NotDiagonalizable("eigenvector matrix of A is singular");
    }

    const auto member = partition.membership();
    double leak = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (member[i] != member[j]) leak += std::norm(out.t_full(i, j));
    out.off_block_residual = std::sqrt(leak);

    out.blocks.reserve(partition.k());
    for (const Cluster& c : partition.clusters) out.blocks.push_back(submatrix(out.t_full, c.indices, c.indices));

    const double bound = tol.rtol * frobenius_norm(b);
    if (!(out.off_block_residual <= bound)) {
        std::ostringstream msg;
        msg << "restriction matrix leaks outside its diagonal blocks: " << out.off_block_residual << " > "
            << bound;
        throw BlockLeakage(out.off_block_residual, msg.str());
    }
    return out;
}

double diagonalization_residual(const Matrix& x, const Matrix& s, std::span<const Complex> values,
                                const ToleranceConfig& tol) {
    Matrix d;
    try {
        d = solve(s, matmul(x, s), tol);
    } catch (const SingularMatrixError&) {
        throw NotDiagonalizable("common eigenvector matrix is singular");
    }
    d -= Matrix::diagonal(values);
    const double defect = frobenius_norm(d);
    const double scale = frobenius_norm(x);
    return scale > 0.0 ? defect / scale : defect;
}

namespace {

double off_diagonal_norm(const Matrix& m) {
    double s = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (i != j) s += std::norm(m(i, j));
    return std::sqrt(s);
}

// Reorders the decomposition so each cluster occupies a contiguous run of
// columns; returns the matching partition.
SpectralPartition make_contiguous(EigenDecomposition& eig, const SpectralPartition& partition) {
    const auto order = partition.flattened();
    eig.s = permute_columns(eig.s, order);
    ComplexVector values(order.size());
    for (std::size_t j = 0; j < order.size(); ++j) values[j] = eig.eigenvalues[order[j]];
    eig.eigenvalues = std::move(values);

    SpectralPartition contiguous;
    std::size_t next = 0;
    for (const Cluster& c : partition.clusters) {
        Cluster moved{c.representative, {}};
        for (std::size_t p = 0; p < c.indices.size(); ++p) moved.indices.push_back(next++);
        contiguous.clusters.push_back(std::move(moved));
    }
    return contiguous;
}

}  // namespace

SimDiagResult simultaneous_diagonalize(const Matrix& a, const Matrix& b, const ToleranceConfig& tol,
                                       const SimDiagOptions& options) {
    tol.validate();
    if (a.rows() == 0) throw DimensionError("simultaneous_diagonalize needs non-empty matrices");
    const CommuteCheck commute = check_commute(a, b, tol);
    if (!commute.ok) {
        std::ostringstream msg;
        msg << "matrices do not commute: residual " << commute.residual << " > rtol " << tol.rtol;
        throw NotCommuting(commute.residual, msg.str());
    }
    const std::size_t n = a.rows();

    EigenDecomposition eig_a = eigendecompose(a, tol);
    SpectralPartition partition = cluster_eigenvalues(eig_a.eigenvalues, tol);
    if (is_normal(a, tol) && !partition.all_singletons()) {
        eig_a = orthonormalize_within_eigenspaces(a, eig_a, partition, tol);
    }
    partition = make_contiguous(eig_a, partition);

    const RestrictionBlocks restriction = restriction_blocks(b, eig_a, partition, tol);

    SimDiagResult out;
    out.diag_a.resize(n);
    out.diag_b.resize(n);
    out.used_shortcut = partition.all_singletons() && !options.force_full_pipeline;

    Matrix s(n, n);
    if (out.used_shortcut) {
        s = eig_a.s;
        for (std::size_t j = 0; j < n; ++j) out.diag_b[j] = restriction.t_full(j, j);
    } else {
        const double diagonal_floor = tol.rtol * frobenius_norm(b) + tol.atol;
        std::size_t offset = 0;
        for (std::size_t c = 0; c < partition.k(); ++c) {
            const Matrix& block = restriction.blocks[c];
            const std::size_t m = block.rows();
            Matrix basis;
            ComplexVector values;
            if (off_diagonal_norm(block) <= diagonal_floor) {
                basis = Matrix::identity(m);
                values = block.diagonal_entries();
            } else {
                EigenDecomposition eig_block = eigendecompose(block, tol);
                basis = std::move(eig_block.s);
                values = std::move(eig_block.eigenvalues);
            }
            const auto order = canonical_order(values);
            basis = permute_columns(basis, order);

            std::vector<std::size_t> rows(n);
            std::iota(rows.begin(), rows.end(), std::size_t{0});
            std::vector<std::size_t> cols(m);
            std::iota(cols.begin(), cols.end(), offset);
            const Matrix piece = matmul(submatrix(eig_a.s, rows, cols), basis);
            for (std::size_t q = 0; q < m; ++q) {
                for (std::size_t i = 0; i < n; ++i) s(i, offset + q) = piece(i, q);
                out.diag_b[offset + q] = values[order[q]];
            }
            offset += m;
        }
    }

    for (std::size_t j = 0; j < n; ++j) {
        ComplexVector col = s.column(j);
        const double len = norm2(col);
        if (len == 0.0) throw NotDiagonalizable("common eigenvector matrix has a zero column");
        for (auto& e : col) e /= len;
        canonicalize_phase(col);
        s.set_column(j, col);
    }
    for (const Cluster& c : partition.clusters)
        for (std::size_t idx : c.indices) out.diag_a[idx] = c.representative;

    out.residual_a = diagonalization_residual(a, s, out.diag_a, tol);
    out.residual_b = diagonalization_residual(b, s, out.diag_b, tol);
    if (!(out.residual_a <= tol.rtol) || !(out.residual_b <= tol.rtol)) {
        std::ostringstream msg;
        msg << "assembled eigenvector matrix fails to diagonalize the pair: residuals " << out.residual_a
            << ", " << out.residual_b;
        throw NotDiagonalizable(msg.str());
    }
    out.s_common = std::move(s);
    out.partition_a = std::move(partition);
    return out;
}

ColumnCorrespondence column_correspondence(const Matrix& s1, const Matrix& s2, const ToleranceConfig& tol) {
    if (!s1.is_square() || !s2.is_square() || s1.rows() != s2.rows()) {
        throw DimensionError("column_correspondence needs square matrices of equal order");
    }
    const std::size_t n = s1.rows();
    std::vector<ComplexVector> left(n);
    std::vector<double> left_norm2(n);
    for (std::size_t i = 0; i < n; ++i) {
        left[i] = s1.column(i);
        left_norm2[i] = std::norm(norm2(left[i]));
        if (left_norm2[i] == 0.0) throw NoCorrespondence("s1 has a zero column");
    }

    std::vector<bool> used(n, false);
    std::vector<std::size_t> image(n);
    ComplexVector scales(n);
    for (std::size_t j = 0; j < n; ++j) {
        const ComplexVector target = s2.column(j);
        const double target_norm = norm2(target);
        std::size_t match = n;
        std::size_t hits = 0;
        Complex match_scale{};
        for (std::size_t i = 0; i < n; ++i) {
            if (used[i]) continue;
            const Complex c = vdot(left[i], target) / left_norm2[i];
            ComplexVector diff = target;
            for (std::size_t r = 0; r < n; ++r) diff[r] -= c * left[i][r];
            if (target_norm > 0.0 && norm2(diff) <= tol.rtol * target_norm) {
                ++hits;
                match = i;
                match_scale = c;
            }
        }
        if (hits != 1) {
            throw NoCorrespondence("column " + std::to_string(j) + " of s2 is parallel to " +
                                   std::to_string(hits) + " unmatched columns of s1");
        }
        used[match] = true;
        image[j] = match;
        scales[j] = match_scale;
    }
    return {PermutationSpec(std::move(image)), std::move(scales)};
}

}  // namespace commdiag
