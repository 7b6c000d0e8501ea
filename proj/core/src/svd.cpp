#include "commdiag/svd.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "commdiag/eigen.hpp"
#include "commdiag/errors.hpp"

namespace commdiag {

namespace {

Matrix gram(const Matrix& x) {
    Matrix g = matmul(x, conj_transpose(x));
    // exact Hermitian symmetry
    for (std::size_t i = 0; i < g.rows(); ++i) {
        g(i, i) = g(i, i).real();
        for (std::size_t j = i + 1; j < g.cols(); ++j) {
            const Complex avg = 0.5 * (g(i, j) + std::conj(g(j, i)));
            g(i, j) = avg;
            g(j, i) = std::conj(avg);
        }
    }
    return g;
}

// Orthonormalizes the given columns of s in place (two-pass MGS).
void orthonormalize_group(Matrix& s, std::span<const std::size_t> columns, const ToleranceConfig& tol) {
    std::vector<ComplexVector> basis;
    for (std::size_t idx : columns) {
        ComplexVector v = s.column(idx);
        const double original = norm2(v);
        for (int pass = 0; pass < 2; ++pass) {
            for (const auto& q : basis) {
                const Complex c = vdot(q, v);
                for (std::size_t i = 0; i < v.size(); ++i) v[i] -= c * q[i];
            }
        }
        const double len = norm2(v);
        if (!(len > tol.cluster_tol * original)) {
            throw InternalDiagnostic("joint eigenvectors of the Gram matrices are linearly dependent");
        }
        for (auto& e : v) e /= len;
        basis.push_back(std::move(v));
    }
    for (std::size_t p = 0; p < columns.size(); ++p) {
        canonicalize_phase(basis[p]);
        s.set_column(columns[p], basis[p]);
    }
}

// Clamps slightly negative Gram eigenvalues; anything below the rounding
// band is a real failure.
void check_gram_eigenvalues(std::span<const Complex> values, const Matrix& x, const ToleranceConfig& tol) {
    const double norm = frobenius_norm(x);
    const double band = static_cast<double>(x.rows()) * tol.rtol * norm * norm;
    for (const Complex& g : values) {
        if (g.real() < -band) {
            std::ostringstream msg;
            msg << "Gram matrix eigenvalue " << g.real() << " is negative beyond rounding";
            throw InternalDiagnostic(msg.str());
        }
    }
}

struct RightFactor {
    std::vector<double> sigma;
    Matrix v;
};

RightFactor right_factor(const Matrix& x, const Matrix& u, const ToleranceConfig& tol) {
    const std::size_t n = u.cols();
    const Matrix w = matmul(conj_transpose(x), u);
    RightFactor out{std::vector<double>(n), Matrix(w.rows(), n)};
    double largest = 0.0;
    for (std::size_t j = 0; j < n; ++j) {
        out.sigma[j] = norm2(w.column(j));
        largest = std::max(largest, out.sigma[j]);
    }
    const double negligible = tol.rtol * largest;

    std::vector<ComplexVector> basis;
    std::vector<std::size_t> null_columns;
    for (std::size_t j = 0; j < n; ++j) {
        if (largest > 0.0 && out.sigma[j] > negligible) {
            ComplexVector col = w.column(j);
            for (auto& e : col) e /= out.sigma[j];
            out.v.set_column(j, col);
            basis.push_back(std::move(col));
        } else {
            out.sigma[j] = 0.0;
            null_columns.push_back(j);
        }
    }

    // Orthonormal completion from e_0, e_1, ... in index order.
    std::size_t candidate = 0;
    const std::size_t m = w.rows();
    for (std::size_t j : null_columns) {
        bool placed = false;
        while (!placed && candidate < m) {
            ComplexVector e(m);
            e[candidate++] = 1.0;
            for (int pass = 0; pass < 2; ++pass) {
                for (const auto& q : basis) {
                    const Complex c = vdot(q, e);
                    for (std::size_t i = 0; i < m; ++i) e[i] -= c * q[i];
                }
            }
            const double len = norm2(e);
            if (len > 1e-6) {
                for (auto& v : e) v /= len;
                out.v.set_column(j, e);
                basis.push_back(std::move(e));
                placed = true;
            }
        }
        if (!placed) throw InternalDiagnostic("orthonormal completion of V ran out of candidates");
    }
    return out;
}

double reconstruction_residual(const Matrix& x, const Matrix& u, std::span<const double> sigma, const Matrix& v) {
    Matrix us = u;
    for (std::size_t j = 0; j < us.cols(); ++j)
        for (std::size_t i = 0; i < us.rows(); ++i) us(i, j) *= sigma[j];
    const double defect = frobenius_norm(x - matmul(us, conj_transpose(v)));
    const double scale = frobenius_norm(x);
    return scale > 0.0 ? defect / scale : defect;
}

}  // namespace

CommuteCheck check_star_commute(const Matrix& a, const Matrix& b, const ToleranceConfig& tol) {
    if (!a.is_square() || !b.is_square() || a.rows() != b.rows()) {
        throw DimensionError("check_star_commute needs square matrices of equal order");
    }
    const Matrix ah = conj_transpose(a);
    const double defect = frobenius_norm(matmul(ah, b) - matmul(b, ah));
    CommuteCheck out;
    out.residual = defect / (frobenius_norm(a) * frobenius_norm(b) + tol.atol);
    out.ok = out.residual <= tol.rtol;
    return out;
}

CommutingSvdResult svd_commuting_pair(const Matrix& a, const Matrix& b, const ToleranceConfig& tol,
                                      const SvdOptions& options) {
    tol.validate();
    if (a.rows() == 0) throw DimensionError("svd_commuting_pair needs non-empty matrices");
    const CommuteCheck commute = check_commute(a, b, tol);
    if (!commute.ok) {
        std::ostringstream msg;
        msg << "matrices do not commute: residual " << commute.residual;
        throw NotCommuting(commute.residual, msg.str());
    }
    const CommuteCheck star = check_star_commute(a, b, tol);
    if (!star.ok) {
        std::ostringstream msg;
        msg << "matrices do not star-commute (A^H B != B A^H): residual " << star.residual;
        throw NotStarCommuting(star.residual, msg.str());
    }
    const std::size_t n = a.rows();

    SimDiagResult joint;
    try {
        joint = simultaneous_diagonalize(gram(a), gram(b), tol);
    } catch (const NotDiagonalizable& e) {
        throw InternalDiagnostic(std::string("Gram matrices could not be diagonalized: ") + e.what());
    } catch (const NotCommuting& e) {
        throw InternalDiagnostic(std::string("Gram matrices do not commute: ") + e.what());
    } catch (const BlockLeakage& e) {
        throw InternalDiagnostic(std::string("Gram restriction leaked: ") + e.what());
    }
    check_gram_eigenvalues(joint.diag_a, a, tol);
    check_gram_eigenvalues(joint.diag_b, b, tol);

    // Joint eigenspaces: within each cluster of A A^H, group equal diag_b values.
    Matrix u = joint.s_common;
    for (const Cluster& cluster : joint.partition_a.clusters) {
        ComplexVector values;
        for (std::size_t idx : cluster.indices) values.push_back(joint.diag_b[idx]);
        const SpectralPartition inner = cluster_eigenvalues(values, tol);
        for (const Cluster& group : inner.clusters) {
            std::vector<std::size_t> columns;
            for (std::size_t p : group.indices) columns.push_back(cluster.indices[p]);
            orthonormalize_group(u, columns, tol);
        }
    }
    if (!(unitarity_defect(u) <= tol.rtol * static_cast<double>(n))) {
        throw InternalDiagnostic("shared left singular basis is not unitary");
    }

    RightFactor fa = right_factor(a, u, tol);
    RightFactor fb = right_factor(b, u, tol);

    CommutingSvdResult out;
    if (options.sort_descending) {
        std::vector<std::size_t> order(n);
        std::iota(order.begin(), order.end(), std::size_t{0});
        std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
            if (fa.sigma[i] != fa.sigma[j]) return fa.sigma[i] > fa.sigma[j];
            return fb.sigma[i] > fb.sigma[j];
        });
        u = permute_columns(u, order);
        fa.v = permute_columns(fa.v, order);
        fb.v = permute_columns(fb.v, order);
        std::vector<double> sa(n), sb(n);
        for (std::size_t j = 0; j < n; ++j) {
            sa[j] = fa.sigma[order[j]];
            sb[j] = fb.sigma[order[j]];
        }
        fa.sigma = std::move(sa);
        fb.sigma = std::move(sb);
    }

    out.residual_a = reconstruction_residual(a, u, fa.sigma, fa.v);
    out.residual_b = reconstruction_residual(b, u, fb.sigma, fb.v);
    const double unit_bound = tol.rtol * static_cast<double>(n);
    if (!(out.residual_a <= tol.rtol) || !(out.residual_b <= tol.rtol) ||
        !(unitarity_defect(fa.v) <= unit_bound) || !(unitarity_defect(fb.v) <= unit_bound)) {
        std::ostringstream msg;
        msg << "SVD factors fail verification: reconstruction " << out.residual_a << ", " << out.residual_b
            << "; V unitarity " << unitarity_defect(fa.v) << ", " << unitarity_defect(fb.v);
        throw InternalDiagnostic(msg.str());
    }
    out.u = std::move(u);
    out.sigma_a = std::move(fa.sigma);
    out.v_a = std::move(fa.v);
    out.sigma_b = std::move(fb.sigma);
    out.v_b = std::move(fb.v);
    return out;
}

SvdReport verify_svd(const Matrix& x, const Matrix& u, std::span<const double> sigma, const Matrix& v,
                     const ToleranceConfig& tol) {
    const std::size_t n = sigma.size();
    if (!u.is_square() || !v.is_square() || u.rows() != x.rows() || v.rows() != x.cols() || u.cols() != n ||
        v.cols() != n) {
        throw DimensionError("verify_svd: factors are not conformable with the matrix");
    }
    SvdReport r;
    r.reconstruction = reconstruction_residual(x, u, sigma, v);
    r.u_unitarity = unitarity_defect(u);
    r.v_unitarity = unitarity_defect(v);
    r.reconstruction_ok = r.reconstruction <= tol.rtol;
    r.u_ok = r.u_unitarity <= tol.rtol * static_cast<double>(u.cols());
    r.v_ok = r.v_unitarity <= tol.rtol * static_cast<double>(v.cols());
    return r;
}

std::vector<double> singular_values(const Matrix& x, const ToleranceConfig& tol) {
    if (!x.is_square() || x.rows() == 0) throw DimensionError("singular_values needs a non-empty square matrix");
    const Matrix g = gram(x);
    EigenDecomposition eig = eigendecompose(g, tol);
    check_gram_eigenvalues(eig.eigenvalues, x, tol);
    eig = orthonormalize_within_eigenspaces(g, eig, cluster_eigenvalues(eig.eigenvalues, tol), tol);
    const Matrix w = matmul(conj_transpose(x), eig.s);
    std::vector<double> sigma(x.rows());
    for (std::size_t j = 0; j < sigma.size(); ++j) sigma[j] = norm2(w.column(j));
    std::sort(sigma.begin(), sigma.end(), std::greater<>());
    return sigma;
}

}  // namespace commdiag
