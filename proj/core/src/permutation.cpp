#include "commdiag/permutation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "commdiag/eigen.hpp"
#include "commdiag/errors.hpp"
#include "commdiag/partition.hpp"
#include "commdiag/svd.hpp"

namespace commdiag {

PermutationSpec::PermutationSpec(std::vector<std::size_t> image) : image_(std::move(image)) {
    std::vector<bool> seen(image_.size(), false);
    for (std::size_t i = 0; i < image_.size(); ++i) {
        const std::size_t target = image_[i];
        if (target >= image_.size()) {
            throw InvalidPermutation("image[" + std::to_string(i) + "] = " + std::to_string(target) +
                                     " is out of range");
        }
        if (seen[target]) throw InvalidPermutation("image value " + std::to_string(target) + " repeats");
        seen[target] = true;
    }
}

PermutationSpec PermutationSpec::identity(std::size_t n) {
    std::vector<std::size_t> image(n);
    std::iota(image.begin(), image.end(), std::size_t{0});
    return PermutationSpec(std::move(image));
}

PermutationSpec PermutationSpec::from_matrix(const Matrix& p) {
    if (!p.is_square()) throw InvalidPermutation("permutation matrix must be square");
    const std::size_t n = p.rows();
    std::vector<std::size_t> image(n);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t ones = 0;
        for (std::size_t row = 0; row < n; ++row) {
            const Complex e = p(row, col);
            if (e == Complex{1.0}) {
                image[col] = row;
                ++ones;
            } else if (e != Complex{}) {
                throw InvalidPermutation("entry (" + std::to_string(row) + ", " + std::to_string(col) +
                                         ") is neither 0 nor 1");
            }
        }
        if (ones != 1) {
            throw InvalidPermutation("column " + std::to_string(col) + " has " + std::to_string(ones) + " ones");
        }
    }
    return PermutationSpec(std::move(image));
}

PermutationSpec PermutationSpec::inverse() const {
    std::vector<std::size_t> inv(image_.size());
    for (std::size_t i = 0; i < image_.size(); ++i) inv[image_[i]] = i;
    return PermutationSpec(std::move(inv));
}

Matrix to_matrix(const PermutationSpec& p) {
    Matrix m(p.size(), p.size());
    for (std::size_t i = 0; i < p.size(); ++i) m(p[i], i) = 1.0;
    return m;
}

Matrix conjugate(const Matrix& a, const PermutationSpec& p) {
    if (!a.is_square() || a.rows() != p.size()) {
        throw DimensionError("conjugate: permutation of order " + std::to_string(p.size()) +
                             " does not fit a " + std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                             " matrix");
    }
    Matrix out(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(p[i], p[j]) = a(i, j);
    return out;
}

Matrix general_permute(const Matrix& a, const PermutationSpec& p, const PermutationSpec& q) {
    if (a.rows() != p.size() || a.cols() != q.size()) {
        throw DimensionError("general_permute: permutations do not fit a " + std::to_string(a.rows()) + "x" +
                             std::to_string(a.cols()) + " matrix");
    }
    // (P a)(p[i], :) = a(i, :), (M Q)(:, j) = M(:, q[j])
    Matrix out(a.rows(), a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(p[i], j) = a(i, q[j]);
    return out;
}

double greedy_pairing_gap(std::span<const Complex> x, std::span<const Complex> y) {
    if (x.size() != y.size()) throw DimensionError("pairing needs lists of equal length");
    std::vector<Complex> xs(x.begin(), x.end());
    std::sort(xs.begin(), xs.end(), canonical_before);
    std::vector<bool> used(y.size(), false);
    double worst = 0.0;
    for (const Complex& v : xs) {
        std::size_t best = y.size();
        double best_gap = 0.0;
        for (std::size_t j = 0; j < y.size(); ++j) {
            if (used[j]) continue;
            const double gap = std::abs(v - y[j]);
            if (best == y.size() || gap < best_gap) {
                best = j;
                best_gap = gap;
            }
        }
        used[best] = true;
        worst = std::max(worst, best_gap);
    }
    return worst;
}

InvarianceReport invariance_report(const Matrix& a, const Matrix& a_hat, const ToleranceConfig& tol) {
    if (!a.is_square() || !a_hat.is_square() || a.rows() != a_hat.rows()) {
        throw DimensionError("invariance_report needs square matrices of equal order");
    }
    InvarianceReport r;
    const ComplexVector ev = eigenvalues(a, tol);
    const ComplexVector ev_hat = eigenvalues(a_hat, tol);
    r.eigen_gap = greedy_pairing_gap(ev, ev_hat);

    const auto sv = singular_values(a, tol);
    const auto sv_hat = singular_values(a_hat, tol);
    const ComplexVector sv_c(sv.begin(), sv.end());
    const ComplexVector sv_hat_c(sv_hat.begin(), sv_hat.end());
    r.singular_gap = greedy_pairing_gap(sv_c, sv_hat_c);

    ComplexVector all_eigen = ev;
    all_eigen.insert(all_eigen.end(), ev_hat.begin(), ev_hat.end());
    ComplexVector all_singular = sv_c;
    all_singular.insert(all_singular.end(), sv_hat_c.begin(), sv_hat_c.end());
    r.eigen_multiset_match = r.eigen_gap <= cluster_radius(all_eigen, tol);
    r.singular_multiset_match = r.singular_gap <= cluster_radius(all_singular, tol);
    r.max_pairing_gap = std::max(r.eigen_gap, r.singular_gap);
    return r;
}

}  // namespace commdiag
