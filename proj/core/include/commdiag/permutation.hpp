#pragma once

#include <cstddef>
#include <vector>

#include "commdiag/matrix.hpp"
#include "commdiag/tolerance.hpp"

namespace commdiag {

// Permutation in one-line notation with the column convention: the matrix
// has its 1 in column i at row image[i].
class PermutationSpec {
public:
    PermutationSpec() = default;
    // Throws InvalidPermutation unless image is a bijection on 0..n-1.
    explicit PermutationSpec(std::vector<std::size_t> image);

    static PermutationSpec identity(std::size_t n);
    // Reads the image off a 0/1 matrix; InvalidPermutation if it is not one.
    static PermutationSpec from_matrix(const Matrix& p);

    std::size_t size() const noexcept { return image_.size(); }
    std::size_t operator[](std::size_t i) const { return image_[i]; }
    const std::vector<std::size_t>& image() const noexcept { return image_; }

    PermutationSpec inverse() const;

    friend bool operator==(const PermutationSpec&, const PermutationSpec&) = default;

private:
    std::vector<std::size_t> image_;
};

Matrix to_matrix(const PermutationSpec& p);

// P a P^T, computed by index movement (exact).
Matrix conjugate(const Matrix& a, const PermutationSpec& p);

// P a Q for a possibly rectangular a; p acts on rows, q on columns.
Matrix general_permute(const Matrix& a, const PermutationSpec& p, const PermutationSpec& q);

struct InvarianceReport {
    bool eigen_multiset_match = false;
    bool singular_multiset_match = false;
    double max_pairing_gap = 0.0;  // over both spectra
    double eigen_gap = 0.0;
    double singular_gap = 0.0;
};

// Compares the eigenvalue and singular value multisets of a and a_hat. Each
// sorted value of one is greedily paired with the nearest unused value of
// the other; a multiset matches when every pairing gap is within the
// clustering radius.
InvarianceReport invariance_report(const Matrix& a, const Matrix& a_hat, const ToleranceConfig& tol = {});

// Largest gap of the greedy nearest-neighbour pairing of two equal-length lists.
double greedy_pairing_gap(std::span<const Complex> x, std::span<const Complex> y);

}  // namespace commdiag
