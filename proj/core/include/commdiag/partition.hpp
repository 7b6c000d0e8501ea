#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "commdiag/matrix.hpp"
#include "commdiag/tolerance.hpp"

namespace commdiag {

// Canonical eigenvalue order: descending real part, ties by descending
// imaginary part.
inline bool canonical_before(Complex x, Complex y) {
    if (x.real() != y.real()) return x.real() > y.real();
    return x.imag() > y.imag();
}

// Indices of values in canonical order (stable).
std::vector<std::size_t> canonical_order(std::span<const Complex> values);

struct Cluster {
    Complex representative;            // arithmetic mean of the members
    std::vector<std::size_t> indices;  // ascending
};

// Grouping of eigenvalue indices into clusters of (numerically) equal values.
struct SpectralPartition {
    std::vector<Cluster> clusters;  // canonical order of representatives

    std::size_t k() const noexcept { return clusters.size(); }
    std::size_t size() const noexcept;
    bool all_singletons() const noexcept { return size() == k(); }
    std::vector<std::size_t> sizes() const;

    // cluster index of every eigenvalue index
    std::vector<std::size_t> membership() const;

    // Eigenvalue indices listed cluster by cluster.
    std::vector<std::size_t> flattened() const;
};

// Grouping radius cluster_tol * max|value| + atol.
double cluster_radius(std::span<const Complex> values, const ToleranceConfig& tol);

// Single-linkage clustering. Throws AmbiguousClustering when a chain joins
// values more than 10 * cluster_tol * scale apart.
SpectralPartition cluster_eigenvalues(std::span<const Complex> values, const ToleranceConfig& tol = {});

}  // namespace commdiag
