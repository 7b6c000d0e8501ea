#include "commdiag/partition.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "commdiag/errors.hpp"

namespace commdiag {

std::vector<std::size_t> canonical_order(std::span<const Complex> values) {
    std::vector<std::size_t> order(values.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return canonical_before(values[i], values[j]); });
    return order;
}

std::size_t SpectralPartition::size() const noexcept {
    std::size_t n = 0;
    for (const auto& c : clusters) n += c.indices.size();
    return n;
}

std::vector<std::size_t> SpectralPartition::sizes() const {
    std::vector<std::size_t> out;
    out.reserve(clusters.size());
    for (const auto& c : clusters) out.push_back(c.indices.size());
    return out;
}

std::vector<std::size_t> SpectralPartition::membership() const {
    std::vector<std::size_t> out(size());
    for (std::size_t c = 0; c < clusters.size(); ++c)
        for (std::size_t i : clusters[c].indices) out[i] = c;
    return out;
}

std::vector<std::size_t> SpectralPartition::flattened() const {
    std::vector<std::size_t> out;
    out.reserve(size());
    for (const auto& c : clusters) out.insert(out.end(), c.indices.begin(), c.indices.end());
    return out;
}

namespace {

double spectral_scale(std::span<const Complex> values) {
    double scale = 0.0;
    for (const Complex& z : values) scale = std::max(scale, std::abs(z));
    return scale;
}

std::size_t find_root(std::vector<std::size_t>& parent, std::size_t i) {
    while (parent[i] != i) {
        parent[i] = parent[parent[i]];
        i = parent[i];
    }
    return i;
}

}  // namespace

double cluster_radius(std::span<const Complex> values, const ToleranceConfig& tol) {
    return tol.cluster_tol * spectral_scale(values) + tol.atol;
}

SpectralPartition cluster_eigenvalues(std::span<const Complex> values, const ToleranceConfig& tol) {
    const std::size_t n = values.size();
    const double radius = cluster_radius(values, tol);
    const double chain_limit = 10.0 * tol.cluster_tol * spectral_scale(values) + tol.atol;

    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), std::size_t{0});
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (std::abs(values[i] - values[j]) <= radius) {
                parent[find_root(parent, i)] = find_root(parent, j);
            }
        }
    }

    std::vector<std::vector<std::size_t>> groups(n);
    for (std::size_t i = 0; i < n; ++i) groups[find_root(parent, i)].push_back(i);

    SpectralPartition partition;
    for (auto& members : groups) {
        if (members.empty()) continue;
        Complex sum{};
        for (std::size_t i : members) sum += values[i];
        for (std::size_t p = 0; p < members.size(); ++p) {
            for (std::size_t q = p + 1; q < members.size(); ++q) {
                const double gap = std::abs(values[members[p]] - values[members[q]]);
                if (gap > chain_limit) {
                    std::ostringstream msg;
                    msg << "eigenvalues " << values[members[p]] << " and " << values[members[q]]
                        << " are chained into one cluster across a gap of " << gap;
                    throw AmbiguousClustering(msg.str());
                }
            }
        }
        partition.clusters.push_back({sum / static_cast<double>(members.size()), std::move(members)});
    }
    std::stable_sort(partition.clusters.begin(), partition.clusters.end(),
                     [](const Cluster& x, const Cluster& y) {
                         return canonical_before(x.representative, y.representative);
                     });
    return partition;
}

}  // namespace commdiag
