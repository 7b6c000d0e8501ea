#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <vector>

#include "commdiag/matrix.hpp"

namespace commdiag {

// Identifier of the sampling algorithm, recorded in serialized fixtures.
// Raw bits come from std::mt19937_64 (fully specified by the C++ standard);
// uniforms take the top 53 bits, normals use the cosine branch of Box-Muller.
inline constexpr std::string_view kGeneratorAlgorithm = "mt19937_64+boxmuller-v1";

class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double uniform();  // [0, 1)
    double normal();   // standard normal
    Complex complex_normal();  // real and imaginary parts N(0, 1/2)

private:
    std::mt19937_64 engine_;
};

enum class EigenvalueMode { complex, real, nonneg };
enum class BasisKind { unitary, general };

struct BasisMode {
    BasisKind kind = BasisKind::unitary;
    double cond_target = 1.0;  // 2-norm condition number of the basis (general only)
};

struct PairSpec {
    std::size_t n = 1;
    std::vector<std::size_t> multiplicities_a{1};
    EigenvalueMode eigenvalue_mode = EigenvalueMode::complex;
    BasisMode basis_mode;
    std::uint64_t seed = 0;
    // Make the first eigenvalue cluster of A exactly zero, and the matching
    // first eigenvalue of B, so both matrices are singular.
    bool zero_eigenvalue = false;

    // Throws InvalidSpec.
    void validate() const;
};

struct MatrixPair {
    Matrix a;
    Matrix b;
};

// Distinct eigenvalues of A are at least this far apart (radius-10 sampling).
inline constexpr double kMinClusterGap = 0.5;

/// a = S D_A S^-1 and b = S D_B S^-1 with one random basis S.
///
/// D_A repeats each sampled cluster value multiplicities_a[i] times; D_B has
/// independent entries. Values are drawn uniformly from the radius-10 disk
/// (complex), [-10, 10] (real) or [0, 10] (nonneg). Same spec, same bits.
MatrixPair generate_commuting_pair(const PairSpec& spec);

/// Real symmetric a = Q D_A Q^T and b = Q D_B Q^T with real orthogonal Q, so
/// the pair commutes and star-commutes. D_A is real (complex mode falls
/// back to real for A); D_B follows eigenvalue_mode. basis_mode is ignored.
MatrixPair generate_star_commuting_pair(const PairSpec& spec);

// Haar-distributed unitary (or real orthogonal) matrix.
Matrix random_unitary(std::size_t n, Rng& rng, bool real = false);

// Entries complex normal.
Matrix random_gaussian(std::size_t rows, std::size_t cols, Rng& rng);

}  // namespace commdiag
