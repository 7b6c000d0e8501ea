#include <doctest.h>

#include <cmath>

#include "commdiag/eigen.hpp"
#include "commdiag/errors.hpp"
#include "commdiag/generator.hpp"
#include "commdiag/worked_examples.hpp"
#include "support.hpp"

using namespace commdiag;
using testing_support::fro;
using testing_support::multiset_gap;
using testing_support::naive_product;

namespace ex = commdiag::worked;

namespace {

// ||A s_j - lambda_j s_j|| for every column, computed without library help
double max_pair_residual(const Matrix& a, const Matrix& s, const ComplexVector& lambda) {
    const Matrix as = naive_product(a, s);
    double worst = 0.0;
    for (std::size_t j = 0; j < s.cols(); ++j) {
        double r = 0.0;
        for (std::size_t i = 0; i < s.rows(); ++i) r += std::norm(as(i, j) - lambda[j] * s(i, j));
        worst = std::max(worst, std::sqrt(r));
    }
    return worst;
}

Matrix random_normal_matrix(std::uint64_t seed, const ComplexVector& spectrum) {
    Rng rng(seed);
    const Matrix q = random_unitary(spectrum.size(), rng);
    return matmul(matmul(q, Matrix::diagonal(spectrum)), conj_transpose(q));
}

}  // namespace

TEST_SUITE("eigensolver") {

TEST_CASE("example 1 A has eigenvalues 3+i, i, i") {
    const EigenDecomposition d = eigendecompose(ex::ex1_a());
    CHECK(multiset_gap(d.eigenvalues, {Complex(3, 1), Complex(0, 1), Complex(0, 1)}) <= 1e-9);
    CHECK(d.residual <= 1e-10);
    CHECK(max_pair_residual(ex::ex1_a(), d.s, d.eigenvalues) <= 1e-12);
}

TEST_CASE("identity") {
    const EigenDecomposition d = eigendecompose(Matrix::identity(3));
    CHECK(d.eigenvalues == ComplexVector{1.0, 1.0, 1.0});
    CHECK(d.residual == 0.0);
    CHECK(fro(matmul(conj_transpose(d.s), d.s) - Matrix::identity(3)) <= 1e-14);
}

TEST_CASE("example 2 A has eigenvalues 2, 2, -2, -2") {
    const EigenDecomposition d = eigendecompose(ex::ex2_a());
    CHECK(multiset_gap(d.eigenvalues, {2.0, 2.0, -2.0, -2.0}) <= 1e-9);
    CHECK(max_pair_residual(ex::ex2_a(), d.s, d.eigenvalues) <= 1e-12);
}

TEST_CASE("example 1 B has eigenvalues 12, +-2 sqrt 6") {
    const EigenDecomposition d = eigendecompose(ex::ex1_b());
    const double r = 2.0 * std::sqrt(6.0);
    CHECK(multiset_gap(d.eigenvalues, {12.0, -r, r}) <= 1e-9);
    CHECK(max_pair_residual(ex::ex1_b(), d.s, d.eigenvalues) <= 1e-11);
}

TEST_CASE("example 3 A agrees with the roots of its characteristic polynomial") {
    const std::vector<std::vector<std::int64_t>> a = {{1, 0, 2, 3, 0, 4}, {0, 3, 0, 0, 7, 0}, {2, 0, 1, 4, 0, 3},
                                                      {3, 0, 4, 1, 0, 2}, {0, 7, 0, 0, 3, 0}, {4, 0, 3, 2, 0, 1}};
    const auto poly = testing_support::integer_charpoly(a);
    // det(xI - A) = x^6 - 10x^5 - 68x^4 + 392x^3 + 2560x^2 + 3200x
    CHECK(poly == std::vector<std::int64_t>{1, -10, -68, 392, 2560, 3200, 0});

    const ComplexVector roots = testing_support::to_double(testing_support::polynomial_roots(poly));
    const EigenDecomposition d = eigendecompose(ex::ex3_a());
    CHECK(multiset_gap(d.eigenvalues, roots) <= 1e-8);
    // the values printed with the first eigenvector matrix
    CHECK(multiset_gap(d.eigenvalues, {0.0, -4.0, -4.0, -2.0, 10.0, 10.0}) <= 1e-9);
}

TEST_CASE("charpoly oracle sanity on a small case") {
    // [[2, 1], [1, 2]] has det(xI - A) = x^2 - 4x + 3 = (x-1)(x-3)
    const auto poly = testing_support::integer_charpoly({{2, 1}, {1, 2}});
    CHECK(poly == std::vector<std::int64_t>{1, -4, 3});
    const ComplexVector roots = testing_support::to_double(testing_support::polynomial_roots(poly));
    CHECK(multiset_gap(roots, {1.0, 3.0}) <= 1e-14);
}

TEST_CASE("eigenvalues come out in canonical order") {
    const EigenDecomposition d = eigendecompose(ex::ex3_b());
    for (std::size_t i = 1; i < d.eigenvalues.size(); ++i) {
        const Complex p = d.eigenvalues[i - 1];
        const Complex q = d.eigenvalues[i];
        const bool ordered = p.real() > q.real() + 1e-12 ||
                             (std::abs(p.real() - q.real()) <= 1e-12 && p.imag() >= q.imag() - 1e-12);
        CHECK(ordered);
    }
}

TEST_CASE("eigenvector normalization and phase") {
    const EigenDecomposition d = eigendecompose(ex::ex1_b());
    for (std::size_t j = 0; j < d.s.cols(); ++j) {
        const ComplexVector col = d.s.column(j);
        CHECK(norm2(col) == doctest::Approx(1.0).epsilon(1e-12));
        std::size_t arg = 0;
        for (std::size_t i = 1; i < col.size(); ++i)
            if (std::abs(col[i]) > std::abs(col[arg]) * (1.0 + 1e-10)) arg = i;
        CHECK(col[arg].imag() == 0.0);
        CHECK(col[arg].real() > 0.0);
    }

    ComplexVector v = {Complex(0, -2), 1.0};
    canonicalize_phase(v);
    CHECK(v[0] == Complex(2.0, 0.0));
    CHECK(std::abs(v[1] - Complex(0.0, 1.0)) < 1e-15);

    ComplexVector tie = {-1.0, 1.0};
    canonicalize_phase(tie);
    CHECK(tie[0] == Complex(1.0));
}

TEST_CASE("is_normal") {
    CHECK(is_normal(ex::ex1_a()));
    CHECK_FALSE(is_normal(Matrix{{0, 1}, {0, 0}}));
    CHECK(is_normal(ex::ex3_a()));
    CHECK_FALSE(is_normal(ex::ex2_a()));
    CHECK(is_normal(Matrix::zeros(2, 2)));
}

TEST_CASE("orthonormalize_within_eigenspaces") {
    SUBCASE("example 1 A: unitary, first column along (1,1,1)/sqrt(3)") {
        const Matrix a = ex::ex1_a();
        const EigenDecomposition d = eigendecompose(a);
        const EigenDecomposition u = orthonormalize_within_eigenspaces(a, d, cluster_eigenvalues(d.eigenvalues));
        CHECK(u.is_unitary);
        CHECK(fro(naive_product(conj_transpose(u.s), u.s) - Matrix::identity(3)) <= 1e-12);
        const double s3 = 1.0 / std::sqrt(3.0);
        CHECK(std::abs(vdot(u.s.column(0), ComplexVector{s3, s3, s3})) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(u.residual <= 1e-10);
    }

    SUBCASE("already unitary input is unchanged up to phase") {
        const Matrix a = ex::ex3_a();
        const EigenDecomposition d = eigendecompose(a);
        const EigenDecomposition u = orthonormalize_within_eigenspaces(a, d, cluster_eigenvalues(d.eigenvalues));
        const EigenDecomposition again = orthonormalize_within_eigenspaces(a, u, cluster_eigenvalues(u.eigenvalues));
        for (std::size_t j = 0; j < 6; ++j) {
            CHECK(std::abs(vdot(u.s.column(j), again.s.column(j))) == doctest::Approx(1.0).epsilon(1e-12));
        }
    }

    SUBCASE("random normal 5x5 with a triple eigenvalue") {
        const Matrix a = random_normal_matrix(17, {Complex(2, 1), Complex(2, 1), Complex(2, 1), -3.0, Complex(0, 4)});
        const EigenDecomposition d = eigendecompose(a);
        const SpectralPartition p = cluster_eigenvalues(d.eigenvalues);
        // canonical order: 2+i (triple), 4i, -3
        CHECK(p.sizes() == std::vector<std::size_t>{3, 1, 1});
        const EigenDecomposition u = orthonormalize_within_eigenspaces(a, d, p);
        // Gram-matrix check
        CHECK(fro(naive_product(conj_transpose(u.s), u.s) - Matrix::identity(5)) <= 1e-10);
        CHECK(max_pair_residual(a, u.s, u.eigenvalues) <= 1e-10 * fro(a));
    }

    SUBCASE("a non-normal matrix cannot be made unitary") {
        const Matrix a = ex::ex2_a();
        const EigenDecomposition d = eigendecompose(a);
        CHECK_THROWS_AS(orthonormalize_within_eigenspaces(a, d, cluster_eigenvalues(d.eigenvalues)), InternalDiagnostic);
    }

    SUBCASE("dependent columns inside a cluster") {
        const Matrix a = Matrix::identity(2);
        EigenDecomposition d;
        d.s = Matrix{{1, 1}, {0, 0}};
        d.eigenvalues = {1.0, 1.0};
        CHECK_THROWS_AS(orthonormalize_within_eigenspaces(a, d, cluster_eigenvalues(d.eigenvalues)), RankDeficientCluster);
    }

    SUBCASE("a decomposition of some other matrix is rejected") {
        const Matrix a = ex::ex1_a();
        const EigenDecomposition d = eigendecompose(ex::ex3_a());
        CHECK_THROWS(orthonormalize_within_eigenspaces(a, d, cluster_eigenvalues(d.eigenvalues)));
    }
}

TEST_CASE("failure modes") {
    CHECK_THROWS_AS(eigendecompose(Matrix{{0, 1}, {0, 0}}), NotDiagonalizable);
    CHECK_THROWS_AS(eigendecompose(Matrix{{3, 1, 0}, {0, 3, 1}, {0, 0, 3}}), NotDiagonalizable);
    CHECK_THROWS_AS(eigendecompose(Matrix(2, 3)), DimensionError);

    // an ill-conditioned but diagonalizable matrix trips cond_max
    ToleranceConfig strict;
    strict.cond_max = 10.0;
    CHECK_THROWS_AS(eigendecompose(Matrix{{1, 100}, {0, 2}}, strict), NotDiagonalizable);
    CHECK_NOTHROW(eigendecompose(Matrix{{1, 100}, {0, 2}}));
}

TEST_CASE("schur form") {
    Rng rng(4);
    const Matrix a = random_gaussian(7, 7, rng);
    const SchurForm f = schur_decompose(a);
    CHECK(fro(naive_product(conj_transpose(f.z), f.z) - Matrix::identity(7)) <= 1e-12);
    CHECK(fro(naive_product(naive_product(f.z, f.t), conj_transpose(f.z)) - a) <= 1e-12 * fro(a));
    for (std::size_t i = 1; i < 7; ++i)
        for (std::size_t j = 0; j < i; ++j) CHECK(f.t(i, j) == Complex(0.0));
    CHECK(f.iterations <= 30 * 7);
}

TEST_CASE("small and degenerate sizes") {
    const EigenDecomposition one = eigendecompose(Matrix{{Complex(2, -3)}});
    CHECK(one.eigenvalues == ComplexVector{Complex(2, -3)});
    CHECK(one.s == Matrix{{1}});

    const EigenDecomposition zero = eigendecompose(Matrix::zeros(3, 3));
    CHECK(zero.eigenvalues == ComplexVector(3, 0.0));
    CHECK(zero.residual == 0.0);

    // real matrix with a complex pair
    const EigenDecomposition rot = eigendecompose(Matrix{{0, -1}, {1, 0}});
    CHECK(multiset_gap(rot.eigenvalues, {Complex(0, 1), Complex(0, -1)}) <= 1e-14);
}

TEST_CASE("reconstruction bound on random diagonalizable matrices") {
    const ToleranceConfig tol;
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        Rng rng(seed);
        const std::size_t n = 3 + seed % 8;
        const Matrix a = random_gaussian(n, n, rng);
        const EigenDecomposition d = eigendecompose(a);
        const Matrix rebuilt = matmul(matmul(d.s, Matrix::diagonal(d.eigenvalues)), inverse(d.s));
        CHECK(fro(a - rebuilt) <= 10.0 * tol.rtol * fro(a));
    }
}

TEST_CASE("eigenvalue multiset is invariant under similarity") {
    const ToleranceConfig tol;
    for (std::uint64_t seed = 30; seed < 36; ++seed) {
        Rng rng(seed);
        const Matrix a = random_gaussian(6, 6, rng);
        const Matrix g = random_gaussian(6, 6, rng) + Matrix::identity(6) * Complex(4.0);
        const Matrix similar = matmul(matmul(g, a), inverse(g));
        const ComplexVector x = eigendecompose(a).eigenvalues;
        const ComplexVector y = eigendecompose(similar).eigenvalues;
        double scale = 0.0;
        for (const Complex& z : x) scale = std::max(scale, std::abs(z));
        CHECK(multiset_gap(x, y) <= tol.cluster_tol * scale);
    }
}

TEST_CASE("normal inputs orthonormalize to within rtol * n") {
    const ToleranceConfig tol;
    for (std::uint64_t seed = 50; seed < 60; ++seed) {
        const Matrix a = random_normal_matrix(seed, {1.0, 1.0, Complex(0, 2), Complex(0, 2), -5.0, 3.0});
        const EigenDecomposition d = eigendecompose(a);
        const EigenDecomposition u = orthonormalize_within_eigenspaces(a, d, cluster_eigenvalues(d.eigenvalues));
        CHECK(unitarity_defect(u.s) <= tol.rtol * 6.0);
    }
}

TEST_CASE("repeated calls give identical results") {
    Rng rng(123);
    const Matrix a = random_gaussian(9, 9, rng);
    const EigenDecomposition x = eigendecompose(a);
    const EigenDecomposition y = eigendecompose(a);
    CHECK(x.eigenvalues == y.eigenvalues);
    CHECK(x.s == y.s);
}

}
