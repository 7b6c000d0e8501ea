#include <doctest.h>

#include "commdiag/errors.hpp"
#include "commdiag/generator.hpp"
#include "commdiag/permutation.hpp"
#include "commdiag/simdiag.hpp"
#include "commdiag/svd.hpp"
#include "commdiag/worked_examples.hpp"
#include "support.hpp"

using namespace commdiag;
using testing_support::fro;
using testing_support::multiset_gap;
using testing_support::naive_product;

namespace ex = commdiag::worked;

TEST_SUITE("permutation") {

TEST_CASE("spec validation") {
    CHECK_THROWS_AS(PermutationSpec({0, 0}), InvalidPermutation);
    CHECK_THROWS_AS(PermutationSpec({0, 2}), InvalidPermutation);
    CHECK_NOTHROW(PermutationSpec({1, 2, 0}));
    CHECK_THROWS_AS(PermutationSpec::from_matrix(Matrix{{1, 0}, {1, 0}}), InvalidPermutation);
    CHECK_THROWS_AS(PermutationSpec::from_matrix(Matrix{{2, 0}, {0, 1}}), InvalidPermutation);
    CHECK_THROWS_AS(PermutationSpec::from_matrix(Matrix{{1, 0, 0}}), InvalidPermutation);
    CHECK_THROWS_AS(PermutationSpec::from_matrix(Matrix{{Complex(0, 1), 0}, {0, 1}}), InvalidPermutation);
}

TEST_CASE("to_matrix") {
    CHECK(to_matrix(PermutationSpec::identity(4)) == Matrix::identity(4));
    CHECK(to_matrix(PermutationSpec({1, 0})) == Matrix{{0, 1}, {1, 0}});

    // column convention: column i of P holds its 1 in row image[i]
    const PermutationSpec p({3, 0, 2, 4, 5, 1});
    CHECK(to_matrix(p) == ex::ex3_p());
    CHECK(PermutationSpec::from_matrix(ex::ex3_p()) == p);

    const Matrix m = to_matrix(p);
    CHECK(naive_product(m, transpose(m)) == Matrix::identity(6));
}

TEST_CASE("inverse") {
    const PermutationSpec p({3, 0, 2, 4, 5, 1});
    CHECK(to_matrix(p.inverse()) == transpose(to_matrix(p)));
    CHECK(p.inverse().inverse() == p);
}

TEST_CASE("conjugate") {
    SUBCASE("example 3 gives the printed hat matrices exactly") {
        const PermutationSpec p = PermutationSpec::from_matrix(ex::ex3_p());
        CHECK(conjugate(ex::ex3_a(), p) == ex::ex3_a_hat());
        CHECK(conjugate(ex::ex3_b(), p) == ex::ex3_b_hat());
        // and agrees with forming P A P^T by products
        const Matrix pm = ex::ex3_p();
        CHECK(naive_product(naive_product(pm, ex::ex3_a()), transpose(pm)) == ex::ex3_a_hat());
    }
    SUBCASE("identity") { CHECK(conjugate(ex::ex1_a(), PermutationSpec::identity(3)) == ex::ex1_a()); }
    SUBCASE("undone by the inverse") {
        Rng rng(9);
        const Matrix a = random_gaussian(5, 5, rng);
        const PermutationSpec p({4, 2, 0, 1, 3});
        CHECK(conjugate(conjugate(a, p), p.inverse()) == a);
    }
    SUBCASE("shape errors") {
        CHECK_THROWS_AS(conjugate(Matrix::identity(3), PermutationSpec::identity(2)), DimensionError);
        CHECK_THROWS_AS(conjugate(Matrix(2, 3), PermutationSpec::identity(2)), DimensionError);
    }
}

TEST_CASE("general_permute") {
    Rng rng(10);
    const Matrix a = random_gaussian(3, 4, rng);
    CHECK(general_permute(a, PermutationSpec::identity(3), PermutationSpec::identity(4)) == a);

    const Matrix swapped = general_permute(a, PermutationSpec({1, 0, 2}), PermutationSpec::identity(4));
    for (std::size_t j = 0; j < 4; ++j) {
        CHECK(swapped(0, j) == a(1, j));
        CHECK(swapped(1, j) == a(0, j));
        CHECK(swapped(2, j) == a(2, j));
    }

    const PermutationSpec p({2, 0, 1});
    const PermutationSpec q({1, 3, 0, 2});
    CHECK(general_permute(a, p, q) == naive_product(naive_product(to_matrix(p), a), to_matrix(q)));

    CHECK_THROWS_AS(general_permute(a, PermutationSpec::identity(4), PermutationSpec::identity(4)), DimensionError);
}

TEST_CASE("row and column permutations keep the singular values of example 1 A") {
    const std::vector<double> base = singular_values(ex::ex1_a());
    const PermutationSpec ps[] = {PermutationSpec({1, 2, 0}), PermutationSpec({2, 1, 0}), PermutationSpec({0, 2, 1})};
    for (const auto& p : ps)
        for (const auto& q : ps) CHECK(multiset_gap(singular_values(general_permute(ex::ex1_a(), p, q)), base) <= 1e-12);
}

TEST_CASE("invariance_report") {
    SUBCASE("example 3") {
        const Matrix a_hat = conjugate(ex::ex3_a(), PermutationSpec::from_matrix(ex::ex3_p()));
        const InvarianceReport r = invariance_report(ex::ex3_a(), a_hat);
        CHECK(r.eigen_multiset_match);
        CHECK(r.singular_multiset_match);
        CHECK(r.max_pairing_gap <= 1e-9);
    }
    SUBCASE("a matrix against itself") {
        const InvarianceReport r = invariance_report(ex::ex1_b(), ex::ex1_b());
        CHECK(r.eigen_multiset_match);
        CHECK(r.singular_multiset_match);
        CHECK(r.max_pairing_gap == 0.0);
    }
    SUBCASE("scaled spectrum") {
        const InvarianceReport r = invariance_report(Matrix::identity(3), Matrix::identity(3) * Complex(2.0));
        CHECK_FALSE(r.eigen_multiset_match);
        CHECK_FALSE(r.singular_multiset_match);
        CHECK(r.max_pairing_gap == doctest::Approx(1.0));
    }
    SUBCASE("shape errors") { CHECK_THROWS_AS(invariance_report(Matrix::identity(2), Matrix::identity(3)), DimensionError); }
}

TEST_CASE("greedy_pairing_gap") {
    CHECK(greedy_pairing_gap(ComplexVector{1.0, 2.0}, ComplexVector{2.0, 1.0}) == 0.0);
    CHECK(greedy_pairing_gap(ComplexVector{1.0, 2.0}, ComplexVector{2.0, 1.5}) == doctest::Approx(0.5));
}

TEST_CASE("conjugation preserves the commutator norm") {
    const PermutationSpec p = PermutationSpec::from_matrix(ex::ex3_p());
    Rng rng(12);
    const Matrix a = random_gaussian(6, 6, rng);
    const Matrix b = random_gaussian(6, 6, rng);
    const double before = fro(commutator(a, b));
    const double after = fro(commutator(conjugate(a, p), conjugate(b, p)));
    CHECK(after == doctest::Approx(before).epsilon(1e-14));
    CHECK(check_commute(ex::ex3_a_hat(), ex::ex3_b_hat()).residual == 0.0);
}

TEST_CASE("P S diagonalizes P A P^T with the same diagonal") {
    const PermutationSpec p = PermutationSpec::from_matrix(ex::ex3_p());
    const SimDiagResult r = simultaneous_diagonalize(ex::ex3_a(), ex::ex3_b());
    const Matrix ps = naive_product(to_matrix(p), r.s_common);
    CHECK(diagonalization_residual(ex::ex3_a_hat(), ps, r.diag_a) <= 1e-10);
    CHECK(diagonalization_residual(ex::ex3_b_hat(), ps, r.diag_b) <= 1e-10);
}

TEST_CASE("general permutation keeps singular values on random inputs") {
    const ToleranceConfig tol;
    Rng rng(13);
    for (int trial = 0; trial < 5; ++trial) {
        const Matrix a = random_gaussian(7, 7, rng);
        const PermutationSpec p({6, 3, 0, 1, 5, 2, 4});
        const PermutationSpec q({2, 4, 6, 0, 1, 3, 5});
        const std::vector<double> x = singular_values(a);
        CHECK(multiset_gap(x, singular_values(general_permute(a, p, q))) <= tol.cluster_tol * x.front());
    }
}

}
