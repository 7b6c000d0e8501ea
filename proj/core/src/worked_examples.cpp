#include "commdiag/worked_examples.hpp"

#include <cmath>

#include "commdiag/generator.hpp"

namespace commdiag::worked {

namespace {

const double r2 = std::sqrt(2.0);
const double r3 = std::sqrt(3.0);
const double r6 = std::sqrt(6.0);
const double r30 = std::sqrt(30.0);
constexpr Complex i1{0.0, 1.0};

Matrix scaled(Matrix m, double factor) {
    m *= factor;
    return m;
}

}  // namespace

Matrix ex1_a() {
    const Complex d{1.0, 1.0};
    return {{d, 1, 1}, {1, d, 1}, {1, 1, d}};
}

Matrix ex1_b() { return {{7, 0, 5}, {2, 4, 6}, {3, 8, 1}}; }

Matrix ex1_s_a() {
    return scaled({{2 * r3, 3 * r2, r6}, {2 * r3, 0, -2 * r6}, {2 * r3, -3 * r2, r6}}, 1.0 / 6.0);
}

Matrix ex1_v_a() {
    const Complex f = r30 * Complex(3.0, -1.0);
    return scaled({{f, -15.0 * r2 * i1, -5.0 * r6 * i1},
                   {f, 0, 10.0 * r6 * i1},
                   {f, 15.0 * r2 * i1, -5.0 * r6 * i1}},
                  1.0 / 30.0);
}

Matrix ex1_v_b() {
    return scaled({{2 * r3, r6, 3 * r2}, {2 * r3, -2 * r6, 0}, {2 * r3, r6, -3 * r2}}, 1.0 / 6.0);
}

Matrix ex2_a() { return {{0, 4, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, 4}, {0, 0, 1, 0}}; }

Matrix ex2_b() { return {{0, 0, 1, 0}, {0, 0, 0, 1}, {1, 0, 0, 0}, {0, 1, 0, 0}}; }

Matrix ex2_s_a() { return {{2, 0, 2, 0}, {1, 0, -1, 0}, {0, 2, 0, 2}, {0, 1, 0, -1}}; }

Matrix ex2_s_b() {
    return scaled({{0, 1, 0, 1}, {1, 0, 1, 0}, {0, 1, 0, -1}, {1, 0, -1, 0}}, r2 / 2.0);
}

Matrix ex2_common_from_a() { return {{2, 2, 2, 2}, {1, 1, -1, -1}, {-2, 2, -2, 2}, {-1, 1, 1, -1}}; }

Matrix ex2_common_from_b() { return {{2, 2, 2, 2}, {-1, 1, -1, 1}, {2, 2, -2, -2}, {-1, 1, 1, -1}}; }

Matrix ex2_p_b() { return {{0, 0, 0, 1}, {0, 1, 0, 0}, {0, 0, 1, 0}, {1, 0, 0, 0}}; }

Matrix ex2_alt_v_a() {
    return scaled({{1, 0, 1, 0}, {0, 1, 0, 1}, {1, 0, -1, 0}, {0, 1, 0, -1}}, r2 / 2.0);
}

Matrix ex2_alt_v_b() {
    return scaled({{0, 1, 0, -1}, {1, 0, -1, 0}, {0, 1, 0, 1}, {1, 0, 1, 0}}, r2 / 2.0);
}

Matrix ex3_a() {
    return {{1, 0, 2, 3, 0, 4}, {0, 3, 0, 0, 7, 0}, {2, 0, 1, 4, 0, 3},
            {3, 0, 4, 1, 0, 2}, {0, 7, 0, 0, 3, 0}, {4, 0, 3, 2, 0, 1}};
}

Matrix ex3_b() {
    Matrix b(6, 6);
    for (std::size_t r = 0; r < 6; ++r)
        for (std::size_t c = 0; c < 6; ++c) b(r, c) = (r < 3) == (c < 3) ? i1 : Complex(1.0);
    return b;
}

Matrix ex3_s_a() {
    return scaled({{-2, r2, r2, -2, r2, r2},
                   {0, 2, -2, 0, 2, -2},
                   {2, r2, r2, 2, r2, r2},
                   {2, -r2, -r2, -2, r2, r2},
                   {0, -2, 2, 0, 2, -2},
                   {-2, -r2, -r2, 2, r2, r2}},
                  0.25);
}

Matrix ex3_common() {
    return scaled({{-r3, r2, 1, -r3, r2, 1},
                   {0, r2, -2, 0, r2, -2},
                   {r3, r2, 1, r3, r2, 1},
                   {r3, -r2, -1, -r3, r2, 1},
                   {0, -r2, 2, 0, r2, -2},
                   {-r3, -r2, -1, r3, r2, 1}},
                  r3 / 6.0);
}

Matrix ex3_v_a() {
    return scaled({{r3, -r2, -1, r3, r2, 1},
                   {0, -r2, 2, 0, r2, -2},
                   {-r3, -r2, -1, -r3, r2, 1},
                   {-r3, r2, 1, r3, r2, 1},
                   {0, r2, -2, 0, r2, -2},
                   {r3, r2, 1, -r3, r2, 1}},
                  r3 / 6.0);
}

Matrix ex3_v_b() {
    const Complex m{-1.0, -1.0};
    const Complex p{1.0, 1.0};
    const Complex c{1.0, -1.0};
    return scaled({{-r3, m, 1, -r3, c, 1},
                   {0, m, -2, 0, c, -2},
                   {r3, m, 1, r3, c, 1},
                   {r3, p, -1, -r3, c, 1},
                   {0, p, 2, 0, c, -2},
                   {-r3, p, -1, r3, c, 1}},
                  r3 / 6.0);
}

Matrix ex3_p() {
    return {{0, 1, 0, 0, 0, 0}, {0, 0, 0, 0, 0, 1}, {0, 0, 1, 0, 0, 0},
            {1, 0, 0, 0, 0, 0}, {0, 0, 0, 1, 0, 0}, {0, 0, 0, 0, 1, 0}};
}

Matrix ex3_a_hat() {
    return {{3, 0, 0, 0, 0, 7}, {0, 1, 3, 4, 2, 0}, {0, 3, 1, 2, 4, 0},
            {0, 4, 2, 1, 3, 0}, {0, 2, 4, 3, 1, 0}, {7, 0, 0, 0, 0, 3}};
}

Matrix ex3_b_hat() {
    const Complex x = i1;
    const Complex o = 1.0;
    const std::initializer_list<Complex> first = {x, o, x, x, o, o};
    const std::initializer_list<Complex> second = {o, x, o, o, x, x};
    return {first, second, first, first, second, second};
}

std::vector<Fixture> all_fixtures() {
    Rng rng(20240607);
    Matrix noise = random_gaussian(3, 3, rng);

    return {
        {"ex1_a", {"Example 1 A: normal, eigenvalues 3+i, i, i"}, ex1_a()},
        {"ex1_b", {"Example 1 B: magic square, eigenvalues 12, -2sqrt(6), 2sqrt(6)"}, ex1_b()},
        {"ex1_u", {"Example 1 shared U (orthogonal eigenvectors of A)",
                   "entries: 2sqrt(3)/6, 3sqrt(2)/6, sqrt(6)/6, -2sqrt(6)/6"}, ex1_s_a()},
        {"ex1_v_a", {"Example 1 V_A for sigma_a = (sqrt(10), 1, 1)",
                     "column 1: sqrt(30)(3-i)/30; columns 2-3: multiples of i sqrt(2)/2 and i sqrt(6)/6"}, ex1_v_a()},
        {"ex1_v_b", {"Example 1 V_B for sigma_b = (12, 4sqrt(3), 2sqrt(3))",
                     "entries: 2sqrt(3)/6, sqrt(6)/6, 3sqrt(2)/6"}, ex1_v_b()},
        {"ex2_a", {"Example 2 A: eigenvalues 2, 2, -2, -2"}, ex2_a()},
        {"ex2_b", {"Example 2 B: block swap, eigenvalues 1, 1, -1, -1"}, ex2_b()},
        {"ex2_p_b", {"Example 2 column permutation between the two common eigenvector matrices"}, ex2_p_b()},
        {"ex2_alt_u", {"Example 2 alternate U = S_B, entries sqrt(2)/2"}, ex2_s_b()},
        {"ex2_alt_v_a", {"Example 2 alternate V_A for sigma_a = (1, 4, 1, 4), entries sqrt(2)/2"}, ex2_alt_v_a()},
        {"ex2_alt_v_b", {"Example 2 alternate V_B for sigma_b = (1, 1, 1, 1), entries sqrt(2)/2"}, ex2_alt_v_b()},
        {"ex3_a", {"Example 3 A: real symmetric, eigenvalues 0, -4, -4, -2, 10, 10"}, ex3_a()},
        {"ex3_b", {"Example 3 B: complex symmetric, eigenvalues 3+3i, -3+3i, 0, 0, 0, 0"}, ex3_b()},
        {"ex3_p", {"Example 3 permutation matrix"}, ex3_p()},
        {"ex3_a_hat", {"Example 3 P A P^T"}, ex3_a_hat()},
        {"ex3_b_hat", {"Example 3 P B P^T"}, ex3_b_hat()},
        {"random_noncommuting",
         {"complex Gaussian 3x3, seed 20240607, " + std::string(kGeneratorAlgorithm),
          "does not commute with ex1_a"},
         std::move(noise)},
    };
}

}  // namespace commdiag::worked
