#pragma once

#include <string>
#include <vector>

#include "commdiag/matrix.hpp"

// The three worked commuting pairs bundled as golden fixtures, together with
// the factor matrices printed alongside them. Irrational entries are
// computed in double precision from their closed forms.
namespace commdiag::worked {

// 3x3: A = J + iI (normal), B the 3x3 magic square.
Matrix ex1_a();
Matrix ex1_b();
Matrix ex1_s_a();   // orthogonal eigenvector matrix of A, first column (1,1,1)/sqrt(3)
Matrix ex1_v_a();   // right singular vectors of A for U = ex1_s_a(), sigma (sqrt10, 1, 1)
Matrix ex1_v_b();   // right singular vectors of B for U = ex1_s_a(), sigma (12, 4sqrt3, 2sqrt3)

// 4x4: A = blockdiag([[0,4],[1,0]] x2), B swaps the two 2-blocks.
Matrix ex2_a();
Matrix ex2_b();
Matrix ex2_s_a();       // eigenvectors of A for diag(2, 2, -2, -2)
Matrix ex2_s_b();       // orthogonal eigenvectors of B for diag(1, 1, -1, -1)
Matrix ex2_common_from_a();  // S_A S_TA
Matrix ex2_common_from_b();  // S_B S_TB
Matrix ex2_p_b();       // ex2_common_from_b() == ex2_common_from_a() * ex2_p_b()
Matrix ex2_alt_v_a();   // with U = ex2_s_b(), sigma_a = (1, 4, 1, 4)
Matrix ex2_alt_v_b();   // with U = ex2_s_b(), sigma_b = (1, 1, 1, 1)

// 6x6 real symmetric A and complex symmetric B.
Matrix ex3_a();
Matrix ex3_b();
Matrix ex3_s_a();     // orthogonal eigenvectors of A for diag(0, -4, -4, -2, 10, 10)
Matrix ex3_common();  // orthogonal common eigenvector matrix
Matrix ex3_v_a();     // with U = ex3_common(), sigma_a = (0, 4, 4, 2, 10, 10)
Matrix ex3_v_b();     // with U = ex3_common(), sigma_b = (0, 3sqrt2, 0, 0, 3sqrt2, 0)
Matrix ex3_p();       // the 6x6 permutation
Matrix ex3_a_hat();   // P A P^T as printed
Matrix ex3_b_hat();   // P B P^T as printed

struct Fixture {
    std::string name;                // file name under fixtures/
    std::vector<std::string> notes;  // written as comment lines
    Matrix value;
};

// Every bundled fixture, in a fixed order.
std::vector<Fixture> all_fixtures();

}  // namespace commdiag::worked
