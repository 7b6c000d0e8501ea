#pragma once

namespace commdiag {

struct ToleranceConfig {
    double rtol = 1e-10;         // relative residual tolerance
    double atol = 1e-12;         // absolute floor
    double cluster_tol = 1e-8;   // eigenvalue grouping radius, relative to spectral scale
    double cond_max = 1e8;       // largest admissible eigenvector-matrix condition estimate

    // Throws InvalidSpec unless every field is positive and rtol >= atol.
    void validate() const;
};

}  // namespace commdiag
