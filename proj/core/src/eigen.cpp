#include "commdiag/eigen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>

#include "commdiag/errors.hpp"

namespace commdiag {

namespace {

constexpr double kUlp = std::numeric_limits<double>::epsilon();

void require_square(const Matrix& a, const char* what) {
    if (!a.is_square() || a.rows() == 0) {
        throw DimensionError(std::string(what) + " needs a non-empty square matrix, got " +
                             std::to_string(a.rows()) + "x" + std::to_string(a.cols()));
    }
    if (!a.all_finite()) throw InvalidMatrix(std::string(what) + ": matrix has non-finite entries");
}

// In-place Householder reduction; accumulates the reflectors into z.
void reduce_to_hessenberg(Matrix& h, Matrix& z) {
    const std::size_t n = h.rows();
    if (n < 3) return;
    ComplexVector v(n);
    ComplexVector w(n);
    for (std::size_t k = 0; k + 2 < n; ++k) {
        const std::size_t m = n - k - 1;
        std::span<Complex> x(v.data(), m);
        for (std::size_t i = 0; i < m; ++i) x[i] = h(k + 1 + i, k);
        const double xnorm = norm2(x);
        if (xnorm == 0.0) continue;
        const Complex phase = std::abs(x[0]) == 0.0 ? Complex{1.0} : x[0] / std::abs(x[0]);
        const Complex alpha = -phase * xnorm;
        x[0] -= alpha;
        const double vnorm = norm2(x);
        if (vnorm == 0.0) continue;
        for (auto& e : x) e /= vnorm;

        // h <- (I - 2 v v^H) h on rows k+1..n-1
        for (std::size_t j = k; j < n; ++j) {
            Complex s{};
            for (std::size_t i = 0; i < m; ++i) s += std::conj(x[i]) * h(k + 1 + i, j);
            s *= 2.0;
            for (std::size_t i = 0; i < m; ++i) h(k + 1 + i, j) -= x[i] * s;
        }
        // h <- h (I - 2 v v^H) and z <- z (I - 2 v v^H) on columns k+1..n-1
        for (Matrix* target : {&h, &z}) {
            Matrix& t = *target;
            for (std::size_t r = 0; r < n; ++r) {
                Complex s{};
                for (std::size_t i = 0; i < m; ++i) s += t(r, k + 1 + i) * x[i];
                s *= 2.0;
                for (std::size_t i = 0; i < m; ++i) t(r, k + 1 + i) -= s * std::conj(x[i]);
            }
        }
        h(k + 1, k) = alpha;
        for (std::size_t i = k + 2; i < n; ++i) h(i, k) = Complex{};
    }
}

struct Rotation {
    double c;
    Complex s;
};

// Rotation G with G [a; b] = [r; 0].
Rotation make_rotation(Complex a, Complex b) {
    const double absa = std::abs(a);
    const double absb = std::abs(b);
    if (absb == 0.0) return {1.0, Complex{}};
    if (absa == 0.0) return {0.0, std::conj(b) / absb};
    const double r = std::hypot(absa, absb);
    return {absa / r, (a / absa) * std::conj(b) / r};
}

Complex wilkinson_shift(const Matrix& h, std::size_t hi) {
    const Complex a = h(hi - 1, hi - 1);
    const Complex b = h(hi - 1, hi);
    const Complex c = h(hi, hi - 1);
    const Complex d = h(hi, hi);
    const Complex half_trace = 0.5 * (a + d);
    const Complex disc = std::sqrt(0.25 * (a - d) * (a - d) + b * c);
    const Complex mu1 = half_trace + disc;
    const Complex mu2 = half_trace - disc;
    return std::abs(mu1 - d) <= std::abs(mu2 - d) ? mu1 : mu2;
}

// One explicitly shifted QR sweep on the active window [lo, hi].
void qr_sweep(Matrix& h, Matrix& z, std::size_t lo, std::size_t hi, Complex shift) {
    const std::size_t n = h.rows();
    for (std::size_t i = lo; i <= hi; ++i) h(i, i) -= shift;

    std::vector<Rotation> rotations;
    rotations.reserve(hi - lo);
    for (std::size_t k = lo; k < hi; ++k) {
        const Rotation g = make_rotation(h(k, k), h(k + 1, k));
        for (std::size_t j = k; j < n; ++j) {
            const Complex t1 = h(k, j);
            const Complex t2 = h(k + 1, j);
            h(k, j) = g.c * t1 + g.s * t2;
            h(k + 1, j) = -std::conj(g.s) * t1 + g.c * t2;
        }
        h(k + 1, k) = Complex{};
        rotations.push_back(g);
    }
    for (std::size_t k = lo; k < hi; ++k) {
        const Rotation& g = rotations[k - lo];
        const std::size_t last_row = std::min(k + 1, hi);
        for (std::size_t r = 0; r <= last_row; ++r) {
            const Complex t1 = h(r, k);
            const Complex t2 = h(r, k + 1);
            h(r, k) = g.c * t1 + std::conj(g.s) * t2;
            h(r, k + 1) = -g.s * t1 + g.c * t2;
        }
        for (std::size_t r = 0; r < n; ++r) {
            const Complex t1 = z(r, k);
            const Complex t2 = z(r, k + 1);
            z(r, k) = g.c * t1 + std::conj(g.s) * t2;
            z(r, k + 1) = -g.s * t1 + g.c * t2;
        }
    }

    for (std::size_t i = lo; i <= hi; ++i) h(i, i) += shift;
}

}  // namespace

SchurForm schur_decompose(const Matrix& a, const ToleranceConfig& tol) {
    require_square(a, "schur_decompose");
    tol.validate();
    const std::size_t n = a.rows();
    SchurForm out{a, Matrix::identity(n), 0};
    Matrix& h = out.t;
    Matrix& z = out.z;
    reduce_to_hessenberg(h, z);

    const double norm_h = frobenius_norm(h);
    const double small = std::numeric_limits<double>::min() * (static_cast<double>(n) / kUlp);
    const int budget = 30 * static_cast<int>(n);

    std::size_t hi = n - 1;
    int window_iterations = 0;
    while (hi > 0) {
        std::size_t lo = hi;
        while (lo > 0) {
            double diag = std::abs(h(lo - 1, lo - 1)) + std::abs(h(lo, lo));
            if (diag == 0.0) diag = norm_h;
            if (std::abs(h(lo, lo - 1)) <= std::max(kUlp * diag, small)) {
                h(lo, lo - 1) = Complex{};
                break;
            }
            --lo;
        }
        if (lo == hi) {
            --hi;
            window_iterations = 0;
            continue;
        }
        if (out.iterations >= budget) {
            throw NonConvergence("QR iteration did not converge within " + std::to_string(budget) +
                                 " sweeps");
        }
        ++out.iterations;
        ++window_iterations;

        Complex shift;
        if (window_iterations % 20 == 10) {
            shift = h(lo, lo) + 0.75 * std::abs(h(lo + 1, lo).real());
        } else if (window_iterations % 20 == 0) {
            shift = h(hi, hi) + 0.75 * std::abs(h(hi, hi - 1).real());
        } else {
            shift = wilkinson_shift(h, hi);
        }
        qr_sweep(h, z, lo, hi, shift);
    }

    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < i; ++j) h(i, j) = Complex{};
    return out;
}

ComplexVector eigenvalues(const Matrix& a, const ToleranceConfig& tol) {
    const SchurForm schur = schur_decompose(a, tol);
    ComplexVector values = schur.t.diagonal_entries();
    std::sort(values.begin(), values.end(), canonical_before);
    return values;
}

void canonicalize_phase(std::span<Complex> v) {
    double largest = 0.0;
    for (const Complex& e : v) largest = std::max(largest, std::abs(e));
    if (largest == 0.0) return;
    std::size_t pick = 0;
    while (std::abs(v[pick]) < (1.0 - 1e-10) * largest) ++pick;
    const double mag = std::abs(v[pick]);
    const Complex rotate = std::conj(v[pick]) / mag;
    for (Complex& e : v) e *= rotate;
    v[pick] = mag;
}

double eigen_residual(const Matrix& a, const Matrix& s, std::span<const Complex> values) {
    Matrix sd = s;
    for (std::size_t j = 0; j < s.cols(); ++j)
        for (std::size_t i = 0; i < s.rows(); ++i) sd(i, j) *= values[j];
    const double defect = frobenius_norm(matmul(a, s) - sd);
    const double scale = frobenius_norm(a);
    return scale > 0.0 ? defect / scale : defect;
}

namespace {

// Eigenvectors of the upper-triangular Schur factor. Diagonal entries within
// `radius` of the target eigenvalue are treated as equal and their
// component is set to zero, which keeps repeated eigenvalues from producing
// parallel vectors.
Matrix triangular_eigenvectors(const Matrix& t, double radius) {
    const std::size_t n = t.rows();
    Matrix x(n, n);
    for (std::size_t k = 0; k < n; ++k) {
        const Complex lambda = t(k, k);
        x(k, k) = 1.0;
        for (std::size_t i = k; i-- > 0;) {
            Complex s{};
            for (std::size_t j = i + 1; j <= k; ++j) s += t(i, j) * x(j, k);
            const Complex d = t(i, i) - lambda;
            x(i, k) = std::abs(d) <= radius ? Complex{} : -s / d;
        }
    }
    return x;
}

EigenDecomposition finish(const Matrix& a, Matrix s, ComplexVector values, const ToleranceConfig& tol) {
    const std::size_t n = a.rows();
    EigenDecomposition d;
    d.residual = eigen_residual(a, s, values);
    if (!(d.residual <= tol.rtol)) {
        std::ostringstream msg;
        msg << "eigenvector residual " << d.residual << " exceeds rtol " << tol.rtol
            << " (matrix is defective or nearly so)";
        throw NotDiagonalizable(msg.str());
    }
    try {
        d.cond_estimate = condition_estimate(s, tol);
    } catch (const SingularMatrixError&) {
        throw NotDiagonalizable("eigenvector matrix is singular");
    }
    if (!(d.cond_estimate <= tol.cond_max)) {
        std::ostringstream msg;
        msg << "eigenvector matrix condition estimate " << d.cond_estimate << " exceeds cond_max "
            << tol.cond_max;
        throw NotDiagonalizable(msg.str());
    }
    d.is_unitary = unitarity_defect(s) <= tol.rtol * static_cast<double>(n);
    d.s = std::move(s);
    d.eigenvalues = std::move(values);
    return d;
}

}  // namespace

EigenDecomposition eigendecompose(const Matrix& a, const ToleranceConfig& tol) {
    require_square(a, "eigendecompose");
    const std::size_t n = a.rows();
    const SchurForm schur = schur_decompose(a, tol);
    const ComplexVector raw = schur.t.diagonal_entries();

    const Matrix x = triangular_eigenvectors(schur.t, cluster_radius(raw, tol));
    Matrix v = matmul(schur.z, x);
    for (std::size_t j = 0; j < n; ++j) {
        ComplexVector col = v.column(j);
        const double len = norm2(col);
        if (len == 0.0) throw NotDiagonalizable("zero eigenvector");
        for (auto& e : col) e /= len;
        canonicalize_phase(col);
        v.set_column(j, col);
    }

    const auto order = canonical_order(raw);
    ComplexVector values(n);
    for (std::size_t j = 0; j < n; ++j) values[j] = raw[order[j]];
    return finish(a, permute_columns(v, order), std::move(values), tol);
}

bool is_normal(const Matrix& a, const ToleranceConfig& tol) {
    if (!a.is_square()) throw DimensionError("is_normal needs a square matrix");
    const Matrix ah = conj_transpose(a);
    const double defect = frobenius_norm(matmul(a, ah) - matmul(ah, a));
    const double scale = frobenius_norm(a);
    return defect <= tol.rtol * scale * scale;
}

EigenDecomposition orthonormalize_within_eigenspaces(const Matrix& a, const EigenDecomposition& d,
                                                     const SpectralPartition& partition,
                                                     const ToleranceConfig& tol) {
    require_square(a, "orthonormalize_within_eigenspaces");
    const std::size_t n = a.rows();
    if (d.s.rows() != n || d.s.cols() != n || d.eigenvalues.size() != n || partition.size() != n) {
        throw DimensionError("decomposition and partition do not match the matrix order");
    }
    if (!(eigen_residual(a, d.s, d.eigenvalues) <= tol.rtol)) {
        throw NotDiagonalizable("decomposition does not diagonalize the matrix to rtol");
    }

    Matrix s = d.s;
    for (const Cluster& cluster : partition.clusters) {
        std::vector<ComplexVector> basis;
        for (std::size_t idx : cluster.indices) {
            ComplexVector v = s.column(idx);
            const double original = norm2(v);
            for (int pass = 0; pass < 2; ++pass) {
                for (const auto& q : basis) {
                    const Complex c = vdot(q, v);
                    for (std::size_t i = 0; i < n; ++i) v[i] -= c * q[i];
                }
            }
            const double len = norm2(v);
            if (!(len > tol.cluster_tol * original)) {
                throw RankDeficientCluster("eigenvectors of the cluster at " +
                                           std::to_string(cluster.representative.real()) + "+" +
                                           std::to_string(cluster.representative.imag()) +
                                           "i are linearly dependent");
            }
            for (auto& e : v) e /= len;
            basis.push_back(std::move(v));
        }
        for (std::size_t p = 0; p < cluster.indices.size(); ++p) {
            canonicalize_phase(basis[p]);
            s.set_column(cluster.indices[p], basis[p]);
        }
    }

    EigenDecomposition out = finish(a, std::move(s), d.eigenvalues, tol);
    if (!out.is_unitary) {
        throw InternalDiagnostic("eigenvector basis is not unitary after orthonormalization; input is not normal");
    }
    return out;
}

}  // namespace commdiag
