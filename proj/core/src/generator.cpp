#include "commdiag/generator.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "commdiag/errors.hpp"

namespace commdiag {

double Rng::uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

double Rng::normal() {
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

Complex Rng::complex_normal() {
    const double re = normal();
    const double im = normal();
    return Complex(re, im) * std::numbers::sqrt2 * 0.5;
}

void PairSpec::validate() const {
    if (n == 0) throw InvalidSpec("n must be positive");
    if (multiplicities_a.empty()) throw InvalidSpec("multiplicities_a is empty");
    std::size_t total = 0;
    for (std::size_t m : multiplicities_a) {
        if (m == 0) throw InvalidSpec("multiplicities must be positive");
        total += m;
    }
    if (total != n) {
        throw InvalidSpec("multiplicities sum to " + std::to_string(total) + ", expected n = " + std::to_string(n));
    }
    if (basis_mode.kind == BasisKind::general && !(basis_mode.cond_target >= 1.0 && std::isfinite(basis_mode.cond_target))) {
        throw InvalidSpec("cond_target must be a finite value >= 1");
    }
}

Matrix random_gaussian(std::size_t rows, std::size_t cols, Rng& rng) {
    Matrix g(rows, cols);
    for (std::size_t i = 0; i < rows; ++i)
        for (std::size_t j = 0; j < cols; ++j) g(i, j) = rng.complex_normal();
    return g;
}

Matrix random_unitary(std::size_t n, Rng& rng, bool real) {
    Matrix g(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) g(i, j) = real ? Complex(rng.normal()) : rng.complex_normal();

    // Gram-Schmidt QR with positive diag(R) gives the Haar measure.
    std::vector<ComplexVector> q;
    for (std::size_t j = 0; j < n; ++j) {
        ComplexVector v = g.column(j);
        for (int pass = 0; pass < 2; ++pass) {
            for (const auto& u : q) {
                const Complex c = vdot(u, v);
                for (std::size_t i = 0; i < n; ++i) v[i] -= c * u[i];
            }
        }
        const double len = norm2(v);
        if (len == 0.0) throw InvalidSpec("degenerate Gaussian sample");
        for (auto& e : v) e /= len;
        q.push_back(std::move(v));
    }
    return Matrix::from_columns(q);
}

namespace {

Complex sample_value(EigenvalueMode mode, Rng& rng) {
    switch (mode) {
        case EigenvalueMode::complex: {
            const double r = 10.0 * std::sqrt(rng.uniform());
            const double theta = 2.0 * std::numbers::pi * rng.uniform();
            return std::polar(r, theta);
        }
        case EigenvalueMode::real:
            return 20.0 * rng.uniform() - 10.0;
        case EigenvalueMode::nonneg:
            return 10.0 * rng.uniform();
    }
    return {};
}

ComplexVector sample_clustered(const PairSpec& spec, EigenvalueMode mode, Rng& rng) {
    ComplexVector centers;
    if (spec.zero_eigenvalue) centers.push_back(0.0);
    int attempts = 0;
    while (centers.size() < spec.multiplicities_a.size()) {
        if (++attempts > 100000) throw InvalidSpec("cannot place that many separated eigenvalues");
        const Complex candidate = sample_value(mode, rng);
        bool separated = true;
        for (const Complex& c : centers) separated = separated && std::abs(candidate - c) >= kMinClusterGap;
        if (separated) centers.push_back(candidate);
    }
    ComplexVector diag;
    for (std::size_t c = 0; c < centers.size(); ++c) diag.insert(diag.end(), spec.multiplicities_a[c], centers[c]);
    return diag;
}

ComplexVector sample_free(const PairSpec& spec, Rng& rng) {
    ComplexVector diag(spec.n);
    for (auto& d : diag) d = sample_value(spec.eigenvalue_mode, rng);
    if (spec.zero_eigenvalue) diag[0] = 0.0;
    return diag;
}

Matrix scale_columns(Matrix s, const ComplexVector& d) {
    for (std::size_t j = 0; j < s.cols(); ++j)
        for (std::size_t i = 0; i < s.rows(); ++i) s(i, j) *= d[j];
    return s;
}

}  // namespace

MatrixPair generate_commuting_pair(const PairSpec& spec) {
    spec.validate();
    Rng rng(spec.seed);
    const ComplexVector da = sample_clustered(spec, spec.eigenvalue_mode, rng);
    const ComplexVector db = sample_free(spec, rng);

    if (spec.basis_mode.kind == BasisKind::unitary) {
        const Matrix s = random_unitary(spec.n, rng);
        const Matrix sh = conj_transpose(s);
        return {matmul(scale_columns(s, da), sh), matmul(scale_columns(s, db), sh)};
    }

    const Matrix left = random_unitary(spec.n, rng);
    const Matrix right = random_unitary(spec.n, rng);
    ComplexVector spread(spec.n);
    for (std::size_t k = 0; k < spec.n; ++k) {
        const double t = spec.n > 1 ? static_cast<double>(k) / static_cast<double>(spec.n - 1) : 0.0;
        spread[k] = std::pow(spec.basis_mode.cond_target, t);
    }
    const Matrix s = matmul(scale_columns(left, spread), conj_transpose(right));
    const Matrix s_inv = inverse(s);
    return {matmul(scale_columns(s, da), s_inv), matmul(scale_columns(s, db), s_inv)};
}

MatrixPair generate_star_commuting_pair(const PairSpec& spec) {
    spec.validate();
    Rng rng(spec.seed);
    const EigenvalueMode mode_a =
        spec.eigenvalue_mode == EigenvalueMode::complex ? EigenvalueMode::real : spec.eigenvalue_mode;
    const ComplexVector da = sample_clustered(spec, mode_a, rng);
    const ComplexVector db = sample_free(spec, rng);
    const Matrix q = random_unitary(spec.n, rng, true);
    const Matrix qt = transpose(q);
    Matrix a = matmul(scale_columns(q, da), qt);
    // exact symmetry
    for (std::size_t i = 0; i < spec.n; ++i) {
        a(i, i) = a(i, i).real();
        for (std::size_t j = i + 1; j < spec.n; ++j) {
            const double avg = 0.5 * (a(i, j).real() + a(j, i).real());
            a(i, j) = avg;
            a(j, i) = avg;
        }
    }
    return {std::move(a), matmul(scale_columns(q, db), qt)};
}

}  // namespace commdiag
