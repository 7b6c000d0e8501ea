#pragma once

// Helpers shared by the test programs. Everything here is written
// independently of the library's own comparison code so the tests do not
// grade the library with its own ruler.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <string>
#include <vector>

#include "commdiag/matrix.hpp"

namespace testing_support {

using commdiag::Complex;
using commdiag::ComplexVector;
using commdiag::Matrix;

inline std::string fixture_path(const std::string& name) { return std::string(COMMDIAG_FIXTURE_DIR) + "/" + name; }

inline ComplexVector as_complex(const std::vector<double>& v) { return ComplexVector(v.begin(), v.end()); }

// Largest distance in a nearest-available pairing of two multisets. Each x
// (in ascending order of real, then imaginary part) takes the closest y not
// yet used. Returns +inf on a length mismatch.
inline double multiset_gap(ComplexVector x, ComplexVector y) {
    if (x.size() != y.size()) return std::numeric_limits<double>::infinity();
    auto lex = [](Complex p, Complex q) { return p.real() != q.real() ? p.real() < q.real() : p.imag() < q.imag(); };
    std::sort(x.begin(), x.end(), lex);
    std::vector<bool> used(y.size(), false);
    double worst = 0.0;
    for (const Complex& v : x) {
        std::size_t best = y.size();
        double best_d = std::numeric_limits<double>::infinity();
        for (std::size_t j = 0; j < y.size(); ++j) {
            if (used[j]) continue;
            const double d = std::abs(v - y[j]);
            if (d < best_d) {
                best_d = d;
                best = j;
            }
        }
        used[best] = true;
        worst = std::max(worst, best_d);
    }
    return worst;
}

inline double multiset_gap(const std::vector<double>& x, const std::vector<double>& y) {
    return multiset_gap(as_complex(x), as_complex(y));
}

// Plain triple-loop product, kept separate from commdiag::matmul.
inline Matrix naive_product(const Matrix& a, const Matrix& b) {
    Matrix c(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < b.cols(); ++j) {
            Complex s = 0.0;
            for (std::size_t k = 0; k < a.cols(); ++k) s += a(i, k) * b(k, j);
            c(i, j) = s;
        }
    return c;
}

inline double fro(const Matrix& a) {
    double s = 0.0;
    for (const Complex& z : a.entries()) s += std::norm(z);
    return std::sqrt(s);
}

inline double max_entry_diff(const Matrix& a, const Matrix& b) {
    double m = 0.0;
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) m = std::max(m, std::abs(a(i, j) - b(i, j)));
    return m;
}

// Sine of the angle between two vectors.
inline double column_sine(const ComplexVector& u, const ComplexVector& v) {
    Complex uv = 0.0;
    double uu = 0.0;
    double vv = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) {
        uv += std::conj(u[i]) * v[i];
        uu += std::norm(u[i]);
        vv += std::norm(v[i]);
    }
    const double c2 = std::norm(uv) / (uu * vv);
    return std::sqrt(std::max(0.0, 1.0 - c2));
}

// Characteristic polynomial det(xI - A) of an integer matrix by the
// Faddeev-LeVerrier recursion in exact integer arithmetic. Coefficients are
// returned highest degree first (leading 1).
inline std::vector<std::int64_t> integer_charpoly(const std::vector<std::vector<std::int64_t>>& a) {
    const std::size_t n = a.size();
    using Mat = std::vector<std::vector<std::int64_t>>;
    Mat m(n, std::vector<std::int64_t>(n, 0));
    std::vector<std::int64_t> c(n + 1, 0);
    c[0] = 1;
    for (std::size_t k = 1; k <= n; ++k) {
        // M_k = A M_{k-1} + c_{k-1} I
        Mat next(n, std::vector<std::int64_t>(n, 0));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                std::int64_t s = 0;
                for (std::size_t l = 0; l < n; ++l) s += a[i][l] * m[l][j];
                next[i][j] = s + (i == j ? c[k - 1] : 0);
            }
        m = std::move(next);
        std::int64_t trace = 0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t l = 0; l < n; ++l) trace += a[i][l] * m[l][i];
        c[k] = -trace / static_cast<std::int64_t>(k);
    }
    return c;
}

// All complex roots of a monic polynomial (coefficients highest first) by
// Aberth iteration in long double. Roots that land within `merge` of each
// other are replaced by their mean, which recovers a multiple root far more
// accurately than any single member.
inline std::vector<std::complex<long double>> polynomial_roots(const std::vector<std::int64_t>& coeffs,
                                                              long double merge = 1e-5L) {
    using C = std::complex<long double>;
    const std::size_t n = coeffs.size() - 1;
    long double bound = 0.0L;
    for (std::size_t k = 1; k <= n; ++k) bound = std::max(bound, std::fabs(static_cast<long double>(coeffs[k])));
    bound += 1.0L;

    std::vector<C> z(n);
    for (std::size_t k = 0; k < n; ++k) {
        const long double angle = 2.0L * 3.14159265358979323846L * (static_cast<long double>(k) + 0.25L) / n;
        z[k] = std::polar(0.5L * bound, angle);
    }
    auto eval = [&](C x, C& dp) {
        C p = static_cast<long double>(coeffs[0]);
        dp = 0.0L;
        for (std::size_t k = 1; k <= n; ++k) {
            dp = dp * x + p;
            p = p * x + static_cast<long double>(coeffs[k]);
        }
        return p;
    };
    for (int iter = 0; iter < 2000; ++iter) {
        long double moved = 0.0L;
        for (std::size_t k = 0; k < n; ++k) {
            C dp;
            const C p = eval(z[k], dp);
            if (p == C(0.0L)) continue;
            const C ratio = p / dp;
            C sum = 0.0L;
            for (std::size_t j = 0; j < n; ++j)
                if (j != k) sum += 1.0L / (z[k] - z[j]);
            const C step = ratio / (1.0L - ratio * sum);
            z[k] -= step;
            moved = std::max(moved, std::abs(step));
        }
        if (moved < 1e-30L) break;
    }

    std::vector<C> out;
    std::vector<bool> taken(n, false);
    for (std::size_t k = 0; k < n; ++k) {
        if (taken[k]) continue;
        C sum = 0.0L;
        std::size_t count = 0;
        for (std::size_t j = k; j < n; ++j) {
            if (!taken[j] && std::abs(z[j] - z[k]) < merge) {
                taken[j] = true;
                sum += z[j];
                ++count;
            }
        }
        const C mean = sum / static_cast<long double>(count);
        out.insert(out.end(), count, mean);
    }
    return out;
}

inline ComplexVector to_double(const std::vector<std::complex<long double>>& v) {
    ComplexVector out;
    for (const auto& z : v) out.emplace_back(static_cast<double>(z.real()), static_cast<double>(z.imag()));
    return out;
}

}  // namespace testing_support
