#include "niep/eigen.hpp"

#include <algorithm>
#include <cmath>

#include "niep/error.hpp"

namespace niep {

namespace {

using CMat = std::vector<std::vector<Complex>>;

double norm1(const Complex& z) { return std::fabs(z.real()) + std::fabs(z.imag()); }

// diagonal similarity scaling so row/column norms roughly match
void balance(CMat& a) {
    const std::size_t n = a.size();
    bool done = false;
    int rounds = 0;
    while (!done && rounds++ < 50) {
        done = true;
        for (std::size_t i = 0; i < n; ++i) {
            double r = 0, c = 0;
            for (std::size_t j = 0; j < n; ++j) {
                if (j == i) continue;
                r += norm1(a[i][j]);
                c += norm1(a[j][i]);
            }
            if (r == 0 || c == 0) continue;
            double f = 1.0;
            double s = c + r;
            while (c < r / 2) {
                f *= 2;
                c *= 4;
            }
            while (c > r * 2) {
                f /= 2;
                c /= 4;
            }
            if ((c + r) < 0.95 * s && f != 1.0) {
                done = false;
                for (std::size_t j = 0; j < n; ++j) a[i][j] /= f;
                for (std::size_t j = 0; j < n; ++j) a[j][i] *= f;
            }
        }
    }
}

// reduce to upper Hessenberg by stabilized elementary similarity
void hessenberg(CMat& a) {
    const std::size_t n = a.size();
    if (n < 3) return;
    for (std::size_t m = 1; m + 1 < n; ++m) {
        // pivot: largest entry in column m-1 below row m-1
        std::size_t piv = m;
        double best = norm1(a[m][m - 1]);
        for (std::size_t i = m + 1; i < n; ++i)
            if (norm1(a[i][m - 1]) > best) {
                best = norm1(a[i][m - 1]);
                piv = i;
            }
        if (best == 0) continue;
        if (piv != m) {
            std::swap(a[piv], a[m]);
            for (std::size_t i = 0; i < n; ++i) std::swap(a[i][piv], a[i][m]);
        }
        Complex x = a[m][m - 1];
        for (std::size_t i = m + 1; i < n; ++i) {
            Complex y = a[i][m - 1];
            if (y == Complex(0)) continue;
            y /= x;
            a[i][m - 1] = Complex(0);
            for (std::size_t j = m; j < n; ++j) a[i][j] -= y * a[m][j];
            for (std::size_t j = 0; j < n; ++j) a[j][m] += y * a[j][i];
        }
    }
    for (std::size_t i = 2; i < n; ++i)
        for (std::size_t j = 0; j + 1 < i; ++j) a[i][j] = Complex(0);
}

} // namespace

std::vector<Complex> numeric_eigenvalues(CMat a, double) {
    const std::size_t n = a.size();
    std::vector<Complex> eig(n);
    if (n == 0) return eig;
    if (n == 1) {
        eig[0] = a[0][0];
        return eig;
    }
    balance(a);
    hessenberg(a);

    const long cap = 500 * static_cast<long>(n);
    long iters = 0;
    std::size_t hi = n - 1;
    double anorm = 0;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) anorm += norm1(a[i][j]);
    const double eps = 1e-15 * std::max(anorm, 1.0);

    // complex single-shift QR via Givens rotations on the active block
    while (true) {
        // deflate
        while (true) {
            std::size_t lo = hi;
            while (lo > 0) {
                double s = norm1(a[lo - 1][lo - 1]) + norm1(a[lo][lo]);
                if (s == 0) s = anorm;
                if (norm1(a[lo][lo - 1]) <= 1e-14 * s + eps) {
                    a[lo][lo - 1] = Complex(0);
                    break;
                }
                --lo;
            }
            if (lo == hi) {
                eig[hi] = a[hi][hi];
                if (hi == 0) return eig;
                --hi;
                continue;
            }
            // iterate on block [lo..hi]
            if (++iters > cap) fail(ErrKind::Convergence, "QR iteration cap exceeded");
            // Wilkinson shift from the trailing 2x2
            Complex h00 = a[hi - 1][hi - 1], h01 = a[hi - 1][hi], h10 = a[hi][hi - 1], h11 = a[hi][hi];
            Complex tr = h00 + h11;
            Complex det = h00 * h11 - h01 * h10;
            Complex disc = std::sqrt(tr * tr - 4.0 * det);
            Complex r1 = (tr + disc) / 2.0, r2 = (tr - disc) / 2.0;
            Complex shift = (norm1(r1 - h11) < norm1(r2 - h11)) ? r1 : r2;
            if (iters % 31 == 0) shift = Complex(norm1(a[hi][hi - 1]), 0); // exceptional shift

            // implicit shifted QR sweep on [lo..hi] with Givens rotations
            std::vector<std::pair<Complex, Complex>> rot(hi); // (c, s) per column
            Complex x = a[lo][lo] - shift;
            Complex y = a[lo + 1][lo];
            for (std::size_t k = lo; k < hi; ++k) {
                double nx = std::abs(x), ny = std::abs(y);
                double nn = std::hypot(nx, ny);
                Complex c, s;
                if (nn == 0) {
                    c = Complex(1);
                    s = Complex(0);
                } else {
                    c = x / nn;
                    s = y / nn;
                }
                rot[k] = {c, s};
                // apply on the left: rows k, k+1
                for (std::size_t j = (k == lo ? lo : k - 1); j < n; ++j) {
                    Complex t1 = a[k][j], t2 = a[k + 1][j];
                    a[k][j] = std::conj(c) * t1 + std::conj(s) * t2;
                    a[k + 1][j] = -s * t1 + c * t2;
                }
                if (k + 1 <= hi && k + 2 <= hi) {
                    x = a[k + 1][k];
                    y = a[k + 2][k];
                }
                // apply on the right: columns k, k+1 (rows up to min(k+2, hi))
                std::size_t top = std::min(hi, k + 2);
                for (std::size_t i = 0; i <= top; ++i) {
                    Complex t1 = a[i][k], t2 = a[i][k + 1];
                    a[i][k] = t1 * c + t2 * s;
                    a[i][k + 1] = -t1 * std::conj(s) + t2 * std::conj(c);
                }
            }
        }
    }
}

std::vector<Complex> numeric_eigenvalues(const Matrix& M, double tol) {
    const std::size_t n = M.size();
    CMat a(n, std::vector<Complex>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a[i][j] = M(i, j).to_complex();
    return numeric_eigenvalues(std::move(a), tol);
}

double eigen_match_residual(std::vector<Complex> computed, std::vector<Complex> expected) {
    auto key = [](const Complex& a, const Complex& b) {
        if (a.real() != b.real()) return a.real() < b.real();
        return a.imag() < b.imag();
    };
    std::sort(computed.begin(), computed.end(), key);
    std::sort(expected.begin(), expected.end(), key);
    double worst = computed.size() == expected.size() ? 0.0 : 1e300;
    for (std::size_t i = 0; i < std::min(computed.size(), expected.size()); ++i)
        worst = std::max(worst, std::abs(computed[i] - expected[i]));
    return worst;
}

} // namespace niep
