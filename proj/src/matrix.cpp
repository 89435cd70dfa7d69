#include "niep/matrix.hpp"

namespace niep {

UnitLower unit_lower_inverse(const UnitLower& L) {
    const std::size_t n = L.size();
    UnitLower inv(n);
    // solve L * X = I column by column; X is lower triangular
    for (std::size_t j = 0; j < n; ++j) {
        inv.m_(j, j) = ExactScalar(1) / L(j, j);
        for (std::size_t i = j + 1; i < n; ++i) {
            ExactScalar acc;
            for (std::size_t k = j; k < i; ++k) {
                if (!L(i, k).is_zero() && !inv.m_(k, j).is_zero()) acc += L(i, k) * inv.m_(k, j);
            }
            inv.m_(i, j) = -acc / L(i, i);
        }
    }
    return inv;
}

Matrix similarity_transform(const UnitLower& L, const Matrix& A) {
    if (L.size() != A.size()) fail(ErrKind::WrongShape, "dimension mismatch in similarity transform");
    UnitLower inv = unit_lower_inverse(L);
    return L.matrix() * A * inv.matrix();
}

Matrix strip_imaginary(const Matrix& M) {
    for (std::size_t i = 0; i < M.size(); ++i)
        for (std::size_t j = 0; j < M.size(); ++j)
            if (!M(i, j).is_real())
                fail(ErrKind::ImaginaryResidue,
                     "nonzero imaginary part " + format_scalar(M(i, j)) + " at entry (" +
                         std::to_string(i + 1) + "," + std::to_string(j + 1) + ")");
    return M;
}

NonnegReport is_nonnegative(const Matrix& M, const Rational& tol) {
    NonnegReport r;
    for (std::size_t i = 0; i < M.size(); ++i)
        for (std::size_t j = 0; j < M.size(); ++j) {
            const ExactScalar& v = M(i, j);
            bool bad = v.real() < -tol || v.imag() > tol || v.imag() < -tol;
            if (bad) {
                r.ok = false;
                r.row = i;
                r.col = j;
                r.value = v;
                return r;
            }
        }
    return r;
}

std::vector<ExactScalar> power_sums_matrix(const Matrix& M, int k_max) {
    std::vector<ExactScalar> out;
    out.reserve(static_cast<std::size_t>(k_max));
    Matrix p = M;
    for (int k = 1; k <= k_max; ++k) {
        out.push_back(p.trace());
        if (k < k_max) p = p * M;
    }
    return out;
}

} // namespace niep
