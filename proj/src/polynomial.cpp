#include "niep/polynomial.hpp"

namespace niep {

Polynomial Polynomial::from_roots(const std::vector<ExactScalar>& roots) {
    std::vector<ExactScalar> c{ExactScalar(1)}; // start with constant 1, ascending
    for (const ExactScalar& r : roots) {
        // multiply by (x - r)
        std::vector<ExactScalar> next(c.size() + 1);
        for (std::size_t k = 0; k < c.size(); ++k) {
            next[k + 1] += c[k];
            next[k] -= r * c[k];
        }
        c = std::move(next);
    }
    std::vector<Rational> out(c.size());
    for (std::size_t k = 0; k < c.size(); ++k) {
        if (!c[k].is_real())
            fail(ErrKind::Input, "polynomial from non-conjugate-closed roots has complex coefficients");
        out[k] = c[k].real();
    }
    return Polynomial(std::move(out));
}

Polynomial char_poly(const Matrix& M) {
    if (!M.is_real()) fail(ErrKind::Mode, "characteristic polynomial requires a real exact matrix");
    const std::size_t n = M.size();
    // Faddeev–LeVerrier: M1 = M, c1 = -tr(M1); M_{k+1} = M (M_k + c_k I)
    std::vector<Rational> cs(n + 1);
    cs[n] = 1;
    Matrix Mk = M;
    Rational ck = -Mk.trace().real();
    if (n >= 1) cs[n - 1] = ck;
    for (std::size_t k = 2; k <= n; ++k) {
        Matrix shifted = Mk;
        for (std::size_t i = 0; i < n; ++i) shifted(i, i) += ExactScalar(ck);
        Mk = M * shifted;
        ck = -Mk.trace().real() / Rational(static_cast<long>(k));
        cs[n - k] = ck;
    }
    return Polynomial(std::move(cs));
}

std::string Polynomial::to_string() const {
    if (c_.empty()) return "1";
    std::string out;
    for (std::size_t k = c_.size(); k-- > 0;) {
        const Rational& c = c_[k];
        if (c == 0) continue;
        Rational a = abs(c);
        if (out.empty())
            out += (c < 0 ? "-" : "");
        else
            out += (c < 0 ? " - " : " + ");
        bool unit = (a == 1) && k > 0;
        if (!unit) out += format_rational(a);
        if (k >= 1) out += "x";
        if (k >= 2) out += "^" + std::to_string(k);
    }
    return out.empty() ? "0" : out;
}

} // namespace niep
