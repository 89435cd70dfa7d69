#pragma once

#include <string>
#include <vector>

#include "niep/matrix.hpp"
#include "niep/scalar.hpp"

namespace niep {

/// Monic polynomial with rational coefficients, stored ascending:
/// c[0] + c[1] x + ... + c[n] x^n with c[n] = 1.
class Polynomial {
  public:
    Polynomial() = default;
    explicit Polynomial(std::vector<Rational> ascending) : c_(std::move(ascending)) {}

    std::size_t degree() const { return c_.empty() ? 0 : c_.size() - 1; }
    const Rational& coeff(std::size_t k) const { return c_[k]; }
    const std::vector<Rational>& coeffs() const { return c_; }

    friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }

    /// ∏ (x - r_k) expanded exactly. Roots may be complex but must be
    /// conjugate-closed so that the coefficients come out real.
    static Polynomial from_roots(const std::vector<ExactScalar>& roots);

    std::string to_string() const; // "x^2 - 5x + 6"

  private:
    std::vector<Rational> c_;
};

/// Characteristic polynomial det(xI - M) by the Faddeev–LeVerrier
/// recurrence, exact. Requires a real matrix (exact mode).
Polynomial char_poly(const Matrix& M);

} // namespace niep
