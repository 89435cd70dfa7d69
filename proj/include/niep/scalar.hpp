#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string>

#include <gmpxx.h>

#include "niep/error.hpp"

namespace niep {

/// Arbitrary-precision rational, kept in canonical form by GMP
/// (denominator positive, gcd(|num|, den) = 1).
using Rational = mpq_class;

inline Rational make_rational(long num, long den = 1) {
    if (den == 0) fail(ErrKind::Input, "rational with zero denominator");
    Rational q(num, den);
    q.canonicalize();
    return q;
}

double to_double(const Rational& q);

/// Exact scalar of the Gaussian rational field Q(i): re + im*i with both
/// parts arbitrary-precision rationals. All arithmetic is closed and exact;
/// division by zero throws instead of producing a value.
class ExactScalar {
  public:
    ExactScalar() : re_(0), im_(0) {}
    ExactScalar(long v) : re_(v), im_(0) {} // NOLINT: implicit by design
    ExactScalar(Rational re) : re_(std::move(re)), im_(0) {}
    ExactScalar(Rational re, Rational im) : re_(std::move(re)), im_(std::move(im)) {}

    static ExactScalar i() { return ExactScalar(Rational(0), Rational(1)); }

    const Rational& real() const { return re_; }
    const Rational& imag() const { return im_; }

    bool is_zero() const { return re_ == 0 && im_ == 0; }
    bool is_real() const { return im_ == 0; }

    ExactScalar conj() const { return ExactScalar(re_, -im_); }
    /// squared modulus |z|^2, stays rational
    Rational abs2() const { return re_ * re_ + im_ * im_; }

    ExactScalar operator-() const { return ExactScalar(-re_, -im_); }

    ExactScalar& operator+=(const ExactScalar& o) {
        re_ += o.re_;
        im_ += o.im_;
        return *this;
    }
    ExactScalar& operator-=(const ExactScalar& o) {
        re_ -= o.re_;
        im_ -= o.im_;
        return *this;
    }
    ExactScalar& operator*=(const ExactScalar& o) {
        Rational r = re_ * o.re_ - im_ * o.im_;
        Rational i = re_ * o.im_ + im_ * o.re_;
        re_ = std::move(r);
        im_ = std::move(i);
        return *this;
    }
    ExactScalar& operator/=(const ExactScalar& o) {
        if (o.is_zero()) fail(ErrKind::Input, "exact division by zero");
        Rational d = o.abs2();
        Rational r = (re_ * o.re_ + im_ * o.im_) / d;
        Rational i = (im_ * o.re_ - re_ * o.im_) / d;
        re_ = std::move(r);
        im_ = std::move(i);
        return *this;
    }

    friend ExactScalar operator+(ExactScalar a, const ExactScalar& b) { return a += b; }
    friend ExactScalar operator-(ExactScalar a, const ExactScalar& b) { return a -= b; }
    friend ExactScalar operator*(ExactScalar a, const ExactScalar& b) { return a *= b; }
    friend ExactScalar operator/(ExactScalar a, const ExactScalar& b) { return a /= b; }

    friend bool operator==(const ExactScalar& a, const ExactScalar& b) {
        return a.re_ == b.re_ && a.im_ == b.im_;
    }
    friend bool operator!=(const ExactScalar& a, const ExactScalar& b) { return !(a == b); }

    std::complex<double> to_complex() const;

  private:
    Rational re_, im_;
};

/// "p/q", "p", "a+b/ci", "i", "-i", ... — canonical diff-friendly form.
std::string format_rational(const Rational& q);
std::string format_scalar(const ExactScalar& s);
/// shortest round-trip decimal, used by float-mode output
std::string format_double(double v);
std::string format_scalar_float(const ExactScalar& s);

/// Parses one scalar token: rationals ("10", "-5/2"), finite decimals with
/// optional exponent ("0.5", "-1e-15"), and Gaussian forms ("4+3i", "2-0.5i",
/// "i", "-3i"). Throws ParseError with a description on bad input.
ExactScalar parse_scalar(const std::string& token);

/// Parses a rational or finite decimal (no imaginary part allowed).
Rational parse_rational(const std::string& token);

/// Closest rational with small denominator within eps (continued fractions).
Rational rationalize(double v, double eps = 1e-12);

} // namespace niep
