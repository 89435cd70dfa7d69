#include "niep/scalar.hpp"

#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdlib>

namespace niep {

double to_double(const Rational& q) { return mpq_get_d(q.get_mpq_t()); }

std::complex<double> ExactScalar::to_complex() const {
    return {to_double(re_), to_double(im_)};
}

std::string format_rational(const Rational& q) {
    return q.get_str(); // "p" or "p/q", canonical
}

std::string format_scalar(const ExactScalar& s) {
    if (s.is_real()) return format_rational(s.real());
    std::string out = format_rational(s.real());
    out += (s.imag() > 0 ? "+" : "-");
    Rational a = abs(s.imag());
    if (a != 1) out += format_rational(a);
    out += "i";
    return out;
}

std::string format_double(double v) {
    if (v == 0.0) v = 0.0; // normalize -0
    std::array<char, 64> buf{};
    auto [p, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    (void)ec;
    return std::string(buf.data(), p);
}

std::string format_scalar_float(const ExactScalar& s) {
    if (s.is_real()) return format_double(to_double(s.real()));
    std::string out = format_double(to_double(s.real()));
    double im = to_double(s.imag());
    out += (im >= 0 ? "+" : "-");
    out += format_double(std::fabs(im));
    out += "i";
    return out;
}

namespace {

// digits[.digits][(e|E)[sign]digits] -> exact rational
Rational decimal_to_rational(const std::string& t) {
    std::string mant = t;
    long expo = 0;
    if (auto pos = t.find_first_of("eE"); pos != std::string::npos) {
        mant = t.substr(0, pos);
        const std::string es = t.substr(pos + 1);
        if (es.empty()) fail(ErrKind::Parse, "empty exponent in '" + t + "'");
        expo = std::strtol(es.c_str(), nullptr, 10);
    }
    std::string digits;
    long frac_digits = 0;
    bool seen_dot = false;
    bool neg = false;
    size_t i = 0;
    if (i < mant.size() && (mant[i] == '+' || mant[i] == '-')) neg = mant[i++] == '-';
    for (; i < mant.size(); ++i) {
        char c = mant[i];
        if (c == '.') {
            if (seen_dot) fail(ErrKind::Parse, "two decimal points in '" + t + "'");
            seen_dot = true;
        } else if (std::isdigit(static_cast<unsigned char>(c))) {
            digits += c;
            if (seen_dot) ++frac_digits;
        } else {
            fail(ErrKind::Parse, "bad character '" + std::string(1, c) + "' in '" + t + "'");
        }
    }
    if (digits.empty()) fail(ErrKind::Parse, "no digits in '" + t + "'");
    mpz_class num(digits);
    if (neg) num = -num;
    long p10 = expo - frac_digits;
    mpz_class scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, static_cast<unsigned long>(std::labs(p10)));
    Rational q;
    if (p10 >= 0)
        q = Rational(num * scale);
    else
        q = Rational(num, scale);
    q.canonicalize();
    return q;
}

// one signed real literal: rational "p/q" or decimal
Rational real_literal(const std::string& t) {
    if (t.find('/') != std::string::npos) {
        auto slash = t.find('/');
        std::string ns = t.substr(0, slash), ds = t.substr(slash + 1);
        if (ns.empty() || ds.empty()) fail(ErrKind::Parse, "bad rational '" + t + "'");
        for (size_t i = 0; i < ns.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(ns[i])) && !(i == 0 && (ns[i] == '+' || ns[i] == '-')))
                fail(ErrKind::Parse, "bad rational '" + t + "'");
        for (char c : ds)
            if (!std::isdigit(static_cast<unsigned char>(c)))
                fail(ErrKind::Parse, "bad rational '" + t + "'");
        mpz_class num(ns), den(ds);
        if (den == 0) fail(ErrKind::Parse, "zero denominator in '" + t + "'");
        Rational q(num, den);
        q.canonicalize();
        return q;
    }
    return decimal_to_rational(t);
}

} // namespace

Rational parse_rational(const std::string& token) {
    if (token.empty()) fail(ErrKind::Parse, "empty scalar token");
    return real_literal(token);
}

ExactScalar parse_scalar(const std::string& raw) {
    std::string t;
    for (char c : raw)
        if (!std::isspace(static_cast<unsigned char>(c))) t += c;
    if (t.empty()) fail(ErrKind::Parse, "empty scalar token");

    // split  <real><+/-><imag>i  at the sign separating the two parts
    // (a sign at position 0 or right after 'e'/'E' belongs to a literal)
    if (t.back() == 'i' || t.back() == 'I') {
        std::string body = t.substr(0, t.size() - 1);
        size_t split = std::string::npos;
        for (size_t i = body.size(); i-- > 1;) {
            if ((body[i] == '+' || body[i] == '-') && body[i - 1] != 'e' && body[i - 1] != 'E') {
                split = i;
                break;
            }
        }
        if (split == std::string::npos) {
            // pure imaginary: "i", "-i", "3i", "-2/5i"
            if (body.empty() || body == "+") return ExactScalar::i();
            if (body == "-") return -ExactScalar::i();
            return ExactScalar(Rational(0), real_literal(body));
        }
        std::string rs = body.substr(0, split);
        std::string is = body.substr(split); // keeps the sign
        Rational im;
        if (is == "+")
            im = 1;
        else if (is == "-")
            im = -1;
        else
            im = real_literal(is);
        return ExactScalar(real_literal(rs), im);
    }
    return ExactScalar(real_literal(t));
}

Rational rationalize(double v, double eps) {
    if (std::floor(v) == v && std::fabs(v) < 1e15) return Rational(static_cast<long>(v));
    // continued-fraction convergents until within eps
    double x = v;
    mpz_class p0 = 0, q0 = 1, p1 = 1, q1 = 0;
    for (int it = 0; it < 64; ++it) {
        double fl = std::floor(x);
        mpz_class a(fl);
        mpz_class p2 = a * p1 + p0, q2 = a * q1 + q0;
        Rational cand(p2, q2);
        cand.canonicalize();
        if (std::fabs(to_double(cand) - v) <= eps) return cand;
        p0 = p1; q0 = q1; p1 = p2; q1 = q2;
        double rem = x - fl;
        if (rem < 1e-18) break;
        x = 1.0 / rem;
    }
    Rational q(p1, q1 == 0 ? mpz_class(1) : q1);
    q.canonicalize();
    return q;
}

} // namespace niep
