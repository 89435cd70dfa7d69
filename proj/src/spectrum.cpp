#include "niep/spectrum.hpp"

#include <algorithm>
#include <map>

namespace niep {

std::vector<ExactScalar> ClassifiedSpectrum::all_values() const {
    std::vector<ExactScalar> v;
    v.reserve(n);
    for (const auto& r : reals) v.emplace_back(r);
    for (const auto& p : pairs) {
        v.emplace_back(p.re, -p.im);
        v.emplace_back(p.re, p.im);
    }
    return v;
}

SpectrumInput parse_spectrum(const std::string& text) {
    SpectrumInput out;
    out.source = text;
    std::vector<std::string> tokens;
    std::string cur;
    for (char ch : text) {
        if (ch == ',' || ch == ' ' || ch == '\t') {
            if (!cur.empty()) {
                tokens.push_back(cur);
                cur.clear();
            }
        } else {
            cur += ch;
        }
    }
    if (!cur.empty()) tokens.push_back(cur);
    if (tokens.empty()) fail(ErrKind::Parse, "empty spectrum");

    for (std::size_t k = 0; k < tokens.size(); ++k) {
        try {
            out.values.push_back(parse_scalar(tokens[k]));
        } catch (const Error& e) {
            fail(ErrKind::Parse, "token " + std::to_string(k + 1) + " ('" + tokens[k] + "'): " + e.what());
        }
    }

    // conjugate closure: the multiset must equal its elementwise conjugate
    std::vector<bool> used(out.values.size(), false);
    for (std::size_t i = 0; i < out.values.size(); ++i) {
        const ExactScalar& v = out.values[i];
        if (v.is_real()) continue;
        bool matched = false;
        for (std::size_t j = 0; j < out.values.size(); ++j) {
            if (i == j || used[j] || used[i]) continue;
            if (out.values[j] == v.conj()) {
                used[i] = used[j] = true;
                matched = true;
                break;
            }
        }
        if (!matched && !used[i])
            fail(ErrKind::ConjugateClosure, "no conjugate partner for " + format_scalar(v));
    }
    return out;
}

ClassifiedSpectrum classify(const SpectrumInput& s) {
    ClassifiedSpectrum c;
    c.n = s.values.size();
    c.mode = s.mode;
    std::vector<std::pair<Rational, Rational>> pend; // (re, im>0) halves awaiting pairing
    for (const ExactScalar& v : s.values) {
        if (v.is_real()) {
            c.reals.push_back(v.real());
        } else if (v.imag() > 0) {
            pend.emplace_back(v.real(), v.imag());
        }
        // negative-imag halves are implied by closure
    }
    std::sort(c.reals.begin(), c.reals.end(), [](const Rational& a, const Rational& b) { return a > b; });
    std::sort(pend.begin(), pend.end(), [](const auto& a, const auto& b) {
        if (a.first != b.first) return a.first > b.first;
        return a.second > b.second;
    });
    for (auto& [re, im] : pend) c.pairs.push_back({re, im});

    // Perron: the largest squared modulus must be attained by a real
    // positive member (zero allowed only for the all-zero list)
    Rational max2(-1);
    ExactScalar arg_max;
    for (const ExactScalar& v : s.values) {
        Rational m2 = v.abs2();
        if (m2 > max2) {
            max2 = m2;
            arg_max = v;
        }
    }
    if (c.reals.empty())
        fail(ErrKind::NoPerron, "no real eigenvalue; Perron value missing");
    const Rational& top = c.reals.front();
    if (top < 0 || top * top < max2)
        fail(ErrKind::NoPerron, "largest modulus attained by " + format_scalar(arg_max) +
                                    " which is not a dominating real positive eigenvalue");
    c.perron = top;
    for (const Rational& r : c.reals)
        if (r > 0) ++c.k_pos;
    c.power_sums = spectrum_power_sums(s.values, static_cast<int>(c.n));
    c.s1 = c.n >= 1 ? c.power_sums[0] : Rational(0);
    return c;
}

std::vector<Rational> spectrum_power_sums(const std::vector<ExactScalar>& values, int k_max) {
    std::vector<Rational> out;
    out.reserve(static_cast<std::size_t>(k_max));
    std::vector<ExactScalar> pw(values.size(), ExactScalar(1));
    for (int k = 1; k <= k_max; ++k) {
        ExactScalar s;
        for (std::size_t i = 0; i < values.size(); ++i) {
            pw[i] *= values[i];
            s += pw[i];
        }
        if (!s.is_real()) fail(ErrKind::ConjugateClosure, "power sum s_" + std::to_string(k) + " is not real");
        out.push_back(s.real());
    }
    return out;
}

ConditionReport necessary_conditions(const ClassifiedSpectrum& c, int jll_k_max, int jll_m_max) {
    if (jll_k_max < 1 || jll_m_max < 1) fail(ErrKind::Input, "JLL bounds must be >= 1");
    ConditionReport r;

    r.perron_ok = true; // classify() already rejected hard Perron failures
    r.perron_witness = format_rational(c.perron);

    const int kmax_needed = std::max<int>(static_cast<int>(c.n), jll_k_max * jll_m_max);
    std::vector<Rational> s = spectrum_power_sums(c.all_values(), kmax_needed);

    r.power_sums_ok = true;
    for (std::size_t k = 1; k <= c.n; ++k) {
        if (s[k - 1] < 0) {
            r.power_sums_ok = false;
            r.power_sums_first_fail = static_cast<int>(k);
            break;
        }
    }

    r.jll_ok = true;
    const long n = static_cast<long>(c.n);
    for (int k = 1; k <= jll_k_max && r.jll_ok; ++k) {
        for (int m = 1; m <= jll_m_max; ++m) {
            if (k * m > jll_k_max * jll_m_max) break;
            // s_k^m <= n^{m-1} * s_{km}
            Rational lhs = 1;
            for (int t = 0; t < m; ++t) lhs *= s[k - 1];
            Rational rhs = s[static_cast<std::size_t>(k) * m - 1];
            for (int t = 0; t < m - 1; ++t) rhs *= n;
            if (lhs > rhs) {
                r.jll_ok = false;
                r.jll_fail_k = k;
                r.jll_fail_m = m;
                break;
            }
        }
    }
    r.overall = r.perron_ok && r.power_sums_ok && r.jll_ok;
    return r;
}

std::string format_spectrum(const std::vector<ExactScalar>& values, Mode mode) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) out += ",";
        out += mode == Mode::Exact ? format_scalar(values[i]) : format_scalar_float(values[i]);
    }
    return out;
}

} // namespace niep
