#pragma once

#include <optional>
#include <string>
#include <vector>

#include "niep/scalar.hpp"

namespace niep {

enum class Mode { Exact, Float };

/// A prescribed spectrum as parsed from text: conjugate-closed multiset of
/// exact scalars plus the mode the run should use. Finite decimals parse to
/// exact rationals, so Float is only selected by explicit request.
struct SpectrumInput {
    std::vector<ExactScalar> values;
    Mode mode = Mode::Exact;
    std::string source;
};

/// A conjugate pair λ ± iμ with μ > 0, one entry per occurrence.
struct ConjugatePair {
    Rational re;
    Rational im; // positive
};

/// Sorted, classified view of a spectrum: reals descending, pairs by real
/// part, the Perron value, positive count and power sums s_1..s_n.
struct ClassifiedSpectrum {
    std::size_t n = 0;
    std::vector<Rational> reals;      // descending
    std::vector<ConjugatePair> pairs; // descending real part
    Rational perron;
    std::size_t k_pos = 0; // strictly positive reals
    Rational s1;
    std::vector<Rational> power_sums; // s_1..s_n
    Mode mode = Mode::Exact;

    std::size_t k_neg() const {
        std::size_t c = 0;
        for (const auto& r : reals)
            if (r < 0) ++c;
        return c;
    }
    bool has_pairs() const { return !pairs.empty(); }

    /// the full multiset, reals first (descending) then pairs (λ-iμ, λ+iμ)
    std::vector<ExactScalar> all_values() const;
};

struct ConditionReport {
    bool perron_ok = false;
    std::string perron_witness;
    bool power_sums_ok = false;
    int power_sums_first_fail = 0; // k of first failure, 0 if none
    bool jll_ok = false;
    int jll_fail_k = 0, jll_fail_m = 0;
    bool overall = false;
};

/// Comma/space separated scalar list -> conjugate-closed SpectrumInput.
/// Throws ParseError (with token position) or ConjugateClosureError.
SpectrumInput parse_spectrum(const std::string& text);

/// Populates the classified view. Throws NoPerronError if the largest
/// modulus is not attained by a real positive member of the list (or zero
/// for the all-zero list). Moduli are compared squared, staying rational.
ClassifiedSpectrum classify(const SpectrumInput& s);

/// Necessary conditions: (1) Perron membership/dominance, (2) s_k >= 0 for
/// k = 1..n, (3) JLL s_k^m <= n^(m-1) s_{km} over the requested ranges.
ConditionReport necessary_conditions(const ClassifiedSpectrum& c, int jll_k_max, int jll_m_max);

/// power sums of the spectrum itself, k = 1..k_max (real by closure)
std::vector<Rational> spectrum_power_sums(const std::vector<ExactScalar>& values, int k_max);

std::string format_spectrum(const std::vector<ExactScalar>& values, Mode mode);

} // namespace niep
