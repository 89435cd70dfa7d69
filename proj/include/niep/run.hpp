#pragma once

#include <optional>
#include <string>
#include <vector>

#include "niep/dispatch.hpp"
#include "niep/realization.hpp"
#include "niep/spectrum.hpp"

namespace niep {

struct RunConfig {
    std::string spectrum_text; // literal spectrum, or empty when file given
    std::string spectrum_file;
    std::string strategy = "auto";
    Mode mode = Mode::Exact;
    bool mode_forced = false;  // --mode given explicitly
    Rational tol = Rational(1, 1000000000); // 1e-9
    std::vector<int> order;
    std::vector<std::string> sets; // raw key=value overrides
    std::string format = "json";   // json | text
    int jll_k = 0; // 0 = default n
    int jll_m = 3;
};

struct Verification {
    bool nonnegative = false;
    Rational min_entry;
    std::optional<bool> char_poly_match; // exact mode
    double eigen_residual = 0;
    std::vector<Rational> power_sum_residuals;
};

struct RunReport {
    SpectrumInput input;
    ClassifiedSpectrum classified;
    bool classified_ok = false;
    ConditionReport conditions;
    std::string strategy;
    std::optional<Realization> realization;
    std::optional<Verification> verification;
    std::string failure_kind, failure_message;
    std::vector<std::string> diagnostics;
    int exit_code = 0;
};

/// Full pipeline: parse -> classify -> conditions -> dispatch -> realize ->
/// verify. Exit code 0 on a verified realization, 2 when the method cannot
/// realize the list, 1 on input or condition errors. Never throws on
/// well-formed configs.
RunReport run(const RunConfig& cfg);

std::string report_json(const RunReport& r);
std::string report_text(const RunReport& r);

/// Re-verification used by the `verify` subcommand and the corpus runner.
Verification verify_realization(const std::vector<ExactScalar>& spectrum, const Matrix& C, Mode mode,
                                const Rational& tol);

struct CorpusEntry {
    std::string file;
    bool pass = false;
    std::string detail;
};
struct CorpusSummary {
    std::vector<CorpusEntry> entries;
    int failures = 0;
};

/// Runs every fixture file in the directory (sorted by name). Fixture
/// format: first non-comment line is the spectrum; optional directive lines
/// `strategy:`, `mode:`, `order:`, `tol:`, `set: key=value`; optional
/// `expect:` block with matrix rows, or `expect: inapplicable` /
/// `expect: realizable` / `expect: default-order-inapplicable`.
CorpusSummary run_corpus(const std::string& dir);

/// Parses a matrix from text: one row per line, entries space or comma
/// separated rationals/decimals.
Matrix parse_matrix_text(const std::string& text);

} // namespace niep
