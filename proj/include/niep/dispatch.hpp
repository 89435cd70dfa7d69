#pragma once

#include <optional>
#include <string>
#include <vector>

#include "niep/realization.hpp"
#include "niep/spectrum.hpp"

namespace niep {

/// Strategy id the auto router would pick for this spectrum (before any
/// fallbacks): complex-3/4/general when pairs are present, else the
/// few-positive family for k <= n/2, else the many-positive family by
/// negative count.
std::string dispatch_strategy(const ClassifiedSpectrum& c);

struct DispatchResult {
    Realization realization;
    std::vector<std::string> diagnostics; // e.g. default-order inapplicability notes
};

/// Runs the named strategy ("auto" routes), applying the fallback chain on
/// method-level failures: the general op of the same family, then a bounded
/// search over permuted diagonal layouts (negatives permuted, trailing
/// positives split off as a diagonal block, at most 2000 layouts).
DispatchResult dispatch_realize(const ClassifiedSpectrum& c, const std::string& strategy,
                                const Overrides& ov, const Rational& tol,
                                const std::vector<int>& order = {});

} // namespace niep
