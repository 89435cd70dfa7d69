#pragma once

#include "niep/engine.hpp"
#include "niep/realization.hpp"
#include "niep/spectrum.hpp"

namespace niep {

/// Realizers for spectra with conjugate pairs. L gains complex rows whose
/// diagonal entries are 1 or i; the transformed C must come out entrywise
/// real (asserted exactly) and nonnegative.

struct ComplexOptions {
    Rational tol = Rational(0);
};

/// n = 3: Perron plus one pair. Case split on the sign of the pair's real
/// part; the free entry l.2.1 defaults to the midpoint of the quadratic
/// feasibility interval (a rational point).
Realization realize_complex_3(const Rational& perron, const ConjugatePair& pair,
                              const Overrides& ov = {}, const ComplexOptions& opt = {});

/// n = 4: two reals plus one pair. A positive second real is split off as a
/// 1x1 diagonal block; a negative one is embedded through the first row.
Realization realize_complex_4(const ClassifiedSpectrum& c, const Overrides& ov = {},
                              const ComplexOptions& opt = {});

/// n >= 5: stacked construction — Perron row, embedded negative reals,
/// one 2x2 cell per conjugate pair with row-1 couplers; trailing positive
/// reals ride along as a diagonal direct sum.
Realization realize_complex_general(const ClassifiedSpectrum& c, const Overrides& ov = {},
                                    const ComplexOptions& opt = {});

} // namespace niep
