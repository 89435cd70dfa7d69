#pragma once

#include <optional>

#include "niep/engine.hpp"
#include "niep/realization.hpp"
#include "niep/spectrum.hpp"

namespace niep {

/// Realizers for real spectra. Each takes the diagonal sequence `lam`
/// (Perron first; the order becomes the diagonal of A) plus parameter
/// overrides, builds the construction skeleton, resolves free parameters
/// and returns a verified Realization. Wrappers on ClassifiedSpectrum use
/// the descending sorted order.

struct RealOptions {
    Rational tol = Rational(0); // nonnegativity slack, float mode only
};

// ---- k <= n/2 family ----

/// Suleimanova case: one positive eigenvalue (or none), first-row alphas,
/// all-ones first column of L.
Realization realize_one_positive(const std::vector<Rational>& lam,
                                 const std::optional<std::vector<Rational>>& alphas = {},
                                 const RealOptions& opt = {});

/// One-positive variant that hits a prescribed nonnegative diagonal with
/// sum s1; solves the alphas from the diagonal and validates feasibility.
Realization realize_prescribed_diagonal(const std::vector<Rational>& lam,
                                        const std::vector<Rational>& diag, const RealOptions& opt = {});

/// Two positive eigenvalues: second row takes alpha_r..alpha_n (suffix
/// reaching lambda_2) plus free betas in columns 3..r-1.
Realization realize_two_positive(const std::vector<Rational>& lam, const Overrides& ov = {},
                                 const RealOptions& opt = {});

/// General greedy assignment: negatives absorbed right-to-left by the
/// lowest positive rows, deficits cascading up through couplers.
/// Delegates to the specialized ops for k_pos <= 2.
Realization realize_k_positive(const std::vector<Rational>& lam, const Overrides& ov = {},
                               const RealOptions& opt = {});

// ---- k > n/2 family ----

/// How negatives attach to positive rows: `chains` partitions rows 1..p
/// into consecutive runs (each run after the first is coupled from row 1),
/// `absorb` maps each negative column to its absorbing row.
struct AbsorbPlan {
    std::vector<std::pair<int, int>> chains;
    std::map<int, int> absorb;

    static AbsorbPlan default_plan(int p, int n, int k_neg);
    static AbsorbPlan from_overrides(const Overrides& ov, int p, int n, int k_neg);
};

Realization realize_two_negative(const std::vector<Rational>& lam, const Overrides& ov = {},
                                 const RealOptions& opt = {});
Realization realize_three_negative(const std::vector<Rational>& lam, const Overrides& ov = {},
                                   const RealOptions& opt = {});
/// k_neg >= 2 entry point; delegates to the specialized ops for 2 and 3,
/// handles k_neg in {0, 1} by direct sum with a 2x2 Suleimanova block.
Realization realize_k_negative(const std::vector<Rational>& lam, const Overrides& ov = {},
                               const RealOptions& opt = {});

// ClassifiedSpectrum wrappers (descending diagonal order)
Realization realize_one_positive(const ClassifiedSpectrum& c,
                                 const std::optional<std::vector<Rational>>& alphas = {});
Realization realize_prescribed_diagonal(const ClassifiedSpectrum& c, const std::vector<Rational>& diag);
Realization realize_two_positive(const ClassifiedSpectrum& c, const Overrides& ov = {});
Realization realize_k_positive(const ClassifiedSpectrum& c, const Overrides& ov = {});
Realization realize_two_negative(const ClassifiedSpectrum& c, const Overrides& ov = {});
Realization realize_three_negative(const ClassifiedSpectrum& c, const Overrides& ov = {});
Realization realize_k_negative(const ClassifiedSpectrum& c, const Overrides& ov = {});

/// this ⊕ diag(tail): direct sum with trailing diagonal entries
Realization direct_sum(const Realization& r, const std::vector<Rational>& tail);

} // namespace niep
