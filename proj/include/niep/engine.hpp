#pragma once

#include <optional>
#include <string>
#include <vector>

#include "niep/realization.hpp"

namespace niep {

/// One free parameter of a construction skeleton.
struct Slot {
    ParamKey key;
    Rational seed;                 // value used before any tightening
    std::optional<Rational> lower; // intrinsic bound, e.g. alpha_j >= -lambda_j
    std::optional<Rational> upper;
    enum class Pick { LowerEnd, Midpoint } pick = Pick::LowerEnd;
};

/// A construction as data: fixed parts of A and L plus affine placements of
/// the slot values. A = A_fixed + sum over placements, L likewise (L slots
/// place verbatim). Everything downstream (C, margins, certificates) is a
/// function of the slot value vector.
struct Skeleton {
    std::size_t n = 0;
    Matrix A_fixed;
    UnitLower L_fixed;
    std::vector<Slot> slots;
    struct Placement {
        std::size_t slot;
        int row, col; // 1-based
        Rational coef;
    };
    std::vector<Placement> a_placements; // slot value lands in A at coef * value
    // LEntry slots land verbatim at their (row, col)

    std::size_t slot_index(const ParamKey& k) const;
    Matrix build_A(const std::vector<Rational>& values) const;
    UnitLower build_L(const std::vector<Rational>& values) const;
    Matrix build_C(const std::vector<Rational>& values) const; // strips imaginary parts
};

struct SlotBox {
    std::optional<Rational> lo, hi;
    bool pinned = false;
};

struct ResolveResult {
    std::vector<Rational> values;
    std::vector<SlotBox> boxes;
    Matrix A;
    UnitLower L;
    Matrix C;
    std::vector<std::string> notes;
};

struct ResolveOptions {
    Rational tol = Rational(0); // nonnegativity slack (float mode)
    int propagation_rounds = 6;
    int max_grid_dims = 5;      // grid up to 9^d points for d <= this, else coordinate descent
    int descent_iterations = 100;
};

/// Resolves free parameters: exact affine interval propagation, lower-end /
/// midpoint selection, exact entrywise verification, then (if needed) grid
/// search with one refinement pass or deterministic coordinate descent.
/// Throws MethodInapplicable / EmptyInterval / InfeasibleParam.
ResolveResult resolve(const Skeleton& sk, const std::map<ParamKey, Rational>& pinned,
                      const ResolveOptions& opt = {});

/// Certificate lines for the resolved parameters: final interval membership
/// per slot plus the minimum entry of C.
std::vector<CertLine> interval_certificate(const Skeleton& sk, const ResolveResult& rr);

} // namespace niep
