#include "niep/realize_complex.hpp"

#include <algorithm>

#include "niep/realize_real.hpp"

namespace niep {

namespace {

RealizationParams collect(const Skeleton& sk, const ResolveResult& rr, const std::string& strategy) {
    RealizationParams p;
    p.strategy = strategy;
    for (std::size_t s = 0; s < sk.slots.size(); ++s) {
        const ParamKey& k = sk.slots[s].key;
        if (k.kind == ParamKey::Kind::LEntry)
            p.l_free[{k.row, k.col}] = rr.values[s];
        else
            p.couplers[{k.row, k.col}] = rr.values[s];
    }
    return p;
}

/// rows (si, si+1) of L for a pair at 1-based column si: the free row
/// [l, 0.., i, 0..] and the conjugate row with fixed entries
/// (re^2/im^2 + 1) at column 1 and (-re/im) i + 1 at column si
/// (both collapse to plain ones when the real part is nonnegative).
void set_pair_rows(Skeleton& sk, int si, const ConjugatePair& pr, std::map<ParamKey, Rational>& pinned,
                   const Overrides& ov, const Rational& seed) {
    Slot s;
    s.key = {ParamKey::Kind::LEntry, si, 1};
    s.seed = seed;
    s.pick = Slot::Pick::Midpoint;
    sk.slots.push_back(s);
    if (auto it = ov.params.find(s.key); it != ov.params.end()) pinned[s.key] = it->second;
    sk.L_fixed.set(static_cast<std::size_t>(si - 1), static_cast<std::size_t>(si - 1), ExactScalar::i());

    const std::size_t cr = static_cast<std::size_t>(si); // conjugate row, 0-based
    if (pr.re >= 0) {
        sk.L_fixed.set(cr, 0, ExactScalar(1));
        sk.L_fixed.set(cr, static_cast<std::size_t>(si - 1), ExactScalar(1));
    } else {
        sk.L_fixed.set(cr, 0, ExactScalar(pr.re * pr.re / (pr.im * pr.im) + 1));
        sk.L_fixed.set(cr, static_cast<std::size_t>(si - 1), ExactScalar(Rational(1), -pr.re / pr.im));
    }
}

void set_pair_cell(Skeleton& sk, int si, const ConjugatePair& pr) {
    sk.A_fixed(static_cast<std::size_t>(si - 1), static_cast<std::size_t>(si - 1)) =
        ExactScalar(pr.re, -pr.im);
    sk.A_fixed(static_cast<std::size_t>(si - 1), static_cast<std::size_t>(si)) =
        ExactScalar(Rational(0), -pr.im);
    sk.A_fixed(static_cast<std::size_t>(si), static_cast<std::size_t>(si)) = ExactScalar(pr.re, pr.im);
    // row-1 coupler
    sk.A_fixed(0, static_cast<std::size_t>(si - 1)) = ExactScalar(Rational(0), pr.im);
}

} // namespace

Realization realize_complex_3(const Rational& perron, const ConjugatePair& pair, const Overrides& ov,
                              const ComplexOptions& opt) {
    if (pair.im <= 0) fail(ErrKind::Input, "conjugate pair must have positive imaginary part");
    if (perron * perron < pair.re * pair.re + pair.im * pair.im)
        fail(ErrKind::NoPerron, "Perron value does not dominate the pair modulus");
    if (perron + 2 * pair.re < 0) fail(ErrKind::InfeasibleAlphas, "spectrum sum s1 is negative");

    Skeleton sk;
    sk.n = 3;
    sk.A_fixed = Matrix(3);
    sk.A_fixed(0, 0) = ExactScalar(perron);
    sk.L_fixed = UnitLower(3);
    std::map<ParamKey, Rational> pinned;
    set_pair_cell(sk, 2, pair);
    // quadratic feasibility midpoint: (lambda1 - lambda2)/(2 mu) for a
    // nonnegative real part, (lambda1 - 2 lambda2)/(2 mu) otherwise
    Rational seed = pair.re >= 0 ? (perron - pair.re) / (2 * pair.im)
                                 : (perron - 2 * pair.re) / (2 * pair.im);
    set_pair_rows(sk, 2, pair, pinned, ov, seed);

    ResolveOptions ro;
    ro.tol = opt.tol;
    ResolveResult rr = resolve(sk, pinned, ro);
    Realization r;
    r.A = rr.A;
    r.L = rr.L;
    r.C = rr.C;
    r.params = collect(sk, rr, pair.re >= 0 ? "complex-3/case-1" : "complex-3/case-2");
    r.certificate = interval_certificate(sk, rr);
    return r;
}

Realization realize_complex_4(const ClassifiedSpectrum& c, const Overrides& ov, const ComplexOptions& opt) {
    if (c.n != 4 || c.pairs.size() != 1 || c.reals.size() != 2)
        fail(ErrKind::WrongShape, "complex-4 needs two reals and one conjugate pair");
    const Rational lambda1 = c.reals[0];
    const Rational lambda2 = c.reals[1];
    const ConjugatePair pr = c.pairs[0];
    if (c.s1 < 0) fail(ErrKind::InfeasibleAlphas, "spectrum sum s1 is negative");

    if (lambda2 >= 0) {
        // block composition: 3x3 realization of (lambda1, pair) plus a 1x1 block
        Realization r3 = realize_complex_3(lambda1, pr, ov, opt);
        Realization r = direct_sum(r3, {lambda2});
        r.params.strategy = "complex-4";
        r.params.extras["composition"] = "3x3 block + diagonal";
        return r;
    }

    // negative second real embedded through the first row
    Skeleton sk;
    sk.n = 4;
    sk.A_fixed = Matrix(4);
    sk.A_fixed(0, 0) = ExactScalar(lambda1);
    sk.A_fixed(1, 1) = ExactScalar(lambda2);
    sk.A_fixed(0, 1) = ExactScalar(-lambda2);
    sk.L_fixed = UnitLower(4);
    sk.L_fixed.set(1, 0, ExactScalar(1));
    std::map<ParamKey, Rational> pinned;
    set_pair_cell(sk, 3, pr);
    Rational seed = (lambda1 - 2 * pr.re) / (2 * pr.im);
    set_pair_rows(sk, 3, pr, pinned, ov, seed);

    ResolveOptions ro;
    ro.tol = opt.tol;
    ResolveResult rr = resolve(sk, pinned, ro);
    Realization r;
    r.A = rr.A;
    r.L = rr.L;
    r.C = rr.C;
    r.params = collect(sk, rr, "complex-4");
    r.certificate = interval_certificate(sk, rr);
    return r;
}

Realization realize_complex_general(const ClassifiedSpectrum& c, const Overrides& ov,
                                    const ComplexOptions& opt) {
    if (c.pairs.empty()) fail(ErrKind::WrongShape, "complex realizer needs at least one conjugate pair");
    if (c.s1 < 0) fail(ErrKind::InfeasibleAlphas, "spectrum sum s1 is negative");

    // stacked part: Perron, negative reals, all pairs; trailing positive
    // reals are appended as a diagonal direct sum afterwards
    std::vector<Rational> neg_reals, pos_tail;
    for (std::size_t i = 1; i < c.reals.size(); ++i)
        (c.reals[i] < 0 ? neg_reals : pos_tail).push_back(c.reals[i]);

    Rational stacked_sum = c.reals[0];
    for (const auto& x : neg_reals) stacked_sum += x;
    for (const auto& p : c.pairs) stacked_sum += 2 * p.re;
    if (stacked_sum < 0)
        fail(ErrKind::MethodInapplicable,
             "stacked part (Perron, negative reals, pairs) has negative sum " + format_rational(stacked_sum) +
                 "; positive reals cannot be split off");

    // pairs in ascending real part on the diagonal
    std::vector<ConjugatePair> pairs = c.pairs;
    std::sort(pairs.begin(), pairs.end(), [](const ConjugatePair& a, const ConjugatePair& b) {
        if (a.re != b.re) return a.re < b.re;
        return a.im < b.im;
    });

    const int m = static_cast<int>(1 + neg_reals.size() + 2 * pairs.size());
    Skeleton sk;
    sk.n = static_cast<std::size_t>(m);
    sk.A_fixed = Matrix(sk.n);
    sk.L_fixed = UnitLower(sk.n);
    sk.A_fixed(0, 0) = ExactScalar(c.reals[0]);
    std::map<ParamKey, Rational> pinned;

    int row = 2;
    for (const Rational& x : neg_reals) {
        sk.A_fixed(static_cast<std::size_t>(row - 1), static_cast<std::size_t>(row - 1)) = ExactScalar(x);
        sk.A_fixed(0, static_cast<std::size_t>(row - 1)) = ExactScalar(-x);
        sk.L_fixed.set(static_cast<std::size_t>(row - 1), 0, ExactScalar(1));
        ++row;
    }
    for (const ConjugatePair& pr : pairs) {
        set_pair_cell(sk, row, pr);
        Rational seed = (c.reals[0] - 2 * pr.re) / (2 * pr.im);
        if (seed < 0) seed = 0;
        set_pair_rows(sk, row, pr, pinned, ov, seed);
        row += 2;
    }

    ResolveOptions ro;
    ro.tol = opt.tol;
    ResolveResult rr = resolve(sk, pinned, ro);
    Realization r;
    r.A = rr.A;
    r.L = rr.L;
    r.C = rr.C;
    r.params = collect(sk, rr, "complex-general");
    r.certificate = interval_certificate(sk, rr);
    if (!pos_tail.empty()) {
        r = direct_sum(r, pos_tail);
        r.params.extras["direct_sum_tail"] = std::to_string(pos_tail.size()) + " positive reals";
    }
    return r;
}

} // namespace niep
