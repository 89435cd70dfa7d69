#include "niep/dispatch.hpp"

#include <algorithm>

#include "niep/realize_complex.hpp"
#include "niep/realize_real.hpp"

namespace niep {

std::string dispatch_strategy(const ClassifiedSpectrum& c) {
    if (c.has_pairs()) {
        if (c.n == 3) return "complex-3";
        if (c.n == 4) return "complex-4";
        return "complex-general";
    }
    const std::size_t k = c.k_pos;
    if (2 * k <= c.n) {
        if (k <= 1) return "one-positive";
        if (k == 2) return "two-positive";
        return "k-positive";
    }
    const std::size_t kn = c.k_neg();
    if (kn == 0) return "diagonal";
    if (kn == 1) return "one-negative";
    if (kn == 2) return "two-negative";
    if (kn == 3) return "three-negative";
    return "k-negative";
}

namespace {

Realization run_complex(const ClassifiedSpectrum& c, const std::string& strategy, const Overrides& ov,
                        const ComplexOptions& opt) {
    if (strategy == "complex-3") {
        if (c.n != 3 || c.pairs.size() != 1)
            fail(ErrKind::WrongShape, "complex-3 needs a Perron value and one conjugate pair");
        return realize_complex_3(c.reals.at(0), c.pairs.at(0), ov, opt);
    }
    if (strategy == "complex-4") return realize_complex_4(c, ov, opt);
    if (strategy == "complex-general") return realize_complex_general(c, ov, opt);
    fail(ErrKind::Input, "unknown complex strategy " + strategy);
}

// realize a given real diagonal order: positives (descending) then
// negatives in any order, then trailing positives as a direct sum
Realization run_real_ordered(const std::vector<Rational>& diag, const Overrides& ov,
                             const RealOptions& opt) {
    std::size_t last_neg = diag.size();
    for (std::size_t i = diag.size(); i-- > 0;)
        if (diag[i] < 0) {
            last_neg = i;
            break;
        }
    std::vector<Rational> active(diag.begin(),
                                 last_neg == diag.size() ? diag.end() : diag.begin() + last_neg + 1);
    std::vector<Rational> tail(last_neg == diag.size() ? diag.end() : diag.begin() + last_neg + 1,
                               diag.end());
    for (const Rational& x : tail)
        if (x < 0) fail(ErrKind::WrongShape, "trailing block after the last negative must be positive");

    std::size_t k = 0;
    for (const Rational& x : active)
        if (x > 0) ++k;
    Realization r;
    if (2 * k <= active.size())
        r = realize_k_positive(active, ov, opt);
    else
        r = realize_k_negative(active, ov, opt);
    if (!tail.empty()) {
        r = direct_sum(r, tail);
        r.params.extras["direct_sum_tail"] = std::to_string(tail.size()) + " trailing positives";
    }
    return r;
}

std::vector<Rational> apply_order(const std::vector<Rational>& sorted, const std::vector<int>& order) {
    if (order.empty()) return sorted;
    if (order.size() != sorted.size()) fail(ErrKind::Input, "order must be a permutation of 1..n");
    std::vector<bool> seen(sorted.size(), false);
    std::vector<Rational> out;
    for (int ix : order) {
        if (ix < 1 || ix > static_cast<int>(sorted.size()) || seen[static_cast<std::size_t>(ix - 1)])
            fail(ErrKind::Input, "order must be a permutation of 1..n");
        seen[static_cast<std::size_t>(ix - 1)] = true;
        out.push_back(sorted[static_cast<std::size_t>(ix - 1)]);
    }
    return out;
}

Realization run_real_strategy(const ClassifiedSpectrum& c, const std::string& strategy, const Overrides& ov,
                              const RealOptions& opt, const std::vector<int>& order) {
    std::vector<Rational> diag = apply_order(c.reals, order);
    if (!order.empty()) {
        Realization r = run_real_ordered(diag, ov, opt);
        std::string s;
        for (std::size_t i = 0; i < order.size(); ++i) s += (i ? "," : "") + std::to_string(order[i]);
        r.params.extras["order"] = s;
        r.params.order = order;
        return r;
    }
    if (strategy == "one-positive") return realize_one_positive(diag, std::nullopt, opt);
    if (strategy == "prescribed-diagonal") {
        std::vector<Rational> d(diag.size(), Rational(0));
        for (const auto& [ix, v] : ov.diag) {
            if (ix < 1 || ix > static_cast<int>(d.size())) fail(ErrKind::Input, "diag index out of range");
            d[static_cast<std::size_t>(ix - 1)] = v;
        }
        return realize_prescribed_diagonal(diag, d, opt);
    }
    if (strategy == "two-positive") return realize_two_positive(diag, ov, opt);
    if (strategy == "k-positive") return realize_k_positive(diag, ov, opt);
    if (strategy == "two-negative") return realize_two_negative(diag, ov, opt);
    if (strategy == "three-negative") return realize_three_negative(diag, ov, opt);
    if (strategy == "k-negative" || strategy == "one-negative" || strategy == "diagonal")
        return realize_k_negative(diag, ov, opt);
    fail(ErrKind::Input, "unknown strategy " + strategy);
}

// bounded layout search: split the smallest t positives to a trailing
// diagonal block and permute the negative multiset, at most `cap` layouts
std::optional<Realization> permuted_search(const ClassifiedSpectrum& c, const Overrides& ov,
                                           const RealOptions& opt, int cap) {
    std::vector<Rational> pos, neg;
    for (const Rational& x : c.reals) (x > 0 ? pos : neg).push_back(x);
    if (pos.empty()) return std::nullopt;
    int tried = 0;
    const std::size_t max_split = pos.size() - 1;
    for (std::size_t t = 0; t <= max_split; ++t) {
        // split off the t smallest positives
        std::vector<Rational> head(pos.begin(), pos.end() - static_cast<long>(t));
        std::vector<Rational> tail(pos.end() - static_cast<long>(t), pos.end());
        Rational active_sum(0);
        for (const auto& x : head) active_sum += x;
        for (const auto& x : neg) active_sum += x;
        if (active_sum < 0) continue;

        std::vector<Rational> perm = neg;
        std::sort(perm.begin(), perm.end());
        do {
            if (t == 0) {
                // skip the default descending layout; it already failed
                bool is_default = std::is_sorted(perm.begin(), perm.end(),
                                                 [](const Rational& a, const Rational& b) { return a > b; });
                if (is_default) continue;
            }
            if (++tried > cap) return std::nullopt;
            std::vector<Rational> diag = head;
            diag.insert(diag.end(), perm.begin(), perm.end());
            diag.insert(diag.end(), tail.begin(), tail.end());
            try {
                Realization r = run_real_ordered(diag, ov, opt);
                r.params.strategy = "permuted";
                std::string s;
                for (std::size_t i = 0; i < diag.size(); ++i)
                    s += (i ? "," : "") + format_rational(diag[i]);
                r.params.extras["diagonal_order"] = s;
                return r;
            } catch (const Error& e) {
                if (!e.method_level()) throw;
            }
        } while (std::next_permutation(perm.begin(), perm.end()));
    }
    return std::nullopt;
}

} // namespace

DispatchResult dispatch_realize(const ClassifiedSpectrum& c, const std::string& strategy,
                                const Overrides& ov, const Rational& tol,
                                const std::vector<int>& order) {
    DispatchResult out;
    std::string chosen = strategy.empty() || strategy == "auto" ? dispatch_strategy(c) : strategy;

    if (c.has_pairs() && !order.empty()) fail(ErrKind::Input, "--order applies to real spectra only");

    if (chosen.rfind("complex", 0) == 0) {
        ComplexOptions opt{tol};
        try {
            out.realization = run_complex(c, chosen, ov, opt);
            return out;
        } catch (const Error& e) {
            if (!e.method_level() || chosen == "complex-general" || c.n < 5) throw;
            out.diagnostics.push_back(std::string(e.kind_name()) + " from " + chosen + ": " + e.what());
            out.realization = run_complex(c, "complex-general", ov, opt);
            return out;
        }
    }

    RealOptions opt{tol};
    try {
        out.realization = run_real_strategy(c, chosen, ov, opt, order);
        return out;
    } catch (const Error& e) {
        if (!e.method_level() || !order.empty()) throw;
        out.diagnostics.push_back(std::string(e.kind_name()) + " from " + chosen +
                                  " under the default descending order: " + e.what());
        // fallback 1: the general op of the same family (when different)
        const bool few = 2 * c.k_pos <= c.n;
        std::string general = c.has_pairs() ? "complex-general" : (few ? "k-positive" : "k-negative");
        bool same = chosen == general || (general == "k-positive" && c.k_pos <= 2) ||
                    (general == "k-negative" && c.k_neg() <= 3);
        if (!same) {
            try {
                out.realization = run_real_strategy(c, general, ov, opt, {});
                out.diagnostics.push_back("realized by the general op " + general);
                return out;
            } catch (const Error& e2) {
                if (!e2.method_level()) throw;
                out.diagnostics.push_back(std::string(e2.kind_name()) + " from " + general + ": " + e2.what());
            }
        }
        // fallback 2: bounded permuted-layout search
        if (!c.has_pairs()) {
            if (auto r = permuted_search(c, ov, opt, 2000)) {
                out.realization = *r;
                out.diagnostics.push_back("realized by a permuted diagonal layout");
                return out;
            }
            out.diagnostics.push_back("permuted-layout search exhausted");
        }
        throw;
    }
}

} // namespace niep
