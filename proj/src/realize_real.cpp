#include "niep/realize_real.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

namespace niep {

namespace {

Rational sum(const std::vector<Rational>& v) {
    Rational s(0);
    for (const auto& x : v) s += x;
    return s;
}

std::size_t count_positive(const std::vector<Rational>& lam) {
    std::size_t k = 0;
    for (const auto& x : lam)
        if (x > 0) ++k;
    return k;
}

// positives must occupy the leading block (Perron first), the rest <= 0
void check_shape(const std::vector<Rational>& lam, std::size_t k) {
    for (std::size_t i = 0; i < lam.size(); ++i) {
        bool pos = lam[i] > 0;
        if (pos != (i < k))
            fail(ErrKind::WrongShape, "positive eigenvalues must occupy the leading diagonal block");
    }
    for (std::size_t i = 0; i + 1 < k; ++i)
        if (lam[i] < lam[i + 1]) fail(ErrKind::WrongShape, "positive block must be sorted descending");
    if (k > 0)
        for (std::size_t i = 1; i < lam.size(); ++i)
            if (lam[i] > lam[0]) fail(ErrKind::WrongShape, "first diagonal entry must be the Perron value");
}

RealizationParams collect_params(const Skeleton& sk, const ResolveResult& rr, const std::string& strategy) {
    RealizationParams p;
    p.strategy = strategy;
    for (std::size_t s = 0; s < sk.slots.size(); ++s) {
        const ParamKey& k = sk.slots[s].key;
        const Rational& v = rr.values[s];
        switch (k.kind) {
            case ParamKey::Kind::Alpha: p.alphas[k.col] = v; break;
            case ParamKey::Kind::Beta: p.betas[{k.row, k.col}] = v; break;
            case ParamKey::Kind::Coupler: p.couplers[{k.row, k.col}] = v; break;
            case ParamKey::Kind::LEntry: p.l_free[{k.row, k.col}] = v; break;
        }
    }
    for (const auto& [col, v] : p.alphas) p.t += v;
    return p;
}

Realization finalize(const Skeleton& sk, const ResolveResult& rr, const std::string& strategy) {
    Realization r;
    r.A = rr.A;
    r.L = rr.L;
    r.C = rr.C;
    r.params = collect_params(sk, rr, strategy);
    r.certificate = interval_certificate(sk, rr);
    return r;
}

} // namespace

Realization direct_sum(const Realization& r, const std::vector<Rational>& tail) {
    if (tail.empty()) return r;
    std::vector<ExactScalar> t(tail.begin(), tail.end());
    Realization out = r;
    out.A = r.A.direct_sum_diag(t);
    out.C = r.C.direct_sum_diag(t);
    out.L = r.L.direct_sum_identity(tail.size());
    for (const auto& x : tail)
        if (x < 0) fail(ErrKind::WrongShape, "direct-sum tail must be nonnegative");
    return out;
}

// ---------------------------------------------------------------- one positive

Realization realize_one_positive(const std::vector<Rational>& lam,
                                 const std::optional<std::vector<Rational>>& alphas,
                                 const RealOptions& opt) {
    const std::size_t n = lam.size();
    if (n == 0) fail(ErrKind::Input, "empty spectrum");
    const std::size_t k = count_positive(lam);
    if (k > 1) fail(ErrKind::WrongShape, "more than one positive eigenvalue");
    check_shape(lam, k);
    if (sum(lam) < 0) fail(ErrKind::InfeasibleAlphas, "spectrum sum s1 is negative");
    if (alphas && alphas->size() != n - 1)
        fail(ErrKind::Input, "expected " + std::to_string(n - 1) + " alphas");

    Skeleton sk;
    sk.n = n;
    sk.A_fixed = Matrix(n);
    for (std::size_t i = 0; i < n; ++i) sk.A_fixed(i, i) = ExactScalar(lam[i]);
    sk.L_fixed = UnitLower(n);
    for (std::size_t i = 1; i < n; ++i) sk.L_fixed.set(i, 0, ExactScalar(1));

    std::map<ParamKey, Rational> pinned;
    for (std::size_t j = 2; j <= n; ++j) {
        Slot s;
        s.key = {ParamKey::Kind::Alpha, 0, static_cast<int>(j)};
        s.lower = -lam[j - 1];
        s.seed = -lam[j - 1];
        s.pick = Slot::Pick::LowerEnd;
        sk.slots.push_back(s);
        sk.a_placements.push_back({sk.slots.size() - 1, 1, static_cast<int>(j), Rational(1)});
        if (alphas) {
            const Rational& a = (*alphas)[j - 2];
            if (a < -lam[j - 1])
                fail(ErrKind::InfeasibleAlphas,
                     "alphas." + std::to_string(j) + " = " + format_rational(a) + " violates alpha >= " +
                         format_rational(-lam[j - 1]));
            pinned[s.key] = a;
        }
    }
    if (alphas) {
        Rational t = sum(*alphas);
        if (t > lam[0])
            fail(ErrKind::InfeasibleAlphas, "t = " + format_rational(t) + " violates t <= lambda1 = " +
                                                format_rational(lam[0]));
    }

    ResolveOptions ro;
    ro.tol = opt.tol;
    ResolveResult rr = resolve(sk, pinned, ro);
    Realization r = finalize(sk, rr, "one-positive");
    r.certificate.push_back({"lambda1 - t >= 0", lam[0] - r.params.t});
    for (std::size_t j = 2; j <= n; ++j)
        r.certificate.push_back({"alphas." + std::to_string(j) + " + lambda_" + std::to_string(j) + " >= 0",
                                 r.params.alphas[static_cast<int>(j)] + lam[j - 1]});
    return r;
}

Realization realize_prescribed_diagonal(const std::vector<Rational>& lam, const std::vector<Rational>& diag,
                                        const RealOptions& opt) {
    const std::size_t n = lam.size();
    if (diag.size() != n) fail(ErrKind::InfeasibleDiagonal, "diagonal length mismatch");
    if (count_positive(lam) > 1) fail(ErrKind::WrongShape, "more than one positive eigenvalue");
    for (std::size_t i = 0; i < n; ++i)
        if (diag[i] < 0)
            fail(ErrKind::InfeasibleDiagonal,
                 "diag." + std::to_string(i + 1) + " = " + format_rational(diag[i]) + " is negative");
    if (sum(diag) != sum(lam))
        fail(ErrKind::InfeasibleDiagonal, "prescribed diagonal must sum to s1 = " + format_rational(sum(lam)));

    // entry (i,i) of C is alpha_i + lambda_i for i >= 2 and lambda1 - t for i = 1
    std::vector<Rational> alphas;
    for (std::size_t j = 2; j <= n; ++j) alphas.push_back(diag[j - 1] - lam[j - 1]);
    Realization r = realize_one_positive(lam, alphas, opt);
    r.params.strategy = "prescribed-diagonal";
    return r;
}

// ---------------------------------------------------------------- two positive

Realization realize_two_positive(const std::vector<Rational>& lam, const Overrides& ov,
                                 const RealOptions& opt) {
    const std::size_t n = lam.size();
    const std::size_t k = count_positive(lam);
    if (k != 2) fail(ErrKind::WrongShape, "expected exactly two positive eigenvalues");
    if (n < 4) fail(ErrKind::WrongShape, "two-positive construction needs n >= 4");
    check_shape(lam, k);
    if (sum(lam) < 0) fail(ErrKind::InfeasibleAlphas, "spectrum sum s1 is negative");

    // alpha values drive the cut; apply overrides before scanning
    std::vector<Rational> alpha(n + 1); // 1-based, cols 2..n
    for (std::size_t j = 2; j <= n; ++j) alpha[j] = -lam[j - 1];
    for (const auto& [key, v] : ov.params)
        if (key.kind == ParamKey::Kind::Alpha) {
            if (key.col < 2 || key.col > static_cast<int>(n)) fail(ErrKind::Input, "alpha column out of range");
            alpha[key.col] = v;
        }

    // r: scan from column n leftward until the suffix sum first reaches lambda2
    std::size_t r_cut = 0;
    Rational suffix(0);
    for (std::size_t j = n; j >= 3; --j) {
        suffix += alpha[j];
        if (suffix >= lam[1]) {
            r_cut = j;
            break;
        }
    }
    if (r_cut == 0)
        fail(ErrKind::InfeasibleCut, "no suffix of alphas reaches lambda2 = " + format_rational(lam[1]));

    Skeleton sk;
    sk.n = n;
    sk.A_fixed = Matrix(n);
    for (std::size_t i = 0; i < n; ++i) sk.A_fixed(i, i) = ExactScalar(lam[i]);

    std::map<ParamKey, Rational> pinned;
    auto add_alpha = [&](std::size_t col, std::initializer_list<std::pair<int, int>> places) {
        Slot s;
        s.key = {ParamKey::Kind::Alpha, 0, static_cast<int>(col)};
        s.lower = -lam[col - 1];
        s.seed = alpha[col];
        s.pick = Slot::Pick::LowerEnd;
        sk.slots.push_back(s);
        for (auto [i, j] : places) sk.a_placements.push_back({sk.slots.size() - 1, i, j, Rational(1)});
        pinned[s.key] = alpha[col]; // the cut is computed from these values; keep them fixed
    };

    add_alpha(2, {{1, 2}});
    for (std::size_t j = 3; j < r_cut; ++j) add_alpha(j, {{1, static_cast<int>(j)}});
    for (std::size_t j = r_cut; j <= n; ++j)
        add_alpha(j, {{2, static_cast<int>(j)}, {1, 2}});

    // free betas in row 2, columns 3..r-1
    for (std::size_t j = 3; j < r_cut; ++j) {
        Slot s;
        s.key = {ParamKey::Kind::Beta, 2, static_cast<int>(j)};
        s.seed = 0;
        s.pick = Slot::Pick::LowerEnd;
        sk.slots.push_back(s);
        sk.a_placements.push_back({sk.slots.size() - 1, 2, static_cast<int>(j), Rational(1)});
        if (auto it = ov.params.find(s.key); it != ov.params.end()) pinned[s.key] = it->second;
        // the paper also writes these as a_{2,j}; accept either spelling
        if (auto it = ov.params.find(ParamKey{ParamKey::Kind::Coupler, 2, static_cast<int>(j)});
            it != ov.params.end())
            pinned[s.key] = it->second;
    }

    // L: first column ones; column 2 has ones exactly in rows {2} and {r..n}
    sk.L_fixed = UnitLower(n);
    for (std::size_t i = 1; i < n; ++i) sk.L_fixed.set(i, 0, ExactScalar(1));
    sk.L_fixed.set(1, 1, ExactScalar(1));
    for (std::size_t i = r_cut; i <= n; ++i) sk.L_fixed.set(i - 1, 1, ExactScalar(1));

    ResolveOptions ro;
    ro.tol = opt.tol;
    ResolveResult rr = resolve(sk, pinned, ro);
    Realization r = finalize(sk, rr, "two-positive");
    r.params.cut_indices = {static_cast<int>(r_cut)};
    r.certificate.push_back({"lambda1 - t >= 0", lam[0] - r.params.t});
    Rational beta_cap = lam[0] - lam[1] - r.params.t; // joint bound: sum of betas <= lambda1-lambda2-t
    Rational beta_sum(0);
    for (const auto& [rc, v] : r.params.betas) beta_sum += v;
    r.certificate.push_back({"sum(beta) <= lambda1 - lambda2 - t", beta_cap - beta_sum});
    return r;
}

// ---------------------------------------------------------------- k positive (greedy)

Realization realize_k_positive(const std::vector<Rational>& lam, const Overrides& ov,
                               const RealOptions& opt) {
    const std::size_t n = lam.size();
    const std::size_t k = count_positive(lam);
    if (k <= 1) return realize_one_positive(lam, std::nullopt, opt);
    if (k == 2) return realize_two_positive(lam, ov, opt);
    check_shape(lam, k);
    if (sum(lam) < 0) fail(ErrKind::InfeasibleAlphas, "spectrum sum s1 is negative");
    if (k == n) { // no negatives at all: diagonal realization handled upstream
        Realization r;
        std::vector<ExactScalar> d(lam.begin(), lam.end());
        r.A = Matrix::diagonal(d);
        r.L = UnitLower(n);
        r.C = r.A;
        r.params.strategy = "k-positive";
        return r;
    }

    std::vector<Rational> alpha(n + 1);
    for (std::size_t j = 2; j <= n; ++j) alpha[j] = -lam[j - 1];
    for (const auto& [key, v] : ov.params)
        if (key.kind == ParamKey::Kind::Alpha) alpha[key.col] = v;

    // greedy walk: negatives right-to-left into rows k, k-1, ...; a row's
    // block ends the first time its budget goes strictly negative
    std::vector<std::vector<std::size_t>> block(k + 1);
    std::size_t col = n;
    for (std::size_t s = k; s >= 1 && col > k; --s) {
        Rational budget = lam[s - 1];
        while (col > k) {
            budget -= alpha[col];
            block[s].push_back(col);
            --col;
            if (budget < 0) break;
        }
    }
    if (col > k)
        fail(ErrKind::MethodInapplicable,
             "negative eigenvalue at position " + std::to_string(col) + " cannot be absorbed");

    Skeleton sk;
    sk.n = n;
    sk.A_fixed = Matrix(n);
    for (std::size_t i = 0; i < n; ++i) sk.A_fixed(i, i) = ExactScalar(lam[i]);
    sk.L_fixed = UnitLower(n);

    std::map<ParamKey, Rational> pinned;
    // alpha_j for negative column j in block s: lands at (s, j) and inside
    // every chain coupler (s'-1, s') for 2 <= s' <= s
    auto alpha_slot = [&](std::size_t j, std::size_t s_row) {
        Slot s;
        s.key = {ParamKey::Kind::Alpha, 0, static_cast<int>(j)};
        s.lower = -lam[j - 1];
        s.seed = alpha[j];
        s.pick = Slot::Pick::LowerEnd;
        sk.slots.push_back(s);
        std::size_t idx = sk.slots.size() - 1;
        if (s_row >= 1 && j > k)
            sk.a_placements.push_back({idx, static_cast<int>(s_row), static_cast<int>(j), Rational(1)});
        for (std::size_t sp = 2; sp <= s_row; ++sp)
            sk.a_placements.push_back({idx, static_cast<int>(sp - 1), static_cast<int>(sp), Rational(1)});
        if (auto it = ov.params.find(s.key); it != ov.params.end()) pinned[s.key] = it->second;
        return idx;
    };

    std::vector<std::size_t> owner(n + 1, 0); // negative col -> absorbing row
    for (std::size_t s = 1; s <= k; ++s)
        for (std::size_t c : block[s]) owner[c] = s;
    for (std::size_t j = 2; j <= k; ++j) alpha_slot(j, j);      // positive-column alphas feed couplers
    for (std::size_t j = k + 1; j <= n; ++j) alpha_slot(j, owner[j]);

    // free betas: row s, columns k+1 .. start_s - 1
    std::vector<std::size_t> start(k + 2, n + 1);
    for (std::size_t s = k; s >= 1; --s) {
        start[s] = block[s].empty() ? start[s + 1] : *std::min_element(block[s].begin(), block[s].end());
        if (s == 1) break;
    }
    for (std::size_t s = 1; s <= k; ++s) {
        for (std::size_t c = k + 1; c < start[s]; ++c) {
            Slot sl;
            sl.key = {ParamKey::Kind::Beta, static_cast<int>(s), static_cast<int>(c)};
            sl.seed = 0;
            sl.pick = Slot::Pick::Midpoint;
            sk.slots.push_back(sl);
            sk.a_placements.push_back({sk.slots.size() - 1, static_cast<int>(s), static_cast<int>(c), Rational(1)});
            if (auto it = ov.params.find(sl.key); it != ov.params.end()) pinned[sl.key] = it->second;
            if (auto it = ov.params.find(ParamKey{ParamKey::Kind::Coupler, static_cast<int>(s), static_cast<int>(c)});
                it != ov.params.end())
                pinned[sl.key] = it->second;
        }
    }

    // L pattern: positive rows get all-ones prefixes; the transpose of every
    // alpha placement gets a one, with ones leftward through its row's column
    for (std::size_t s = 2; s <= k; ++s)
        for (std::size_t j = 1; j < s; ++j) sk.L_fixed.set(s - 1, j - 1, ExactScalar(1));
    for (std::size_t s = 1; s <= k; ++s)
        for (std::size_t c : block[s])
            for (std::size_t j = 1; j <= s; ++j) sk.L_fixed.set(c - 1, j - 1, ExactScalar(1));

    ResolveOptions ro;
    ro.tol = opt.tol;
    ResolveResult rr = resolve(sk, pinned, ro);
    Realization r = finalize(sk, rr, "k-positive");
    for (std::size_t s = 1; s <= k; ++s)
        if (!block[s].empty()) r.params.cut_indices.push_back(static_cast<int>(start[s]));
    r.certificate.push_back({"lambda1 - t >= 0", lam[0] - r.params.t});
    if (n == 6 && k == 3) {
        // the three coupler bounds of the 6x6 three-positive construction
        auto get = [&](int i, int j) {
            for (const auto& [key, v] : r.params.betas)
                if (key.first == i && key.second == j) return v;
            return Rational(0);
        };
        Rational a24 = get(2, 4), a34 = get(3, 4), a35 = get(3, 5);
        Rational al2 = r.params.alphas.count(2) ? r.params.alphas[2] : Rational(0);
        Rational al4 = r.params.alphas.count(4) ? r.params.alphas[4] : Rational(0);
        Rational al5 = r.params.alphas.count(5) ? r.params.alphas[5] : Rational(0);
        r.certificate.push_back({"a.2.4 >= -alphas.4", a24 + al4});
        r.certificate.push_back({"a.2.4 <= lambda1 - lambda2 - t", lam[0] - lam[1] - r.params.t - a24});
        r.certificate.push_back({"a.2.4 + a.3.4 >= -alphas.4", a24 + a34 + al4});
        r.certificate.push_back(
            {"a.2.4 + a.3.4 <= lambda1 - lambda2 - t", lam[0] - lam[1] - r.params.t - a24 - a34});
        r.certificate.push_back({"a.3.5 >= -alphas.5", a35 + al5});
        r.certificate.push_back({"a.3.5 <= alphas.2 + lambda2 - lambda3", al2 + lam[1] - lam[2] - a35});
    }
    return r;
}

// ---------------------------------------------------------------- k > n/2 family

AbsorbPlan AbsorbPlan::default_plan(int p, int n, int k_neg) {
    AbsorbPlan pl;
    pl.chains = {{1, p}};
    for (int m = 0; m < k_neg; ++m) pl.absorb[n - m] = p - m;
    return pl;
}

AbsorbPlan AbsorbPlan::from_overrides(const Overrides& ov, int p, int n, int k_neg) {
    AbsorbPlan pl = default_plan(p, n, k_neg);
    if (auto it = ov.plan.find("chains"); it != ov.plan.end()) {
        pl.chains.clear();
        std::stringstream ss(it->second);
        std::string part;
        while (std::getline(ss, part, ',')) {
            auto dash = part.find('-');
            if (dash == std::string::npos) fail(ErrKind::Input, "bad chains spec '" + it->second + "'");
            pl.chains.emplace_back(std::stoi(part.substr(0, dash)), std::stoi(part.substr(dash + 1)));
        }
    }
    bool custom_absorb = false;
    for (const auto& [key, val] : ov.plan) {
        if (key.rfind("absorb.", 0) == 0) {
            if (!custom_absorb) {
                pl.absorb.clear();
                custom_absorb = true;
            }
            pl.absorb[std::stoi(key.substr(7))] = std::stoi(val);
        }
    }
    // validate
    int expect = 1;
    for (auto [a, b] : pl.chains) {
        if (a != expect || b < a || b > p) fail(ErrKind::ShapeConflict, "chains must partition the positive rows");
        expect = b + 1;
    }
    if (expect != p + 1) fail(ErrKind::ShapeConflict, "chains must cover all positive rows");
    if (static_cast<int>(pl.absorb.size()) != k_neg)
        fail(ErrKind::ShapeConflict, "every negative column needs exactly one absorbing row");
    for (auto [c, r] : pl.absorb) {
        if (c <= p || c > n) fail(ErrKind::ShapeConflict, "absorbed column out of range");
        if (r < 1 || r > p) fail(ErrKind::ShapeConflict, "absorbing row out of range");
    }
    return pl;
}

namespace {

Realization build_many_positive(const std::vector<Rational>& lam, const Overrides& ov,
                                const RealOptions& opt, const std::string& strategy) {
    const int n = static_cast<int>(lam.size());
    const int p = static_cast<int>(count_positive(lam));
    const int k_neg = n - p;
    check_shape(lam, static_cast<std::size_t>(p));
    if (sum(lam) < 0) fail(ErrKind::InfeasibleAlphas, "spectrum sum s1 is negative");
    if (p < k_neg + 1)
        fail(ErrKind::ShapeConflict, "construction needs more positive rows than negative columns");

    AbsorbPlan plan = AbsorbPlan::from_overrides(ov, p, n, k_neg);
    const bool two_neg_pattern = (k_neg == 2) && plan.chains.size() == 1;

    auto lam_at = [&](int j) { return lam[static_cast<std::size_t>(j - 1)]; };

    Skeleton sk;
    sk.n = static_cast<std::size_t>(n);
    sk.A_fixed = Matrix(sk.n);
    for (int i = 1; i <= n; ++i) sk.A_fixed(i - 1, i - 1) = ExactScalar(lam_at(i));
    sk.L_fixed = UnitLower(sk.n);

    std::map<int, int> chain_of; // positive row -> chain index
    for (std::size_t ci = 0; ci < plan.chains.size(); ++ci)
        for (int j = plan.chains[ci].first; j <= plan.chains[ci].second; ++j) chain_of[j] = static_cast<int>(ci);

    // structural couplers: into row j comes -(sum of diagonal entries of rows
    // j..chain_end plus all negatives absorbed by those rows)
    std::map<int, int> parent; // positive row -> its coupler source (0 = none)
    for (auto [a, b] : plan.chains) {
        for (int j = a; j <= b; ++j) {
            if (j == a && a == 1) {
                parent[j] = 0;
                continue;
            }
            parent[j] = (j == a) ? 1 : j - 1;
            Rational val(0);
            for (int i = j; i <= b; ++i) val += lam_at(i);
            for (auto [c, r] : plan.absorb)
                if (r >= j && r <= b) val += lam_at(c);
            sk.A_fixed(parent[j] - 1, j - 1) = ExactScalar(-val);
        }
    }
    // absorption entries
    for (auto [c, r] : plan.absorb) sk.A_fixed(r - 1, c - 1) = ExactScalar(-lam_at(c));

    std::map<ParamKey, Rational> pinned;
    auto add_coupler = [&](int i, int j, Slot::Pick pick) {
        Slot s;
        s.key = {ParamKey::Kind::Coupler, i, j};
        s.seed = 0;
        s.pick = pick;
        sk.slots.push_back(s);
        sk.a_placements.push_back({sk.slots.size() - 1, i, j, Rational(1)});
        if (auto it = ov.params.find(s.key); it != ov.params.end()) pinned[s.key] = it->second;
    };
    auto add_l = [&](int i, int j) {
        Slot s;
        s.key = {ParamKey::Kind::LEntry, i, j};
        s.seed = 1;
        s.pick = Slot::Pick::Midpoint;
        sk.slots.push_back(s);
        if (auto it = ov.params.find(s.key); it != ov.params.end()) pinned[s.key] = it->second;
    };

    // free A entries: each absorbing row may also feed earlier negative
    // columns; custom-plan overrides may pin any non-structural cell
    std::map<std::pair<int, int>, bool> has_entry;
    for (int i = 1; i <= n; ++i)
        for (int j = i + 1; j <= n; ++j)
            if (!sk.A_fixed(i - 1, j - 1).is_zero()) has_entry[{i, j}] = true;
    for (auto [c, r] : plan.absorb)
        for (int cc = p + 1; cc < c; ++cc)
            if (!has_entry[{r, cc}]) {
                add_coupler(r, cc, Slot::Pick::LowerEnd);
                has_entry[{r, cc}] = true;
            }
    for (const auto& [key, v] : ov.params) {
        if (key.kind != ParamKey::Kind::Coupler && key.kind != ParamKey::Kind::Beta) continue;
        if (key.row < 1 || key.row > n || key.col <= key.row || key.col > n)
            fail(ErrKind::Input, "parameter " + key.name() + " out of range");
        if (has_entry[{key.row, key.col}]) continue;
        Slot s;
        s.key = {ParamKey::Kind::Coupler, key.row, key.col};
        s.seed = v;
        s.pick = Slot::Pick::LowerEnd;
        sk.slots.push_back(s);
        sk.a_placements.push_back({sk.slots.size() - 1, key.row, key.col, Rational(1)});
        pinned[s.key] = v;
        has_entry[{key.row, key.col}] = true;
    }

    // L pattern
    if (two_neg_pattern) {
        // rows 2..p-1 all-ones prefix; row p free through p-2, one at p-1;
        // row n-1 ones through p-1, zero at p; row n free through p-2, ones at p-1 and p
        for (int i = 2; i <= p - 1; ++i)
            for (int j = 1; j < i; ++j) sk.L_fixed.set(i - 1, j - 1, ExactScalar(1));
        for (int j = 1; j <= p - 2; ++j) add_l(p, j);
        sk.L_fixed.set(p - 1, p - 2, ExactScalar(1));
        for (int j = 1; j <= p - 1; ++j) sk.L_fixed.set(n - 2, j - 1, ExactScalar(1));
        for (int j = 1; j <= p - 2; ++j) add_l(n, j);
        sk.L_fixed.set(n - 1, p - 2, ExactScalar(1));
        sk.L_fixed.set(n - 1, p - 1, ExactScalar(1));
    } else {
        // transpose ones for every structural coupler/absorption; cells to the
        // left of the one are free
        for (int j = 2; j <= p; ++j) {
            int par = parent[j];
            if (par == 0) continue;
            sk.L_fixed.set(j - 1, par - 1, ExactScalar(1));
            for (int c = 1; c < par; ++c) add_l(j, c);
        }
        for (auto [c, r] : plan.absorb) {
            sk.L_fixed.set(c - 1, r - 1, ExactScalar(1));
            for (int j = 1; j < r; ++j) add_l(c, j);
        }
    }

    ResolveOptions ro;
    ro.tol = opt.tol;
    ResolveResult rr = resolve(sk, pinned, ro);
    Realization r = finalize(sk, rr, strategy);
    {
        std::string chains_desc;
        for (auto [a, b] : plan.chains)
            chains_desc += (chains_desc.empty() ? "" : ",") + std::to_string(a) + "-" + std::to_string(b);
        r.params.extras["chains"] = chains_desc;
        for (auto [c, rw] : plan.absorb)
            r.params.extras["absorb." + std::to_string(c)] = std::to_string(rw);
    }
    // structural invariant of the two-negative pattern: entry (1,2) of C is
    // lambda1 - s1, so success implies s1 <= lambda1
    if (two_neg_pattern && n >= 2 && r.C(0, 1) != ExactScalar(lam[0] - sum(lam)))
        fail(ErrKind::WrongShape, "entry (1,2) of C must equal lambda1 - s1");
    return r;
}

} // namespace

Realization realize_two_negative(const std::vector<Rational>& lam, const Overrides& ov,
                                 const RealOptions& opt) {
    const int n = static_cast<int>(lam.size());
    const int p = static_cast<int>(count_positive(lam));
    if (n - p != 2) fail(ErrKind::WrongShape, "expected exactly two negative eigenvalues");
    if (p < 3) fail(ErrKind::WrongShape, "two-negative construction needs at least three positives");
    Realization r = build_many_positive(lam, ov, opt, "two-negative");
    // chained feasibility intervals of the n=5 construction, recorded when defined
    if (n == 5) {
        const Rational s1 = sum(lam);
        const Rational l1 = lam[0], l2 = lam[1], l3 = lam[2], l4 = lam[3], l5 = lam[4];
        if (s1 != l1 && l3 + l5 != 0 && l5 != 0) {
            Rational a34 = r.params.couplers.count({3, 4}) ? r.params.couplers[{3, 4}] : Rational(0);
            Rational a_hi = (s1 - l1) * (s1 - l2) / (l3 + l5) - l3;
            r.certificate.push_back({"a.3.4 in [lambda4, (s1-l1)(s1-l2)/(l3+l5)-l3]",
                                     std::min(a34 - l4, a_hi - a34)});
        }
    }
    return r;
}

Realization realize_three_negative(const std::vector<Rational>& lam, const Overrides& ov,
                                   const RealOptions& opt) {
    const int n = static_cast<int>(lam.size());
    const int p = static_cast<int>(count_positive(lam));
    if (n - p != 3) fail(ErrKind::WrongShape, "expected exactly three negative eigenvalues");
    if (p < 4) fail(ErrKind::WrongShape, "three-negative construction needs at least four positives");
    return build_many_positive(lam, ov, opt, "three-negative");
}

Realization realize_k_negative(const std::vector<Rational>& lam, const Overrides& ov,
                               const RealOptions& opt) {
    const int n = static_cast<int>(lam.size());
    const int p = static_cast<int>(count_positive(lam));
    const int k_neg = n - p;
    if (k_neg == 0) {
        Realization r;
        std::vector<ExactScalar> d(lam.begin(), lam.end());
        r.A = Matrix::diagonal(d);
        r.L = UnitLower(static_cast<std::size_t>(n));
        r.C = r.A;
        r.params.strategy = "diagonal";
        return r;
    }
    if (k_neg == 1) {
        // Perron and the lone negative make a 2x2 Suleimanova block; the
        // other positives ride along as a diagonal direct sum
        std::vector<Rational> head{lam[0], lam[static_cast<std::size_t>(n - 1)]};
        std::vector<Rational> tail(lam.begin() + 1, lam.end() - 1);
        Realization r2 = realize_one_positive(head, std::nullopt, opt);
        Realization r = direct_sum(r2, tail);
        r.params.strategy = "one-negative";
        return r;
    }
    if (k_neg == 2) return realize_two_negative(lam, ov, opt);
    if (k_neg == 3) return realize_three_negative(lam, ov, opt);
    Realization r = build_many_positive(lam, ov, opt, "k-negative");
    return r;
}

// ---------------------------------------------------------------- wrappers

namespace {
std::vector<Rational> sorted_reals(const ClassifiedSpectrum& c) {
    if (c.has_pairs()) fail(ErrKind::WrongShape, "real realizer invoked on a complex spectrum");
    return c.reals;
}
} // namespace

Realization realize_one_positive(const ClassifiedSpectrum& c,
                                 const std::optional<std::vector<Rational>>& alphas) {
    return realize_one_positive(sorted_reals(c), alphas);
}
Realization realize_prescribed_diagonal(const ClassifiedSpectrum& c, const std::vector<Rational>& diag) {
    return realize_prescribed_diagonal(sorted_reals(c), diag);
}
Realization realize_two_positive(const ClassifiedSpectrum& c, const Overrides& ov) {
    return realize_two_positive(sorted_reals(c), ov);
}
Realization realize_k_positive(const ClassifiedSpectrum& c, const Overrides& ov) {
    return realize_k_positive(sorted_reals(c), ov);
}
Realization realize_two_negative(const ClassifiedSpectrum& c, const Overrides& ov) {
    return realize_two_negative(sorted_reals(c), ov);
}
Realization realize_three_negative(const ClassifiedSpectrum& c, const Overrides& ov) {
    return realize_three_negative(sorted_reals(c), ov);
}
Realization realize_k_negative(const ClassifiedSpectrum& c, const Overrides& ov) {
    return realize_k_negative(sorted_reals(c), ov);
}

} // namespace niep
