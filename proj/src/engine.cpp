#include "niep/engine.hpp"

#include <algorithm>
#include <cmath>

#include "niep/error.hpp"

namespace niep {

std::size_t Skeleton::slot_index(const ParamKey& k) const {
    for (std::size_t i = 0; i < slots.size(); ++i)
        if (slots[i].key == k) return i;
    fail(ErrKind::Input, "unknown parameter " + k.name());
}

Matrix Skeleton::build_A(const std::vector<Rational>& values) const {
    Matrix A = A_fixed;
    for (const Placement& p : a_placements)
        A(static_cast<std::size_t>(p.row - 1), static_cast<std::size_t>(p.col - 1)) +=
            ExactScalar(p.coef * values[p.slot]);
    return A;
}

UnitLower Skeleton::build_L(const std::vector<Rational>& values) const {
    UnitLower L = L_fixed;
    for (std::size_t s = 0; s < slots.size(); ++s) {
        if (slots[s].key.kind != ParamKey::Kind::LEntry) continue;
        L.set(static_cast<std::size_t>(slots[s].key.row - 1), static_cast<std::size_t>(slots[s].key.col - 1),
              ExactScalar(values[s]));
    }
    return L;
}

Matrix Skeleton::build_C(const std::vector<Rational>& values) const {
    return similarity_transform(build_L(values), build_A(values));
}

namespace {

struct Quad {
    // entry value as a*t^2 + b*t + c for slot offset t around the current point
    Rational a, b, c;
};

// per-entry quadratic coefficients in one slot, holding the others fixed
std::vector<Quad> probe(const Skeleton& sk, std::vector<Rational> vals, std::size_t s) {
    Matrix c0 = sk.build_C(vals);
    vals[s] += 1;
    Matrix c1 = sk.build_C(vals);
    vals[s] += 1;
    Matrix c2 = sk.build_C(vals);
    const std::size_t n = sk.n;
    std::vector<Quad> out(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            const Rational v0 = c0(i, j).real(), v1 = c1(i, j).real(), v2 = c2(i, j).real();
            Quad q;
            q.a = (v2 - 2 * v1 + v0) / 2;
            q.b = v1 - v0 - q.a;
            q.c = v0;
            out[i * n + j] = q;
        }
    return out;
}

bool verify(const Skeleton& sk, const std::vector<Rational>& vals, const Rational& tol, Matrix* C_out) {
    Matrix C = sk.build_C(vals); // throws ImaginaryResidue on broken patterns
    bool ok = is_nonnegative(C, tol).ok;
    if (C_out) *C_out = C;
    return ok;
}

// (violation count, total magnitude) for ranking infeasible points
std::pair<int, double> violation_score(const Skeleton& sk, const std::vector<Rational>& vals,
                                       const Rational& tol) {
    Matrix C = sk.build_C(vals);
    int cnt = 0;
    double mag = 0;
    for (std::size_t i = 0; i < sk.n; ++i)
        for (std::size_t j = 0; j < sk.n; ++j) {
            const Rational& v = C(i, j).real();
            if (v < -tol) {
                ++cnt;
                mag += -to_double(v);
            }
        }
    return {cnt, mag};
}

Rational clamp_to_box(const Rational& v, const SlotBox& b) {
    Rational r = v;
    if (b.lo && r < *b.lo) r = *b.lo;
    if (b.hi && r > *b.hi) r = *b.hi;
    return r;
}

// candidate grid inside the box (clipped around the current value when a
// side is unbounded), 9 points, deterministic
std::vector<Rational> grid_points(const SlotBox& b, const Rational& current) {
    Rational lo = b.lo ? *b.lo : current - 4;
    Rational hi = b.hi ? *b.hi : current + 4;
    if (lo > hi) std::swap(lo, hi);
    std::vector<Rational> pts;
    if (lo == hi) {
        pts.push_back(lo);
        return pts;
    }
    for (int k = 0; k <= 8; ++k) pts.push_back(lo + (hi - lo) * k / 8);
    return pts;
}

} // namespace

ResolveResult resolve(const Skeleton& sk, const std::map<ParamKey, Rational>& pinned,
                      const ResolveOptions& opt) {
    const std::size_t d = sk.slots.size();
    ResolveResult rr;
    rr.values.resize(d);
    rr.boxes.resize(d);

    for (std::size_t s = 0; s < d; ++s) {
        const Slot& sl = sk.slots[s];
        rr.boxes[s].lo = sl.lower;
        rr.boxes[s].hi = sl.upper;
        rr.values[s] = sl.seed;
        if (auto it = pinned.find(sl.key); it != pinned.end()) {
            rr.values[s] = it->second;
            rr.boxes[s] = {it->second, it->second, true};
        } else if (sl.lower && rr.values[s] < *sl.lower) {
            rr.values[s] = *sl.lower;
        }
    }
    for (const auto& [key, val] : pinned) sk.slot_index(key); // reject unknown keys

    std::vector<std::size_t> free_slots;
    for (std::size_t s = 0; s < d; ++s)
        if (!rr.boxes[s].pinned) free_slots.push_back(s);

    // ---- exact affine propagation + selection + verification rounds ----
    for (int round = 0; round < opt.propagation_rounds; ++round) {
        bool tightened = false;
        for (std::size_t s : free_slots) {
            std::vector<Quad> qs = probe(sk, rr.values, s);
            SlotBox& box = rr.boxes[s];
            for (const Quad& q : qs) {
                if (q.a != 0 || q.b == 0) continue; // quadratic or constant: verify later
                // q.b * t + q.c >= -tol  with slot = current + t
                Rational bound = rr.values[s] + (-q.c - opt.tol) / q.b;
                if (q.b > 0) {
                    if (!box.lo || bound > *box.lo) {
                        box.lo = bound;
                        tightened = true;
                    }
                } else {
                    if (!box.hi || bound < *box.hi) {
                        box.hi = bound;
                        tightened = true;
                    }
                }
            }
            if (box.lo && box.hi && *box.lo > *box.hi) {
                // transient bounds can over-tighten; collapse toward the
                // lower end and let verification decide
                rr.notes.push_back("interval for " + sk.slots[s].key.name() + " emptied during tightening");
                box.hi = box.lo;
            }
            // selection for this slot
            const Slot& sl = sk.slots[s];
            Rational pickv = rr.values[s];
            if (sl.pick == Slot::Pick::LowerEnd) {
                pickv = box.lo ? *box.lo : clamp_to_box(sl.seed, box);
            } else {
                if (box.lo && box.hi)
                    pickv = (*box.lo + *box.hi) / 2;
                else if (box.lo)
                    pickv = std::max(sl.seed, *box.lo);
                else if (box.hi)
                    pickv = std::min(sl.seed, *box.hi);
            }
            if (pickv != rr.values[s]) {
                rr.values[s] = pickv;
                tightened = true;
            }
        }
        if (verify(sk, rr.values, opt.tol, nullptr)) {
            rr.A = sk.build_A(rr.values);
            rr.L = sk.build_L(rr.values);
            rr.C = sk.build_C(rr.values);
            return rr;
        }
        if (!tightened) break;
    }

    // ---- quadratic refinement: slots that appear squared in a violated
    // entry get a rational interior point of the (approximate) root interval
    for (int attempt = 0; attempt < 2 && !free_slots.empty(); ++attempt) {
        bool changed = false;
        for (std::size_t s : free_slots) {
            std::vector<Quad> qs = probe(sk, rr.values, s);
            double lo = rr.boxes[s].lo ? to_double(*rr.boxes[s].lo) : -1e18;
            double hi = rr.boxes[s].hi ? to_double(*rr.boxes[s].hi) : 1e18;
            bool narrowed = false;
            for (const Quad& q : qs) {
                if (q.a == 0) continue;
                // want a*t^2 + b*t + c >= 0 on the chosen point
                double a = to_double(q.a), b = to_double(q.b), c = to_double(q.c);
                double disc = b * b - 4 * a * c;
                if (a < 0) {
                    if (disc < 0) fail(ErrKind::EmptyInterval,
                                       "negative discriminant: no value of " + sk.slots[s].key.name() +
                                           " makes the construction nonnegative");
                    double r1 = (-b + std::sqrt(disc)) / (2 * a);
                    double r2 = (-b - std::sqrt(disc)) / (2 * a);
                    if (r1 > r2) std::swap(r1, r2);
                    double v = to_double(rr.values[s]);
                    lo = std::max(lo, v + r1);
                    hi = std::min(hi, v + r2);
                    narrowed = true;
                }
            }
            if (!narrowed || lo > hi) continue;
            double mid = (lo + hi) / 2;
            double width = std::max(hi - lo, 1e-9);
            Rational cand = rationalize(mid, width / 16);
            cand = clamp_to_box(cand, rr.boxes[s]);
            if (cand != rr.values[s]) {
                rr.values[s] = cand;
                changed = true;
            }
        }
        if (changed && verify(sk, rr.values, opt.tol, nullptr)) {
            rr.A = sk.build_A(rr.values);
            rr.L = sk.build_L(rr.values);
            rr.C = sk.build_C(rr.values);
            rr.notes.push_back("quadratic refinement applied");
            return rr;
        }
        if (!changed) break;
    }

    // ---- grid search, lowest-index feasible cell wins ----
    const std::size_t dim = free_slots.size();
    if (dim == 0)
        fail(ErrKind::InfeasibleParam, "pinned parameters leave a negative entry in C");

    std::vector<std::vector<Rational>> cands(dim);
    for (std::size_t k = 0; k < dim; ++k) cands[k] = grid_points(rr.boxes[free_slots[k]], rr.values[free_slots[k]]);

    auto grid_scan = [&](std::vector<Rational>& best_point, std::pair<int, double>& best_score) -> bool {
        std::vector<std::size_t> idx(dim, 0);
        while (true) {
            std::vector<Rational> vals = rr.values;
            for (std::size_t k = 0; k < dim; ++k) vals[free_slots[k]] = cands[k][idx[k]];
            auto score = violation_score(sk, vals, opt.tol);
            if (score.first == 0) {
                rr.values = vals;
                return true;
            }
            if (score < best_score) {
                best_score = score;
                best_point = vals;
            }
            std::size_t k = 0;
            while (k < dim && ++idx[k] == cands[k].size()) {
                idx[k] = 0;
                ++k;
            }
            if (k == dim) return false;
        }
    };

    if (static_cast<int>(dim) <= opt.max_grid_dims) {
        std::vector<Rational> best_point = rr.values;
        std::pair<int, double> best_score{1 << 20, 1e300};
        if (grid_scan(best_point, best_score)) {
            rr.notes.push_back("grid search");
        } else {
            // one refinement pass around the best cell with half spacing
            for (std::size_t k = 0; k < dim; ++k) {
                const Rational& c = best_point[free_slots[k]];
                Rational lo = rr.boxes[free_slots[k]].lo ? *rr.boxes[free_slots[k]].lo : c - 4;
                Rational hi = rr.boxes[free_slots[k]].hi ? *rr.boxes[free_slots[k]].hi : c + 4;
                Rational half = (hi - lo) / 4;
                std::vector<Rational> pts;
                for (int t = 0; t <= 8; ++t) {
                    Rational v = c - half + half * t / 4;
                    if (v < lo) v = lo;
                    if (v > hi) v = hi;
                    pts.push_back(v);
                }
                pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
                cands[k] = pts;
            }
            rr.values = best_point;
            if (grid_scan(best_point, best_score))
                rr.notes.push_back("grid search (refined)");
            else
                fail(ErrKind::MethodInapplicable, "no feasible parameters found by grid search");
        }
    } else {
        // coordinate descent from the current point, deterministic
        std::vector<Rational> cur = rr.values;
        auto cur_score = violation_score(sk, cur, opt.tol);
        for (int it = 0; it < opt.descent_iterations && cur_score.first > 0; ++it) {
            bool improved = false;
            for (std::size_t k = 0; k < dim; ++k) {
                std::vector<Rational> pts = grid_points(rr.boxes[free_slots[k]], cur[free_slots[k]]);
                for (const Rational& p : pts) {
                    std::vector<Rational> vals = cur;
                    vals[free_slots[k]] = p;
                    auto sc = violation_score(sk, vals, opt.tol);
                    if (sc < cur_score) {
                        cur_score = sc;
                        cur = vals;
                        improved = true;
                    }
                }
            }
            if (!improved) break;
        }
        if (cur_score.first != 0)
            fail(ErrKind::MethodInapplicable, "no feasible parameters found by coordinate descent");
        rr.values = cur;
        rr.notes.push_back("coordinate descent");
    }

    rr.A = sk.build_A(rr.values);
    rr.L = sk.build_L(rr.values);
    rr.C = sk.build_C(rr.values);
    return rr;
}

std::vector<CertLine> interval_certificate(const Skeleton& sk, const ResolveResult& rr) {
    std::vector<CertLine> out;
    for (std::size_t s = 0; s < sk.slots.size(); ++s) {
        const SlotBox& b = rr.boxes[s];
        const Rational& v = rr.values[s];
        std::string desc = sk.slots[s].key.name() + " = " + format_rational(v);
        Rational margin(0);
        bool have = false;
        if (b.lo) {
            desc += ", >= " + format_rational(*b.lo);
            margin = v - *b.lo;
            have = true;
        }
        if (b.hi) {
            desc += ", <= " + format_rational(*b.hi);
            Rational m2 = *b.hi - v;
            margin = have ? std::min(margin, m2) : m2;
            have = true;
        }
        if (!have) margin = 0;
        out.push_back({desc, margin});
    }
    // entrywise witness
    Rational mn;
    bool first = true;
    for (std::size_t i = 0; i < rr.C.size(); ++i)
        for (std::size_t j = 0; j < rr.C.size(); ++j) {
            const Rational& v = rr.C(i, j).real();
            if (first || v < mn) {
                mn = v;
                first = false;
            }
        }
    if (!first) out.push_back({"C >= 0 entrywise, min entry", mn});
    return out;
}

} // namespace niep
