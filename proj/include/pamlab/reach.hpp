#pragma once

#include <optional>
#include <string>
#include <vector>

#include "pamlab/padic.hpp"
#include "pamlab/pam.hpp"

namespace pamlab {

// --- coefficient matrix -------------------------------------------------------

/// entries[j][i] = ||a_i||_{p_j} over the basis primes; rank by exact
/// elimination.
struct CoeffMatrix {
    std::vector<std::vector<Weight>> entries;
    PrimeBasis basis;
    std::size_t rank = 0;
};

namespace detail {

inline std::size_t rational_rank(std::vector<std::vector<Rational>> m) {
    std::size_t rank = 0;
    const std::size_t rows = m.size();
    const std::size_t cols = rows ? m[0].size() : 0;
    for (std::size_t col = 0; col < cols && rank < rows; ++col) {
        std::size_t pivot = rank;
        while (pivot < rows && m[pivot][col] == 0) ++pivot;
        if (pivot == rows) continue;
        std::swap(m[pivot], m[rank]);
        for (std::size_t r = rank + 1; r < rows; ++r) {
            if (m[r][col] == 0) continue;
            const Rational factor = m[r][col] / m[rank][col];
            for (std::size_t c = col; c < cols; ++c) m[r][c] -= factor * m[rank][c];
        }
        ++rank;
    }
    return rank;
}

} // namespace detail

struct SignCheck {
    CoeffMatrix matrix;
    bool row_sign_ok = false;
};

/// Builds the slope-weight matrix over `basis`, extending the basis first so
/// every slope factors over it. Row j is sign-consistent when all of its
/// entries are >= 0 or all are <= 0.
inline SignCheck coeff_matrix_and_signs(const PamMap& map, const PrimeBasis& basis) {
    std::vector<Rational> slopes;
    for (const AffinePiece& p : map.pieces) {
        if (p.a == 0) fail(errc::slope_zero, "slope of a piece is zero");
        slopes.push_back(p.a);
    }
    SignCheck out;
    out.matrix.basis = extend_basis(basis, slopes);

    std::vector<std::vector<Rational>> exact;
    out.row_sign_ok = true;
    for (const Integer& p : out.matrix.basis.primes) {
        std::vector<Weight> row;
        bool has_pos = false, has_neg = false;
        for (const Rational& a : slopes) {
            const Weight w = padic_weight(a, p);
            has_pos = has_pos || w > 0;
            has_neg = has_neg || w < 0;
            row.push_back(w);
        }
        if (has_pos && has_neg) out.row_sign_ok = false;
        exact.emplace_back(row.begin(), row.end());
        out.matrix.entries.push_back(std::move(row));
    }
    out.matrix.rank = detail::rational_rank(std::move(exact));
    return out;
}

// --- verdicts -----------------------------------------------------------------

enum class ReachOutcome { reached, unreachable_cycle, unreachable_weight, unknown };

enum class UnknownReason { none, cap_exceeded, cap_below_bound };

struct ReachVerdict {
    ReachOutcome outcome = ReachOutcome::unknown;
    std::size_t step = 0; // for `reached`: y = f^step(x)
    UnknownReason unknown_reason = UnknownReason::none;
    /// Exact orbit prefix backing the verdict. For weight/unknown stops the
    /// record carries the cap_exceeded kind: it is a truncated orbit.
    OrbitRecord certificate;
    std::optional<Weight> stop_weight;   // weight that crossed the threshold
    std::optional<Weight> threshold;     // the threshold it crossed

    bool definite() const { return outcome != ReachOutcome::unknown; }
};

inline const char* outcome_name(ReachOutcome o) {
    switch (o) {
        case ReachOutcome::reached:            return "Reached";
        case ReachOutcome::unreachable_cycle:  return "UnreachableCycle";
        case ReachOutcome::unreachable_weight: return "UnreachableWeight";
        case ReachOutcome::unknown:            return "Unknown";
    }
    return "?";
}

namespace detail {

/// Working basis: primes of slopes, offsets, interval endpoints and the two
/// query points.
inline PrimeBasis working_basis(const PamMap& map, const Rational& x, const Rational& y,
                                const std::optional<PrimeBasis>& seed) {
    std::vector<Rational> values{x, y, map.domain.left, map.domain.right};
    for (const AffinePiece& p : map.pieces) {
        values.push_back(p.a);
        values.push_back(p.b);
        values.push_back(p.domain.left);
        values.push_back(p.domain.right);
    }
    if (seed) return extend_basis(*seed, values);
    return basis_for(values);
}

inline std::optional<Weight> max_weight(const std::optional<Weight>& acc, const Rational& v,
                                        const PrimeBasis& basis) {
    if (v == 0) return acc; // zero sits below every threshold
    const Weight w = *m_weight(v, basis);
    if (!acc || w > *acc) return w;
    return acc;
}

} // namespace detail

/// Sign-condition decider: sound and complete for maps whose slope-weight
/// matrix has sign-consistent rows. Iterates the exact orbit and stops at a
/// hit, an exact cycle, or the first point whose m-weight exceeds
/// max{h, ||x||_m, ||y||_m} with h = max ||b_i||_m. The cap is a safety
/// valve only; reaching it means the working basis or cap was misconfigured.
inline ReachVerdict decide_reach_weight(const PamMap& map, const Rational& x, const Rational& y,
                                        std::size_t cap,
                                        const std::optional<PrimeBasis>& basis = std::nullopt) {
    const PrimeBasis wb = detail::working_basis(map, x, y, basis);
    const SignCheck sc = coeff_matrix_and_signs(map, wb);
    if (!sc.row_sign_ok)
        fail(errc::sign_condition_violated,
             "slope weights mix signs within a row of the coefficient matrix");

    std::optional<Weight> t;
    for (const AffinePiece& p : map.pieces) t = detail::max_weight(t, p.b, wb);
    t = detail::max_weight(t, x, wb);
    t = detail::max_weight(t, y, wb);
    // t is empty only when x, y and all offsets are zero; then x == y == 0.
    const Weight threshold = t.value_or(0);

    ReachVerdict v;
    v.threshold = threshold;
    OrbitRecord& rec = v.certificate;
    std::map<Rational, std::size_t> first_seen;
    Rational cur = x;
    for (std::size_t i = 0;; ++i) {
        rec.points.push_back(cur);
        if (cur == y) {
            rec.verdict = {OrbitVerdict::Kind::hit, i, 0, 0};
            v.outcome = ReachOutcome::reached;
            v.step = i;
            return v;
        }
        auto [it, fresh] = first_seen.emplace(cur, i);
        if (!fresh) {
            rec.verdict = {OrbitVerdict::Kind::cycle, 0, it->second, i - it->second};
            v.outcome = ReachOutcome::unreachable_cycle;
            return v;
        }
        if (cur != 0) {
            const Weight w = *m_weight(cur, wb);
            if (w > threshold) {
                rec.verdict = {OrbitVerdict::Kind::cap_exceeded, 0, 0, 0};
                v.outcome = ReachOutcome::unreachable_weight;
                v.stop_weight = w;
                return v;
            }
        }
        if (i == cap) {
            rec.verdict = {OrbitVerdict::Kind::cap_exceeded, 0, 0, 0};
            v.outcome = ReachOutcome::unknown;
            v.unknown_reason = UnknownReason::cap_exceeded;
            return v;
        }
        DetStep s = det_step(map, cur);
        rec.piece_trace.push_back(s.piece);
        cur = std::move(s.value);
    }
}

/// Plain simulation: a semi-decision used as the testing baseline. Never
/// returns unreachable_weight.
inline ReachVerdict simulate_reach(const PamMap& map, const Rational& x, const Rational& y,
                                   std::size_t cap) {
    ReachVerdict v;
    v.certificate = iterate_orbit(map, x, cap, y);
    switch (v.certificate.verdict.kind) {
        case OrbitVerdict::Kind::hit:
            v.outcome = ReachOutcome::reached;
            v.step = v.certificate.verdict.hit_step;
            break;
        case OrbitVerdict::Kind::cycle:
            v.outcome = ReachOutcome::unreachable_cycle;
            break;
        case OrbitVerdict::Kind::cap_exceeded:
            v.outcome = ReachOutcome::unknown;
            v.unknown_reason = UnknownReason::cap_exceeded;
            break;
    }
    return v;
}

// --- orbit-length bound from density bounds -----------------------------------

struct PrimeBoundEntry {
    enum class Case {
        constant_weights, // both slope weights are zero for this prime
        monotone,         // same-sign row: no excursion above h can return
        power_ratio,      // |a1^alpha * a2^beta| != 1: bound via the slope-product power
        balanced          // |a1^alpha * a2^beta| == 1: bound via the expanding slope
    };
    Integer p;
    Weight w1 = 0, w2 = 0;
    Weight alpha = 0, beta = 0;
    Case kind = Case::constant_weights;
    std::optional<Weight> r_bound;
    Weight bound = 0;
    bool conservative = false;
};

struct WeightBoundReport {
    Weight h = 0;
    std::vector<PrimeBoundEntry> per_prime;
    Weight m1 = 0;
    Integer big_m;          // m^m1 when materialised
    bool truncated = false; // m^m1 would be astronomically large
    PrimeBasis basis;
};

namespace detail {

/// Largest r >= 0 with q^r <= ratio, for q > 1, ratio >= 1. Exact rational
/// powers only; no logarithms.
inline Weight largest_power_below(const Rational& q, const Rational& ratio) {
    Weight r = 0;
    Rational acc = q;
    while (acc <= ratio) {
        ++r;
        acc *= q;
    }
    return r;
}

} // namespace detail

/// Orbit-length bound for a two-piece injective map whose invariant density
/// is pinched between kmin and kmax. Produces, per prime, a bound on the
/// p-adic weights along any x -> y path, then m1 = max over primes and
/// M = m^m1: a path longer than M must revisit a point.
inline WeightBoundReport weight_bound_from_density(const PamMap& map, const Rational& kmin,
                                                   const Rational& kmax, const Rational& x,
                                                   const Rational& y,
                                                   const std::optional<PrimeBasis>& basis = std::nullopt,
                                                   unsigned long max_m_bits = 4096) {
    if (map.pieces.size() != 2) fail(errc::not_two_pieces, "the bound needs exactly two pieces");
    if (kmin <= 0 || kmin > kmax)
        fail(errc::bad_density_bounds, "need 0 < kmin <= kmax");
    if (!structure_report(map).injective)
        fail(errc::not_injective, "piece images overlap or a slope is zero");

    const Rational a1 = map.pieces[0].a;
    const Rational a2 = map.pieces[1].a;
    const Rational ratio = kmax / kmin;

    WeightBoundReport rep;
    rep.basis = detail::working_basis(map, x, y, basis);

    std::optional<Weight> h;
    for (const AffinePiece& p : map.pieces)
        if (p.b != 0) {
            const Weight w = *m_weight(p.b, rep.basis) + 1;
            if (!h || w > *h) h = w;
        }
    h = detail::max_weight(h, x, rep.basis);
    h = detail::max_weight(h, y, rep.basis);
    rep.h = h.value_or(0);

    const auto abs_rat = [](const Rational& q) { return q < 0 ? -q : q; };
    const std::optional<Weight> w_a1 = m_weight(a1, rep.basis);
    const std::optional<Weight> w_a2 = m_weight(a2, rep.basis);

    rep.m1 = rep.h;
    for (const Integer& p : rep.basis.primes) {
        PrimeBoundEntry e;
        e.p = p;
        e.w1 = padic_weight(a1, p);
        e.w2 = padic_weight(a2, p);
        if (e.w1 == 0 && e.w2 == 0) {
            e.kind = PrimeBoundEntry::Case::constant_weights;
            e.bound = rep.h;
        } else if ((e.w1 >= 0 && e.w2 >= 0) || (e.w1 <= 0 && e.w2 <= 0)) {
            // Along any path from x to y both endpoint weights are <= h, and a
            // same-sign row cannot climb above h and come back down.
            e.kind = PrimeBoundEntry::Case::monotone;
            e.bound = rep.h;
        } else {
            const Weight g = std::gcd(e.w1 < 0 ? -e.w1 : e.w1, e.w2 < 0 ? -e.w2 : e.w2);
            e.alpha = (e.w2 < 0 ? -e.w2 : e.w2) / g;
            e.beta = (e.w1 < 0 ? -e.w1 : e.w1) / g;
            const Rational q = abs_rat(rational_pow(a1, e.alpha) * rational_pow(a2, e.beta));
            if (q != 1) {
                e.kind = PrimeBoundEntry::Case::power_ratio;
                e.r_bound = detail::largest_power_below(q > 1 ? q : 1 / q, ratio);
                // No closed form composes this into a weight bound; take the
                // worst case of r blocks of (alpha + beta) steps, each step
                // moving the weight by at most |w1| + |w2|.
                e.bound = rep.h + *e.r_bound * (e.alpha + e.beta) *
                                      ((e.w1 < 0 ? -e.w1 : e.w1) + (e.w2 < 0 ? -e.w2 : e.w2));
                e.conservative = true;
            } else {
                e.kind = PrimeBoundEntry::Case::balanced;
                // The weight along a path moves by coef * w_p with
                // |coef| <= r, so the excursion is r * max(||a_s||_m, |w_p|)
                // for the expanding slope a_s.
                const bool first_expands = abs_rat(a1) > 1;
                const Rational& as = first_expands ? a1 : a2;
                const Weight wp = first_expands ? e.w1 : e.w2;
                const Weight wm = *(first_expands ? w_a1 : w_a2);
                e.r_bound = detail::largest_power_below(abs_rat(as), ratio);
                e.bound = rep.h + *e.r_bound * std::max({wm, wp, -wp, Weight(0)});
            }
        }
        rep.m1 = std::max(rep.m1, e.bound);
        rep.per_prime.push_back(std::move(e));
    }

    const unsigned long m_bits = msb(rep.basis.m) + 1;
    if (rep.m1 > 0 && static_cast<unsigned long>(rep.m1) * m_bits > max_m_bits) {
        rep.truncated = true;
        rep.big_m = 0;
    } else {
        rep.big_m = rep.m1 <= 0 ? Integer(1)
                                : int_pow(rep.basis.m, static_cast<unsigned long>(rep.m1));
    }
    return rep;
}

/// Density-bounded decider: simulate at most min(M, cap) steps; exhausting M
/// without a hit proves unreachability, exhausting only the cap does not.
inline ReachVerdict decide_reach_bounded(const PamMap& map, const Rational& kmin,
                                         const Rational& kmax, const Rational& x, const Rational& y,
                                         std::size_t cap,
                                         const std::optional<PrimeBasis>& basis = std::nullopt) {
    const WeightBoundReport rep = weight_bound_from_density(map, kmin, kmax, x, y, basis);
    const bool m_fits = !rep.truncated && rep.big_m <= cap;
    const std::size_t steps =
        m_fits ? rep.big_m.convert_to<std::size_t>() : cap;

    ReachVerdict v = simulate_reach(map, x, y, std::max<std::size_t>(steps, 1));
    if (v.outcome == ReachOutcome::unknown) {
        if (m_fits) {
            v.outcome = ReachOutcome::unreachable_weight;
            v.unknown_reason = UnknownReason::none;
            v.threshold = rep.m1;
        } else {
            v.unknown_reason = UnknownReason::cap_below_bound;
        }
    }
    return v;
}

} // namespace pamlab
