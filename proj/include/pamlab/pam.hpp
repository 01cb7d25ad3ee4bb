#pragma once

#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "pamlab/interval.hpp"

namespace pamlab {

/// One affine branch x -> a*x + b on [domain.left, domain.right).
struct AffinePiece {
    Interval domain;
    Rational a;
    Rational b;

    Rational apply(const Rational& x) const { return a * x + b; }

    bool operator==(const AffinePiece& o) const = default;
};

/// A piecewise affine map. Deterministic maps have pairwise disjoint piece
/// domains covering the map domain; nondeterministic maps may overlap.
struct PamMap {
    Interval domain;
    std::vector<AffinePiece> pieces;
    bool deterministic = true;
    std::string label;

    bool operator==(const PamMap& o) const {
        return domain == o.domain && pieces == o.pieces && deterministic == o.deterministic;
    }
};

// --- exact image spans ------------------------------------------------------
//
// The image of [l, r) under x -> a*x + b is half-open in a direction that
// depends on the sign of a; these spans keep the endpoint openness explicit so
// that injectivity and escape checks stay exact.

struct ImageSpan {
    Rational lo, hi;
    bool lo_open = false, hi_open = false;
};

inline ImageSpan piece_image(const AffinePiece& p) {
    const Rational at_left  = p.apply(p.domain.left);
    const Rational at_right = p.apply(p.domain.right);
    if (p.a > 0) return {at_left, at_right, false, true};
    if (p.a < 0) return {at_right, at_left, true, false};
    return {p.b, p.b, false, false};
}

inline bool spans_intersect(const ImageSpan& s, const ImageSpan& t) {
    // widest common point range
    Rational lo = std::max(s.lo, t.lo);
    Rational hi = std::min(s.hi, t.hi);
    if (lo > hi) return false;
    if (lo < hi) return true;
    const bool lo_open = (s.lo == lo && s.lo_open) || (t.lo == lo && t.lo_open);
    const bool hi_open = (s.hi == hi && s.hi_open) || (t.hi == hi && t.hi_open);
    return !lo_open && !hi_open;
}

/// True when every point of the span stays inside [dom.left, dom.right).
inline bool span_inside(const ImageSpan& s, const Interval& dom) {
    if (s.lo < dom.left) return false;
    if (s.hi > dom.right) return false;
    if (s.hi == dom.right && !s.hi_open) return false;
    return true;
}

// --- validation -------------------------------------------------------------

struct Violation {
    enum class Kind { bad_domain, empty_piece, piece_outside_domain, overlap, coverage_gap, escape };
    Kind kind;
    std::string detail;
};

inline const char* violation_name(Violation::Kind k) {
    switch (k) {
        case Violation::Kind::bad_domain:           return "bad_domain";
        case Violation::Kind::empty_piece:          return "empty_piece";
        case Violation::Kind::piece_outside_domain: return "piece_outside_domain";
        case Violation::Kind::overlap:              return "overlap";
        case Violation::Kind::coverage_gap:         return "coverage_gap";
        case Violation::Kind::escape:               return "escape";
    }
    return "?";
}

struct ValidationReport {
    std::vector<Violation> violations;

    bool ok() const { return violations.empty(); }

    std::string str() const {
        if (ok()) return "valid";
        std::string out;
        for (const Violation& v : violations) {
            if (!out.empty()) out += "; ";
            out += std::string(violation_name(v.kind)) + ": " + v.detail;
        }
        return out;
    }
};

inline ValidationReport validate(const PamMap& map) {
    ValidationReport rep;
    const auto add = [&](Violation::Kind k, std::string d) {
        rep.violations.push_back({k, std::move(d)});
    };

    if (!map.domain.valid()) {
        add(Violation::Kind::bad_domain, "domain " + format_interval(map.domain) + " is empty");
        return rep;
    }
    if (map.pieces.empty()) {
        add(Violation::Kind::coverage_gap, "map has no pieces");
        return rep;
    }

    bool pieces_well_formed = true;
    for (std::size_t i = 0; i < map.pieces.size(); ++i) {
        const AffinePiece& p = map.pieces[i];
        const std::string tag = "piece " + std::to_string(i);
        if (!p.domain.valid()) {
            add(Violation::Kind::empty_piece, tag + " has domain " + format_interval(p.domain));
            pieces_well_formed = false;
            continue;
        }
        if (p.domain.left < map.domain.left || p.domain.right > map.domain.right)
            add(Violation::Kind::piece_outside_domain,
                tag + " domain " + format_interval(p.domain) + " not within " +
                    format_interval(map.domain));
        if (!span_inside(piece_image(p), map.domain))
            add(Violation::Kind::escape, tag + " image leaves " + format_interval(map.domain));
    }
    if (!pieces_well_formed) return rep; // coverage analysis needs nonempty pieces

    std::vector<std::size_t> order(map.pieces.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        return map.pieces[i].domain.left < map.pieces[j].domain.left;
    });

    Rational cursor = map.domain.left;
    for (std::size_t idx : order) {
        const Interval& d = map.pieces[idx].domain;
        if (d.left > cursor)
            add(Violation::Kind::coverage_gap,
                format_interval({cursor, d.left}) + " is not covered");
        else if (map.deterministic && d.left < cursor)
            add(Violation::Kind::overlap,
                "piece " + std::to_string(idx) + " overlaps an earlier piece at " +
                    format_rational(d.left));
        cursor = std::max(cursor, d.right);
    }
    if (cursor < map.domain.right)
        add(Violation::Kind::coverage_gap, format_interval({cursor, map.domain.right}) +
                                               " is not covered");
    return rep;
}

// --- evaluation -------------------------------------------------------------

/// Set of successor values; a singleton for deterministic maps.
inline std::vector<Rational> eval(const PamMap& map, const Rational& x) {
    if (!map.domain.contains(x))
        fail(errc::point_outside_domain,
             format_rational(x) + " outside " + format_interval(map.domain));
    std::vector<Rational> out;
    for (const AffinePiece& p : map.pieces)
        if (p.domain.contains(x)) out.push_back(p.apply(x));
    if (map.deterministic && out.empty())
        fail(errc::point_in_coverage_gap, "no piece contains " + format_rational(x));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

struct DetStep {
    Rational value;
    std::size_t piece;
};

inline DetStep det_step(const PamMap& map, const Rational& x) {
    if (!map.deterministic) fail(errc::map_not_deterministic, "map has overlapping pieces");
    if (!map.domain.contains(x))
        fail(errc::point_outside_domain,
             format_rational(x) + " outside " + format_interval(map.domain));
    for (std::size_t i = 0; i < map.pieces.size(); ++i)
        if (map.pieces[i].domain.contains(x)) return {map.pieces[i].apply(x), i};
    fail(errc::point_in_coverage_gap, "no piece contains " + format_rational(x));
}

// --- orbits -----------------------------------------------------------------

struct OrbitVerdict {
    enum class Kind { hit, cycle, cap_exceeded };
    Kind kind = Kind::cap_exceeded;
    std::size_t hit_step = 0;  // hit: f^hit_step(x0) == target
    std::size_t preperiod = 0; // cycle: points[preperiod + period] == points[preperiod]
    std::size_t period = 0;
};

/// Exact orbit prefix. points[i+1] = a*points[i] + b along piece_trace[i].
struct OrbitRecord {
    std::vector<Rational> points;
    std::vector<std::size_t> piece_trace;
    OrbitVerdict verdict;

    bool hit() const { return verdict.kind == OrbitVerdict::Kind::hit; }
    bool cycle() const { return verdict.kind == OrbitVerdict::Kind::cycle; }
    bool capped() const { return verdict.kind == OrbitVerdict::Kind::cap_exceeded; }

    /// The points of one full period, for cycle verdicts.
    std::vector<Rational> cycle_points() const {
        if (!cycle()) return {};
        return {points.begin() + static_cast<std::ptrdiff_t>(verdict.preperiod),
                points.begin() + static_cast<std::ptrdiff_t>(verdict.preperiod + verdict.period)};
    }
};

/// Iterates a deterministic map with exact cycle detection, stopping at the
/// first of: target hit (step 0 counts unless hit_requires_step), an exact
/// repeat of an earlier point, or `cap` applications of the map.
inline OrbitRecord iterate_orbit(const PamMap& map, const Rational& x0, std::size_t cap,
                                 const std::optional<Rational>& target = std::nullopt,
                                 bool hit_requires_step = false) {
    if (cap < 1) fail(errc::invalid_argument, "cap must be >= 1");
    OrbitRecord rec;
    std::map<Rational, std::size_t> first_seen;
    Rational x = x0;
    for (std::size_t i = 0;; ++i) {
        rec.points.push_back(x);
        if (target && x == *target && (i > 0 || !hit_requires_step)) {
            rec.verdict = {OrbitVerdict::Kind::hit, i, 0, 0};
            return rec;
        }
        auto [it, fresh] = first_seen.emplace(x, i);
        if (!fresh) {
            rec.verdict = {OrbitVerdict::Kind::cycle, 0, it->second, i - it->second};
            return rec;
        }
        if (i == cap) {
            rec.verdict = {OrbitVerdict::Kind::cap_exceeded, 0, 0, 0};
            return rec;
        }
        DetStep s = det_step(map, x);
        rec.piece_trace.push_back(s.piece);
        x = std::move(s.value);
    }
}

/// Replays a recorded trace; true iff the affine steps reproduce the points.
inline bool replay_orbit(const PamMap& map, const OrbitRecord& rec) {
    if (rec.points.empty() || rec.piece_trace.size() + 1 != rec.points.size()) return false;
    for (std::size_t i = 0; i < rec.piece_trace.size(); ++i) {
        const AffinePiece& p = map.pieces[rec.piece_trace[i]];
        if (!p.domain.contains(rec.points[i])) return false;
        if (p.apply(rec.points[i]) != rec.points[i + 1]) return false;
    }
    return true;
}

// --- breadth-first exploration for nondeterministic maps ---------------------

struct ExploreResult {
    bool found = false;
    std::size_t depth = 0;   // first level at which the target appeared
    std::size_t visited = 0; // distinct values expanded
    bool truncated = false;  // frontier cap or depth cap cut the search
};

inline ExploreResult explore_nondet(const PamMap& map, const Rational& x0, const Rational& target,
                                    std::size_t max_depth, std::size_t frontier_cap = 100000) {
    ExploreResult res;
    std::set<Rational> seen{x0};
    std::vector<Rational> frontier{x0};
    for (std::size_t depth = 0; depth <= max_depth; ++depth) {
        for (const Rational& v : frontier)
            if (v == target) {
                res.found = true;
                res.depth = depth;
                res.visited = seen.size();
                return res;
            }
        if (depth == max_depth) break;
        std::vector<Rational> next;
        for (const Rational& v : frontier) {
            if (!map.domain.contains(v)) continue; // escaped values have no successors
            for (Rational& succ : eval(map, v))
                if (seen.insert(succ).second) next.push_back(std::move(succ));
            if (next.size() > frontier_cap) {
                res.truncated = true;
                res.visited = seen.size();
                return res;
            }
        }
        frontier = std::move(next);
        if (frontier.empty()) break;
    }
    res.truncated = res.truncated || !frontier.empty();
    res.visited = seen.size();
    return res;
}

// --- structural analysis ------------------------------------------------------

struct StructureReport {
    std::vector<Rational> slopes;
    bool injective = false;
    bool complete = false;
    /// Circle notions; empty unless the domain is [0,1) and the map is a
    /// deterministic partition of it.
    std::optional<bool> continuous_on_circle;
    std::optional<Integer> degree;
};

inline StructureReport structure_report(const PamMap& map) {
    StructureReport rep;
    for (const AffinePiece& p : map.pieces) rep.slopes.push_back(p.a);

    // injective: nonzero slopes and pairwise disjoint images
    rep.injective = true;
    for (const AffinePiece& p : map.pieces)
        if (p.a == 0) rep.injective = false;
    std::vector<ImageSpan> spans;
    for (const AffinePiece& p : map.pieces) spans.push_back(piece_image(p));
    for (std::size_t i = 0; rep.injective && i < spans.size(); ++i)
        for (std::size_t j = i + 1; rep.injective && j < spans.size(); ++j)
            if (spans_intersect(spans[i], spans[j])) rep.injective = false;

    // complete: the closure of every piece image equals the closure of the domain
    rep.complete = !map.pieces.empty();
    for (const ImageSpan& s : spans)
        if (s.lo != map.domain.left || s.hi != map.domain.right) rep.complete = false;

    const bool unit_circle = map.domain.left == 0 && map.domain.right == 1;
    if (!unit_circle || !map.deterministic || !validate(map).ok()) return rep;

    // continuity mod 1 at interior breakpoints and at the wrap point
    std::vector<const AffinePiece*> ordered;
    for (const AffinePiece& p : map.pieces) ordered.push_back(&p);
    std::sort(ordered.begin(), ordered.end(),
              [](const AffinePiece* a, const AffinePiece* b) {
                  return a->domain.left < b->domain.left;
              });
    bool continuous = true;
    for (std::size_t i = 0; i + 1 < ordered.size(); ++i) {
        const Rational t = ordered[i]->domain.right;
        if (!is_integer(ordered[i]->apply(t) - ordered[i + 1]->apply(t))) continuous = false;
    }
    const Rational wrap = ordered.back()->apply(Rational(1)) - ordered.front()->apply(Rational(0));
    if (!is_integer(wrap)) continuous = false;
    rep.continuous_on_circle = continuous;

    if (continuous) {
        // lift: add integer offsets to successive pieces, then the degree is
        // F(1) - F(0)
        Rational lift_offset = 0;
        for (std::size_t i = 0; i + 1 < ordered.size(); ++i) {
            const Rational t = ordered[i]->domain.right;
            lift_offset += ordered[i]->apply(t) - ordered[i + 1]->apply(t);
        }
        const Rational deg =
            ordered.back()->apply(Rational(1)) + lift_offset - ordered.front()->apply(Rational(0));
        rep.degree = numerator(deg); // integral by the continuity check
    }
    return rep;
}

// --- affine conjugation -------------------------------------------------------

/// g = h . f . h^{-1} for h(x) = u*x + v, u != 0. For u < 0 the images of
/// half-open intervals come out open-closed; they are regularised back to
/// [.,.) form, which moves a single boundary point per piece.
inline PamMap conjugate(const PamMap& map, const Rational& u, const Rational& v) {
    if (u == 0) fail(errc::invalid_argument, "conjugation slope must be nonzero");
    const auto push = [&](const Interval& iv) -> Interval {
        const Rational a = u * iv.left + v;
        const Rational b = u * iv.right + v;
        return u > 0 ? Interval{a, b} : Interval{b, a};
    };
    PamMap g;
    g.deterministic = map.deterministic;
    g.label = map.label;
    g.domain = push(map.domain);
    for (const AffinePiece& p : map.pieces)
        g.pieces.push_back({push(p.domain), p.a, u * p.b + v * (1 - p.a)});
    return g;
}

/// Rescales the domain onto [0,1); returns the conjugated map and the h used.
struct Normalized {
    PamMap map;
    Rational u, v;
};

inline Normalized normalize_to_unit(const PamMap& map) {
    const Rational u = Rational(1) / map.domain.length();
    const Rational v = -map.domain.left * u;
    return {conjugate(map, u, v), u, v};
}

} // namespace pamlab
