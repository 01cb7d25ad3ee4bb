#pragma once

#include <span>
#include <vector>

#include "pamlab/pam.hpp"

namespace pamlab {

/// Piecewise-constant density: values[i] on [breakpoints[i], breakpoints[i+1]).
/// The class is closed under affine preimages, so transfer iteration stays
/// exact.
struct StepDensity {
    std::vector<Rational> breakpoints; // strictly ascending, size = values.size() + 1
    std::vector<Rational> values;

    bool well_formed() const {
        if (breakpoints.size() != values.size() + 1 || values.empty()) return false;
        for (std::size_t i = 0; i + 1 < breakpoints.size(); ++i)
            if (!(breakpoints[i] < breakpoints[i + 1])) return false;
        return true;
    }

    Rational mass() const {
        Rational m = 0;
        for (std::size_t i = 0; i < values.size(); ++i)
            m += values[i] * (breakpoints[i + 1] - breakpoints[i]);
        return m;
    }

    /// Density value at x; zero outside the support.
    Rational at(const Rational& x) const {
        if (x < breakpoints.front() || x >= breakpoints.back()) return 0;
        std::size_t lo = 0, hi = breakpoints.size() - 1;
        while (hi - lo > 1) {
            const std::size_t mid = (lo + hi) / 2;
            (breakpoints[mid] <= x ? lo : hi) = mid;
        }
        return values[lo];
    }
};

inline StepDensity uniform_density(const Interval& support) {
    return {{support.left, support.right}, {Rational(1) / support.length()}};
}

/// Merges adjacent gaps that carry the same value.
inline StepDensity merge_equal(const StepDensity& phi) {
    StepDensity out;
    out.breakpoints.push_back(phi.breakpoints.front());
    for (std::size_t i = 0; i < phi.values.size(); ++i) {
        if (!out.values.empty() && out.values.back() == phi.values[i]) {
            out.breakpoints.back() = phi.breakpoints[i + 1];
        } else {
            out.values.push_back(phi.values[i]);
            out.breakpoints.push_back(phi.breakpoints[i + 1]);
        }
    }
    return out;
}

struct DensityExtrema {
    Rational min, max;
};

inline DensityExtrema density_extrema(const StepDensity& phi) {
    const StepDensity m = merge_equal(phi);
    DensityExtrema e{m.values.front(), m.values.front()};
    for (const Rational& v : m.values) {
        if (v < e.min) e.min = v;
        if (v > e.max) e.max = v;
    }
    return e;
}

/// Exact L1 distance over the common refinement of the two supports.
inline Rational l1_distance(const StepDensity& a, const StepDensity& b) {
    std::vector<Rational> cuts;
    cuts.insert(cuts.end(), a.breakpoints.begin(), a.breakpoints.end());
    cuts.insert(cuts.end(), b.breakpoints.begin(), b.breakpoints.end());
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    Rational dist = 0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const Rational mid = (cuts[i] + cuts[i + 1]) / 2;
        const Rational d = a.at(mid) - b.at(mid);
        dist += (d < 0 ? -d : d) * (cuts[i + 1] - cuts[i]);
    }
    return dist;
}

inline bool same_density(const StepDensity& a, const StepDensity& b) {
    return l1_distance(a, b) == 0;
}

/// One application of the transfer operator: each branch pushes its part of
/// phi forward, scaled by 1/|slope|, and the branch contributions are summed
/// on the union of all pushed breakpoints.
inline StepDensity transfer_once(const PamMap& map, const StepDensity& phi) {
    if (!map.deterministic) fail(errc::map_not_deterministic, "transfer needs a deterministic map");
    if (!phi.well_formed()) fail(errc::invalid_argument, "malformed density");
    if (phi.breakpoints.front() < map.domain.left || phi.breakpoints.back() > map.domain.right)
        fail(errc::density_outside_domain, "density support exceeds the map domain");

    struct Segment {
        Rational lo, hi, value;
    };
    std::vector<std::vector<Segment>> branches; // per piece, sorted by lo
    std::vector<Rational> cuts;

    for (const AffinePiece& p : map.pieces) {
        if (p.a == 0) fail(errc::slope_zero, "transfer is undefined for a zero slope");
        std::vector<Segment> segs;
        const Rational inv = Rational(1) / (p.a < 0 ? -p.a : p.a);
        for (std::size_t i = 0; i < phi.values.size(); ++i) {
            const Rational lo = std::max(phi.breakpoints[i], p.domain.left);
            const Rational hi = std::min(phi.breakpoints[i + 1], p.domain.right);
            if (!(lo < hi) || phi.values[i] == 0) continue;
            const Rational u = p.apply(lo);
            const Rational v = p.apply(hi);
            segs.push_back({std::min(u, v), std::max(u, v), phi.values[i] * inv});
        }
        std::sort(segs.begin(), segs.end(),
                  [](const Segment& s, const Segment& t) { return s.lo < t.lo; });
        for (const Segment& s : segs) {
            cuts.push_back(s.lo);
            cuts.push_back(s.hi);
        }
        branches.push_back(std::move(segs));
    }

    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    if (cuts.size() < 2) return {{map.domain.left, map.domain.right}, {Rational(0)}};

    StepDensity out;
    out.breakpoints = cuts;
    out.values.assign(cuts.size() - 1, Rational(0));
    for (const std::vector<Segment>& segs : branches) {
        // each branch's segments are disjoint, so walk them in lockstep
        std::size_t si = 0;
        for (std::size_t g = 0; g < out.values.size() && si < segs.size(); ++g) {
            while (si < segs.size() && segs[si].hi <= cuts[g]) ++si;
            if (si == segs.size()) break;
            if (segs[si].lo <= cuts[g] && cuts[g + 1] <= segs[si].hi)
                out.values[g] += segs[si].value;
        }
    }
    return merge_equal(out);
}

struct TransferRun {
    StepDensity density;
    std::vector<Rational> l1_steps; // exact L1 distance between successive iterates
    std::size_t steps_done = 0;
    bool stopped_early = false; // breakpoint count exceeded merge_cap
};

inline TransferRun iterate_transfer(const PamMap& map, const StepDensity& phi0, std::size_t steps,
                                    std::size_t merge_cap = 100000) {
    TransferRun run;
    run.density = merge_equal(phi0);
    for (std::size_t i = 0; i < steps; ++i) {
        if (run.density.breakpoints.size() > merge_cap) {
            run.stopped_early = true;
            break;
        }
        StepDensity next = transfer_once(map, run.density);
        run.l1_steps.push_back(l1_distance(next, run.density));
        run.density = std::move(next);
        ++run.steps_done;
    }
    return run;
}

// --- empirical statistics -------------------------------------------------------

struct EmpiricalDistribution {
    std::vector<Interval> bins;
    std::vector<std::size_t> counts;
    std::size_t n = 0;

    Rational frequency(std::size_t bin) const {
        if (n == 0) return 0;
        return Rational(counts[bin], n);
    }
};

inline EmpiricalDistribution empirical_histogram(std::span<const Rational> points,
                                                 std::vector<Interval> bins) {
    EmpiricalDistribution d;
    d.counts.assign(bins.size(), 0);
    d.bins = std::move(bins);
    d.n = points.size();
    for (const Rational& x : points)
        for (std::size_t i = 0; i < d.bins.size(); ++i)
            if (d.bins[i].contains(x)) ++d.counts[i];
    return d;
}

/// Histogram of an orbit record. Cycle verdicts drop the closing duplicate
/// point, so a pure cycle contributes each of its points exactly once.
inline EmpiricalDistribution empirical_histogram(const OrbitRecord& orbit,
                                                 std::vector<Interval> bins) {
    std::span<const Rational> pts(orbit.points);
    if (orbit.cycle()) pts = pts.first(pts.size() - 1);
    return empirical_histogram(pts, std::move(bins));
}

/// Running counter F(n) = |{i <= n : points[i] in iv}| for every prefix.
inline std::vector<std::size_t> running_hits(std::span<const Rational> points, const Interval& iv) {
    std::vector<std::size_t> out;
    out.reserve(points.size());
    std::size_t c = 0;
    for (const Rational& x : points) {
        if (iv.contains(x)) ++c;
        out.push_back(c);
    }
    return out;
}

} // namespace pamlab
