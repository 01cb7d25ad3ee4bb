#pragma once

#include <random>
#include <vector>

#include "pamlab/pamlab.hpp"

namespace testsupport {

using namespace pamlab;

inline PamMap doubling_map() {
    return {{Rational(0), Rational(1)},
            {{{Rational(0), Rational(1, 2)}, Rational(2), Rational(0)},
             {{Rational(1, 2), Rational(1)}, Rational(2), Rational(-1)}},
            true,
            "doubling"};
}

inline PamMap rotation_half() {
    return {{Rational(0), Rational(1)},
            {{{Rational(0), Rational(1, 2)}, Rational(1), Rational(1, 2)},
             {{Rational(1, 2), Rational(1)}, Rational(1), Rational(-1, 2)}},
            true,
            "rotation by 1/2"};
}

/// Complete two-interval map with slopes 3/2 and 3; satisfies the row-sign
/// condition over {2,3}.
inline PamMap threehalves_map() {
    return {{Rational(0), Rational(1)},
            {{{Rational(0), Rational(2, 3)}, Rational(3, 2), Rational(0)},
             {{Rational(2, 3), Rational(1)}, Rational(3), Rational(-2)}},
            true,
            "3/2-map"};
}

/// Injective two-interval map with slopes 3/2 and 2/3 (mixed signs for p=2,
/// so the row-sign decider refuses it and the density bound applies).
inline PamMap injective_mixed_map() {
    return {{Rational(0), Rational(1)},
            {{{Rational(0), Rational(2, 5)}, Rational(3, 2), Rational(0)},
             {{Rational(2, 5), Rational(1)}, Rational(2, 3), Rational(1, 3)}},
            true,
            "injective 3/2-2/3"};
}

struct Rng {
    std::mt19937_64 engine;

    explicit Rng(std::uint64_t seed) : engine(seed) {}

    long pick(long lo, long hi) {
        return std::uniform_int_distribution<long>(lo, hi)(engine);
    }

    /// Nonzero rational with numerator and denominator bounded by `bound`.
    Rational rational(long bound) {
        long n = 0;
        while (n == 0) n = pick(-bound, bound);
        return Rational(n, pick(1, bound));
    }

    /// Rational in [0,1) with denominator 2^e * 3^f (small weights).
    Rational small_weight_unit(long emax = 5, long fmax = 3) {
        const Integer q = int_pow(2, pick(0, emax)) * int_pow(3, pick(0, fmax));
        const long qi = q.convert_to<long>();
        return Rational(pick(0, qi - 1), q);
    }

    /// Rational strictly inside (lo, hi).
    Rational interior(const Rational& lo, const Rational& hi, long grain = 4096) {
        const Rational t(pick(1, grain - 1), grain);
        return lo + t * (hi - lo);
    }
};

/// Random deterministic circle map whose pieces each cover [0,1) completely;
/// such maps are always escape-free.
inline PamMap random_complete_map(Rng& rng, int max_pieces = 4) {
    const int n = static_cast<int>(rng.pick(1, max_pieces));
    std::vector<Rational> cuts{0, 1};
    while (static_cast<int>(cuts.size()) < n + 1) {
        const Rational c(rng.pick(1, 23), 24);
        if (std::find(cuts.begin(), cuts.end(), c) == cuts.end()) cuts.push_back(c);
    }
    std::sort(cuts.begin(), cuts.end());
    PamMap map{{Rational(0), Rational(1)}, {}, true, "random complete"};
    for (int i = 0; i < n; ++i) {
        const Interval dom{cuts[i], cuts[i + 1]};
        const bool up = rng.pick(0, 1) == 0;
        const Rational a = (up ? Rational(1) : Rational(-1)) / dom.length();
        const Rational b = up ? -a * dom.left : -a * dom.right;
        map.pieces.push_back({dom, a, b});
    }
    return map;
}

inline StepDensity random_probability_density(Rng& rng, const Interval& support,
                                               int max_gaps = 5) {
    const int n = static_cast<int>(rng.pick(1, max_gaps));
    std::vector<Rational> cuts{support.left, support.right};
    while (static_cast<int>(cuts.size()) < n + 1) {
        const Rational c = support.left + Rational(rng.pick(1, 47), 48) * support.length();
        if (std::find(cuts.begin(), cuts.end(), c) == cuts.end()) cuts.push_back(c);
    }
    std::sort(cuts.begin(), cuts.end());
    StepDensity phi;
    phi.breakpoints = cuts;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) phi.values.emplace_back(rng.pick(0, 9));
    const Rational mass = phi.mass();
    if (mass == 0) return uniform_density(support);
    for (Rational& v : phi.values) v /= mass;
    return phi;
}

} // namespace testsupport
