#pragma once

#include <functional>
#include <memory>
#include <vector>

#include "pamlab/dyadic.hpp"
#include "pamlab/interval.hpp"
#include "pamlab/pam.hpp"

namespace pamlab {

// --- the sparse dyadic alpha and its scan ---------------------------------------

/// Exponent sequence 1, 3, 11, 2059, ... (each term is 2^previous + previous)
/// and the partial sum sum_{j<=i} 2^(-delta_j). The next term after 2059 has
/// about 2^2059 bits, far beyond any storable mantissa, so i is capped at 4.
struct AlphaPartial {
    std::vector<unsigned long> delta;
    Dyadic value;
};

inline AlphaPartial alpha_partial(int i) {
    if (i < 1) fail(errc::invalid_argument, "need i >= 1");
    if (i > 4)
        fail(errc::precision_overflow,
             "the 5th exponent is 2^2059 + 2059; its mantissa is not storable");
    AlphaPartial out;
    out.delta = {1};
    while (out.delta.size() < static_cast<std::size_t>(i)) {
        const unsigned long d = out.delta.back();
        out.delta.push_back((1ul << d) + d); // safe: d <= 11 here
    }
    Integer mant = 0;
    const unsigned long top = out.delta.back();
    for (unsigned long d : out.delta) mant += Integer(1) << (top - d);
    out.value = Dyadic::make(std::move(mant), top);
    return out;
}

struct ScanRow {
    unsigned long n;
    Rational value; // {2^n * n * alpha_i}, exact
    bool passes;    // value < 1/2
};

/// Exact scan of {2^n * n * alpha_i} for 0 <= n <= n_max. The truncation to
/// alpha_i is only equivalent to the full sum for n <= delta_i, so larger
/// ranges are refused rather than silently computed.
inline std::vector<ScanRow> theorem5_scan(unsigned long n_max, int i) {
    const AlphaPartial a = alpha_partial(i);
    if (n_max > a.delta.back())
        fail(errc::range_exceeds_delta,
             "n_max " + std::to_string(n_max) + " exceeds delta_" + std::to_string(i) + " = " +
                 std::to_string(a.delta.back()));
    std::vector<ScanRow> rows;
    rows.reserve(n_max + 1);
    for (unsigned long n = 0; n <= n_max; ++n) {
        const Dyadic v = a.value.times_int(Integer(n)).shifted_up(n).frac();
        rows.push_back({n, v.to_rational(), v.frac_below_half()});
    }
    return rows;
}

// --- dynamic intervals and hitting counters --------------------------------------

/// Shift exponent k(n): a named closed form or an explicit table.
struct ShiftSchedule {
    enum class Kind { constant, n_minus_one, linear, custom };
    Kind kind = Kind::constant;
    unsigned long c = 0;               // for constant
    std::vector<unsigned long> values; // for custom, 1-based: values[n-1]

    unsigned long at(unsigned long n) const {
        switch (kind) {
            case Kind::constant:    return c;
            case Kind::n_minus_one: return n - 1;
            case Kind::linear:      return n;
            case Kind::custom:
                if (n < 1 || n > values.size())
                    fail(errc::invalid_argument, "schedule not defined at " + std::to_string(n));
                return values[n - 1];
        }
        return 0;
    }

    static ShiftSchedule constant(unsigned long c) { return {Kind::constant, c, {}}; }
    static ShiftSchedule n_minus_one() { return {Kind::n_minus_one, 0, {}}; }
    static ShiftSchedule linear() { return {Kind::linear, 0, {}}; }
    static ShiftSchedule custom(std::vector<unsigned long> v) {
        for (std::size_t j = 1; j < v.size(); ++j)
            if (v[j] < v[j - 1]) fail(errc::invalid_argument, "shift schedule must be nondecreasing");
        return {Kind::custom, 0, std::move(v)};
    }
};

/// I(n) = union over j < p^k(n) of (I + j) / p^k(n): p^k(n) shrunken
/// translates of the base interval, tiling [0,1) with total length |I|.
struct DynamicInterval {
    Interval base; // within [0,1)
    Integer p = 2;
    ShiftSchedule schedule;
};

inline DynamicInterval make_dynamic_interval(Interval base, Integer p, ShiftSchedule schedule) {
    if (!base.valid() || base.left < 0 || base.right > 1)
        fail(errc::invalid_argument, "base interval must sit inside [0,1)");
    if (p < 2) fail(errc::invalid_argument, "p must be >= 2");
    return {std::move(base), std::move(p), std::move(schedule)};
}

/// Translates of the base for a fixed exponent; only usable for small k.
inline std::vector<Interval> dynamic_interval_at(const DynamicInterval& di, unsigned long k,
                                                 unsigned long enumeration_cap = 1u << 20) {
    const Integer count = int_pow(di.p, k);
    if (count > enumeration_cap)
        fail(errc::enumeration_too_large, "p^k = " + count.str() + " translates");
    std::vector<Interval> out;
    for (Integer j = 0; j < count; ++j)
        out.push_back({(di.base.left + j) / Rational(count), (di.base.right + j) / Rational(count)});
    return out;
}

using SequenceGen = std::function<Rational(unsigned long)>; // 1-based index

struct HitReport {
    unsigned long n = 0;
    unsigned long f_dynamic = 0;           // |{i <= n : x(i) in I(i)}|
    unsigned long f_static_on_shifted = 0; // |{i <= n : {p^k(i) x(i)} in I}|
    bool equal = false;
};

struct HitRow {
    unsigned long i;
    Rational x;
    unsigned long k;
    bool in_dynamic;
    bool in_static;
};

/// Counts both sides of the shift identity independently: membership in I(i)
/// goes through the unique candidate translate (I + j)/p^k with
/// j = floor(p^k x), membership of the shifted point through the fractional
/// part. Their equality is asserted by the caller, not assumed here.
inline HitReport dynamic_hit_frequency(const SequenceGen& gen, const DynamicInterval& di,
                                       unsigned long n, std::vector<HitRow>* rows = nullptr) {
    HitReport rep;
    rep.n = n;
    for (unsigned long i = 1; i <= n; ++i) {
        const Rational x = gen(i);
        if (x < 0 || x >= 1) fail(errc::point_outside_domain, "generator left [0,1)");
        const unsigned long k = di.schedule.at(i);
        const Integer scale = int_pow(di.p, k);
        const Rational scaled = x * Rational(scale);
        const Integer j = rational_floor(scaled);

        // translates are disjoint, so only the j-th can contain x
        const bool in_dynamic = (di.base.left + j) <= scaled && scaled < (di.base.right + j);
        const bool in_static = di.base.contains(frac_part(scaled));
        if (in_dynamic) ++rep.f_dynamic;
        if (in_static) ++rep.f_static_on_shifted;
        if (rows) rows->push_back({i, x, k, in_dynamic, in_static});
    }
    rep.equal = rep.f_dynamic == rep.f_static_on_shifted;
    return rep;
}

// --- sequence generators -----------------------------------------------------------

/// x(n) = {n * theta}.
inline SequenceGen multiples_generator(const Rational& theta) {
    return [theta](unsigned long n) { return frac_part(Rational(n) * theta); };
}

/// {(3/2)^n} = (3^n mod 2^n) / 2^n, exactly.
inline Rational mahler_fraction(unsigned long n, unsigned long cap = 1000000) {
    if (n < 1) fail(errc::invalid_argument, "need n >= 1");
    if (n > cap)
        fail(errc::cap_exceeded, "n = " + std::to_string(n) + " exceeds the cap " +
                                     std::to_string(cap));
    const Integer q = Integer(1) << n;
    return Rational(powm(Integer(3), n, q), q);
}

inline SequenceGen mahler_generator(unsigned long cap = 1000000) {
    return [cap](unsigned long n) { return mahler_fraction(n, cap); };
}

/// x(n) = f^n(x0) for a deterministic map on [0,1); points are memoised so
/// the generator can be called in any order.
inline SequenceGen orbit_generator(PamMap map, Rational x0) {
    auto cache = std::make_shared<std::vector<Rational>>(1, std::move(x0));
    return [map = std::move(map), cache](unsigned long n) {
        while (cache->size() <= n) cache->push_back(det_step(map, cache->back()).value);
        return (*cache)[n];
    };
}

// --- equidistribution summary --------------------------------------------------------

/// Star discrepancy restricted to dyadic anchors j/2^level: the largest
/// deviation |count([0, j/2^level)) / n - j/2^level|, as an exact rational.
/// An experimental readout, not a certified discrepancy bound.
inline Rational dyadic_star_discrepancy(std::span<const Rational> points, unsigned level) {
    if (points.empty()) fail(errc::invalid_argument, "no points");
    const unsigned long bins = 1ul << level;
    std::vector<unsigned long> counts(bins, 0);
    for (const Rational& x : points) {
        if (x < 0 || x >= 1) fail(errc::point_outside_domain, "points must lie in [0,1)");
        ++counts[rational_floor(x * bins).convert_to<unsigned long>()];
    }
    Rational worst = 0;
    unsigned long acc = 0;
    for (unsigned long j = 1; j <= bins; ++j) {
        acc += counts[j - 1];
        Rational dev = Rational(acc, points.size()) - Rational(j, bins);
        if (dev < 0) dev = -dev;
        if (dev > worst) worst = dev;
    }
    return worst;
}

} // namespace pamlab
