#pragma once

#include "pamlab/rational.hpp"

namespace pamlab {

/// Exact dyadic number mantissa / 2^exponent, normalised so the mantissa is
/// odd or zero. Fractional parts and comparisons against 1/2 reduce to bit
/// operations, which keeps very wide scans cheap.
struct Dyadic {
    Integer mantissa;
    unsigned long exponent = 0;

    static Dyadic make(Integer m, unsigned long e) {
        Dyadic d{std::move(m), e};
        d.normalize();
        return d;
    }

    void normalize() {
        if (mantissa == 0) {
            exponent = 0;
            return;
        }
        const unsigned long tz = lsb(abs(mantissa)); // lsb refuses negative values
        const unsigned long s = std::min(tz, exponent);
        if (s > 0) {
            mantissa >>= s;
            exponent -= s;
        }
    }

    Rational to_rational() const { return Rational(mantissa, Integer(1) << exponent); }

    Dyadic plus(const Dyadic& o) const {
        const unsigned long e = std::max(exponent, o.exponent);
        return make((mantissa << (e - exponent)) + (o.mantissa << (e - o.exponent)), e);
    }

    Dyadic times_int(const Integer& k) const { return make(mantissa * k, exponent); }

    /// Multiplies by 2^k.
    Dyadic shifted_up(unsigned long k) const {
        if (k >= exponent) return make(mantissa << (k - exponent), 0);
        return make(mantissa, exponent - k);
    }

    /// Fractional part in [0, 1).
    Dyadic frac() const {
        const Integer q = Integer(1) << exponent;
        Integer r = mantissa % q;
        if (r < 0) r += q;
        return make(std::move(r), exponent);
    }

    /// frac(value) < 1/2, decided on the bits.
    bool frac_below_half() const {
        const Dyadic f = frac();
        return (f.mantissa << 1) < (Integer(1) << f.exponent);
    }
};

} // namespace pamlab
