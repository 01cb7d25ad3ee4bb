#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <string>

#include "pamlab/errors.hpp"

namespace pamlab {

/// Exact arbitrary-precision scalars. Rational is always kept in lowest
/// terms with a positive denominator by the backend; zero is 0/1.
using Integer  = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;
using Weight   = std::int64_t;

inline Integer num(const Rational& x) { return numerator(x); }
inline Integer den(const Rational& x) { return denominator(x); }

inline bool is_integer(const Rational& x) { return denominator(x) == 1; }

inline Integer rational_floor(const Rational& x) {
    Integer q = numerator(x) / denominator(x);
    if (numerator(x) < 0 && q * denominator(x) != numerator(x)) --q;
    return q;
}

inline Integer rational_ceil(const Rational& x) { return -rational_floor(-x); }

/// Fractional part in [0, 1).
inline Rational frac_part(const Rational& x) { return x - Rational(rational_floor(x)); }

inline Integer int_pow(Integer base, unsigned long e) {
    Integer r = 1;
    while (e) {
        if (e & 1) r *= base;
        base *= base;
        e >>= 1;
    }
    return r;
}

inline Rational rational_pow(const Rational& base, long e) {
    if (e == 0) return Rational(1);
    if (base == 0) {
        if (e < 0) fail(errc::invalid_argument, "0 cannot be raised to a negative power");
        return Rational(0);
    }
    const unsigned long a = e < 0 ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
    Integer n = int_pow(numerator(base), a);
    Integer d = int_pow(denominator(base), a);
    return e < 0 ? Rational(d, n) : Rational(n, d);
}

inline double to_double(const Rational& x) { return x.convert_to<double>(); }

/// Canonical "p/q" form; the denominator is always written, even for integers.
inline std::string format_rational(const Rational& x) {
    return numerator(x).str() + "/" + denominator(x).str();
}

/// Accepts "p/q" or a bare integer "p", with an optional leading sign.
inline Rational parse_rational(const std::string& text) {
    const auto bad = [&]() -> Rational {
        fail(errc::syntax_error, "not a rational: '" + text + "'");
    };
    std::size_t begin = text.find_first_not_of(" \t");
    std::size_t end   = text.find_last_not_of(" \t");
    if (begin == std::string::npos) return bad();
    const std::string s = text.substr(begin, end - begin + 1);

    const auto is_int = [](const std::string& t) {
        if (t.empty()) return false;
        std::size_t i = (t[0] == '+' || t[0] == '-') ? 1 : 0;
        if (i == t.size()) return false;
        for (; i < t.size(); ++i)
            if (t[i] < '0' || t[i] > '9') return false;
        return true;
    };

    const std::size_t slash = s.find('/');
    try {
        if (slash == std::string::npos) {
            if (!is_int(s)) return bad();
            return Rational(Integer(s));
        }
        const std::string ns = s.substr(0, slash);
        const std::string ds = s.substr(slash + 1);
        if (!is_int(ns) || !is_int(ds)) return bad();
        Integer n(ns), d(ds);
        if (d == 0) fail(errc::syntax_error, "zero denominator: '" + text + "'");
        return Rational(n, d);
    } catch (const Error&) {
        throw;
    } catch (const std::exception&) {
        return bad();
    }
}

} // namespace pamlab
