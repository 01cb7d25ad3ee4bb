#pragma once

#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "pamlab/pam.hpp"

namespace pamlab {

enum class BetaVariant { nondet, greedy, lazy };

inline const char* variant_name(BetaVariant v) {
    switch (v) {
        case BetaVariant::nondet: return "nondet";
        case BetaVariant::greedy: return "greedy";
        case BetaVariant::lazy:   return "lazy";
    }
    return "?";
}

/// Base-beta digit system for a rational non-integer beta > 1. Digits run
/// over 0..ceil(beta)-1, representable values over [0, vmax) with
/// vmax = (ceil(beta)-1)/(beta-1), and branch d acts on
/// X_d = [d/beta, (vmax+d)/beta).
struct BetaSystem {
    Rational beta;
    int top_digit = 0; // digits are 0..top_digit
    Rational vmin;     // always 0
    Rational vmax;
    std::vector<Interval> branch_intervals;
};

inline BetaSystem make_beta_system(const Rational& beta) {
    if (is_integer(beta)) fail(errc::integer_base, format_rational(beta) + " is an integer");
    if (beta <= 1) fail(errc::base_not_greater_than_one, format_rational(beta) + " <= 1");
    BetaSystem s;
    s.beta = beta;
    s.top_digit = static_cast<int>(rational_ceil(beta)) - 1;
    s.vmin = 0;
    s.vmax = Rational(s.top_digit) / (beta - 1);
    for (int d = 0; d <= s.top_digit; ++d)
        s.branch_intervals.push_back({Rational(d) / beta, (s.vmax + d) / beta});
    return s;
}

/// The three PAM presentations of the digit system. The nondeterministic map
/// keeps the overlapping X_d; the greedy map hands each overlap to the larger
/// digit, the lazy map to the smaller one.
inline PamMap build_beta_pam(const Rational& beta, BetaVariant variant) {
    const BetaSystem s = make_beta_system(beta);
    PamMap map;
    map.domain = {s.vmin, s.vmax};
    map.label = std::string(variant_name(variant)) + " " + format_rational(beta) + "-expansion";
    map.deterministic = variant != BetaVariant::nondet;
    for (int d = 0; d <= s.top_digit; ++d) {
        Interval dom = s.branch_intervals[static_cast<std::size_t>(d)];
        if (variant == BetaVariant::greedy && d < s.top_digit)
            dom.right = Rational(d + 1) / beta;
        if (variant == BetaVariant::lazy && d > 0)
            dom.left = (s.vmax + d - 1) / beta;
        map.pieces.push_back({dom, beta, Rational(-d)});
    }
    return map;
}

/// Digit stream with exact periodicity information: digits[i] for
/// i >= periodic_suffix->first repeat with period periodic_suffix->second.
struct DigitSeq {
    std::vector<int> digits;
    std::optional<std::pair<std::size_t, std::size_t>> periodic_suffix;
};

struct DigitExpansion {
    DigitSeq seq;
    std::vector<Rational> orbit; // orbit[0] = x; orbit[i+1] = beta*orbit[i] - d_i
};

namespace detail {

inline int digit_of_piece(std::size_t piece) { return static_cast<int>(piece); }

} // namespace detail

/// Greedy or lazy expansion of x to at most `depth` digits, stopping early
/// once the orbit revisits a point exactly.
inline DigitExpansion digit_stream(const BetaSystem& system, BetaVariant variant, const Rational& x,
                                   std::size_t depth) {
    if (variant == BetaVariant::nondet)
        fail(errc::variant_not_deterministic,
             "digit streams need the greedy or lazy variant");
    if (x < system.vmin || x >= system.vmax)
        fail(errc::point_outside_domain, format_rational(x) + " outside [" +
                                             format_rational(system.vmin) + ", " +
                                             format_rational(system.vmax) + ")");
    const PamMap map = build_beta_pam(system.beta, variant);
    DigitExpansion ex;
    std::map<Rational, std::size_t> first_seen;
    Rational cur = x;
    for (std::size_t i = 0; i < depth; ++i) {
        auto [it, fresh] = first_seen.emplace(cur, i);
        if (!fresh) {
            ex.seq.periodic_suffix = {it->second, i - it->second};
            ex.orbit.push_back(cur); // closing duplicate keeps |orbit| == |digits| + 1
            return ex;
        }
        ex.orbit.push_back(cur);
        const DetStep s = det_step(map, cur);
        ex.seq.digits.push_back(detail::digit_of_piece(s.piece));
        cur = s.value;
    }
    ex.orbit.push_back(cur);
    return ex;
}

struct PartialValue {
    Rational sum;
    std::pair<Rational, Rational> remainder_bounds; // (vmin, vmax) / beta^n
};

/// Exact partial sum of the first n digits and the bracket on |x - sum|.
inline PartialValue partial_value(const DigitSeq& digits, const Rational& beta, std::size_t n) {
    if (n > digits.digits.size() && !digits.periodic_suffix)
        fail(errc::invalid_argument, "not enough digits");
    const BetaSystem s = make_beta_system(beta);
    Rational sum = 0;
    for (std::size_t i = n; i-- > 0;) {
        int d;
        if (i < digits.digits.size()) {
            d = digits.digits[i];
        } else {
            const auto [start, period] = *digits.periodic_suffix;
            d = digits.digits[start + (i - start) % period];
        }
        sum = (sum + d) / beta;
    }
    const Rational q = rational_pow(beta, static_cast<long>(n));
    return {sum, {s.vmin / q, s.vmax / q}};
}

/// Exact value of an eventually periodic digit sequence: the periodic tail is
/// summed as a geometric series.
inline Rational periodic_value(const DigitSeq& digits, const Rational& beta) {
    if (!digits.periodic_suffix) fail(errc::invalid_argument, "sequence has no periodic suffix");
    const auto [start, period] = *digits.periodic_suffix;
    Rational head = 0;
    for (std::size_t i = start; i-- > 0;) head = (head + digits.digits[i]) / beta;
    Rational block = 0;
    for (std::size_t i = start + period; i-- > start;) block = (block + digits.digits[i]) / beta;
    const Rational scale = rational_pow(beta, static_cast<long>(start));
    const Rational tail = block / (1 - rational_pow(beta, -static_cast<long>(period)));
    return head + tail / scale;
}

// --- target discounted-sum 0-1 decision ---------------------------------------

struct Tds01Result {
    enum class Kind { yes, no, unknown };
    Kind kind = Kind::unknown;
    std::optional<DigitSeq> witness;        // for yes
    std::optional<std::size_t> refute_step; // for no: first greedy digit >= 2
    std::optional<int> refute_digit;
    std::size_t depth_used = 0;
};

/// Does x have a base-beta expansion using only digits 0 and 1? A 0-1
/// expansion can only be the greedy one, so the greedy stream decides: a
/// digit >= 2 refutes, exact periodicity over {0,1} certifies, anything else
/// is unknown at this depth. For beta <= 2 every x is representable and the
/// greedy witness is returned directly.
inline Tds01Result tds01_decide(const Rational& beta, const Rational& x, std::size_t depth) {
    if (is_integer(beta) || beta <= 1)
        fail(errc::base_out_of_range,
             "need a rational non-integer base > 1, got " + format_rational(beta));
    const BetaSystem s = make_beta_system(beta);
    Tds01Result res;
    res.depth_used = depth;
    DigitExpansion ex = digit_stream(s, BetaVariant::greedy, x, depth);
    if (beta <= 2) { // digits are already 0/1; representability is automatic
        res.kind = Tds01Result::Kind::yes;
        res.witness = std::move(ex.seq);
        return res;
    }
    for (std::size_t i = 0; i < ex.seq.digits.size(); ++i) {
        if (ex.seq.digits[i] >= 2) {
            res.kind = Tds01Result::Kind::no;
            res.refute_step = i;
            res.refute_digit = ex.seq.digits[i];
            return res;
        }
    }
    if (ex.seq.periodic_suffix) {
        res.kind = Tds01Result::Kind::yes;
        res.witness = std::move(ex.seq);
    }
    return res;
}

// --- greedy/lazy conjugacy -----------------------------------------------------

/// Lazy-map step that extends the top piece to its limit at vmax, so that
/// h(x) = vmax - x can be composed across the single missing boundary point.
inline Rational lazy_step_with_limit(const BetaSystem& s, const Rational& x) {
    if (x == s.vmax) return s.beta * x - s.top_digit;
    const PamMap lazy = build_beta_pam(s.beta, BetaVariant::lazy);
    return det_step(lazy, x).value;
}

/// Checks greedy(x) == h(lazy(h(x))) with h(x) = vmax - x on the given
/// sample points (interior points avoid the boundary mismatch of h).
inline bool check_greedy_lazy_conjugacy(const Rational& beta,
                                        const std::vector<Rational>& samples) {
    const BetaSystem s = make_beta_system(beta);
    const PamMap greedy = build_beta_pam(beta, BetaVariant::greedy);
    for (const Rational& x : samples) {
        if (x < s.vmin || x >= s.vmax) return false;
        const Rational lhs = det_step(greedy, x).value;
        const Rational rhs = s.vmax - lazy_step_with_limit(s, s.vmax - x);
        if (lhs != rhs) return false;
    }
    return true;
}

} // namespace pamlab
