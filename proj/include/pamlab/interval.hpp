#pragma once

#include <optional>

#include "pamlab/rational.hpp"

namespace pamlab {

/// Left-closed right-open interval [left, right). Every interval in the
/// library has this topology; boundary points belong to the piece on their
/// right.
struct Interval {
    Rational left;
    Rational right;

    bool valid() const { return left < right; }
    bool contains(const Rational& x) const { return left <= x && x < right; }
    Rational length() const { return right - left; }

    bool operator==(const Interval& o) const = default;
};

inline std::optional<Interval> intersect(const Interval& a, const Interval& b) {
    Interval r{std::max(a.left, b.left), std::min(a.right, b.right)};
    if (!r.valid()) return std::nullopt;
    return r;
}

inline bool overlaps(const Interval& a, const Interval& b) {
    return std::max(a.left, b.left) < std::min(a.right, b.right);
}

inline std::string format_interval(const Interval& iv) {
    return "[" + format_rational(iv.left) + ", " + format_rational(iv.right) + ")";
}

} // namespace pamlab
