#pragma once

#include <string>

namespace parampac {

/// Closed interval [lo, hi] with outward-rounded arithmetic, so every result
/// encloses the exact real result of the operation on the operands.
struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    Interval() = default;
    constexpr Interval(double point) : lo(point), hi(point) {}  // NOLINT: implicit by design of the algebra
    constexpr Interval(double l, double h) : lo(l), hi(h) {}

    double width() const { return hi - lo; }
    double mid() const { return 0.5 * (lo + hi); }
    bool contains(double x) const { return lo <= x && x <= hi; }
    bool contains_zero() const { return lo <= 0.0 && 0.0 <= hi; }
    bool operator==(const Interval&) const = default;
};

Interval operator+(const Interval& a, const Interval& b);
Interval operator-(const Interval& a, const Interval& b);
Interval operator-(const Interval& a);
Interval operator*(const Interval& a, const Interval& b);
// Throws Error(IntervalDivisionByZero) when b contains 0.
Interval operator/(const Interval& a, const Interval& b);
Interval pow(const Interval& a, unsigned exponent);
Interval hull(const Interval& a, const Interval& b);
Interval intersect(const Interval& a, const Interval& b);

std::string to_string(const Interval& iv);

}  // namespace parampac
