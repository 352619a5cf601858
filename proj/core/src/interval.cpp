#include "parampac/interval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "parampac/error.hpp"

namespace parampac {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double down(double x) { return std::isfinite(x) ? std::nextafter(x, -kInf) : x; }
double up(double x) { return std::isfinite(x) ? std::nextafter(x, kInf) : x; }

// The fma / TwoSum error term gives the sign of the rounding error, so a bound
// only moves outward when the rounded result actually lies on the wrong side.
double mul_down(double a, double b) {
    const double p = a * b;
    if (!std::isfinite(p)) return p;
    return std::fma(a, b, -p) < 0.0 ? down(p) : p;
}
double mul_up(double a, double b) {
    const double p = a * b;
    if (!std::isfinite(p)) return p;
    return std::fma(a, b, -p) > 0.0 ? up(p) : p;
}

// Rounding error of a + b (Knuth's TwoSum): exact sum = s + err.
double sum_error(double a, double b, double s) {
    const double bb = s - a;
    return (a - (s - bb)) + (b - bb);
}
double add_down(double a, double b) {
    const double s = a + b;
    if (!std::isfinite(s)) return s;
    return sum_error(a, b, s) < 0.0 ? down(s) : s;
}
double add_up(double a, double b) {
    const double s = a + b;
    if (!std::isfinite(s)) return s;
    return sum_error(a, b, s) > 0.0 ? up(s) : s;
}

// 1/x with the exact quotient's side given by the residual 1 - r*x.
double recip_down(double x) {
    const double r = 1.0 / x;
    const double res = -std::fma(r, x, -1.0);  // 1 - r*x
    if (res == 0.0) return r;
    return (res > 0.0) == (x > 0.0) ? r : down(r);
}
double recip_up(double x) {
    const double r = 1.0 / x;
    const double res = -std::fma(r, x, -1.0);
    if (res == 0.0) return r;
    return (res > 0.0) == (x > 0.0) ? up(r) : r;
}

}  // namespace

Interval operator+(const Interval& a, const Interval& b) {
    return {add_down(a.lo, b.lo), add_up(a.hi, b.hi)};
}

Interval operator-(const Interval& a) { return {-a.hi, -a.lo}; }

Interval operator-(const Interval& a, const Interval& b) { return a + (-b); }

Interval operator*(const Interval& a, const Interval& b) {
    const double lo = std::min({mul_down(a.lo, b.lo), mul_down(a.lo, b.hi), mul_down(a.hi, b.lo),
                                mul_down(a.hi, b.hi)});
    const double hi = std::max({mul_up(a.lo, b.lo), mul_up(a.lo, b.hi), mul_up(a.hi, b.lo),
                                mul_up(a.hi, b.hi)});
    return {lo, hi};
}

Interval operator/(const Interval& a, const Interval& b) {
    if (b.contains_zero()) {
        throw Error(Errc::IntervalDivisionByZero,
                    "interval division by " + to_string(b) + ", which contains 0");
    }
    const double inv_lo = recip_down(b.hi);
    const double inv_hi = recip_up(b.lo);
    return a * Interval(inv_lo, inv_hi);
}

Interval pow(const Interval& a, unsigned exponent) {
    if (exponent == 0) return {1.0, 1.0};
    if (exponent == 1) return a;
    auto point_power = [exponent](double x) {
        Interval r(1.0);
        for (unsigned i = 0; i < exponent; ++i) r = r * Interval(x);
        return r;
    };
    if (exponent % 2 == 0) {
        // Even powers are monotone in |x|.
        const double abs_lo = a.contains_zero() ? 0.0 : std::min(std::fabs(a.lo), std::fabs(a.hi));
        const double abs_hi = std::max(std::fabs(a.lo), std::fabs(a.hi));
        return {point_power(abs_lo).lo, point_power(abs_hi).hi};
    }
    return {point_power(a.lo).lo, point_power(a.hi).hi};
}

Interval hull(const Interval& a, const Interval& b) {
    return {std::min(a.lo, b.lo), std::max(a.hi, b.hi)};
}

Interval intersect(const Interval& a, const Interval& b) {
    return {std::max(a.lo, b.lo), std::min(a.hi, b.hi)};
}

std::string to_string(const Interval& iv) {
    return "[" + std::to_string(iv.lo) + ", " + std::to_string(iv.hi) + "]";
}

}  // namespace parampac
