#ifndef NBBD_INTERVAL_HPP
#define NBBD_INTERVAL_HPP

#include <cmath>
#include <limits>

#include "nbbd/rational.hpp"

namespace nbbd {

/*
 * Closed interval [lo, hi] with outward-rounded arithmetic.
 *
 * Directed rounding is emulated by a nextafter step around round-to-nearest
 * results: a correctly rounded op is within half an ulp of the true value,
 * so stepping one ulp outward always brackets it. Costs one ulp of width
 * per endpoint per operation, which is irrelevant at the widths used here.
 */
struct Interval {
    double lo = 0.0;
    double hi = 0.0;

    double mid() const { return 0.5 * (lo + hi); }
    double width() const { return hi - lo; }
    bool contains(double x) const { return lo <= x && x <= hi; }
};

inline double step_down(double x) {
    return std::nextafter(x, -std::numeric_limits<double>::infinity());
}
inline double step_up(double x) {
    return std::nextafter(x, std::numeric_limits<double>::infinity());
}

inline Interval exact_interval(double x) { return {x, x}; }

// Tight two-ulp bracket of an exact rational.
inline Interval interval_from_rational(const Rational& q) {
    const double d = q.get_d(); // rounds toward zero
    if (sgn(q) >= 0) return {d, step_up(d)};
    return {step_down(d), d};
}

inline double add_down(double x, double y) {
    if (x == 0.0) return y;
    if (y == 0.0) return x;
    return step_down(x + y);
}
inline double add_up(double x, double y) {
    if (x == 0.0) return y;
    if (y == 0.0) return x;
    return step_up(x + y);
}

inline Interval add(const Interval& a, const Interval& b) {
    return {add_down(a.lo, b.lo), add_up(a.hi, b.hi)};
}

inline Interval sub(const Interval& a, const Interval& b) {
    return {add_down(a.lo, -b.hi), add_up(a.hi, -b.lo)};
}

inline Interval mul(const Interval& a, const Interval& b) {
    if ((a.lo == 0.0 && a.hi == 0.0) || (b.lo == 0.0 && b.hi == 0.0)) return {0.0, 0.0};
    const double p1 = a.lo * b.lo, p2 = a.lo * b.hi;
    const double p3 = a.hi * b.lo, p4 = a.hi * b.hi;
    const double lo = std::fmin(std::fmin(p1, p2), std::fmin(p3, p4));
    const double hi = std::fmax(std::fmax(p1, p2), std::fmax(p3, p4));
    return {step_down(lo), step_up(hi)};
}

inline Interval widen(const Interval& a, double pad) {
    return {step_down(a.lo - pad), step_up(a.hi + pad)};
}

} // namespace nbbd

#endif // NBBD_INTERVAL_HPP
