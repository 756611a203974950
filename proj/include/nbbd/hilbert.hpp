#ifndef NBBD_HILBERT_HPP
#define NBBD_HILBERT_HPP

#include <cstddef>

#include "nbbd/interval.hpp"
#include "nbbd/rational.hpp"

namespace nbbd {

/*
 * The weighted sequence space: weights w(i) = 1/(i(i+1)), truncated inner
 * products, and certified sums of w over residue classes mod L. The class
 * sums are what turn a one-period residual into a full-space norm.
 */

inline constexpr double kDefaultTol = 1e-10;

// binary64 cannot certify class-sum widths below this.
inline constexpr double kMinClassSumTol = 1e-12;

// w(i) = 1/(i(i+1)). Rejects i < 1.
Rational weight(long i);

// Σ_{i=1..n} a_i b_i w(i), exact. Vectors must cover indices 1..n.
Rational inner_truncated(const VectorQ& a, const VectorQ& b, std::size_t n);

// s(j, L) = Σ_{m>=0} w(j + mL) as a certified interval of width <= tol.
// Partial terms are summed with outward rounding; the class tail past the
// cutoff index a is bracketed by (1/L)ln(1+1/a) <= tail <= (1/L)ln(1+1/(a-L)),
// with ln(1+x) itself bracketed by [x - x²/2, x]. Process-global cache,
// keyed by (j, L, tol); concurrent population is idempotent.
// Rejects tol outside [kMinClassSumTol, ..).
Interval class_weight_sum(long j, long L, double tol = kDefaultTol);

// Per-class tolerance used when an aggregate wants total width ~tol over L
// classes: tol/sqrt(L), floored at kMinClassSumTol.
double class_tol(long L, double tol);

// ‖r‖² for a residual of period L: Σ_{j=1..L} r_j² s(j, L). Entry j is the
// residual on the class i ≡ j (mod L); entry L means i ≡ 0.
Interval periodic_norm_sq(const VectorQ& r, double tol = kDefaultTol);

// s(L, L): the weight of the indices divisible by L.
Interval tail_term(long L, double tol = kDefaultTol);

} // namespace nbbd

#endif // NBBD_HILBERT_HPP
