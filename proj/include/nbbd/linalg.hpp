#ifndef NBBD_LINALG_HPP
#define NBBD_LINALG_HPP

#include <array>
#include <cstddef>

#include "nbbd/matrix.hpp"
#include "nbbd/rational.hpp"

namespace nbbd {

/*
 * Exact rational dense linear algebra. Fraction-free (Bareiss) elimination
 * keeps intermediate entries as quotients of minors, which stays small for
 * the integer residue matrices this project feeds it. Pivot rule is "first
 * nonzero in column order" so elimination transcripts are reproducible.
 *
 * Rank decisions are never made in float. The float mirror exists for
 * operator 2-norms and large least-squares cross-checks only.
 */

// Rank over the rationals by direct fraction-free row elimination.
long rank_by_elimination(const MatrixQ& a);

// Exact rank; tall matrices go through the Gram matrix AᵀA, which has the
// same rank over the reals (AᵀAx = 0 forces |Ax|² = 0).
long rank_exact(const MatrixQ& a);

// AᵀA, symmetric cols x cols.
MatrixQ gram(const MatrixQ& a);

// Solves S x = b exactly. Throws SingularMatrixError when rank(S) < dim.
VectorQ solve_exact(const MatrixQ& s, const VectorQ& b);

// Same elimination with a matrix right-hand side: returns X with S X = rhs.
MatrixQ solve_exact_multi(const MatrixQ& s, const MatrixQ& rhs);

// Moore-Penrose inverse (AᵀA)⁻¹Aᵀ for full column rank A.
// Throws RankDeficientError when rank(A) < cols — surfaced, not regularized.
MatrixQ pseudoinverse(const MatrixQ& a);

// The four defining identities, checked exactly:
//   A X A = A,  X A X = X,  (A X)ᵀ = A X,  (X A)ᵀ = X A.
struct PenroseCheck {
    std::array<bool, 4> identity{};
    bool all_hold() const { return identity[0] && identity[1] && identity[2] && identity[3]; }
};
PenroseCheck penrose_check(const MatrixQ& a, const MatrixQ& aplus);

// Orthogonal projector A A⁺ onto the column space of A.
MatrixQ projection(const MatrixQ& a);

// Max absolute row sum: the operator norm for the supremum norm on vectors.
Rational op_norm_inf(const MatrixQ& p);
double op_norm_inf(const MatrixD& p);

// Largest singular value by power iteration on PᵀP (two matvecs per step,
// deterministic all-ones start, fixed perturbation if that start is killed).
// Throws NonConvergenceError past iter_cap.
double op_norm_2(const MatrixD& p, double tol, long iter_cap = 100000);

// Float Gaussian elimination with partial pivoting; deterministic.
VectorD solve_float(MatrixD s, VectorD b);

} // namespace nbbd

#endif // NBBD_LINALG_HPP
