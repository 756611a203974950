#ifndef NBBD_SIMPLEX_HPP
#define NBBD_SIMPLEX_HPP

#include <cstddef>
#include <string>
#include <vector>

#include "nbbd/matrix.hpp"
#include "nbbd/rational.hpp"

namespace nbbd {

/*
 * Two-phase dense-tableau simplex for  min c·x  s.t.  E x = b, x >= 0,
 * with b >= 0. Runs in exact rational or binary64 arithmetic; either way the
 * outcome is only a basis, and certify_basis() re-derives the solution and
 * the optimality certificate in exact arithmetic from that basis.
 *
 * Pivot rule: Dantzig entering (most negative reduced cost, smallest index
 * on ties) with a switch to Bland's rule after 50 pivots without objective
 * improvement; Bland mode persists until the objective strictly improves,
 * so the termination argument for Bland's rule applies to any stalled tail.
 * Leaving row: minimum ratio, ties broken by smallest basic column index.
 *
 * Redundant equality rows (an artificial stuck basic at zero over an
 * all-zero row) are dropped after phase 1 and reported via kept_rows.
 */

enum class SimplexStatus { Optimal, Infeasible, Unbounded, IterationCap };

struct SimplexOutcome {
    SimplexStatus status = SimplexStatus::IterationCap;
    std::vector<std::size_t> basis;     // basic column per kept row
    std::vector<std::size_t> kept_rows; // original row indices, ascending
    long iterations = 0;
};

inline constexpr long kDefaultPivotCap = 1'000'000;

SimplexOutcome simplex_exact(const MatrixQ& e, const VectorQ& b, const VectorQ& c,
                             long iter_cap = kDefaultPivotCap);
SimplexOutcome simplex_float(const MatrixD& e, const VectorD& b, const VectorD& c,
                             long iter_cap = kDefaultPivotCap);

// Exact reconstruction from a basis: solves the basis system, then checks
// feasibility on every original row, nonnegativity, and sign of all reduced
// costs. ok == false carries the first failed check in `failure`.
struct BasisCertificate {
    bool ok = false;
    VectorQ x;          // full-length primal solution
    VectorQ y;          // equality multipliers; zero on dropped rows
    Rational objective; // c·x
    std::string failure;
};

BasisCertificate certify_basis(const MatrixQ& e, const VectorQ& b, const VectorQ& c,
                               const std::vector<std::size_t>& basis,
                               const std::vector<std::size_t>& kept_rows);

} // namespace nbbd

#endif // NBBD_SIMPLEX_HPP
