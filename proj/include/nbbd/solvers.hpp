#ifndef NBBD_SOLVERS_HPP
#define NBBD_SOLVERS_HPP

#include <cstdint>
#include <vector>

#include "nbbd/hilbert.hpp"
#include "nbbd/interval.hpp"
#include "nbbd/matrix.hpp"
#include "nbbd/sequences.hpp"

namespace nbbd {

/*
 * The three fitting problems: plain least squares (A⁺c), the Chebyshev
 * minimax fit that decides feasibility of the inequality system, and the
 * weighted least squares giving the true distance to the constant sequence.
 */

struct LsqResult {
    CoefficientVector coefficients;
    VectorQ residual;     // A a - c, exact
    Rational residual_sup;
};

// a = A⁺c via the exact normal equations; residual is 2-norm minimal.
LsqResult lsq_unweighted(const MatrixQ& a, const VectorQ& c,
                         Convention conv = Convention::Residue);

// Float mirror of the normal-equation solve (cross-check path only).
VectorD lsq_float(const MatrixQ& a, const VectorQ& c);

struct MinimaxOptions {
    // Instances with more rows than this run the float simplex; the returned
    // basis is re-verified exactly either way, with an exact rerun on failure.
    std::size_t exact_row_threshold = 500;
    bool force_exact = false;
    bool force_float = false;
    long iter_cap = 1'000'000;
};

struct MinimaxResult {
    CoefficientVector coefficients;
    Rational eps_star;            // recomputed as max_i |(Aa - c)_i|, exact
    std::vector<long> active_rows; // 1-based rows attaining eps_star
    long iterations = 0;
    bool exact_path = true;
    double float_objective = 0.0; // raw float LP value when the float path ran
};

// min over a of max_i |(Aa - c)_i|, solved through the LP dual (basis size
// cols+1, so exact certification is cheap at any row count).
// Throws IterationCapError if the cycling guard is exhausted.
MinimaxResult chebyshev_fit(const MatrixQ& a, const VectorQ& c,
                            const MinimaxOptions& options = {},
                            Convention conv = Convention::Residue);

// True iff eps >= eps_star(n, M) for the residue system. Rejects eps < 0.
bool feasibility(const Rational& eps, long n, long m,
                 std::size_t entry_cap = kDefaultEntryCap);

struct DistanceResult {
    long n = 0;
    CoefficientVector coefficients;
    Interval d_sq;                // includes the forced tail class
    std::vector<Interval> terms;  // per-row (per-class) contributions
    Interval tail;                // the class where the residual is -1
    bool ill_conditioned = false;
    double condition_estimate = 0.0;
};

// Minimizes Σ_j s_j (Aa - c)_j² + tail over a, at the interval midpoints of
// the class weights; the returned d_sq interval propagates the weight widths.
// class_weights must have one entry per row of A.
DistanceResult weighted_lsq(const MatrixQ& a, const std::vector<Interval>& class_weights,
                            const Interval& forced_tail,
                            Convention conv = Convention::Residue);

// Full distance computation for denominator bound n: builds A(n, L_n - 1),
// fetches the class sums, and runs weighted_lsq.
DistanceResult distance(long n, Convention conv = Convention::Residue,
                        double tol = kDefaultTol,
                        std::size_t entry_cap = kDefaultEntryCap);

// Seeded perturbation check that a_star minimizes the exact 2-norm objective.
// Returns false and fills `violator` when a strictly better point is found.
bool optimality_probe_unweighted(const MatrixQ& a, const VectorQ& c, const VectorQ& a_star,
                                 int trials, std::uint64_t seed, VectorQ* violator = nullptr);

// Interval-safe variant for the weighted objective: a trial fails only when
// its objective interval lies strictly below the optimum's interval.
bool optimality_probe_weighted(const MatrixQ& a, const std::vector<Interval>& class_weights,
                               const Interval& forced_tail, const VectorQ& a_star,
                               int trials, std::uint64_t seed, VectorQ* violator = nullptr);

} // namespace nbbd

#endif // NBBD_SOLVERS_HPP
