#ifndef NBBD_PROBES_HPP
#define NBBD_PROBES_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "nbbd/interval.hpp"
#include "nbbd/sequences.hpp"
#include "nbbd/solvers.hpp"

namespace nbbd {

/*
 * One verifier per claim about the residue construction. Verdicts are
 * Holds/Fails for decidable finite statements and Measured where only a
 * finite truncation of an asymptotic statement can be evaluated. A Fails
 * verdict always carries a reproducible counterexample.
 */

using json = nlohmann::ordered_json;

enum class Verdict { Holds, Fails, Measured };

const char* verdict_name(Verdict v);

struct ProbeReport {
    std::string claim;
    json params;
    Verdict verdict = Verdict::Measured;
    json evidence;

    json to_json() const;
};

// rank A(n, L_n - 1) == n - 1 for n = 2..n_max, in exact arithmetic.
ProbeReport verify_rank_claim(long n_max, std::size_t entry_cap = kDefaultEntryCap);

// Nonnegative matrices with a nonzero entry per column map x >= y, x != y to
// Ax >= Ay, Ax != Ay. Seeded random instances plus the residue matrices with
// n <= structured_n_max. Sampled instances that break the hypothesis are
// flagged and skipped, not counted as counterexamples.
ProbeReport monotone_map_property(int trials, long max_dim, std::uint64_t seed,
                                  long structured_n_max = 6);

// For strictly positive v: (Av)_i > 0 on every row with a positive entry and
// (Av)_i == 0 exactly on the rows i ≡ 0 (mod L_n). Rejects non-positive v.
ProbeReport positive_image_check(long n, long m, const VectorQ& v,
                                 std::size_t entry_cap = kDefaultEntryCap);

struct NormScanRow {
    long n = 0;
    Rational inf_norm;
    double two_norm = 0.0;
};
std::vector<NormScanRow> pn_norm_scan(long n_min, long n_max, double tol = kDefaultTol,
                                      std::size_t entry_cap = kDefaultEntryCap, int threads = 1);
ProbeReport pn_norm_report(const std::vector<NormScanRow>& rows);

// Test sequences for the projection-convergence probe.
enum class TestSequence { Gamma, E1, Span };
TestSequence test_sequence_from_string(const std::string& s);
const char* test_sequence_name(TestSequence s);

struct ConvergenceRow {
    long n = 0;
    Rational deviation; // ‖P x̂ - x̂‖_∞ on the truncation
};
std::vector<ConvergenceRow> strong_convergence_probe(TestSequence x, long n_min, long n_max,
                                                     std::size_t entry_cap = kDefaultEntryCap);
ProbeReport strong_convergence_report(TestSequence x, const std::vector<ConvergenceRow>& rows);

// The three error terms bounding the squared distance for a given n:
// the weighted minimax residual over the nonzero classes, the weighted
// projection defect, and the forced tail class.
struct DecompositionReport {
    long n = 0;
    Interval minimax_term;    // Σ_j s_j (A a* - Pc)_j², a* the minimax optimum
    Interval projection_term; // Σ_j s_j (Pc - c)_j²
    Interval tail;
    Interval total_bound;     // Σ_j s_j (|r1|+|r2|)_j² + tail
    Interval d_sq;            // weighted_lsq distance, for comparison
    Rational minimax_sup;     // eps_star(n, L_n - 1)
    bool dominates = false;   // total_bound >= d_sq within interval slack

    json to_json() const;
};
DecompositionReport decomposition_report(long n, double tol = kDefaultTol,
                                         std::size_t entry_cap = kDefaultEntryCap);

struct ScanRow {
    long n = 0;
    Rational eps_star;
    Interval d_sq;
    Interval tail;
    Rational pn_inf;
    double pn_2 = 0.0;
};
std::vector<ScanRow> dn_scan(long n_min, long n_max, double tol = kDefaultTol, int threads = 1,
                             std::size_t entry_cap = kDefaultEntryCap,
                             std::size_t exact_row_threshold = 500);

std::string scan_to_csv(const std::vector<ScanRow>& rows);
json scan_to_json(const std::vector<ScanRow>& rows);

} // namespace nbbd

#endif // NBBD_PROBES_HPP
