#include "nbbd/probes.hpp"

#include <atomic>
#include <exception>
#include <mutex>
#include <random>
#include <stdexcept>
#include <thread>

#include "nbbd/errors.hpp"
#include "nbbd/io.hpp"
#include "nbbd/linalg.hpp"

namespace nbbd {

const char* verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Holds: return "holds";
        case Verdict::Fails: return "fails";
        default: return "measured";
    }
}

json ProbeReport::to_json() const {
    json j;
    j["claim"] = claim;
    j["params"] = params;
    j["verdict"] = verdict_name(verdict);
    j["evidence"] = evidence;
    return j;
}

namespace {

// Runs fn(index) over [0, count) on up to `threads` workers. Results must be
// written into per-index slots so assembly order never shows.
template <typename F>
void parallel_indices(long count, int threads, F&& fn) {
    if (threads <= 1 || count <= 1) {
        for (long i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<long> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    std::vector<std::thread> pool;
    const int workers = static_cast<int>(std::min<long>(threads, count));
    for (int t = 0; t < workers; ++t)
        pool.emplace_back([&] {
            while (true) {
                const long i = next.fetch_add(1);
                if (i >= count) return;
                try {
                    fn(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(error_mutex);
                    if (!first_error) first_error = std::current_exception();
                    return;
                }
            }
        });
    for (auto& th : pool) th.join();
    if (first_error) std::rethrow_exception(first_error);
}

} // namespace

ProbeReport verify_rank_claim(long n_max, std::size_t entry_cap) {
    if (n_max < 2) throw std::invalid_argument("verify_rank_claim: n_max must be >= 2");
    ProbeReport rep;
    rep.claim = "rank-equals-columns";
    rep.params = {{"n_max", n_max}};
    json rows = json::array();
    for (long n = 2; n <= n_max; ++n) {
        const long m = default_row_count(n, entry_cap);
        const MatrixQ a = build_matrix({n, m, Convention::Residue}, entry_cap);
        const long r = rank_exact(a);
        rows.push_back({{"n", n}, {"rows", m}, {"rank", r}, {"expected", n - 1}});
        if (r != n - 1) {
            rep.verdict = Verdict::Fails;
            rep.evidence = {{"counterexample", {{"n", n}, {"rows", m}, {"rank", r}, {"expected", n - 1}}},
                            {"rows_checked", rows}};
            return rep;
        }
    }
    rep.verdict = Verdict::Holds;
    rep.evidence = {{"rows", rows}};
    return rep;
}

namespace {

Rational random_rational(std::mt19937_64& rng, long num_lo, long num_hi, long den_hi) {
    std::uniform_int_distribution<long> num(num_lo, num_hi);
    std::uniform_int_distribution<long> den(1, den_hi);
    return rat(num(rng), den(rng));
}

json rational_vector_json(const VectorQ& v) {
    json arr = json::array();
    for (const auto& x : v) arr.push_back(to_string(x));
    return arr;
}

// Checks Ax >= Ay componentwise and Ax != Ay; exact arithmetic.
bool monotone_holds(const MatrixQ& a, const VectorQ& x, const VectorQ& y) {
    const VectorQ ax = mat_vec(a, x);
    const VectorQ ay = mat_vec(a, y);
    bool some_strict = false;
    for (std::size_t i = 0; i < ax.size(); ++i) {
        if (ax[i] < ay[i]) return false;
        if (ax[i] != ay[i]) some_strict = true;
    }
    return some_strict;
}

} // namespace

ProbeReport monotone_map_property(int trials, long max_dim, std::uint64_t seed,
                                  long structured_n_max) {
    if (trials < 1) throw std::invalid_argument("monotone_map_property: trials must be >= 1");
    if (max_dim < 1) throw std::invalid_argument("monotone_map_property: max_dim must be >= 1");
    ProbeReport rep;
    rep.claim = "monotone-map";
    rep.params = {{"trials", trials}, {"max_dim", max_dim}, {"seed", seed},
                  {"structured_n_max", structured_n_max}};

    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<long> dim(1, max_dim);
    long run = 0, skipped_equal = 0, flagged_hypothesis = 0;

    for (int t = 0; t < trials; ++t) {
        const long k = dim(rng);
        const long m = k + dim(rng); // hypothesis wants more rows than columns
        MatrixQ a(m, k);
        for (long i = 0; i < m; ++i)
            for (long j = 0; j < k; ++j) a(i, j) = random_rational(rng, 0, 4, 4);
        bool column_ok = true;
        for (long j = 0; j < k && column_ok; ++j) {
            bool nonzero = false;
            for (long i = 0; i < m; ++i) nonzero = nonzero || a(i, j) != 0;
            column_ok = nonzero;
        }
        VectorQ y(k), x(k);
        bool equal = true;
        for (long j = 0; j < k; ++j) {
            y[j] = random_rational(rng, -4, 4, 4);
            const Rational delta = random_rational(rng, 0, 3, 3);
            x[j] = y[j] + delta;
            equal = equal && delta == 0;
        }
        if (!column_ok) { ++flagged_hypothesis; continue; } // precondition violation, not a counterexample
        if (equal) { ++skipped_equal; continue; }           // vacuous trial
        ++run;
        if (!monotone_holds(a, x, y)) {
            rep.verdict = Verdict::Fails;
            rep.evidence = {{"trial", t},
                            {"x", rational_vector_json(x)},
                            {"y", rational_vector_json(y)},
                            {"note", "random instance"}};
            return rep;
        }
    }

    // The construction's own matrices, with seeded pairs per n.
    long structured = 0;
    for (long n = 2; n <= structured_n_max; ++n) {
        const long m = default_row_count(n);
        const MatrixQ a = build_matrix({n, m, Convention::Residue});
        for (int t = 0; t < 8; ++t) {
            VectorQ y(a.cols()), x(a.cols());
            bool equal = true;
            for (std::size_t j = 0; j < a.cols(); ++j) {
                y[j] = random_rational(rng, -4, 4, 4);
                const Rational delta = random_rational(rng, 0, 3, 3);
                x[j] = y[j] + delta;
                equal = equal && delta == 0;
            }
            if (equal) { ++skipped_equal; continue; }
            ++structured;
            if (!monotone_holds(a, x, y)) {
                rep.verdict = Verdict::Fails;
                rep.evidence = {{"n", n},
                                {"x", rational_vector_json(x)},
                                {"y", rational_vector_json(y)},
                                {"note", "residue matrix instance"}};
                return rep;
            }
        }
    }

    rep.verdict = Verdict::Holds;
    rep.evidence = {{"random_checked", run},
                    {"structured_checked", structured},
                    {"skipped_equal_pairs", skipped_equal},
                    {"flagged_hypothesis_violations", flagged_hypothesis}};
    return rep;
}

ProbeReport positive_image_check(long n, long m, const VectorQ& v, std::size_t entry_cap) {
    for (const auto& vi : v)
        if (vi <= 0) throw std::invalid_argument("positive_image_check: v must be strictly positive");
    const MatrixQ a = build_matrix({n, m, Convention::Residue}, entry_cap);
    if (v.size() != a.cols())
        throw std::invalid_argument("positive_image_check: v must have n-1 entries");

    ProbeReport rep;
    rep.claim = "positive-image";
    rep.params = {{"n", n}, {"m", m}, {"v", rational_vector_json(v)}};

    const VectorQ av = mat_vec(a, v);
    const RowClasses rc = classify_rows(n, m);
    json zero_rows = json::array();
    for (long i : rc.zero_rows) zero_rows.push_back(i);

    for (long i : rc.zero_rows)
        if (av[static_cast<std::size_t>(i - 1)] != 0) {
            rep.verdict = Verdict::Fails;
            rep.evidence = {{"row", i}, {"value", to_string(av[i - 1])},
                            {"expected", "0 on rows divisible by the period"}};
            return rep;
        }
    for (long i : rc.j_rows) {
        const Rational& val = av[static_cast<std::size_t>(i - 1)];
        bool has_positive = false;
        for (std::size_t j = 0; j < a.cols(); ++j)
            has_positive = has_positive || a(i - 1, j) > 0;
        if (has_positive && val <= 0) {
            rep.verdict = Verdict::Fails;
            rep.evidence = {{"row", i}, {"value", to_string(val)}, {"expected", "> 0"}};
            return rep;
        }
    }
    rep.verdict = Verdict::Holds;
    rep.evidence = {{"rows", m}, {"zero_rows", zero_rows}};
    return rep;
}

std::vector<NormScanRow> pn_norm_scan(long n_min, long n_max, double tol, std::size_t entry_cap,
                                      int threads) {
    if (n_min < 2 || n_max < n_min) throw std::invalid_argument("pn_norm_scan: bad range");
    std::vector<NormScanRow> rows(static_cast<std::size_t>(n_max - n_min + 1));
    parallel_indices(n_max - n_min + 1, threads, [&](long idx) {
        const long n = n_min + idx;
        const long m = default_row_count(n, entry_cap);
        const MatrixQ a = build_matrix({n, m, Convention::Residue}, entry_cap);
        const MatrixQ p = projection(a);
        rows[static_cast<std::size_t>(idx)] =
            NormScanRow{n, op_norm_inf(p), op_norm_2(to_float(p), tol)};
    });
    return rows;
}

ProbeReport pn_norm_report(const std::vector<NormScanRow>& rows) {
    ProbeReport rep;
    rep.claim = "projection-norms";
    rep.params = json::object();
    json table = json::array();
    for (const auto& r : rows)
        table.push_back({{"n", r.n},
                         {"inf_norm", to_string(r.inf_norm)},
                         {"inf_norm_decimal", format_decimal12(to_double(r.inf_norm))},
                         {"two_norm", format_decimal12(r.two_norm)}});
    rep.verdict = Verdict::Measured; // the norms are evaluated, never assumed
    rep.evidence = {{"table", table}};
    return rep;
}

TestSequence test_sequence_from_string(const std::string& s) {
    if (s == "gamma") return TestSequence::Gamma;
    if (s == "e1") return TestSequence::E1;
    if (s == "span") return TestSequence::Span;
    throw std::invalid_argument("unknown test sequence: '" + s + "'");
}

const char* test_sequence_name(TestSequence s) {
    switch (s) {
        case TestSequence::Gamma: return "gamma";
        case TestSequence::E1: return "e1";
        default: return "span";
    }
}

std::vector<ConvergenceRow> strong_convergence_probe(TestSequence x, long n_min, long n_max,
                                                     std::size_t entry_cap) {
    if (n_min < 2 || n_max < n_min) throw std::invalid_argument("strong_convergence_probe: bad range");
    std::vector<ConvergenceRow> rows;
    for (long n = n_min; n <= n_max; ++n) {
        const long m = default_row_count(n, entry_cap);
        const MatrixQ a = build_matrix({n, m, Convention::Residue}, entry_cap);
        VectorQ xv(static_cast<std::size_t>(m), Rational(0));
        switch (x) {
            case TestSequence::Gamma:
                for (auto& e : xv) e = 1;
                break;
            case TestSequence::E1:
                xv[0] = 1;
                break;
            case TestSequence::Span:
                xv = mat_vec(a, VectorQ(a.cols(), Rational(1)));
                break;
        }
        // P x̂ = A (A⁺ x̂); never materializes the full projector.
        const MatrixQ aplus = pseudoinverse(a);
        const VectorQ px = mat_vec(a, mat_vec(aplus, xv));
        Rational dev(0);
        for (std::size_t i = 0; i < xv.size(); ++i) {
            const Rational d = abs(px[i] - xv[i]);
            if (d > dev) dev = d;
        }
        rows.push_back(ConvergenceRow{n, dev});
    }
    return rows;
}

ProbeReport strong_convergence_report(TestSequence x, const std::vector<ConvergenceRow>& rows) {
    ProbeReport rep;
    rep.claim = "strong-convergence";
    rep.params = {{"sequence", test_sequence_name(x)}};
    json table = json::array();
    for (const auto& r : rows)
        table.push_back({{"n", r.n},
                         {"deviation", to_string(r.deviation)},
                         {"deviation_decimal", format_decimal12(to_double(r.deviation))}});
    rep.verdict = Verdict::Measured; // finite truncations only; no limit asserted
    rep.evidence = {{"table", table}};
    return rep;
}

json DecompositionReport::to_json() const {
    auto iv = [](const Interval& i) {
        return json{{"mid", i.mid()}, {"width", i.width()}};
    };
    json j;
    j["n"] = n;
    j["minimax_term"] = iv(minimax_term);
    j["projection_term"] = iv(projection_term);
    j["tail"] = iv(tail);
    j["total_bound"] = iv(total_bound);
    j["d_sq"] = iv(d_sq);
    j["minimax_sup"] = to_string(minimax_sup);
    j["dominates"] = dominates;
    return j;
}

DecompositionReport decomposition_report(long n, double tol, std::size_t entry_cap) {
    const long period = lcm_upto_long(n);
    const long m = period - 1;
    const MatrixQ a = build_matrix({n, m, Convention::Residue}, entry_cap);
    const VectorQ c = constant_vector(m);

    const LsqResult lsq = lsq_unweighted(a, c);
    const MinimaxResult mm = chebyshev_fit(a, c);
    const VectorQ pc = mat_vec(a, lsq.coefficients.values); // P c, via the range of A
    const VectorQ aa = mat_vec(a, mm.coefficients.values);

    const double ctol = class_tol(period, tol);
    Interval term1{0.0, 0.0}, term2{0.0, 0.0}, combined{0.0, 0.0};
    for (long j = 1; j <= m; ++j) {
        const std::size_t i = static_cast<std::size_t>(j - 1);
        const Rational r1 = aa[i] - pc[i];
        const Rational r2 = lsq.residual[i];
        if (r1 == 0 && r2 == 0) continue;
        const Interval s = class_weight_sum(j, period, ctol);
        if (r1 != 0) term1 = add(term1, mul(interval_from_rational(r1 * r1), s));
        if (r2 != 0) term2 = add(term2, mul(interval_from_rational(r2 * r2), s));
        const Rational both = abs(r1) + abs(r2);
        combined = add(combined, mul(interval_from_rational(both * both), s));
    }

    DecompositionReport rep;
    rep.n = n;
    rep.minimax_term = term1;
    rep.projection_term = term2;
    rep.tail = class_weight_sum(period, period, ctol);
    rep.total_bound = add(combined, rep.tail);
    rep.minimax_sup = mm.eps_star;

    std::vector<Interval> weights;
    weights.reserve(m);
    for (long j = 1; j <= m; ++j) weights.push_back(class_weight_sum(j, period, ctol));
    rep.d_sq = weighted_lsq(a, weights, rep.tail).d_sq;
    rep.dominates = rep.total_bound.hi >= rep.d_sq.lo;
    return rep;
}

std::vector<ScanRow> dn_scan(long n_min, long n_max, double tol, int threads,
                             std::size_t entry_cap, std::size_t exact_row_threshold) {
    if (n_min < 2 || n_max < n_min) throw std::invalid_argument("dn_scan: bad range");
    std::vector<ScanRow> rows(static_cast<std::size_t>(n_max - n_min + 1));
    parallel_indices(n_max - n_min + 1, threads, [&](long idx) {
        const long n = n_min + idx;
        const long period = lcm_upto_long(n);
        const long m = period - 1;
        const MatrixQ a = build_matrix({n, m, Convention::Residue}, entry_cap);
        const VectorQ c = constant_vector(m);

        MinimaxOptions opt;
        opt.exact_row_threshold = exact_row_threshold;
        ScanRow row;
        row.n = n;
        row.eps_star = chebyshev_fit(a, c, opt).eps_star;

        const double ctol = class_tol(period, tol);
        std::vector<Interval> weights;
        weights.reserve(m);
        for (long j = 1; j <= m; ++j) weights.push_back(class_weight_sum(j, period, ctol));
        const DistanceResult d = weighted_lsq(a, weights, class_weight_sum(period, period, ctol));
        row.d_sq = d.d_sq;
        row.tail = d.tail;

        const MatrixQ p = projection(a);
        row.pn_inf = op_norm_inf(p);
        row.pn_2 = op_norm_2(to_float(p), tol);
        rows[static_cast<std::size_t>(idx)] = std::move(row);
    });
    return rows;
}

std::string scan_to_csv(const std::vector<ScanRow>& rows) {
    std::string out = "n,eps_star,d_sq_mid,d_sq_width,tail_mid,pn_inf_norm,pn_2_norm\n";
    for (const auto& r : rows) {
        out += std::to_string(r.n);
        out += ',';
        out += to_string(r.eps_star);
        out += ',';
        out += format_decimal12(r.d_sq.mid());
        out += ',';
        out += format_decimal12(r.d_sq.width());
        out += ',';
        out += format_decimal12(r.tail.mid());
        out += ',';
        out += to_string(r.pn_inf);
        out += ',';
        out += format_decimal12(r.pn_2);
        out += '\n';
    }
    return out;
}

json scan_to_json(const std::vector<ScanRow>& rows) {
    json arr = json::array();
    for (const auto& r : rows)
        arr.push_back({{"n", r.n},
                       {"eps_star", to_string(r.eps_star)},
                       {"d_sq", {{"mid", r.d_sq.mid()}, {"width", r.d_sq.width()}}},
                       {"tail", {{"mid", r.tail.mid()}, {"width", r.tail.width()}}},
                       {"pn_inf_norm", to_string(r.pn_inf)},
                       {"pn_2_norm", r.pn_2}});
    return arr;
}

} // namespace nbbd
