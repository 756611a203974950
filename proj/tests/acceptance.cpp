// Acceptance suite: one line per criterion, every tolerance pinned in code.
// Criteria cover the exact rank scan, the Penrose and projection goldens,
// the minimax and least-squares goldens, certified class sums, the distance
// scan, float/exact path agreement, the monotone-map property suite, and
// byte determinism of the CLI. Exit 0 only if every criterion passes.
//
// Usage: acceptance [path-to-cli-binary]

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "nbbd/hilbert.hpp"
#include "nbbd/linalg.hpp"
#include "nbbd/probes.hpp"
#include "nbbd/sequences.hpp"
#include "nbbd/solvers.hpp"
#include "oracles.hpp"

using namespace nbbd;

namespace {

int g_failures = 0;

void criterion(int index, const std::string& what, bool pass, const std::string& detail = "") {
    std::printf("[%s] criterion %2d: %s%s%s\n", pass ? "PASS" : "FAIL", index, what.c_str(),
                detail.empty() ? "" : " -- ", detail.c_str());
    if (!pass) ++g_failures;
}

MatrixQ residue_matrix(long n, long m) {
    return build_matrix({n, m, Convention::Residue});
}

// --- criterion 1: exact rank scan n = 2..10 under 2 minutes ---
void c1_rank_scan() {
    const auto start = std::chrono::steady_clock::now();
    bool ok = true;
    std::string detail;
    for (long n = 2; n <= 10 && ok; ++n) {
        const long m = lcm_upto_long(n) - 1;
        const long r = rank_exact(residue_matrix(n, m));
        if (r != n - 1) {
            ok = false;
            detail = "rank(A(" + std::to_string(n) + ")) = " + std::to_string(r);
        }
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (secs > 120.0) {
        ok = false;
        detail += " runtime " + std::to_string(secs) + "s";
    }
    criterion(1, "rank(A(n, L_n-1)) = n-1 for n = 2..10, exact, under 2 minutes", ok,
              detail.empty() ? std::to_string(secs) + "s" : detail);
}

// --- criterion 2: all four Penrose identities exact for n = 2..6 ---
void c2_penrose() {
    bool ok = true;
    for (long n = 2; n <= 6 && ok; ++n) {
        const MatrixQ a = residue_matrix(n, lcm_upto_long(n) - 1);
        ok = penrose_check(a, pseudoinverse(a)).all_hold();
    }
    criterion(2, "Penrose identities hold exactly for A(n, L_n-1), n = 2..6", ok);
}

// --- criterion 3: projection goldens at n = 3, M = 5 ---
void c3_projection_goldens() {
    const MatrixQ a = residue_matrix(3, 5);
    const MatrixQ p = projection(a);

    // Independent recomputation through the adjugate inverse of the Gram.
    const MatrixQ ginv = oracles::adjugate_inverse_2x2(gram(a));
    bool oracle_ok = true;
    for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = 0; j < 5; ++j) {
            Rational expect(0);
            for (std::size_t s = 0; s < 2; ++s)
                for (std::size_t t = 0; t < 2; ++t)
                    expect += a(i, s) * ginv(s, t) * a(j, t);
            oracle_ok = oracle_ok && p(i, j) == expect;
        }

    const VectorQ row1{rat(1, 3), rat(0), rat(1, 3), rat(0), rat(1, 3)};
    bool row_ok = true;
    for (std::size_t j = 0; j < 5; ++j) row_ok = row_ok && p(0, j) == row1[j];

    const VectorQ pc = mat_vec(p, constant_vector(5));
    const bool pc_ok =
        pc == VectorQ{rat(1), rat(6, 7), rat(4, 7), rat(3, 7), rat(10, 7)};

    const bool inf_ok = op_norm_inf(p) == rat(10, 7);
    const double two = op_norm_2(to_float(p), 1e-10);
    const bool two_ok = std::fabs(two - 1.0) <= 1e-8;

    criterion(3, "projection goldens at n=3: row 1, Pc, |P|_inf = 10/7, |P|_2 = 1 +- 1e-8",
              oracle_ok && row_ok && pc_ok && inf_ok && two_ok);
}

// --- criterion 4: minimax goldens ---
void c4_minimax_goldens() {
    const MinimaxResult small = chebyshev_fit(residue_matrix(2, 1), constant_vector(1));
    const bool small_ok = small.eps_star == 0;

    MinimaxOptions exact;
    exact.force_exact = true;
    const MinimaxResult mm = chebyshev_fit(residue_matrix(3, 5), constant_vector(5), exact);
    const bool eps_ok = mm.eps_star == rat(1, 2);
    const bool coeff_ok = mm.coefficients.values == VectorQ{rat(1, 2), rat(1, 2)};
    const bool active_ok = mm.active_rows.size() >= 3;

    criterion(4, "eps*(2,1) = 0; eps*(3,5) = 1/2 with a = (1/2, 1/2); >= 3 active rows",
              small_ok && eps_ok && coeff_ok && active_ok);
}

// --- criterion 5: least-squares goldens + optimality probe ---
void c5_lsq_goldens() {
    const MatrixQ a = residue_matrix(3, 5);
    const VectorQ c = constant_vector(5);
    const LsqResult r = lsq_unweighted(a, c);
    const bool coeff_ok = r.coefficients.values == VectorQ{rat(4, 7), rat(3, 7)};
    const bool res_ok =
        r.residual == VectorQ{rat(0), rat(-1, 7), rat(-3, 7), rat(-4, 7), rat(3, 7)};
    const bool probe_ok = optimality_probe_unweighted(a, c, r.coefficients.values, 100, 2025);
    criterion(5, "lsq a = (4/7, 3/7), residual (0,-1/7,-3/7,-4/7,3/7); 100-trial probe",
              coeff_ok && res_ok && probe_ok);
}

// --- criterion 6: certified class sums ---
void c6_hilbert_sums() {
    const Interval odd = class_weight_sum(1, 2, 1e-10);
    const auto [osum, obound] = oracles::direct_class_sum(1, 2, 10'000'000);
    bool ok = std::fabs(odd.mid() - std::log(2.0)) <= 1e-8;
    ok = ok && odd.hi >= osum - 1e-12 && odd.lo <= osum + obound + 1e-12;

    for (long L : {2L, 6L, 12L}) {
        double lo = 0.0, hi = 0.0;
        for (long j = 1; j <= L; ++j) {
            const Interval s = class_weight_sum(j, L, 1e-10);
            lo += s.lo;
            hi += s.hi;
        }
        ok = ok && lo <= 1.0 && hi >= 1.0 && (hi - lo) <= double(L) * 1e-10;
    }

    const double pi2_6 = 1.6449340668482264;
    for (long L : {1L, 2L, 6L, 12L, 60L})
        ok = ok && tail_term(L, 1e-10).hi <= pi2_6 / (double(L) * double(L)) + 1e-12;

    criterion(6, "s(1,2) = ln 2 +- 1e-8 vs oracle; partitions sum to 1; tail <= pi^2/(6 L^2)", ok);
}

// --- criteria 7 + 8: distance scan and the consistency chain, n = 2..8 ---
void c7_c8_distance_chain() {
    bool d2_ok = false, mono_ok = true, tail_ok = true, chain_ok = true;
    double prev_mid = 1e300;
    for (long n = 2; n <= 8; ++n) {
        const long m = lcm_upto_long(n) - 1;
        const MatrixQ a = residue_matrix(n, m);
        const VectorQ c = constant_vector(m);

        const DistanceResult d = distance(n, Convention::Residue, 1e-10);
        if (n == 2) d2_ok = std::fabs(d.d_sq.mid() - (1.0 - std::log(2.0))) <= 1e-8;
        mono_ok = mono_ok && d.d_sq.mid() <= prev_mid + 1e-12;
        tail_ok = tail_ok && d.d_sq.hi >= d.tail.lo - 1e-12;
        prev_mid = d.d_sq.mid();

        const MinimaxResult mm = chebyshev_fit(a, c);
        const LsqResult lsq = lsq_unweighted(a, c);
        chain_ok = chain_ok && mm.eps_star <= lsq.residual_sup;
        if (n == 3)
            chain_ok = chain_ok && mm.eps_star == rat(1, 2) && lsq.residual_sup == rat(4, 7);
    }
    criterion(7, "d^2(2) = 1 - ln 2 +- 1e-8; d^2 non-increasing and >= tail for n = 2..8",
              d2_ok && mono_ok && tail_ok);
    criterion(8, "eps* <= |lsq residual|_inf at every n in 2..8 (1/2 <= 4/7 at n = 3)", chain_ok);
}

// --- criterion 9: monotone-map property suite ---
void c9_monotone_suite() {
    const ProbeReport rep = monotone_map_property(1000, 5, 2025, 6);
    const bool ok = rep.verdict == Verdict::Holds &&
                    rep.evidence["structured_checked"].get<long>() > 0;
    criterion(9, "monotone map property: 1000 seeded instances plus all A(n <= 6)", ok);
}

// --- criterion 10: float/exact oracle equivalence on instances <= 200 rows ---
void c10_float_exact() {
    bool ok = true;
    for (long n = 2; n <= 6 && ok; ++n) {
        const long full = lcm_upto_long(n) - 1;
        for (long m : {full, std::min<long>(full, 7L), 2 * n}) {
            const MatrixQ a = residue_matrix(n, m);
            const VectorQ c = constant_vector(m);
            if (a.rows() > 200) continue;

            MinimaxOptions fl, ex;
            fl.force_float = true;
            ex.force_exact = true;
            const MinimaxResult rf = chebyshev_fit(a, c, fl);
            const MinimaxResult re = chebyshev_fit(a, c, ex);
            const double ee = to_double(re.eps_star);
            ok = ok && rf.eps_star == re.eps_star;
            if (!std::isnan(rf.float_objective))
                ok = ok && std::fabs(rf.float_objective - ee) <= 1e-9 * std::fmax(1.0, ee);

            if (rank_exact(a) == long(a.cols())) {
                const LsqResult le = lsq_unweighted(a, c);
                const VectorD lf = lsq_float(a, c);
                for (std::size_t j = 0; j < lf.size(); ++j) {
                    const double e = to_double(le.coefficients.values[j]);
                    ok = ok && std::fabs(lf[j] - e) <= 1e-9 * std::fmax(1.0, std::fabs(e));
                }
            }
        }
    }
    criterion(10, "float-path eps* and lsq coefficients match exact within 1e-9 (<= 200 rows)", ok);
}

// --- criterion 11: CLI byte determinism across runs and thread counts ---
struct CliRunner {
    std::string cli;
    std::filesystem::path dir;

    bool run_to(const std::string& args, const std::filesystem::path& out) const {
        const std::string cmd = cli + " " + args + " --out " + out.string() + " 2>/dev/null";
        return std::system(cmd.c_str()) == 0;
    }
};

void c11_cli_determinism(const std::string& cli) {
    namespace fs = std::filesystem;
    CliRunner runner{cli, fs::temp_directory_path() / "nbbd_acceptance"};
    fs::create_directories(runner.dir);

    const std::vector<std::string> commands = {
        "matrix --n 3 --m 5",
        "rank --n-min 2 --n-max 6",
        "minimax --n 3 --m 5",
        "lsq --n 3 --m 5",
        "norms --n 3 --m 5",
        "distance --n 4",
        "decompose --n 3",
        "probe --claim monotone --trials 300",
        "probe --claim convergence --n-min 2 --n-max 4 --x gamma",
        "scan --n-min 2 --n-max 6 --threads 1",
        "scan --n-min 2 --n-max 6 --threads 4",
    };

    auto slurp = [](const fs::path& p) {
        std::ifstream is(p, std::ios::binary);
        std::ostringstream buf;
        buf << is.rdbuf();
        return buf.str();
    };

    bool ok = true;
    std::string detail;
    std::string scan_reference;
    for (std::size_t i = 0; i < commands.size() && ok; ++i) {
        const fs::path out_a = runner.dir / ("out_a_" + std::to_string(i));
        const fs::path out_b = runner.dir / ("out_b_" + std::to_string(i));
        ok = runner.run_to(commands[i], out_a) && runner.run_to(commands[i], out_b);
        if (!ok) {
            detail = "command failed: " + commands[i];
            break;
        }
        const std::string a = slurp(out_a), b = slurp(out_b);
        if (a != b || a.empty()) {
            ok = false;
            detail = "rerun differs: " + commands[i];
            break;
        }
        // The two scan variants must also agree with each other.
        if (commands[i].rfind("scan", 0) == 0) {
            if (scan_reference.empty())
                scan_reference = a;
            else if (scan_reference != a) {
                ok = false;
                detail = "thread counts disagree";
            }
        }
    }
    fs::remove_all(runner.dir);
    criterion(11, "CLI outputs byte-identical across reruns and thread counts {1,4}", ok, detail);
}

} // namespace

int main(int argc, char** argv) {
    std::string cli = "nbbd";
    if (argc > 1) {
        cli = argv[1];
    } else {
        const std::filesystem::path self(argv[0]);
        const auto sibling = self.parent_path().parent_path() / "tools" / "nbbd";
        if (std::filesystem::exists(sibling)) cli = sibling.string();
    }

    c1_rank_scan();
    c2_penrose();
    c3_projection_goldens();
    c4_minimax_goldens();
    c5_lsq_goldens();
    c6_hilbert_sums();
    c7_c8_distance_chain();
    c9_monotone_suite();
    c10_float_exact();
    c11_cli_determinism(cli);

    if (g_failures == 0) {
        std::printf("acceptance: all criteria passed\n");
        return 0;
    }
    std::printf("acceptance: %d criteria FAILED\n", g_failures);
    return 1;
}
