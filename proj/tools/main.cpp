// Command-line front end: builds the residue matrices, runs the exact
// linear-algebra pipeline, the fitting solvers, and the claim probes, and
// emits deterministic CSV/JSON/plot files. Exit status: 0 success, 1 a
// claim probe reported Fails, 2 input or size errors.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "nbbd/errors.hpp"
#include "nbbd/hilbert.hpp"
#include "nbbd/io.hpp"
#include "nbbd/linalg.hpp"
#include "nbbd/probes.hpp"
#include "nbbd/sequences.hpp"
#include "nbbd/solvers.hpp"

namespace {

using nbbd::json;

// One invocation, fully described. Identical configs produce byte-identical
// output files regardless of thread count.
struct RunConfig {
    long n = 3;
    long n_min = 2;
    long n_max = 4;
    long m = 0; // 0: default to L_n - 1
    std::string convention = "residue";
    std::string target = "c";
    std::string format = "csv";
    std::string sequence = "gamma";
    std::string claim;
    std::string in_path;
    std::string out_path;
    double tol = nbbd::kDefaultTol;
    std::uint64_t seed = 2025;
    int threads = 1;
    int trials = 1000;
    long dims = 5;
    std::size_t cap = nbbd::kDefaultEntryCap;
    std::size_t exact_threshold = 500;
    std::string feas_eps;
};

void emit(const RunConfig& cfg, const std::string& content) {
    if (cfg.out_path.empty()) {
        std::cout << content;
    } else {
        nbbd::atomic_write_file(cfg.out_path, content);
    }
}

long rows_or_default(const RunConfig& cfg) {
    return cfg.m > 0 ? cfg.m : nbbd::default_row_count(cfg.n, cfg.cap);
}

nbbd::MatrixQ matrix_for(const RunConfig& cfg) {
    return nbbd::build_matrix({cfg.n, rows_or_default(cfg),
                               nbbd::convention_from_string(cfg.convention)},
                              cfg.cap);
}

json coeff_json(const nbbd::CoefficientVector& v) {
    json arr = json::array();
    for (const auto& x : v.values) arr.push_back(nbbd::to_string(x));
    return arr;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

int cmd_matrix(const RunConfig& cfg) {
    emit(cfg, nbbd::matrix_to_text(matrix_for(cfg)));
    return 0;
}

int cmd_rank(const RunConfig& cfg) {
    std::string csv = "n,rank,expected,verdict\n";
    bool all_hold = true;
    for (long n = cfg.n_min; n <= cfg.n_max; ++n) {
        const long m = nbbd::default_row_count(n, cfg.cap);
        const nbbd::MatrixQ a = nbbd::build_matrix({n, m, nbbd::Convention::Residue}, cfg.cap);
        const long r = nbbd::rank_exact(a);
        const bool hold = r == n - 1;
        all_hold = all_hold && hold;
        csv += std::to_string(n) + "," + std::to_string(r) + "," + std::to_string(n - 1) + "," +
               (hold ? "holds" : "fails") + "\n";
    }
    emit(cfg, csv);
    return all_hold ? 0 : 1;
}

int cmd_pinv(const RunConfig& cfg) {
    emit(cfg, nbbd::matrix_to_text(nbbd::pseudoinverse(matrix_for(cfg))));
    return 0;
}

int cmd_project(const RunConfig& cfg) {
    emit(cfg, nbbd::matrix_to_text(nbbd::projection(matrix_for(cfg))));
    return 0;
}

int cmd_norms(const RunConfig& cfg) {
    const nbbd::MatrixQ p = nbbd::projection(matrix_for(cfg));
    const nbbd::Rational inf = nbbd::op_norm_inf(p);
    const double two = nbbd::op_norm_2(nbbd::to_float(p), cfg.tol);
    json j;
    j["n"] = cfg.n;
    j["m"] = rows_or_default(cfg);
    j["convention"] = cfg.convention;
    j["inf_norm"] = nbbd::to_string(inf);
    j["inf_norm_decimal"] = nbbd::format_decimal12(nbbd::to_double(inf));
    j["two_norm"] = nbbd::format_decimal12(two);
    emit(cfg, dump(j));
    return 0;
}

int cmd_minimax(const RunConfig& cfg) {
    const nbbd::MatrixQ a = matrix_for(cfg);
    const long m = rows_or_default(cfg);
    nbbd::VectorQ c = nbbd::constant_vector(m);
    if (cfg.target == "projected")
        c = nbbd::mat_vec(a, nbbd::lsq_unweighted(a, c).coefficients.values);
    nbbd::MinimaxOptions opt;
    opt.exact_row_threshold = cfg.exact_threshold;
    const nbbd::MinimaxResult r =
        nbbd::chebyshev_fit(a, c, opt, nbbd::convention_from_string(cfg.convention));
    json j;
    j["n"] = cfg.n;
    j["M"] = m;
    j["convention"] = cfg.convention;
    j["target"] = cfg.target;
    j["eps_star"] = nbbd::to_string(r.eps_star);
    j["coefficients"] = coeff_json(r.coefficients);
    j["active_rows"] = r.active_rows;
    j["iterations"] = r.iterations;
    j["exact_path"] = r.exact_path;
    if (!cfg.feas_eps.empty()) {
        const nbbd::Rational eps = nbbd::rational_from_string(cfg.feas_eps);
        if (eps < 0) throw std::invalid_argument("--feas-eps must be >= 0");
        j["feasible"] = eps >= r.eps_star;
    }
    emit(cfg, dump(j));
    return 0;
}

int cmd_lsq(const RunConfig& cfg) {
    const nbbd::MatrixQ a = matrix_for(cfg);
    const long m = rows_or_default(cfg);
    const nbbd::LsqResult r = nbbd::lsq_unweighted(a, nbbd::constant_vector(m),
                                                   nbbd::convention_from_string(cfg.convention));
    json j;
    j["n"] = cfg.n;
    j["M"] = m;
    j["convention"] = cfg.convention;
    j["coefficients"] = coeff_json(r.coefficients);
    json res = json::array();
    for (const auto& x : r.residual) res.push_back(nbbd::to_string(x));
    j["residual"] = res;
    j["residual_sup"] = nbbd::to_string(r.residual_sup);
    emit(cfg, dump(j));
    return 0;
}

int cmd_distance(const RunConfig& cfg) {
    const nbbd::DistanceResult d =
        nbbd::distance(cfg.n, nbbd::convention_from_string(cfg.convention), cfg.tol, cfg.cap);
    json j;
    j["n"] = cfg.n;
    j["M"] = nbbd::default_row_count(cfg.n, cfg.cap);
    j["convention"] = cfg.convention;
    j["coefficients"] = coeff_json(d.coefficients);
    j["d_sq"] = {{"mid", d.d_sq.mid()}, {"width", d.d_sq.width()}};
    j["tail"] = {{"mid", d.tail.mid()}, {"width", d.tail.width()}};
    if (d.ill_conditioned) {
        j["ill_conditioned"] = true;
        j["condition_estimate"] = d.condition_estimate;
    }
    emit(cfg, dump(j));
    return 0;
}

int cmd_decompose(const RunConfig& cfg) {
    emit(cfg, dump(nbbd::decomposition_report(cfg.n, cfg.tol, cfg.cap).to_json()));
    return 0;
}

int cmd_scan(const RunConfig& cfg) {
    const std::vector<nbbd::ScanRow> rows =
        nbbd::dn_scan(cfg.n_min, cfg.n_max, cfg.tol, cfg.threads, cfg.cap, cfg.exact_threshold);
    if (cfg.format == "json")
        emit(cfg, dump(nbbd::scan_to_json(rows)));
    else
        emit(cfg, nbbd::scan_to_csv(rows));
    return 0;
}

int cmd_probe(const RunConfig& cfg) {
    nbbd::ProbeReport rep;
    if (cfg.claim == "rank") {
        rep = nbbd::verify_rank_claim(cfg.n_max, cfg.cap);
    } else if (cfg.claim == "monotone") {
        rep = nbbd::monotone_map_property(cfg.trials, cfg.dims, cfg.seed);
    } else if (cfg.claim == "positive") {
        const long cols = cfg.n - 1;
        rep = nbbd::positive_image_check(cfg.n, rows_or_default(cfg),
                                         nbbd::VectorQ(cols, nbbd::Rational(1)), cfg.cap);
    } else if (cfg.claim == "norms") {
        rep = nbbd::pn_norm_report(
            nbbd::pn_norm_scan(cfg.n_min, cfg.n_max, cfg.tol, cfg.cap, cfg.threads));
    } else if (cfg.claim == "convergence") {
        const nbbd::TestSequence x = nbbd::test_sequence_from_string(cfg.sequence);
        rep = nbbd::strong_convergence_report(
            x, nbbd::strong_convergence_probe(x, cfg.n_min, cfg.n_max, cfg.cap));
    } else {
        throw std::invalid_argument("unknown probe claim: '" + cfg.claim + "'");
    }
    emit(cfg, dump(rep.to_json()));
    return rep.verdict == nbbd::Verdict::Fails ? 1 : 0;
}

int cmd_plot(const RunConfig& cfg) {
    std::ifstream is(cfg.in_path, std::ios::binary);
    if (!is) throw std::invalid_argument("cannot open input file: " + cfg.in_path);
    std::ostringstream buf;
    buf << is.rdbuf();
    emit(cfg, nbbd::plot_data_from_csv(buf.str()));
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    RunConfig cfg;
    CLI::App app{"Exact-arithmetic laboratory for Beurling residue matrices"};
    app.require_subcommand(1);

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--out", cfg.out_path, "Write output to this file (atomic)");
        cmd->add_option("--tol", cfg.tol, "Certified-interval tolerance")
            ->check(CLI::Range(1e-12, 1.0));
        cmd->add_option("--cap", cfg.cap, "Matrix entry cap");
        cmd->add_option("--seed", cfg.seed, "Deterministic seed");
        cmd->add_option("--threads", cfg.threads, "Worker threads for scans")
            ->check(CLI::Range(1, 256));
        cmd->add_option("--exact-threshold", cfg.exact_threshold,
                        "Row count up to which simplex pivots run exact");
    };
    auto add_matrix_opts = [&](CLI::App* cmd) {
        cmd->add_option("--n", cfg.n, "Largest denominator (columns are 2..n)")
            ->check(CLI::Range(2L, 1000000L));
        cmd->add_option("--m", cfg.m, "Row count override (default: lcm(1..n) - 1)");
        cmd->add_option("--convention", cfg.convention, "Matrix entry convention")
            ->check(CLI::IsMember({"residue", "fractional"}));
    };
    auto add_range = [&](CLI::App* cmd) {
        cmd->add_option("--n-min", cfg.n_min, "Range start")->check(CLI::Range(2L, 1000000L));
        cmd->add_option("--n-max", cfg.n_max, "Range end")->check(CLI::Range(2L, 1000000L));
    };

    CLI::App* matrix = app.add_subcommand("matrix", "Write the residue/fractional matrix");
    add_matrix_opts(matrix);
    add_common(matrix);

    CLI::App* rank = app.add_subcommand("rank", "Exact rank scan over a range of n");
    add_range(rank);
    add_common(rank);

    CLI::App* pinv = app.add_subcommand("pinv", "Write the Moore-Penrose inverse");
    add_matrix_opts(pinv);
    add_common(pinv);

    CLI::App* project = app.add_subcommand("project", "Write the projection A A+");
    add_matrix_opts(project);
    add_common(project);

    CLI::App* norms = app.add_subcommand("norms", "Operator norms of the projection");
    add_matrix_opts(norms);
    add_common(norms);

    CLI::App* minimax = app.add_subcommand("minimax", "Chebyshev fit of the constant vector");
    add_matrix_opts(minimax);
    add_common(minimax);
    minimax->add_option("--target", cfg.target, "Fit against c or against the projected target")
        ->check(CLI::IsMember({"c", "projected"}));
    minimax->add_option("--feas-eps", cfg.feas_eps, "Also report feasibility at this eps (p/q)");

    CLI::App* lsq = app.add_subcommand("lsq", "Unweighted least squares fit");
    add_matrix_opts(lsq);
    add_common(lsq);

    CLI::App* dist = app.add_subcommand("distance", "Weighted distance to the constant sequence");
    add_matrix_opts(dist);
    add_common(dist);

    CLI::App* decomp = app.add_subcommand("decompose", "Error-term decomposition for one n");
    add_matrix_opts(decomp);
    add_common(decomp);

    CLI::App* scan = app.add_subcommand("scan", "Distance/minimax/norm scan over a range of n");
    add_range(scan);
    add_common(scan);
    scan->add_option("--format", cfg.format, "Output format")
        ->check(CLI::IsMember({"csv", "json"}));

    CLI::App* probe = app.add_subcommand("probe", "Run a claim verifier");
    probe->add_option("--claim", cfg.claim, "Which claim to verify")
        ->required()
        ->check(CLI::IsMember({"rank", "monotone", "positive", "norms", "convergence"}));
    add_matrix_opts(probe);
    add_range(probe);
    add_common(probe);
    probe->add_option("--trials", cfg.trials, "Random trials")->check(CLI::Range(1, 10000000));
    probe->add_option("--dims", cfg.dims, "Max sampled dimension")->check(CLI::Range(1L, 64L));
    probe->add_option("--x", cfg.sequence, "Test sequence for the convergence probe")
        ->check(CLI::IsMember({"gamma", "e1", "span"}));

    CLI::App* plot = app.add_subcommand("plot", "Convert a scan CSV to plot columns");
    plot->add_option("--in", cfg.in_path, "Scan CSV input")->required();
    add_common(plot);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        std::cerr << "run with --help for usage\n";
        return 2;
    }

    try {
        if (matrix->parsed()) return cmd_matrix(cfg);
        if (rank->parsed()) return cmd_rank(cfg);
        if (pinv->parsed()) return cmd_pinv(cfg);
        if (project->parsed()) return cmd_project(cfg);
        if (norms->parsed()) return cmd_norms(cfg);
        if (minimax->parsed()) return cmd_minimax(cfg);
        if (lsq->parsed()) return cmd_lsq(cfg);
        if (dist->parsed()) return cmd_distance(cfg);
        if (decomp->parsed()) return cmd_decompose(cfg);
        if (scan->parsed()) return cmd_scan(cfg);
        if (probe->parsed()) return cmd_probe(cfg);
        if (plot->parsed()) return cmd_plot(cfg);
    } catch (const nbbd::SizeCapError& e) {
        std::cerr << "size error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2; // no subcommand dispatched
}
