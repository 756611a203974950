#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cmath>

#include "nbbd/io.hpp"
#include "nbbd/linalg.hpp"
#include "nbbd/probes.hpp"

using namespace nbbd;

TEST_CASE("rank claim probe holds on small ranges") {
    const ProbeReport r2 = verify_rank_claim(2);
    CHECK(r2.verdict == Verdict::Holds);
    const ProbeReport r3 = verify_rank_claim(3);
    CHECK(r3.verdict == Verdict::Holds);
    const ProbeReport r6 = verify_rank_claim(6);
    CHECK(r6.verdict == Verdict::Holds);
    CHECK(r6.evidence["rows"].size() == 5);
    const json j = r6.to_json();
    CHECK(j["claim"] == "rank-equals-columns");
    CHECK(j["verdict"] == "holds");
}

TEST_CASE("monotone map golden instance") {
    const MatrixQ a = build_matrix({3, 5, Convention::Residue});
    const VectorQ ax = mat_vec(a, {rat(1), rat(1)});
    const VectorQ ay = mat_vec(a, {rat(0), rat(1)});
    CHECK(ax == VectorQ{rat(2), rat(2), rat(1), rat(1), rat(3)});
    CHECK(ay == VectorQ{rat(1), rat(2), rat(0), rat(1), rat(2)});
    for (std::size_t i = 0; i < 5; ++i) CHECK(ax[i] >= ay[i]);
    CHECK(ax != ay);
}

TEST_CASE("monotone map property over seeded trials") {
    const ProbeReport rep = monotone_map_property(1000, 5, 2025);
    CHECK(rep.verdict == Verdict::Holds);
    const long run = rep.evidence["random_checked"].get<long>();
    const long skipped = rep.evidence["skipped_equal_pairs"].get<long>();
    const long flagged = rep.evidence["flagged_hypothesis_violations"].get<long>();
    CHECK(run + skipped + flagged >= 1000); // structured skips also land in `skipped`
    CHECK(run >= 900);
    CHECK(rep.evidence["structured_checked"].get<long>() >= 30);
}

TEST_CASE("positive image check") {
    const ProbeReport ok = positive_image_check(3, 5, {rat(1), rat(1)});
    CHECK(ok.verdict == Verdict::Holds);

    const ProbeReport structure = positive_image_check(2, 4, {rat(1)});
    CHECK(structure.verdict == Verdict::Holds);
    CHECK(structure.evidence["zero_rows"] == json::array({2, 4}));

    CHECK_THROWS_AS(positive_image_check(3, 5, {rat(1), rat(0)}), std::invalid_argument);
    CHECK_THROWS_AS(positive_image_check(3, 5, {rat(1), rat(-2)}), std::invalid_argument);
}

TEST_CASE("projection norm scan goldens") {
    const std::vector<NormScanRow> rows = pn_norm_scan(2, 3);
    REQUIRE(rows.size() == 2);
    CHECK(rows[0].n == 2);
    CHECK(rows[0].inf_norm == 1);
    CHECK(std::fabs(rows[0].two_norm - 1.0) <= 1e-8);
    CHECK(rows[1].n == 3);
    CHECK(rows[1].inf_norm == rat(10, 7));
    CHECK(std::fabs(rows[1].two_norm - 1.0) <= 1e-8);

    const ProbeReport rep = pn_norm_report(rows);
    CHECK(rep.verdict == Verdict::Measured);
    CHECK(rep.evidence["table"][1]["inf_norm"] == "10/7");
}

TEST_CASE("strong convergence probe goldens at n=3") {
    const auto gamma = strong_convergence_probe(TestSequence::Gamma, 3, 3);
    REQUIRE(gamma.size() == 1);
    CHECK(gamma[0].deviation == rat(4, 7));

    const auto span = strong_convergence_probe(TestSequence::Span, 2, 4);
    for (const auto& row : span) CHECK(row.deviation == 0);

    const auto e1 = strong_convergence_probe(TestSequence::E1, 3, 3);
    CHECK(e1[0].deviation == rat(2, 3));

    const ProbeReport rep = strong_convergence_report(TestSequence::Gamma, gamma);
    CHECK(rep.verdict == Verdict::Measured);
}

TEST_CASE("decomposition report at n=2 collapses to the tail") {
    const DecompositionReport rep = decomposition_report(2);
    CHECK(rep.minimax_term.hi == 0.0);
    CHECK(rep.projection_term.hi == 0.0);
    CHECK(std::fabs(rep.tail.mid() - (1.0 - std::log(2.0))) <= 1e-9);
    CHECK(std::fabs(rep.total_bound.mid() - rep.d_sq.mid()) <= 1e-9);
    CHECK(rep.dominates);
    CHECK(rep.minimax_sup == 0);
}

TEST_CASE("decomposition report at n=3") {
    const DecompositionReport rep = decomposition_report(3);
    CHECK(rep.minimax_sup == rat(1, 2));
    CHECK(rep.dominates);
    CHECK(rep.total_bound.hi >= rep.d_sq.lo);
    CHECK(rep.tail.hi <= 1.6449340668482264 / 36.0 + 1e-12);
    const json j = rep.to_json();
    CHECK(j["n"] == 3);
    CHECK(j["dominates"] == true);
}

TEST_CASE("decomposition bound dominates the distance for a range of n") {
    for (long n = 2; n <= 6; ++n) {
        const DecompositionReport rep = decomposition_report(n);
        CHECK(rep.dominates);
        CHECK(rep.total_bound.hi >= rep.d_sq.lo - 1e-15);
    }
}

TEST_CASE("dn_scan table shape and monotonicity") {
    const std::vector<ScanRow> rows = dn_scan(2, 5);
    REQUIRE(rows.size() == 4);
    double prev = 1e9;
    for (const auto& r : rows) {
        CHECK(r.d_sq.lo <= prev + 1e-12);
        CHECK(r.d_sq.hi >= r.tail.lo - 1e-12);
        prev = r.d_sq.hi;
    }
    CHECK(rows[0].eps_star == 0);     // n=2, single row, interpolable
    CHECK(rows[1].eps_star == rat(1, 2));
}

TEST_CASE("dn_scan is bit-identical across thread counts") {
    const std::vector<ScanRow> one = dn_scan(2, 5, 1e-10, 1);
    const std::vector<ScanRow> four = dn_scan(2, 5, 1e-10, 4);
    REQUIRE(one.size() == four.size());
    for (std::size_t i = 0; i < one.size(); ++i) {
        CHECK(one[i].eps_star == four[i].eps_star);
        CHECK(one[i].d_sq.lo == four[i].d_sq.lo);
        CHECK(one[i].d_sq.hi == four[i].d_sq.hi);
        CHECK(one[i].tail.lo == four[i].tail.lo);
        CHECK(one[i].pn_inf == four[i].pn_inf);
        CHECK(one[i].pn_2 == four[i].pn_2);
    }
    CHECK(scan_to_csv(one) == scan_to_csv(four));
}

TEST_CASE("scan CSV and plot data formats") {
    const std::vector<ScanRow> rows = dn_scan(2, 3);
    const std::string csv = scan_to_csv(rows);
    CHECK(csv.rfind("n,eps_star,d_sq_mid,d_sq_width,tail_mid,pn_inf_norm,pn_2_norm\n", 0) == 0);
    CHECK(csv.find("10/7") != std::string::npos);

    const std::string plot = plot_data_from_csv(csv);
    CHECK(plot.find("1.42857142857") != std::string::npos);
    CHECK(plot.find(',') == std::string::npos);
    // One header line plus one data row per n.
    CHECK(std::count(plot.begin(), plot.end(), '\n') == long(rows.size()) + 1);

    CHECK_THROWS_AS(plot_data_from_csv(""), std::invalid_argument);
    CHECK_THROWS_AS(plot_data_from_csv("n,eps\n"), std::invalid_argument);
}
