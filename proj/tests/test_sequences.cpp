#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "nbbd/errors.hpp"
#include "nbbd/sequences.hpp"
#include "oracles.hpp"

using namespace nbbd;

TEST_CASE("lcm_upto basics") {
    CHECK(lcm_upto(1) == 1);
    CHECK(lcm_upto(3) == 6);
    CHECK(lcm_upto(10) == oracles::naive_lcm_upto(10)); // = 2520
    CHECK(lcm_upto(10) == 2520);
    CHECK_THROWS_AS(lcm_upto(0), std::invalid_argument);
}

TEST_CASE("lcm_upto divisibility and growth") {
    for (long n = 1; n <= 25; ++n) {
        const Integer l = lcm_upto(n);
        CHECK(l == oracles::naive_lcm_upto(n));
        CHECK(l >= n);
        for (long k = 1; k <= n; ++k) CHECK(l % k == 0);
    }
}

TEST_CASE("residue definition and errors") {
    CHECK(residue(5, 3) == 2);
    CHECK(residue(6, 2) == 0);
    CHECK(residue(1, 7) == 1);
    CHECK_THROWS_AS(residue(5, 0), std::invalid_argument);
}

TEST_CASE("residue range and periodicity") {
    std::mt19937_64 rng(7);
    std::uniform_int_distribution<long> iv(0, 5000), kv(1, 60);
    for (int t = 0; t < 400; ++t) {
        const long i = iv(rng), k = kv(rng);
        const long r = residue(i, k);
        CHECK(r >= 0);
        CHECK(r < k);
        CHECK(residue(i + k, k) == r);
    }
}

TEST_CASE("beurling_entry values") {
    CHECK(beurling_entry(1, 2) == rat(1, 2));
    CHECK(beurling_entry(4, 2) == 0);
    CHECK(beurling_entry(5, 3) == rat(2, 3));
    CHECK_THROWS_AS(beurling_entry(1, 1), std::invalid_argument);
}

TEST_CASE("fractional entry times k equals residue entry") {
    std::mt19937_64 rng(11);
    std::uniform_int_distribution<long> iv(1, 2000), kv(2, 40);
    for (int t = 0; t < 300; ++t) {
        const long i = iv(rng), k = kv(rng);
        CHECK(beurling_entry(i, k) * k == residue(i, k));
    }
}

TEST_CASE("build_matrix golden values") {
    const MatrixQ res = build_matrix({3, 5, Convention::Residue});
    const long expect_res[5][2] = {{1, 1}, {0, 2}, {1, 0}, {0, 1}, {1, 2}};
    for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = 0; j < 2; ++j) CHECK(res(i, j) == expect_res[i][j]);

    const MatrixQ fr = build_matrix({3, 5, Convention::Fractional});
    for (std::size_t i = 0; i < 5; ++i)
        for (std::size_t j = 0; j < 2; ++j) CHECK(fr(i, j) == rat(expect_res[i][j], long(j) + 2));

    const MatrixQ one = build_matrix({2, 1, Convention::Residue});
    CHECK(one.rows() == 1);
    CHECK(one.cols() == 1);
    CHECK(one(0, 0) == 1);
}

TEST_CASE("build_matrix conventions differ by diag(2..n)") {
    for (long n = 2; n <= 7; ++n) {
        const long m = 3 * n + 1;
        const MatrixQ res = build_matrix({n, m, Convention::Residue});
        const MatrixQ fr = build_matrix({n, m, Convention::Fractional});
        for (std::size_t i = 0; i < res.rows(); ++i)
            for (std::size_t j = 0; j < res.cols(); ++j)
                CHECK(fr(i, j) * (long(j) + 2) == res(i, j));
    }
}

TEST_CASE("build_matrix entry cap") {
    CHECK_THROWS_AS(build_matrix({3, 100, Convention::Residue}, 50), SizeCapError);
    CHECK_NOTHROW(build_matrix({3, 25, Convention::Residue}, 50));
}

TEST_CASE("zero rows sit exactly on multiples of the period") {
    for (long n = 2; n <= 6; ++n) {
        const long period = lcm_upto_long(n);
        const MatrixQ a = build_matrix({n, period, Convention::Residue});
        for (long i = 1; i <= period; ++i) {
            bool all_zero = true;
            for (std::size_t j = 0; j < a.cols(); ++j)
                all_zero = all_zero && a(i - 1, j) == 0;
            CHECK(all_zero == (i % period == 0));
        }
    }
}

TEST_CASE("constant_vector") {
    CHECK(constant_vector(1) == VectorQ{Rational(1)});
    CHECK(constant_vector(3).size() == 3);
    for (const auto& x : constant_vector(5)) CHECK(x == 1);
    CHECK_THROWS_AS(constant_vector(0), std::invalid_argument);
}

TEST_CASE("classify_rows") {
    const RowClasses a = classify_rows(2, 4);
    CHECK(a.j_rows == std::vector<long>{1, 3});
    CHECK(a.zero_rows == std::vector<long>{2, 4});

    const RowClasses b = classify_rows(3, 6);
    CHECK(b.j_rows == std::vector<long>{1, 2, 3, 4, 5});
    CHECK(b.zero_rows == std::vector<long>{6});

    const RowClasses c = classify_rows(2, 1);
    CHECK(c.j_rows == std::vector<long>{1});
    CHECK(c.zero_rows.empty());

    // Period beyond the row range: no zero rows at all.
    const RowClasses d = classify_rows(20, 1000);
    CHECK(d.zero_rows.empty());
}

TEST_CASE("convert_coefficients golden and round trip") {
    CoefficientVector f{{rat(1), rat(3, 2)}, Convention::Fractional};
    const CoefficientVector r = convert_coefficients(f, Convention::Residue);
    CHECK(r.values == VectorQ{rat(1, 2), rat(1, 2)});

    // The conversion is exactly the rescaling making both conventions give
    // the same combination: sum a_k {i/k} == sum (a_k/k)(i mod k).
    for (long i = 1; i <= 5; ++i) {
        Rational lhs(0), rhs(0);
        for (long k = 2; k <= 3; ++k) {
            lhs += f.values[k - 2] * beurling_entry(i, k);
            rhs += r.values[k - 2] * residue(i, k);
        }
        CHECK(lhs == rhs);
    }

    CoefficientVector zero{{rat(0), rat(0), rat(0)}, Convention::Residue};
    CHECK(convert_coefficients(zero, Convention::Fractional).values == zero.values);

    CoefficientVector one{{rat(1)}, Convention::Residue};
    CHECK(convert_coefficients(one, Convention::Fractional).values == VectorQ{rat(2)});
}

TEST_CASE("convert_coefficients round trip is the identity") {
    std::mt19937_64 rng(23);
    for (int t = 0; t < 100; ++t) {
        std::uniform_int_distribution<std::size_t> len(1, 8);
        CoefficientVector v;
        v.convention = t % 2 ? Convention::Residue : Convention::Fractional;
        const std::size_t k = len(rng);
        for (std::size_t i = 0; i < k; ++i)
            v.values.push_back(oracles::random_rational(rng, -20, 20, 12));
        const Convention other =
            v.convention == Convention::Residue ? Convention::Fractional : Convention::Residue;
        const CoefficientVector back = convert_coefficients(convert_coefficients(v, other), v.convention);
        CHECK(back.values == v.values);
        CHECK(back.convention == v.convention);
    }
}
