#ifndef NBBD_SEQUENCES_HPP
#define NBBD_SEQUENCES_HPP

#include <cstddef>
#include <vector>

#include "nbbd/matrix.hpp"
#include "nbbd/rational.hpp"

namespace nbbd {

// Hard guard against the lcm blow-up: reject matrices above this many entries.
inline constexpr std::size_t kDefaultEntryCap = 10'000'000;

// Residue: entry(i,k) = i mod k, an integer in [0, k).
// Fractional: entry(i,k) = {i/k} = (i mod k)/k, a rational in [0, 1).
enum class Convention { Residue, Fractional };

const char* convention_name(Convention c);
Convention convention_from_string(const std::string& s);

// Which matrix to build: rows i = 1..m, columns k = 2..n (ascending).
struct ResidueSpec {
    long n = 2;
    long m = 1;
    Convention convention = Convention::Residue;

    void validate() const;
};

// Column-indexed coefficients, k = 2..n stored at values[k-2].
// Conversion law between conventions: value_residue(k) = value_fractional(k) / k.
struct CoefficientVector {
    VectorQ values;
    Convention convention = Convention::Residue;
};

// Least common multiple of 1..n; exact, arbitrary precision. Rejects n < 1.
Integer lcm_upto(long n);

// lcm_upto(n) as long; throws SizeCapError when it does not fit.
long lcm_upto_long(long n);

// Default row count for denominator bound n: L_n - 1.
long default_row_count(long n, std::size_t entry_cap = kDefaultEntryCap);

// i mod k in [0, k). Rejects k < 1.
long residue(long i, long k);

// {i/k} as an exact rational in [0, 1). Rejects k < 2.
Rational beurling_entry(long i, long k);

MatrixQ build_matrix(const ResidueSpec& spec, std::size_t entry_cap = kDefaultEntryCap);

// All-ones vector of length m.
VectorQ constant_vector(long m);

// Rows 1..m split by residue class of the lcm period: zero_rows are the
// indices i ≡ 0 (mod L_n), where every matrix entry vanishes; j_rows the rest.
struct RowClasses {
    std::vector<long> j_rows;
    std::vector<long> zero_rows;
};
RowClasses classify_rows(long n, long m);

CoefficientVector convert_coefficients(const CoefficientVector& a, Convention target);

} // namespace nbbd

#endif // NBBD_SEQUENCES_HPP
