#include "nbbd/sequences.hpp"

#include <stdexcept>
#include <string>

#include "nbbd/errors.hpp"

namespace nbbd {

const char* convention_name(Convention c) {
    return c == Convention::Residue ? "residue" : "fractional";
}

Convention convention_from_string(const std::string& s) {
    if (s == "residue") return Convention::Residue;
    if (s == "fractional") return Convention::Fractional;
    throw std::invalid_argument("unknown convention: '" + s + "'");
}

void ResidueSpec::validate() const {
    if (n < 2) throw std::invalid_argument("ResidueSpec: n must be >= 2");
    if (m < 1) throw std::invalid_argument("ResidueSpec: m must be >= 1");
}

Integer lcm_upto(long n) {
    if (n < 1) throw std::invalid_argument("lcm_upto: n must be >= 1");
    Integer l = 1;
    for (long k = 2; k <= n; ++k)
        mpz_lcm_ui(l.get_mpz_t(), l.get_mpz_t(), static_cast<unsigned long>(k));
    return l;
}

long lcm_upto_long(long n) {
    const Integer l = lcm_upto(n);
    if (!l.fits_slong_p())
        throw SizeCapError("lcm(1.." + std::to_string(n) + ") exceeds machine range");
    return l.get_si();
}

long default_row_count(long n, std::size_t entry_cap) {
    const Integer l = lcm_upto(n);
    const Integer entries = (l - 1) * (n - 1);
    if (!l.fits_slong_p() || entries > Integer(static_cast<unsigned long>(entry_cap)))
        throw SizeCapError("default row count L_" + std::to_string(n) +
                           "-1 exceeds the entry cap");
    return l.get_si() - 1;
}

long residue(long i, long k) {
    if (k < 1) throw std::invalid_argument("residue: k must be >= 1");
    if (i < 0) throw std::invalid_argument("residue: i must be >= 0");
    return i % k;
}

Rational beurling_entry(long i, long k) {
    if (k < 2) throw std::invalid_argument("beurling_entry: k must be >= 2");
    if (i < 1) throw std::invalid_argument("beurling_entry: i must be >= 1");
    return rat(residue(i, k), k);
}

MatrixQ build_matrix(const ResidueSpec& spec, std::size_t entry_cap) {
    spec.validate();
    const unsigned long rows = static_cast<unsigned long>(spec.m);
    const unsigned long cols = static_cast<unsigned long>(spec.n - 1);
    if (Integer(rows) * Integer(cols) > Integer(static_cast<unsigned long>(entry_cap)))
        throw SizeCapError("matrix of " + std::to_string(rows) + "x" + std::to_string(cols) +
                           " entries exceeds the cap of " + std::to_string(entry_cap));
    MatrixQ a(rows, cols);
    for (long i = 1; i <= spec.m; ++i)
        for (long k = 2; k <= spec.n; ++k) {
            const long r = residue(i, k);
            a(i - 1, k - 2) = spec.convention == Convention::Residue ? Rational(r) : rat(r, k);
        }
    return a;
}

VectorQ constant_vector(long m) {
    if (m < 1) throw std::invalid_argument("constant_vector: m must be >= 1");
    return VectorQ(static_cast<std::size_t>(m), Rational(1));
}

RowClasses classify_rows(long n, long m) {
    if (n < 2) throw std::invalid_argument("classify_rows: n must be >= 2");
    if (m < 1) throw std::invalid_argument("classify_rows: m must be >= 1");
    RowClasses rc;
    const Integer l = lcm_upto(n);
    // L_n > m means no multiple of the period occurs among rows 1..m.
    const long period = (l.fits_slong_p() && l.get_si() <= m) ? l.get_si() : 0;
    for (long i = 1; i <= m; ++i) {
        if (period != 0 && i % period == 0)
            rc.zero_rows.push_back(i);
        else
            rc.j_rows.push_back(i);
    }
    return rc;
}

CoefficientVector convert_coefficients(const CoefficientVector& a, Convention target) {
    CoefficientVector out;
    out.convention = target;
    out.values.reserve(a.values.size());
    for (std::size_t idx = 0; idx < a.values.size(); ++idx) {
        const long k = static_cast<long>(idx) + 2;
        if (a.convention == target)
            out.values.push_back(a.values[idx]);
        else if (target == Convention::Residue)
            out.values.push_back(a.values[idx] / k); // fractional -> residue
        else
            out.values.push_back(a.values[idx] * k); // residue -> fractional
    }
    return out;
}

} // namespace nbbd
