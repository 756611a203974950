#include "nbbd/hilbert.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>

#include "nbbd/errors.hpp"

namespace nbbd {

Rational weight(long i) {
    if (i < 1) throw std::invalid_argument("weight: i must be >= 1");
    return rat(1, 1) / (Rational(i) * Rational(i + 1));
}

Rational inner_truncated(const VectorQ& a, const VectorQ& b, std::size_t n) {
    if (a.size() != b.size() || n > a.size())
        throw std::invalid_argument("inner_truncated: length mismatch");
    Rational acc(0);
    for (std::size_t i = 0; i < n; ++i)
        acc += a[i] * b[i] * weight(static_cast<long>(i) + 1);
    return acc;
}

namespace {

struct ClassSumKey {
    long j;
    long L;
    double tol;
    bool operator<(const ClassSumKey& o) const {
        return std::tie(j, L, tol) < std::tie(o.j, o.L, o.tol);
    }
};

std::mutex g_cache_mutex;
std::map<ClassSumKey, Interval> g_cache;

Interval compute_class_sum(long j, long L, double tol) {
    // Cutoff past sqrt(4/tol) makes the tail bracket width ~tol/4; the
    // outward-rounding slack of the partial sum stays an order below that.
    double cutoff = double(L) + std::ceil(std::sqrt(4.0 / tol));
    for (int attempt = 0; attempt < 4; ++attempt) {
        const long n_cut = static_cast<long>(std::min(cutoff, 4.0e9));
        double lo = 0.0, hi = 0.0;
        long i = j;
        for (; i <= n_cut; i += L) {
            // i and i+1 are exact in binary64 here; the product may round once.
            const double den = double(i) * double(i + 1);
            lo = step_down(lo + step_down(1.0 / step_up(den)));
            hi = step_up(hi + step_up(1.0 / step_down(den)));
        }
        const long a = i; // first omitted index; a - L >= 1 held by n_cut >= L + j
        const double inv_a_lo = step_down(1.0 / double(a));
        const double inv_a_hi = step_up(1.0 / double(a));
        const double ln_lo = step_down(inv_a_lo - step_up(0.5 * inv_a_hi * inv_a_hi));
        const double tail_lo = std::fmax(0.0, step_down(ln_lo / double(L)));
        const double ln_hi = step_up(1.0 / double(a - L));
        const double tail_hi = step_up(ln_hi / double(L));
        const Interval s{step_down(lo + tail_lo), step_up(hi + tail_hi)};
        if (s.width() <= tol) return s;
        cutoff *= 2.0;
    }
    throw NonConvergenceError("class_weight_sum: cannot certify width " + std::to_string(tol));
}

} // namespace

Interval class_weight_sum(long j, long L, double tol) {
    if (L < 1 || j < 1 || j > L)
        throw std::invalid_argument("class_weight_sum: need 1 <= j <= L");
    if (!(tol >= kMinClassSumTol))
        throw std::invalid_argument("class_weight_sum: tol below certifiable floor");
    const ClassSumKey key{j, L, tol};
    {
        std::lock_guard<std::mutex> lock(g_cache_mutex);
        auto it = g_cache.find(key);
        if (it != g_cache.end()) return it->second;
    }
    const Interval s = compute_class_sum(j, L, tol);
    std::lock_guard<std::mutex> lock(g_cache_mutex);
    g_cache.emplace(key, s);
    return s;
}

double class_tol(long L, double tol) {
    return std::fmax(tol / std::sqrt(double(L)), kMinClassSumTol);
}

Interval periodic_norm_sq(const VectorQ& r, double tol) {
    if (r.empty()) throw std::invalid_argument("periodic_norm_sq: empty residual");
    const long L = static_cast<long>(r.size());
    const double ctol = class_tol(L, tol);
    Interval acc{0.0, 0.0};
    for (long j = 1; j <= L; ++j) {
        const Rational& rj = r[static_cast<std::size_t>(j - 1)];
        if (rj == 0) continue;
        const Interval sq = interval_from_rational(rj * rj);
        acc = add(acc, mul(sq, class_weight_sum(j, L, ctol)));
    }
    return acc;
}

Interval tail_term(long L, double tol) {
    if (L < 1) throw std::invalid_argument("tail_term: L must be >= 1");
    return class_weight_sum(L, L, tol);
}

} // namespace nbbd
