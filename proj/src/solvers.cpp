#include "nbbd/solvers.hpp"

#include <cmath>
#include <limits>
#include <random>
#include <stdexcept>

#include "nbbd/errors.hpp"
#include "nbbd/linalg.hpp"
#include "nbbd/simplex.hpp"

namespace nbbd {

namespace {

VectorQ transpose_times(const MatrixQ& a, const VectorQ& v) {
    VectorQ out(a.cols(), Rational(0));
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j)
            out[j] += a(i, j) * v[i];
    return out;
}

VectorQ residual_of(const MatrixQ& a, const VectorQ& coeffs, const VectorQ& c) {
    VectorQ r = mat_vec(a, coeffs);
    for (std::size_t i = 0; i < r.size(); ++i) r[i] -= c[i];
    return r;
}

Rational sup_norm(const VectorQ& v) {
    Rational best(0);
    for (const Rational& x : v) {
        const Rational a = abs(x);
        if (a > best) best = a;
    }
    return best;
}

} // namespace

LsqResult lsq_unweighted(const MatrixQ& a, const VectorQ& c, Convention conv) {
    if (a.rows() != c.size()) throw std::invalid_argument("lsq: row mismatch");
    LsqResult res;
    try {
        res.coefficients.values = solve_exact(gram(a), transpose_times(a, c));
    } catch (const SingularMatrixError&) {
        throw RankDeficientError("lsq: A does not have full column rank");
    }
    res.coefficients.convention = conv;
    res.residual = residual_of(a, res.coefficients.values, c);
    res.residual_sup = sup_norm(res.residual);
    return res;
}

VectorD lsq_float(const MatrixQ& a, const VectorQ& c) {
    const MatrixD af = to_float(a);
    const std::size_t n = af.cols();
    MatrixD g(n, n, 0.0);
    VectorD rhs(n, 0.0);
    const VectorD cf = to_float(c);
    for (std::size_t s = 0; s < n; ++s) {
        for (std::size_t t = 0; t < n; ++t) {
            double acc = 0.0;
            for (std::size_t i = 0; i < af.rows(); ++i) acc += af(i, s) * af(i, t);
            g(s, t) = acc;
        }
        double acc = 0.0;
        for (std::size_t i = 0; i < af.rows(); ++i) acc += af(i, s) * cf[i];
        rhs[s] = acc;
    }
    return solve_float(g, rhs);
}

namespace {

// Dual of the minimax LP:  min Σ c_i u_i - Σ c_i v_i  subject to
//   Aᵀ(u - v) = 0,  Σ(u + v) = 1,  u, v >= 0.
// Its equality multipliers y are the primal optimum: a = y[0..k), eps = -y[k].
struct DualProgram {
    MatrixQ e;
    VectorQ b;
    VectorQ cost;
};

DualProgram build_dual(const MatrixQ& a, const VectorQ& c) {
    const std::size_t m = a.rows();
    const std::size_t k = a.cols();
    DualProgram d;
    d.e = MatrixQ(k + 1, 2 * m);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t t = 0; t < k; ++t) {
            d.e(t, i) = a(i, t);
            d.e(t, m + i) = -a(i, t);
        }
        d.e(k, i) = 1;
        d.e(k, m + i) = 1;
    }
    d.b.assign(k + 1, Rational(0));
    d.b[k] = 1;
    d.cost.resize(2 * m);
    for (std::size_t i = 0; i < m; ++i) {
        d.cost[i] = c[i];
        d.cost[m + i] = -c[i];
    }
    return d;
}

} // namespace

MinimaxResult chebyshev_fit(const MatrixQ& a, const VectorQ& c, const MinimaxOptions& options,
                            Convention conv) {
    if (a.empty() || a.rows() != c.size())
        throw std::invalid_argument("chebyshev_fit: shape mismatch");
    const DualProgram d = build_dual(a, c);

    bool exact = options.force_exact ||
                 (!options.force_float && a.rows() <= options.exact_row_threshold);

    MinimaxResult res;
    BasisCertificate cert;
    long iterations = 0;
    double float_obj = std::numeric_limits<double>::quiet_NaN();

    if (!exact) {
        const SimplexOutcome out =
            simplex_float(to_float(d.e), to_float(d.b), to_float(d.cost), options.iter_cap);
        if (out.status == SimplexStatus::Optimal) {
            cert = certify_basis(d.e, d.b, d.cost, out.basis, out.kept_rows);
            iterations = out.iterations;
            if (cert.ok) float_obj = -to_double(cert.objective); // dual optimum is -eps
        }
        if (!cert.ok) exact = true; // float basis did not verify; redo exactly
    }
    if (exact) {
        const SimplexOutcome out = simplex_exact(d.e, d.b, d.cost, options.iter_cap);
        if (out.status == SimplexStatus::IterationCap)
            throw IterationCapError("chebyshev_fit: pivot cap exhausted");
        if (out.status != SimplexStatus::Optimal)
            throw std::logic_error("chebyshev_fit: dual program must be feasible and bounded");
        cert = certify_basis(d.e, d.b, d.cost, out.basis, out.kept_rows);
        if (!cert.ok)
            throw std::logic_error("chebyshev_fit: exact basis failed certification: " + cert.failure);
        iterations += out.iterations;
    }

    const std::size_t k = a.cols();
    VectorQ coeffs(k);
    for (std::size_t t = 0; t < k; ++t) coeffs[t] = cert.y[t];
    const Rational eps = -cert.y[k];

    const VectorQ r = residual_of(a, coeffs, c);
    const Rational eps_check = sup_norm(r);
    if (eps_check != eps)
        throw std::logic_error("chebyshev_fit: certificate and residual disagree");

    res.coefficients.values = std::move(coeffs);
    res.coefficients.convention = conv;
    res.eps_star = eps_check;
    for (std::size_t i = 0; i < r.size(); ++i)
        if (abs(r[i]) == res.eps_star) res.active_rows.push_back(static_cast<long>(i) + 1);
    res.iterations = iterations;
    res.exact_path = exact;
    res.float_objective = float_obj;
    return res;
}

bool feasibility(const Rational& eps, long n, long m, std::size_t entry_cap) {
    if (eps < 0) throw std::invalid_argument("feasibility: eps must be >= 0");
    const MatrixQ a = build_matrix({n, m, Convention::Residue}, entry_cap);
    const MinimaxResult mm = chebyshev_fit(a, constant_vector(m));
    return eps >= mm.eps_star;
}

DistanceResult weighted_lsq(const MatrixQ& a, const std::vector<Interval>& class_weights,
                            const Interval& forced_tail, Convention conv) {
    if (a.rows() != class_weights.size())
        throw std::invalid_argument("weighted_lsq: one weight per row required");
    const std::size_t m = a.rows();
    const std::size_t k = a.cols();

    // Normal equations at the interval midpoints, solved exactly: midpoints
    // are binary64 values and convert to rationals without loss.
    VectorQ w(m);
    for (std::size_t i = 0; i < m; ++i) w[i] = rational_from_double(class_weights[i].mid());

    MatrixQ g(k, k, Rational(0));
    VectorQ rhs(k, Rational(0));
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t s = 0; s < k; ++s) {
            if (a(i, s) == 0) continue;
            const Rational ws = w[i] * a(i, s);
            for (std::size_t t = s; t < k; ++t) g(s, t) += ws * a(i, t);
            rhs[s] += ws; // c is all ones
        }
    for (std::size_t s = 0; s < k; ++s)
        for (std::size_t t = 0; t < s; ++t) g(s, t) = g(t, s);

    DistanceResult res;
    try {
        res.coefficients.values = solve_exact(g, rhs);
    } catch (const SingularMatrixError&) {
        throw RankDeficientError("weighted_lsq: weighted Gram matrix is singular");
    }
    res.coefficients.convention = conv;

    const VectorQ ones(m, Rational(1));
    const VectorQ r = residual_of(a, res.coefficients.values, ones);
    res.terms.reserve(m);
    Interval acc{0.0, 0.0};
    for (std::size_t i = 0; i < m; ++i) {
        Interval term{0.0, 0.0};
        if (r[i] != 0)
            term = mul(interval_from_rational(r[i] * r[i]), class_weights[i]);
        res.terms.push_back(term);
        acc = add(acc, term);
    }
    res.tail = forced_tail;
    res.d_sq = add(acc, forced_tail);

    // Condition estimate of the weighted Gram matrix on the float mirror;
    // a bad estimate widens the reported interval but never blocks it.
    try {
        MatrixD gf(k, k);
        for (std::size_t s = 0; s < k; ++s)
            for (std::size_t t = 0; t < k; ++t) gf(s, t) = to_double(g(s, t));
        double norm1 = 0.0, inv_norm1 = 0.0;
        for (std::size_t t = 0; t < k; ++t) {
            double col = 0.0;
            for (std::size_t s = 0; s < k; ++s) col += std::fabs(gf(s, t));
            norm1 = std::fmax(norm1, col);
            VectorD e(k, 0.0);
            e[t] = 1.0;
            const VectorD x = solve_float(gf, e);
            double icol = 0.0;
            for (double v : x) icol += std::fabs(v);
            inv_norm1 = std::fmax(inv_norm1, icol);
        }
        res.condition_estimate = norm1 * inv_norm1;
    } catch (const SingularMatrixError&) {
        res.condition_estimate = std::numeric_limits<double>::infinity();
    }
    if (!(res.condition_estimate < 1e12)) {
        res.ill_conditioned = true;
        const double pad = std::fmax(res.condition_estimate, 1e12) * 1e-16 *
                           std::fmax(1.0, std::fabs(res.d_sq.mid()));
        res.d_sq = widen(res.d_sq, pad);
    }
    return res;
}

DistanceResult distance(long n, Convention conv, double tol, std::size_t entry_cap) {
    const long period = lcm_upto_long(n);
    const long m = period - 1;
    const MatrixQ a = build_matrix({n, m, conv}, entry_cap);
    const double ctol = class_tol(period, tol);
    std::vector<Interval> weights;
    weights.reserve(m);
    for (long j = 1; j <= m; ++j) weights.push_back(class_weight_sum(j, period, ctol));
    DistanceResult res = weighted_lsq(a, weights, class_weight_sum(period, period, ctol), conv);
    res.n = n;
    return res;
}

namespace {

Rational objective_sq(const MatrixQ& a, const VectorQ& c, const VectorQ& coeffs) {
    const VectorQ r = residual_of(a, coeffs, c);
    Rational acc(0);
    for (const Rational& x : r) acc += x * x;
    return acc;
}

Interval objective_weighted(const MatrixQ& a, const std::vector<Interval>& weights,
                            const Interval& tail, const VectorQ& coeffs) {
    const VectorQ ones(a.rows(), Rational(1));
    const VectorQ r = residual_of(a, coeffs, ones);
    Interval acc = tail;
    for (std::size_t i = 0; i < r.size(); ++i)
        if (r[i] != 0) acc = add(acc, mul(interval_from_rational(r[i] * r[i]), weights[i]));
    return acc;
}

VectorQ perturb(const VectorQ& base, std::mt19937_64& rng) {
    std::uniform_int_distribution<long> num(-3, 3);
    std::uniform_int_distribution<long> den(1, 8);
    VectorQ out = base;
    bool moved = false;
    while (!moved) {
        for (std::size_t i = 0; i < out.size(); ++i) {
            const long p = num(rng);
            if (p == 0) continue;
            out[i] += rat(p, den(rng));
            moved = true;
        }
    }
    return out;
}

} // namespace

bool optimality_probe_unweighted(const MatrixQ& a, const VectorQ& c, const VectorQ& a_star,
                                 int trials, std::uint64_t seed, VectorQ* violator) {
    std::mt19937_64 rng(seed);
    const Rational base = objective_sq(a, c, a_star);
    for (int t = 0; t < trials; ++t) {
        const VectorQ trial = perturb(a_star, rng);
        if (trial == a_star) continue;
        if (objective_sq(a, c, trial) < base) {
            if (violator) *violator = trial;
            return false;
        }
    }
    return true;
}

bool optimality_probe_weighted(const MatrixQ& a, const std::vector<Interval>& class_weights,
                               const Interval& forced_tail, const VectorQ& a_star,
                               int trials, std::uint64_t seed, VectorQ* violator) {
    std::mt19937_64 rng(seed);
    const Interval base = objective_weighted(a, class_weights, forced_tail, a_star);
    for (int t = 0; t < trials; ++t) {
        const VectorQ trial = perturb(a_star, rng);
        if (trial == a_star) continue;
        const Interval obj = objective_weighted(a, class_weights, forced_tail, trial);
        if (obj.hi < base.lo) { // certainly below: optimality refuted
            if (violator) *violator = trial;
            return false;
        }
    }
    return true;
}

} // namespace nbbd
