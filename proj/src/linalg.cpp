#include "nbbd/linalg.hpp"

#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "nbbd/errors.hpp"

namespace nbbd {

namespace {

// Fraction-free forward elimination in place. Walks columns left to right,
// pivots on the first nonzero entry at or below the current row, and applies
// the Bareiss update to everything right of the pivot column. Returns the
// number of pivots (= rank). `width` limits elimination to the leading
// columns when the matrix is an augmented [S | rhs] block.
long bareiss_forward(MatrixQ& m, std::size_t width, std::vector<std::size_t>* pivot_cols) {
    const std::size_t rows = m.rows();
    std::size_t r = 0;
    Rational prev(1);
    for (std::size_t col = 0; col < width && r < rows; ++col) {
        std::size_t piv = r;
        while (piv < rows && m(piv, col) == 0) ++piv;
        if (piv == rows) continue;
        m.swap_rows(r, piv);
        const Rational pivot = m(r, col);
        for (std::size_t i = r + 1; i < rows; ++i) {
            for (std::size_t j = col + 1; j < m.cols(); ++j)
                m(i, j) = (m(i, j) * pivot - m(i, col) * m(r, j)) / prev;
            m(i, col) = 0;
        }
        prev = pivot;
        if (pivot_cols) pivot_cols->push_back(col);
        ++r;
    }
    return static_cast<long>(r);
}

} // namespace

long rank_by_elimination(const MatrixQ& a) {
    if (a.empty()) throw std::invalid_argument("rank: empty matrix");
    MatrixQ m = a;
    return bareiss_forward(m, m.cols(), nullptr);
}

long rank_exact(const MatrixQ& a) {
    if (a.empty()) throw std::invalid_argument("rank: empty matrix");
    if (a.rows() > a.cols()) return rank_by_elimination(gram(a));
    return rank_by_elimination(a);
}

MatrixQ gram(const MatrixQ& a) {
    if (a.empty()) throw std::invalid_argument("gram: empty matrix");
    const std::size_t n = a.cols();
    MatrixQ g(n, n);
    for (std::size_t s = 0; s < n; ++s)
        for (std::size_t t = s; t < n; ++t) {
            Rational acc(0);
            for (std::size_t i = 0; i < a.rows(); ++i) acc += a(i, s) * a(i, t);
            g(s, t) = acc;
            if (t != s) g(t, s) = acc;
        }
    return g;
}

MatrixQ solve_exact_multi(const MatrixQ& s, const MatrixQ& rhs) {
    if (s.rows() != s.cols()) throw std::invalid_argument("solve: matrix not square");
    if (s.rows() != rhs.rows()) throw std::invalid_argument("solve: rhs row mismatch");
    const std::size_t n = s.rows();
    const std::size_t q = rhs.cols();
    MatrixQ m(n, n + q);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) m(i, j) = s(i, j);
        for (std::size_t j = 0; j < q; ++j) m(i, n + j) = rhs(i, j);
    }
    if (bareiss_forward(m, n, nullptr) < static_cast<long>(n))
        throw SingularMatrixError("solve: system matrix is singular");
    MatrixQ x(n, q);
    for (std::size_t i = n; i-- > 0;) {
        for (std::size_t col = 0; col < q; ++col) {
            Rational acc = m(i, n + col);
            for (std::size_t j = i + 1; j < n; ++j) acc -= m(i, j) * x(j, col);
            x(i, col) = acc / m(i, i);
        }
    }
    return x;
}

VectorQ solve_exact(const MatrixQ& s, const VectorQ& b) {
    MatrixQ rhs(b.size(), 1);
    for (std::size_t i = 0; i < b.size(); ++i) rhs(i, 0) = b[i];
    const MatrixQ x = solve_exact_multi(s, rhs);
    VectorQ out(x.rows());
    for (std::size_t i = 0; i < x.rows(); ++i) out[i] = x(i, 0);
    return out;
}

MatrixQ pseudoinverse(const MatrixQ& a) {
    if (a.empty()) throw std::invalid_argument("pseudoinverse: empty matrix");
    if (rank_exact(a) < static_cast<long>(a.cols()))
        throw RankDeficientError("pseudoinverse: rank below column count");
    return solve_exact_multi(gram(a), transpose(a));
}

PenroseCheck penrose_check(const MatrixQ& a, const MatrixQ& aplus) {
    if (a.rows() != aplus.cols() || a.cols() != aplus.rows())
        throw std::invalid_argument("penrose_check: shape mismatch");
    PenroseCheck pc;
    const MatrixQ ax = multiply(a, aplus);
    const MatrixQ xa = multiply(aplus, a);
    pc.identity[0] = multiply(ax, a) == a;
    pc.identity[1] = multiply(xa, aplus) == aplus;
    pc.identity[2] = transpose(ax) == ax;
    pc.identity[3] = transpose(xa) == xa;
    return pc;
}

MatrixQ projection(const MatrixQ& a) {
    return multiply(a, pseudoinverse(a));
}

Rational op_norm_inf(const MatrixQ& p) {
    if (p.empty()) throw std::invalid_argument("op_norm_inf: empty matrix");
    Rational best(0);
    for (std::size_t i = 0; i < p.rows(); ++i) {
        Rational s(0);
        for (std::size_t j = 0; j < p.cols(); ++j) s += abs(p(i, j));
        if (s > best) best = s;
    }
    return best;
}

double op_norm_inf(const MatrixD& p) {
    if (p.empty()) throw std::invalid_argument("op_norm_inf: empty matrix");
    double best = 0.0;
    for (std::size_t i = 0; i < p.rows(); ++i) {
        double s = 0.0;
        for (std::size_t j = 0; j < p.cols(); ++j) s += std::fabs(p(i, j));
        if (s > best) best = s;
    }
    return best;
}

namespace {

double norm2(const VectorD& v) {
    double s = 0.0;
    for (double x : v) s += x * x;
    return std::sqrt(s);
}

} // namespace

double op_norm_2(const MatrixD& p, double tol, long iter_cap) {
    if (p.empty()) throw std::invalid_argument("op_norm_2: empty matrix");
    if (!(tol > 0)) throw std::invalid_argument("op_norm_2: tol must be positive");
    const MatrixD pt = transpose(p);
    const std::size_t n = p.cols();

    auto run = [&](VectorD x) -> double {
        double nx = norm2(x);
        if (nx == 0.0) return -1.0;
        for (auto& v : x) v /= nx;
        double lambda = -1.0;
        for (long it = 0; it < iter_cap; ++it) {
            const VectorD y = mat_vec(pt, mat_vec(p, x));
            double rayleigh = 0.0;
            for (std::size_t i = 0; i < n; ++i) rayleigh += x[i] * y[i];
            const double ny = norm2(y);
            if (ny == 0.0) return 0.0; // x in the kernel: largest remaining value is 0
            if (lambda >= 0.0 && std::fabs(rayleigh - lambda) <= tol * std::fmax(rayleigh, 1e-300))
                return std::sqrt(rayleigh);
            lambda = rayleigh;
            x = y;
            for (auto& v : x) v /= ny;
        }
        throw NonConvergenceError("op_norm_2: power iteration hit the iteration cap");
    };

    VectorD start(n, 1.0);
    double r = run(start);
    if (r > 0.0) return r;
    // All-ones start killed by P: fixed perturbation, then basis vectors.
    for (std::size_t i = 0; i < n; ++i) start[i] = 1.0 + double(i + 1) / double(n + 1);
    r = run(start);
    if (r > 0.0) return r;
    for (std::size_t j = 0; j < n; ++j) {
        VectorD e(n, 0.0);
        e[j] = 1.0;
        const double rj = run(e);
        if (rj > 0.0) return rj;
    }
    return 0.0;
}

VectorD solve_float(MatrixD s, VectorD b) {
    if (s.rows() != s.cols() || s.rows() != b.size())
        throw std::invalid_argument("solve_float: shape mismatch");
    const std::size_t n = s.rows();
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        for (std::size_t i = k + 1; i < n; ++i)
            if (std::fabs(s(i, k)) > std::fabs(s(piv, k))) piv = i;
        if (std::fabs(s(piv, k)) < 1e-300)
            throw SingularMatrixError("solve_float: numerically singular");
        s.swap_rows(k, piv);
        std::swap(b[k], b[piv]);
        for (std::size_t i = k + 1; i < n; ++i) {
            const double f = s(i, k) / s(k, k);
            if (f == 0.0) continue;
            for (std::size_t j = k + 1; j < n; ++j) s(i, j) -= f * s(k, j);
            b[i] -= f * b[k];
            s(i, k) = 0.0;
        }
    }
    VectorD x(n, 0.0);
    for (std::size_t i = n; i-- > 0;) {
        double acc = b[i];
        for (std::size_t j = i + 1; j < n; ++j) acc -= s(i, j) * x[j];
        x[i] = acc / s(i, i);
    }
    return x;
}

} // namespace nbbd
