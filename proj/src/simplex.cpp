#include "nbbd/simplex.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "nbbd/errors.hpp"
#include "nbbd/linalg.hpp"

namespace nbbd {

namespace {

template <typename T>
struct Arith;

template <>
struct Arith<Rational> {
    static bool is_zero(const Rational& x) { return x == 0; }
    static bool is_pos(const Rational& x) { return x > 0; }
    static bool is_neg_cost(const Rational& x) { return x < 0; }
    static bool strictly_less(const Rational& a, const Rational& b) { return a < b; }
    static bool feasible_obj(const Rational& x) { return x == 0; }
};

template <>
struct Arith<double> {
    static constexpr double kPivotEps = 1e-11;
    static constexpr double kCostEps = 1e-9;
    static bool is_zero(double x) { return std::fabs(x) <= kPivotEps; }
    static bool is_pos(double x) { return x > kPivotEps; }
    static bool is_neg_cost(double x) { return x < -kCostEps; }
    static bool strictly_less(double a, double b) { return a < b - 1e-13; }
    static bool feasible_obj(double x) { return std::fabs(x) <= 1e-7; }
};

template <typename T>
class Tableau {
public:
    Tableau(const Matrix<T>& e, const std::vector<T>& b, long iter_cap)
        : m_(e.rows()), nv_(e.cols()), rhs_(nv_ + m_), cap_(iter_cap),
          tab_(m_, nv_ + m_ + 1), basis_(m_), active_(m_, true) {
        for (std::size_t i = 0; i < m_; ++i) {
            for (std::size_t j = 0; j < nv_; ++j) tab_(i, j) = e(i, j);
            tab_(i, nv_ + i) = T(1);
            tab_(i, rhs_) = b[i];
            basis_[i] = nv_ + i;
        }
    }

    // Reduced-cost row for the current (artificial) basis. Phase 1 prices
    // artificials at 1, phase 2 at 0, so both rows start closed-form.
    std::vector<T> phase1_costrow() const {
        std::vector<T> c(rhs_ + 1, T{});
        for (std::size_t j = 0; j < nv_; ++j) {
            T s{};
            for (std::size_t i = 0; i < m_; ++i) s += tab_(i, j);
            c[j] = -s;
        }
        T sb{};
        for (std::size_t i = 0; i < m_; ++i) sb += tab_(i, rhs_);
        c[rhs_] = -sb;
        return c;
    }

    std::vector<T> phase2_costrow(const std::vector<T>& obj) const {
        std::vector<T> c(rhs_ + 1, T{});
        for (std::size_t j = 0; j < nv_; ++j) c[j] = obj[j];
        return c;
    }

    // One simplex phase on `cost`. Returns Optimal when no entering column
    // remains; the corner carries -objective throughout.
    SimplexStatus run_phase(std::vector<T>& cost, std::vector<T>* other_cost, long& iters) {
        bool bland = false;
        int stall = 0;
        T best_obj = -cost[rhs_];
        while (true) {
            const std::size_t enter = pick_entering(cost, bland);
            if (enter == kNone) return SimplexStatus::Optimal;
            const std::size_t leave = pick_leaving(enter);
            if (leave == kNone) return SimplexStatus::Unbounded;
            if (++iters > cap_) return SimplexStatus::IterationCap;
            pivot(leave, enter, cost, other_cost);
            const T obj = -cost[rhs_];
            if (Arith<T>::strictly_less(obj, best_obj)) {
                best_obj = obj;
                stall = 0;
                bland = false;
            } else if (++stall >= 50) {
                bland = true;
            }
        }
    }

    SimplexOutcome solve(const std::vector<T>& obj) {
        long iters = 0;
        std::vector<T> c1 = phase1_costrow();
        std::vector<T> c2 = phase2_costrow(obj);
        SimplexStatus st = run_phase(c1, &c2, iters);
        if (st != SimplexStatus::Optimal) return finish(st, iters);
        if (!Arith<T>::feasible_obj(-c1[rhs_])) return finish(SimplexStatus::Infeasible, iters);
        expel_artificials(c1, c2);
        st = run_phase(c2, nullptr, iters);
        return finish(st, iters);
    }

private:
    static constexpr std::size_t kNone = static_cast<std::size_t>(-1);

    std::size_t pick_entering(const std::vector<T>& cost, bool bland) const {
        std::size_t best = kNone;
        for (std::size_t j = 0; j < nv_; ++j) { // artificials never re-enter
            if (!Arith<T>::is_neg_cost(cost[j])) continue;
            if (bland) return j;
            if (best == kNone || Arith<T>::strictly_less(cost[j], cost[best])) best = j;
        }
        return best;
    }

    std::size_t pick_leaving(std::size_t enter) const {
        std::size_t best = kNone;
        T best_ratio{};
        for (std::size_t i = 0; i < m_; ++i) {
            if (!active_[i] || !Arith<T>::is_pos(tab_(i, enter))) continue;
            const T ratio = tab_(i, rhs_) / tab_(i, enter);
            if (best == kNone || Arith<T>::strictly_less(ratio, best_ratio) ||
                (!Arith<T>::strictly_less(best_ratio, ratio) && basis_[i] < basis_[best])) {
                best = i;
                best_ratio = ratio;
            }
        }
        return best;
    }

    void pivot(std::size_t r, std::size_t col, std::vector<T>& cost, std::vector<T>* other) {
        const T piv = tab_(r, col);
        for (std::size_t j = 0; j <= rhs_; ++j) tab_(r, j) = tab_(r, j) / piv;
        tab_(r, col) = T(1);
        for (std::size_t i = 0; i < m_; ++i) {
            if (i == r) continue;
            const T f = tab_(i, col);
            if (Arith<T>::is_zero(f)) { tab_(i, col) = T{}; continue; }
            for (std::size_t j = 0; j <= rhs_; ++j) tab_(i, j) -= f * tab_(r, j);
            tab_(i, col) = T{};
        }
        reduce_row(cost, r, col);
        if (other) reduce_row(*other, r, col);
        basis_[r] = col;
    }

    void reduce_row(std::vector<T>& row, std::size_t r, std::size_t col) const {
        const T f = row[col];
        if (Arith<T>::is_zero(f)) { row[col] = T{}; return; }
        for (std::size_t j = 0; j <= rhs_; ++j) row[j] -= f * tab_(r, j);
        row[col] = T{};
    }

    // Any artificial still basic sits at value zero after a feasible phase 1.
    // Pivot it onto a structural column when the row has one; otherwise the
    // original equality was redundant and the row is dropped.
    void expel_artificials(std::vector<T>& c1, std::vector<T>& c2) {
        for (std::size_t i = 0; i < m_; ++i) {
            if (!active_[i] || basis_[i] < nv_) continue;
            std::size_t col = kNone;
            for (std::size_t j = 0; j < nv_; ++j)
                if (!Arith<T>::is_zero(tab_(i, j))) { col = j; break; }
            if (col == kNone) {
                active_[i] = false;
            } else {
                pivot(i, col, c1, &c2);
            }
        }
    }

    SimplexOutcome finish(SimplexStatus st, long iters) const {
        SimplexOutcome out;
        out.status = st;
        out.iterations = iters;
        for (std::size_t i = 0; i < m_; ++i) {
            if (!active_[i]) continue;
            out.basis.push_back(basis_[i]);
            out.kept_rows.push_back(i);
        }
        return out;
    }

    std::size_t m_, nv_, rhs_;
    long cap_;
    Matrix<T> tab_;
    std::vector<std::size_t> basis_;
    std::vector<bool> active_;
};

template <typename T>
SimplexOutcome run_simplex(const Matrix<T>& e, const std::vector<T>& b, const std::vector<T>& c,
                           long iter_cap) {
    if (e.rows() != b.size() || e.cols() != c.size())
        throw std::invalid_argument("simplex: shape mismatch");
    for (const T& bi : b)
        if (Arith<T>::strictly_less(bi, T{}))
            throw std::invalid_argument("simplex: negative right-hand side");
    Tableau<T> t(e, b, iter_cap);
    return t.solve(c);
}

} // namespace

SimplexOutcome simplex_exact(const MatrixQ& e, const VectorQ& b, const VectorQ& c, long iter_cap) {
    return run_simplex<Rational>(e, b, c, iter_cap);
}

SimplexOutcome simplex_float(const MatrixD& e, const VectorD& b, const VectorD& c, long iter_cap) {
    return run_simplex<double>(e, b, c, iter_cap);
}

BasisCertificate certify_basis(const MatrixQ& e, const VectorQ& b, const VectorQ& c,
                               const std::vector<std::size_t>& basis,
                               const std::vector<std::size_t>& kept_rows) {
    BasisCertificate cert;
    const std::size_t m = kept_rows.size();
    if (basis.size() != m) { cert.failure = "basis/row count mismatch"; return cert; }

    MatrixQ bmat(m, m);
    VectorQ bvec(m);
    for (std::size_t r = 0; r < m; ++r) {
        for (std::size_t s = 0; s < m; ++s) bmat(r, s) = e(kept_rows[r], basis[s]);
        bvec[r] = b[kept_rows[r]];
    }

    VectorQ xb, yk;
    try {
        xb = solve_exact(bmat, bvec);
        yk = solve_exact(transpose(bmat), [&] {
            VectorQ cb(m);
            for (std::size_t s = 0; s < m; ++s) cb[s] = c[basis[s]];
            return cb;
        }());
    } catch (const SingularMatrixError&) {
        cert.failure = "singular basis";
        return cert;
    }

    cert.x.assign(c.size(), Rational(0));
    for (std::size_t s = 0; s < m; ++s) {
        if (xb[s] < 0) { cert.failure = "infeasible basic solution"; return cert; }
        cert.x[basis[s]] = xb[s];
    }

    for (std::size_t i = 0; i < e.rows(); ++i) {
        Rational acc(0);
        for (std::size_t j = 0; j < e.cols(); ++j)
            if (cert.x[j] != 0) acc += e(i, j) * cert.x[j];
        if (acc != b[i]) { cert.failure = "equality violated on row " + std::to_string(i); return cert; }
    }

    cert.y.assign(e.rows(), Rational(0));
    for (std::size_t r = 0; r < m; ++r) cert.y[kept_rows[r]] = yk[r];

    for (std::size_t j = 0; j < e.cols(); ++j) {
        Rational red = c[j];
        for (std::size_t i = 0; i < e.rows(); ++i)
            if (cert.y[i] != 0) red -= cert.y[i] * e(i, j);
        if (red < 0) { cert.failure = "negative reduced cost at column " + std::to_string(j); return cert; }
    }

    cert.objective = Rational(0);
    for (std::size_t j = 0; j < c.size(); ++j)
        if (cert.x[j] != 0) cert.objective += c[j] * cert.x[j];
    cert.ok = true;
    return cert;
}

} // namespace nbbd
