#pragma once

#include <stdexcept>
#include <vector>

#include "bellforge/scalar.hpp"

namespace bellforge {

/// Equality-form linear program: A x = b, x >= 0, with an optional objective.
/// This is all the geometry layer needs (membership, decomposition, Farkas
/// separation); there is no general-purpose modeling surface here.
template <class T>
struct LPProblem {
    enum class Sense { Feasibility, Maximize };

    std::vector<std::vector<T>> A;  // m rows of length n
    std::vector<T> b;               // length m
    std::vector<T> c;               // length n; ignored for feasibility
    Sense sense = Sense::Feasibility;
};

enum class LPStatus { Feasible, Infeasible, Optimal, Unbounded };

template <class T>
struct LPResult {
    LPStatus status;
    std::vector<T> solution;          // primal x, when feasible/optimal
    std::vector<T> dual_certificate;  // Farkas y (infeasible) or dual y (optimal)
    T objective = scalar_policy<T>::from_int(0);
};

struct lp_numeric_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Dense two-phase primal simplex with Bland's rule. Exact for Rat; for double
/// all zero/sign tests use the 1e-9 policy tolerance.
template <class T>
class SimplexSolver {
  public:
    explicit SimplexSolver(const LPProblem<T>& p) : p_(p) {
        m_ = static_cast<int>(p.A.size());
        n_ = m_ ? static_cast<int>(p.A[0].size()) : 0;
        if (static_cast<int>(p.b.size()) != m_)
            throw std::invalid_argument("lp_solve: rhs length mismatch");
        for (const auto& row : p.A)
            if (static_cast<int>(row.size()) != n_)
                throw std::invalid_argument("lp_solve: ragged constraint matrix");
        if (p.sense == LPProblem<T>::Sense::Maximize &&
            static_cast<int>(p.c.size()) != n_)
            throw std::invalid_argument("lp_solve: objective length mismatch");
    }

    LPResult<T> solve() {
        build_tableau();
        LPResult<T> res;
        if (!phase1()) {
            res.status = LPStatus::Infeasible;
            res.dual_certificate = farkas_certificate();
            return res;
        }
        if (p_.sense == LPProblem<T>::Sense::Feasibility) {
            res.status = LPStatus::Feasible;
            res.solution = extract_primal();
            return res;
        }
        if (!phase2()) {
            res.status = LPStatus::Unbounded;
            return res;
        }
        res.status = LPStatus::Optimal;
        res.solution = extract_primal();
        // phase 2 minimizes -c; the dual of the maximize problem is -y.
        res.dual_certificate = dual_from_tableau(phase2_costs());
        for (T& y : res.dual_certificate) y = -y;
        res.objective = zero();
        for (int j = 0; j < n_; ++j) res.objective += p_.c[j] * res.solution[j];
        return res;
    }

  private:
    static T zero() { return scalar_policy<T>::from_int(0); }
    static T one() { return scalar_policy<T>::from_int(1); }
    static T tol() { return scalar_policy<T>::tolerance(); }

    void build_tableau() {
        // Columns: n_ structural, m_ artificial, then rhs.
        row_sign_.assign(m_, one());
        tab_.assign(m_, std::vector<T>(n_ + m_ + 1, zero()));
        basis_.resize(m_);
        for (int i = 0; i < m_; ++i) {
            T s = p_.b[i] < zero() ? -one() : one();
            row_sign_[i] = s;
            for (int j = 0; j < n_; ++j) tab_[i][j] = s * p_.A[i][j];
            tab_[i][n_ + i] = one();
            tab_[i][n_ + m_] = s * p_.b[i];
            basis_[i] = n_ + i;
        }
    }

    std::vector<T> phase1_costs() const {
        std::vector<T> c(n_ + m_, zero());
        for (int i = 0; i < m_; ++i) c[n_ + i] = one();
        return c;
    }

    std::vector<T> phase2_costs() const {
        std::vector<T> c(n_ + m_, zero());
        for (int j = 0; j < n_; ++j) c[j] = -p_.c[j];  // maximize -> minimize -c
        return c;
    }

    // Minimizes cost over the current tableau. Returns false on unboundedness.
    bool run_simplex(const std::vector<T>& cost, int eligible_cols) {
        const int iter_cap = 200 * (m_ + n_ + 10);
        for (int iter = 0; iter < iter_cap; ++iter) {
            int enter = -1;
            for (int j = 0; j < eligible_cols; ++j) {
                if (in_basis(j)) continue;
                T d = cost[j];
                for (int i = 0; i < m_; ++i) d -= cost[basis_[i]] * tab_[i][j];
                if (d < -tol()) { enter = j; break; }  // Bland: smallest index
            }
            if (enter < 0) return true;  // optimal
            int leave = -1;
            for (int i = 0; i < m_; ++i) {
                if (!(tab_[i][enter] > tol())) continue;
                if (leave < 0) { leave = i; continue; }
                T lhs = rhs(i) * tab_[leave][enter];
                T rhs_v = rhs(leave) * tab_[i][enter];
                if (lhs < rhs_v || (scalar_policy<T>::eq(lhs, rhs_v) &&
                                    basis_[i] < basis_[leave]))
                    leave = i;
            }
            if (leave < 0) return false;  // unbounded
            pivot(leave, enter);
        }
        throw lp_numeric_error("lp_solve: iteration cap hit (numeric breakdown)");
    }

    bool phase1() {
        auto c = phase1_costs();
        if (!run_simplex(c, n_ + m_))
            throw lp_numeric_error("lp_solve: phase-1 unbounded (should not happen)");
        T obj = zero();
        for (int i = 0; i < m_; ++i)
            if (basis_[i] >= n_) obj += rhs(i);
        if (obj > tol()) return false;
        drive_out_artificials();
        return true;
    }

    bool phase2() { return run_simplex(phase2_costs(), n_); }

    // Basic artificials at level zero: pivot them onto a structural column if
    // possible; fully zero rows are redundant constraints and stay inert.
    void drive_out_artificials() {
        for (int i = 0; i < m_; ++i) {
            if (basis_[i] < n_) continue;
            int col = -1;
            for (int j = 0; j < n_; ++j)
                if (!scalar_policy<T>::is_zero(tab_[i][j]) && !in_basis(j)) { col = j; break; }
            if (col >= 0) pivot(i, col);
        }
    }

    void pivot(int row, int col) {
        T p = tab_[row][col];
        for (T& x : tab_[row]) x /= p;
        for (int i = 0; i < m_; ++i) {
            if (i == row) continue;
            if (scalar_policy<T>::is_zero(tab_[i][col])) continue;
            T f = tab_[i][col];
            for (int j = 0; j <= n_ + m_; ++j) tab_[i][j] -= f * tab_[row][j];
        }
        basis_[row] = col;
    }

    bool in_basis(int col) const {
        for (int b : basis_)
            if (b == col) return true;
        return false;
    }

    T rhs(int i) const { return tab_[i][n_ + m_]; }

    std::vector<T> extract_primal() const {
        std::vector<T> x(n_, zero());
        for (int i = 0; i < m_; ++i)
            if (basis_[i] < n_) x[basis_[i]] = rhs(i);
        return x;
    }

    // y = c_B^T B^{-1}, read from the artificial columns, mapped back through
    // the row signs applied in build_tableau.
    std::vector<T> dual_from_tableau(const std::vector<T>& cost) const {
        std::vector<T> y(m_, zero());
        for (int i = 0; i < m_; ++i) {
            T yi = zero();
            for (int k = 0; k < m_; ++k) yi += cost[basis_[k]] * tab_[k][n_ + i];
            y[i] = row_sign_[i] * yi;
        }
        return y;
    }

    std::vector<T> farkas_certificate() const { return dual_from_tableau(phase1_costs()); }

    const LPProblem<T>& p_;
    int m_ = 0, n_ = 0;
    std::vector<std::vector<T>> tab_;
    std::vector<int> basis_;
    std::vector<T> row_sign_;
};

template <class T>
LPResult<T> lp_solve(const LPProblem<T>& p) {
    return SimplexSolver<T>(p).solve();
}

}  // namespace bellforge
