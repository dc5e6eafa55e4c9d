#ifndef FNET_SIMPLEX_HPP
#define FNET_SIMPLEX_HPP

// Dense two-phase simplex with Bland's rule, over exact rationals or
// doubles. Maximizes c.x subject to mixed <= / = / >= rows and x >= 0.
// Bland's rule makes every pivot sequence finite, which together with
// exact arithmetic gives fully deterministic solves at desk scale.

#include <vector>

#include "fnet/linalg.hpp"
#include "fnet/scalar.hpp"

namespace fnet {

enum class Relation { LessEq, Eq, GreaterEq };

enum class LpStatus { Optimal, Infeasible, Unbounded };

template <class S>
struct LinearProgram {
    int num_vars{0};
    std::vector<S> objective;  // maximize objective . x
    struct Row {
        std::vector<S> coeffs;
        Relation rel;
        S rhs;
    };
    std::vector<Row> rows;

    void add_row(std::vector<S> coeffs, Relation rel, S rhs) {
        rows.push_back({std::move(coeffs), rel, std::move(rhs)});
    }
};

template <class S>
struct LpSolution {
    LpStatus status{LpStatus::Infeasible};
    S value{0};
    std::vector<S> x;
};

namespace detail {

template <class S>
bool lp_positive(const S& v) {
    if constexpr (scalar_traits<S>::exact)
        return v > S(0);
    else
        return v > 1e-11;
}

template <class S>
bool lp_negative(const S& v) {
    if constexpr (scalar_traits<S>::exact)
        return v < S(0);
    else
        return v < -1e-11;
}

template <class S>
class SimplexTableau {
public:
    SimplexTableau(const LinearProgram<S>& lp) {
        const int n = lp.num_vars;
        const int m = static_cast<int>(lp.rows.size());
        // layout: [ structural | slack/surplus | artificial | rhs ]
        int slack_count = 0;
        for (const auto& row : lp.rows)
            if (row.rel != Relation::Eq) ++slack_count;
        cols_ = n + slack_count + m;  // worst case one artificial per row
        rows_ = m;
        tab_ = Matrix<S>(m, cols_ + 1, S(0));
        basis_.assign(m, -1);
        artificial_start_ = n + slack_count;
        num_artificials_ = 0;

        int slack_at = n;
        for (int r = 0; r < m; ++r) {
            const auto& row = lp.rows[r];
            S sign = S(1);
            if (lp_negative(row.rhs)) sign = S(-1);
            for (int j = 0; j < n; ++j) tab_(r, j) = sign * row.coeffs[j];
            tab_(r, cols_) = sign * row.rhs;
            Relation rel = row.rel;
            if (sign == S(-1)) {
                if (rel == Relation::LessEq)
                    rel = Relation::GreaterEq;
                else if (rel == Relation::GreaterEq)
                    rel = Relation::LessEq;
            }
            if (rel == Relation::LessEq) {
                tab_(r, slack_at) = S(1);
                basis_[r] = slack_at;
                ++slack_at;
            } else if (rel == Relation::GreaterEq) {
                tab_(r, slack_at) = S(-1);
                ++slack_at;
            }
            if (basis_[r] < 0) {
                const int art = artificial_start_ + num_artificials_++;
                tab_(r, art) = S(1);
                basis_[r] = art;
            }
        }
    }

    // phase 1: drive the artificial variables to zero
    bool make_feasible() {
        if (num_artificials_ == 0) return true;
        std::vector<S> cost(cols_, S(0));
        for (int a = 0; a < num_artificials_; ++a) cost[artificial_start_ + a] = S(-1);
        run(cost);
        S value(0);
        for (int r = 0; r < rows_; ++r)
            if (basis_[r] >= artificial_start_) value -= tab_(r, cols_);
        if (lp_negative(value)) return false;
        // pivot leftover artificials out of the basis where possible
        for (int r = 0; r < rows_; ++r) {
            if (basis_[r] < artificial_start_) continue;
            int enter = -1;
            for (int j = 0; j < artificial_start_; ++j) {
                if (!blocked_[j] && (lp_positive(tab_(r, j)) || lp_negative(tab_(r, j)))) {
                    enter = j;
                    break;
                }
            }
            if (enter >= 0) pivot(r, enter);
            // an all-zero row is redundant; its artificial stays basic at zero
        }
        for (int a = 0; a < num_artificials_; ++a) blocked_[artificial_start_ + a] = true;
        return true;
    }

    LpSolution<S> optimize(const std::vector<S>& objective) {
        std::vector<S> cost(cols_, S(0));
        for (std::size_t j = 0; j < objective.size(); ++j) cost[j] = objective[j];
        if (!run(cost)) {
            LpSolution<S> sol;
            sol.status = LpStatus::Unbounded;
            return sol;
        }
        LpSolution<S> sol;
        sol.status = LpStatus::Optimal;
        sol.x.assign(objective.size(), S(0));
        for (int r = 0; r < rows_; ++r)
            if (basis_[r] >= 0 && basis_[r] < static_cast<int>(objective.size()))
                sol.x[basis_[r]] = tab_(r, cols_);
        sol.value = S(0);
        for (std::size_t j = 0; j < objective.size(); ++j) sol.value += objective[j] * sol.x[j];
        return sol;
    }

private:
    // price out the given cost vector and pivot with Bland's rule until no
    // column improves; returns false on unboundedness
    bool run(const std::vector<S>& cost) {
        if (blocked_.empty()) blocked_.assign(cols_, false);
        std::vector<S> reduced(cols_);
        for (;;) {
            // reduced cost: c_j - c_B . B^-1 A_j, computed from the tableau
            for (int j = 0; j < cols_; ++j) {
                if (blocked_[j]) {
                    reduced[j] = S(0);
                    continue;
                }
                S z(0);
                for (int r = 0; r < rows_; ++r)
                    if (cost[basis_[r]] != S(0) && tab_(r, j) != S(0)) z += cost[basis_[r]] * tab_(r, j);
                reduced[j] = cost[j] - z;
            }
            int enter = -1;
            for (int j = 0; j < cols_; ++j) {
                if (!blocked_[j] && lp_positive(reduced[j])) {
                    enter = j;
                    break;
                }
            }
            if (enter < 0) return true;
            int leave = -1;
            for (int r = 0; r < rows_; ++r) {
                if (!lp_positive(tab_(r, enter))) continue;
                if (leave < 0) {
                    leave = r;
                    continue;
                }
                const S lhs = tab_(r, cols_) * tab_(leave, enter);
                const S rhs = tab_(leave, cols_) * tab_(r, enter);
                if (lhs < rhs || (lhs == rhs && basis_[r] < basis_[leave])) leave = r;
            }
            if (leave < 0) return false;
            pivot(leave, enter);
        }
    }

    void pivot(int row, int col) {
        const S inv = S(1) / tab_(row, col);
        for (int j = 0; j <= cols_; ++j) tab_(row, j) *= inv;
        tab_(row, col) = S(1);
        for (int r = 0; r < rows_; ++r) {
            if (r == row) continue;
            const S factor = tab_(r, col);
            if (factor == S(0)) continue;
            for (int j = 0; j <= cols_; ++j) tab_(r, j) -= factor * tab_(row, j);
            tab_(r, col) = S(0);
        }
        basis_[row] = col;
    }

    Matrix<S> tab_;
    std::vector<int> basis_;
    std::vector<bool> blocked_;
    int rows_{0}, cols_{0};
    int artificial_start_{0}, num_artificials_{0};
};

} // namespace detail

template <class S>
LpSolution<S> solve_lp(const LinearProgram<S>& lp) {
    for (const auto& row : lp.rows)
        if (static_cast<int>(row.coeffs.size()) != lp.num_vars)
            throw input_error("solve_lp: row width mismatch");
    if (static_cast<int>(lp.objective.size()) != lp.num_vars)
        throw input_error("solve_lp: objective width mismatch");

    detail::SimplexTableau<S> tableau(lp);
    if (!tableau.make_feasible()) {
        LpSolution<S> sol;
        sol.status = LpStatus::Infeasible;
        return sol;
    }
    return tableau.optimize(lp.objective);
}

} // namespace fnet

#endif
