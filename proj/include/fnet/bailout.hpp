#ifndef FNET_BAILOUT_HPP
#define FNET_BAILOUT_HPP

// Cash-injection planning.
//
//  * optimal_injections_lp: the budget-constrained liquidity LP, valid only
//    without default costs. The raw LP optimum may under-pay, so the
//    returned payments are the greatest clearing of the injected network,
//    whose liquidity provably matches the LP optimum. Among multiple optima
//    the injection vector is canonicalized by maximizing the cash given to
//    lower-index banks first.
//  * greedy_injections: repeatedly hands the max-threat bank the smallest
//    amount that makes some defaulting bank solvent, until the budget runs
//    out or nobody defaults. Ties break to the smallest index.
//  * optimal_injections_enumerative / min_budget_solvency: exact exponential
//    solvers for the default-cost variants, enumerating which defaulting
//    banks end up solvent and solving one LP per configuration.

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "fnet/analytics.hpp"
#include "fnet/clearing.hpp"
#include "fnet/network.hpp"
#include "fnet/simplex.hpp"

namespace fnet {

template <class S>
struct GreedyRound {
    int bank;
    S amount;
    std::vector<S> threat_before;
};

template <class S>
struct GreedyTrace {
    std::vector<GreedyRound<S>> rounds;
};

template <class S>
struct InjectionOutcome {
    InjectionPlan<S> plan;
    ClearingResult<S> clearing;
};

namespace detail {

template <class S>
void require_no_default_costs(const FinancialNetwork<S>& net, const char* who) {
    using T = scalar_traits<S>;
    if (!T::eq(net.alpha, S(1)) || !T::eq(net.beta, S(1)))
        throw input_error(std::string(who) + ": requires alpha = beta = 1");
}

// Budget-constrained liquidity LP over injections x_i and per-edge payments.
template <class S>
LinearProgram<S> injection_lp(const FinancialNetwork<S>& net, const S& budget, const EdgeSet& edges) {
    const int n = net.size();
    const int m = static_cast<int>(edges.size());
    const auto liab = net.total_liabilities();

    LinearProgram<S> lp;
    lp.num_vars = n + m;
    lp.objective.assign(lp.num_vars, S(0));
    for (int e = 0; e < m; ++e) lp.objective[n + e] = S(1);

    std::vector<S> budget_row(lp.num_vars, S(0));
    for (int i = 0; i < n; ++i) budget_row[i] = S(1);
    lp.add_row(std::move(budget_row), Relation::LessEq, budget);

    for (int e = 0; e < m; ++e) {
        std::vector<S> cap(lp.num_vars, S(0));
        cap[n + e] = S(1);
        lp.add_row(std::move(cap), Relation::LessEq, net.liabilities(edges[e].borrower, edges[e].lender));
    }
    // L_i p_ij - l_ij x_i - l_ij inflow_i <= l_ij e_i
    for (int e = 0; e < m; ++e) {
        const int i = edges[e].borrower;
        const S l = net.liabilities(edges[e].borrower, edges[e].lender);
        std::vector<S> row(lp.num_vars, S(0));
        row[n + e] = liab[i];
        row[i] -= l;
        for (int f = 0; f < m; ++f)
            if (edges[f].lender == i) row[n + f] -= l;
        lp.add_row(std::move(row), Relation::LessEq, l * net.externals[i]);
    }
    return lp;
}

template <class S>
InjectionPlan<S> plan_from_vector(const std::vector<S>& x, const S& budget) {
    InjectionPlan<S> plan;
    plan.budget = budget;
    for (int i = 0; i < static_cast<int>(x.size()); ++i)
        if (!scalar_traits<S>::is_zero(x[i]) && x[i] > S(0)) plan.transfers.push_back({i, x[i]});
    return plan;
}

} // namespace detail

template <class S>
InjectionOutcome<S> optimal_injections_lp(const FinancialNetwork<S>& net, const S& budget,
                                          bool canonical = true) {
    using T = scalar_traits<S>;
    require_valid(net);
    detail::require_no_default_costs(net, "optimal_injections_lp");
    if (budget < S(0)) throw input_error("optimal_injections_lp: negative budget");

    const int n = net.size();
    const auto edges = edges_of(net);
    auto lp = detail::injection_lp(net, budget, edges);
    auto sol = solve_lp(lp);
    if (sol.status != LpStatus::Optimal)
        throw numeric_error("optimal_injections_lp: liquidity LP did not solve");

    std::vector<S> x(sol.x.begin(), sol.x.begin() + n);
    if (canonical) {
        // pin the optimum, then water-fill budget toward lower indices
        lp.add_row(lp.objective, Relation::Eq, sol.value);
        for (int i = 0; i < n; ++i) {
            LinearProgram<S> step = lp;
            step.objective.assign(lp.num_vars, S(0));
            step.objective[i] = S(1);
            auto best_i = solve_lp(step);
            if (best_i.status != LpStatus::Optimal)
                throw numeric_error("optimal_injections_lp: canonicalization step failed");
            x[i] = best_i.x[i];
            std::vector<S> pin(lp.num_vars, S(0));
            pin[i] = S(1);
            lp.add_row(std::move(pin), Relation::Eq, x[i]);
        }
    }

    InjectionOutcome<S> out;
    out.plan = detail::plan_from_vector(x, budget);
    out.clearing = greatest_clearing(inject_externals(net, out.plan));
    if constexpr (T::exact) {
        if (out.clearing.liquidity != sol.value)
            throw numeric_error("optimal_injections_lp: clearing disagrees with LP optimum");
    }
    return out;
}

// Smallest t > 0 such that injecting t at `bank` makes some currently
// defaulting bank solvent; nullopt when no finite t changes the default set
// (in particular when `bank` is already solvent).
template <class S>
std::optional<S> min_shift_amount(const FinancialNetwork<S>& net, int bank) {
    using T = scalar_traits<S>;
    require_valid(net);
    if (bank < 0 || bank >= net.size()) throw input_error("min_shift_amount: bank out of range");

    const auto clearing = greatest_clearing(net);
    if (!clearing.in_default(bank)) return std::nullopt;

    const auto& defaults = clearing.defaults;
    const int k = static_cast<int>(defaults.size());
    const auto pi = relative_liabilities(net);
    const auto liab = net.total_liabilities();

    // payment sensitivities within the fixed default set
    Matrix<S> a(k, k, S(0));
    std::vector<S> rhs(k, S(0));
    for (int r = 0; r < k; ++r) {
        for (int c = 0; c < k; ++c)
            a(r, c) = (r == c ? S(1) : S(0)) - net.beta * pi(defaults[c], defaults[r]);
        if (defaults[r] == bank) rhs[r] = net.alpha;
    }
    auto slopes = solve_linear(a, rhs);
    if (!slopes) {
        if constexpr (T::exact) {
            throw numeric_error("min_shift_amount: singular sensitivity system");
        } else {
            // bisection against the clearing oracle
            S total(0);
            for (int i = 0; i < net.size(); ++i) total += liab[i];
            auto changes = [&](const S& t) {
                InjectionPlan<S> probe;
                probe.budget = t;
                probe.transfers.push_back({bank, t});
                return greatest_clearing(inject_externals(net, probe)).defaults != defaults;
            };
            if (!changes(total)) return std::nullopt;
            S lo(0), hi = total;
            for (int iter = 0; iter < 200; ++iter) {
                S mid = (lo + hi) / S(2);
                if (changes(mid))
                    hi = mid;
                else
                    lo = mid;
            }
            return hi;
        }
    }

    std::optional<S> best;
    for (int r = 0; r < k; ++r) {
        const int i = defaults[r];
        S asset_slope = (i == bank) ? S(1) : S(0);
        for (int c = 0; c < k; ++c)
            if (pi(defaults[c], i) != S(0)) asset_slope += pi(defaults[c], i) * (*slopes)[c];
        if (!(asset_slope > S(0))) continue;
        const S t = (liab[i] - clearing.assets[i]) / asset_slope;
        if (t <= S(0)) continue;
        if (!best || t < *best) best = t;
    }
    return best;
}

template <class S>
struct GreedyOutcome {
    InjectionPlan<S> plan;
    GreedyTrace<S> trace;
    ClearingResult<S> clearing;
};

template <class S>
GreedyOutcome<S> greedy_injections(const FinancialNetwork<S>& net, const S& budget) {
    using T = scalar_traits<S>;
    require_valid(net);
    if (budget < S(0)) throw input_error("greedy_injections: negative budget");

    GreedyOutcome<S> out;
    out.plan.budget = budget;
    FinancialNetwork<S> work = net;
    S remaining = budget;

    const int round_cap = 2 * net.size() + 4;
    for (int round = 0; round < round_cap; ++round) {
        auto clearing = greatest_clearing(work);
        if (clearing.defaults.empty() || !T::lt(S(0), remaining)) {
            out.clearing = std::move(clearing);
            return out;
        }
        auto mu = threat_index(work, clearing);
        int bank = -1;
        for (int i = 0; i < work.size(); ++i)
            if (bank < 0 || mu[i] > mu[bank]) bank = i;

        auto shift = min_shift_amount(work, bank);
        S amount = remaining;
        if (shift && *shift < remaining) amount = *shift;
        out.trace.rounds.push_back({bank, amount, mu});
        out.plan.transfers.push_back({bank, amount});
        work.externals[bank] += amount;
        remaining -= amount;
    }
    throw numeric_error("greedy_injections: round limit exceeded");
}

namespace detail {

// One LP per solvency configuration: `rescued` lists the initially
// defaulting banks forced solvent; the rest of D0 keeps the default branch.
template <class S>
std::optional<LpSolution<S>> configuration_lp(const FinancialNetwork<S>& net,
                                              const std::vector<int>& base_defaults,
                                              const std::vector<int>& rescued,
                                              const std::optional<S>& budget,
                                              bool minimize_budget) {
    const int n = net.size();
    const auto pi = relative_liabilities(net);
    const auto liab = net.total_liabilities();

    std::vector<char> in_default(n, 0);
    for (int i : base_defaults) in_default[i] = 1;
    for (int i : rescued) in_default[i] = 0;

    std::vector<int> fd;
    for (int i = 0; i < n; ++i)
        if (in_default[i]) fd.push_back(i);
    std::vector<int> q_index(n, -1);
    for (int r = 0; r < static_cast<int>(fd.size()); ++r) q_index[fd[r]] = r;

    LinearProgram<S> lp;
    lp.num_vars = n + static_cast<int>(fd.size());
    lp.objective.assign(lp.num_vars, S(0));
    if (minimize_budget) {
        for (int i = 0; i < n; ++i) lp.objective[i] = S(-1);
    } else {
        for (int r = 0; r < static_cast<int>(fd.size()); ++r) lp.objective[n + r] = S(1);
    }

    if (budget) {
        std::vector<S> row(lp.num_vars, S(0));
        for (int i = 0; i < n; ++i) row[i] = S(1);
        lp.add_row(std::move(row), Relation::LessEq, *budget);
    }

    for (int i = 0; i < n; ++i) {
        S fixed_in(0);
        for (int j = 0; j < n; ++j)
            if (!in_default[j]) fixed_in += net.liabilities(j, i);

        if (in_default[i]) {
            // q_i = alpha (e_i + x_i) + beta inflow_i
            std::vector<S> eq(lp.num_vars, S(0));
            eq[n + q_index[i]] = S(1);
            eq[i] = -net.alpha;
            for (int j : fd)
                if (pi(j, i) != S(0)) eq[n + q_index[j]] -= net.beta * pi(j, i);
            lp.add_row(std::move(eq), Relation::Eq, net.alpha * net.externals[i] + net.beta * fixed_in);

            // stays in default: e_i + x_i + inflow_i <= L_i
            std::vector<S> cap(lp.num_vars, S(0));
            cap[i] = S(1);
            for (int j : fd)
                if (pi(j, i) != S(0)) cap[n + q_index[j]] += pi(j, i);
            lp.add_row(std::move(cap), Relation::LessEq, liab[i] - net.externals[i] - fixed_in);
        } else if (liab[i] > S(0)) {
            // solvent: e_i + x_i + inflow_i >= L_i
            std::vector<S> row(lp.num_vars, S(0));
            row[i] = S(1);
            for (int j : fd)
                if (pi(j, i) != S(0)) row[n + q_index[j]] += pi(j, i);
            lp.add_row(std::move(row), Relation::GreaterEq, liab[i] - net.externals[i] - fixed_in);
        }
    }

    auto sol = solve_lp(lp);
    if (sol.status != LpStatus::Optimal) return std::nullopt;
    return sol;
}

} // namespace detail

// Exact optimum over all injection vectors with total <= budget, for any
// default costs. Enumerates which initially defaulting banks become solvent.
template <class S>
InjectionOutcome<S> optimal_injections_enumerative(const FinancialNetwork<S>& net, const S& budget) {
    using T = scalar_traits<S>;
    require_valid(net);
    if (budget < S(0)) throw input_error("optimal_injections_enumerative: negative budget");

    const auto base = greatest_clearing(net);
    const auto& d0 = base.defaults;
    if (static_cast<int>(d0.size()) > 20)
        throw guard_error("optimal_injections_enumerative: more than 20 defaulting banks");

    const int n = net.size();
    const int k = static_cast<int>(d0.size());
    std::optional<S> best_value;
    std::vector<int> best_config;
    std::vector<S> best_x;

    for (std::uint32_t mask = 0; mask < (1u << k); ++mask) {
        std::vector<int> rescued;
        for (int b = 0; b < k; ++b)
            if (mask & (1u << b)) rescued.push_back(d0[b]);
        auto sol = detail::configuration_lp(net, d0, rescued, std::optional<S>(budget), false);
        if (!sol) continue;
        std::vector<S> x(sol->x.begin(), sol->x.begin() + n);
        auto clearing = greatest_clearing(inject_externals(net, detail::plan_from_vector(x, budget)));
        const S value = clearing.liquidity;
        bool take = false;
        if (!best_value) {
            take = true;
        } else if constexpr (T::exact) {
            take = value > *best_value || (value == *best_value && rescued < best_config);
        } else {
            if (T::lt(*best_value, value))
                take = true;
            else if (T::eq(value, *best_value) && rescued < best_config)
                take = true;
        }
        if (take) {
            best_value = value;
            best_config = rescued;
            best_x = std::move(x);
        }
    }
    if (!best_value) throw numeric_error("optimal_injections_enumerative: no feasible configuration");

    InjectionOutcome<S> out;
    out.plan = detail::plan_from_vector(best_x, budget);
    out.clearing = greatest_clearing(inject_externals(net, out.plan));
    return out;
}

// Minimum total budget, allocated optimally, that makes `target` solvent
// under the greatest clearing.
template <class S>
S min_budget_solvency(const FinancialNetwork<S>& net, int target) {
    require_valid(net);
    if (target < 0 || target >= net.size()) throw input_error("min_budget_solvency: bank out of range");

    const auto base = greatest_clearing(net);
    if (!base.in_default(target)) return S(0);
    const auto& d0 = base.defaults;
    if (static_cast<int>(d0.size()) > 20)
        throw guard_error("min_budget_solvency: more than 20 defaulting banks");

    const int k = static_cast<int>(d0.size());
    std::optional<S> best;
    for (std::uint32_t mask = 0; mask < (1u << k); ++mask) {
        std::vector<int> rescued;
        bool has_target = false;
        for (int b = 0; b < k; ++b) {
            if (mask & (1u << b)) {
                rescued.push_back(d0[b]);
                if (d0[b] == target) has_target = true;
            }
        }
        if (!has_target) continue;
        auto sol = detail::configuration_lp(net, d0, rescued, std::optional<S>(), true);
        if (!sol) continue;
        const S cost = -sol->value;
        if (!best || cost < *best) best = cost;
    }
    if (!best) throw numeric_error("min_budget_solvency: no feasible configuration");
    return *best;
}

} // namespace fnet

#endif
