#ifndef FNET_DEBT_RELIEF_HPP
#define FNET_DEBT_RELIEF_HPP

// Debt forgiveness: exact search over edge subsets for the regulator's
// objectives, plus a scalable single-edge greedy baseline. Without default
// costs, removing edges in fully solvent components never raises liquidity,
// so the max-liquidity search enumerates only edges inside components that
// contain a defaulting bank. Ties break to the fewest removed edges, then
// to the lexicographically smallest removed set.

#include <algorithm>
#include <optional>
#include <vector>

#include "fnet/clearing.hpp"
#include "fnet/network.hpp"

namespace fnet {

enum class RemovalKind {
    MaxLiquidity,
    MaxLiquidityAllSolvent,
    MinForgivenAllSolvent,
    MinForgivenTargetSolvent,
};

struct RemovalObjective {
    RemovalKind kind{RemovalKind::MaxLiquidity};
    int target{-1};  // for MinForgivenTargetSolvent
};

template <class S>
struct RemovalOutcome {
    EdgeSet removed;
    ClearingResult<S> clearing;
    S value{0};
};

namespace detail {

template <class S>
EdgeSet removal_candidates(const FinancialNetwork<S>& net, const RemovalObjective& obj) {
    using T = scalar_traits<S>;
    const auto all = edges_of(net);
    const bool no_costs = T::eq(net.alpha, S(1)) && T::eq(net.beta, S(1));
    if (!(no_costs && obj.kind == RemovalKind::MaxLiquidity)) return all;

    // union-find over undirected liability components
    const int n = net.size();
    std::vector<int> parent(n);
    for (int i = 0; i < n; ++i) parent[i] = i;
    auto find = [&](int v) {
        while (parent[v] != v) v = parent[v] = parent[parent[v]];
        return v;
    };
    for (const auto& e : all) parent[find(e.borrower)] = find(e.lender);

    const auto base = greatest_clearing(net);
    std::vector<char> component_defaults(n, 0);
    for (int i : base.defaults) component_defaults[find(i)] = 1;

    EdgeSet candidates;
    for (const auto& e : all)
        if (component_defaults[find(e.borrower)]) candidates.push_back(e);
    return candidates;
}

template <class S>
bool removal_feasible(const ClearingResult<S>& clearing, const RemovalObjective& obj) {
    switch (obj.kind) {
        case RemovalKind::MaxLiquidity:
            return true;
        case RemovalKind::MaxLiquidityAllSolvent:
        case RemovalKind::MinForgivenAllSolvent:
            return clearing.defaults.empty();
        case RemovalKind::MinForgivenTargetSolvent:
            return !clearing.in_default(obj.target);
    }
    return false;
}

} // namespace detail

template <class S>
RemovalOutcome<S> optimal_removal(const FinancialNetwork<S>& net, const RemovalObjective& obj) {
    using T = scalar_traits<S>;
    require_valid(net);
    if (obj.kind == RemovalKind::MinForgivenTargetSolvent &&
        (obj.target < 0 || obj.target >= net.size()))
        throw input_error("optimal_removal: target bank out of range");

    const auto candidates = detail::removal_candidates(net, obj);
    const int m = static_cast<int>(candidates.size());
    if (m > 22) throw guard_error("optimal_removal: more than 22 candidate edges");

    const bool minimizing = obj.kind == RemovalKind::MinForgivenAllSolvent ||
                            obj.kind == RemovalKind::MinForgivenTargetSolvent;

    std::optional<RemovalOutcome<S>> best;
    for (std::uint32_t mask = 0; mask < (1u << m); ++mask) {
        FinancialNetwork<S> trimmed = net;
        EdgeSet removed;
        S forgiven(0);
        for (int b = 0; b < m; ++b) {
            if (!(mask & (1u << b))) continue;
            const auto& e = candidates[b];
            removed.push_back(e);
            forgiven += net.liabilities(e.borrower, e.lender);
            trimmed.liabilities(e.borrower, e.lender) = S(0);
        }
        auto clearing = greatest_clearing(trimmed);
        if (!detail::removal_feasible(clearing, obj)) continue;
        const S value = minimizing ? forgiven : clearing.liquidity;

        bool take = false;
        if (!best) {
            take = true;
        } else {
            const bool strictly_better =
                minimizing ? T::lt(value, best->value) : T::lt(best->value, value);
            if (strictly_better) {
                take = true;
            } else if (T::eq(value, best->value)) {
                if (removed.size() < best->removed.size() ||
                    (removed.size() == best->removed.size() && removed < best->removed))
                    take = true;
            }
        }
        if (take) best = RemovalOutcome<S>{std::move(removed), std::move(clearing), value};
    }
    if (!best) throw input_error("optimal_removal: objective infeasible");
    return *best;
}

template <class S>
struct GreedyRemovalOutcome {
    EdgeSet removed;
    ClearingResult<S> clearing;
};

// Deletes one edge at a time, always the deletion that raises liquidity the
// most, until no single deletion helps.
template <class S>
GreedyRemovalOutcome<S> greedy_removal(const FinancialNetwork<S>& net) {
    using T = scalar_traits<S>;
    require_valid(net);

    GreedyRemovalOutcome<S> out;
    FinancialNetwork<S> work = net;
    auto current = greatest_clearing(work);

    for (;;) {
        std::optional<Edge> best_edge;
        std::optional<ClearingResult<S>> best_clearing;
        for (const auto& e : edges_of(work)) {
            FinancialNetwork<S> trial = work;
            trial.liabilities(e.borrower, e.lender) = S(0);
            auto clearing = greatest_clearing(trial);
            const S& reference = best_clearing ? best_clearing->liquidity : current.liquidity;
            if (T::lt(reference, clearing.liquidity)) {
                best_edge = e;
                best_clearing = std::move(clearing);
            }
        }
        if (!best_edge) break;
        work.liabilities(best_edge->borrower, best_edge->lender) = S(0);
        out.removed.push_back(*best_edge);
        current = std::move(*best_clearing);
    }
    std::sort(out.removed.begin(), out.removed.end());
    out.clearing = std::move(current);
    return out;
}

} // namespace fnet

#endif
