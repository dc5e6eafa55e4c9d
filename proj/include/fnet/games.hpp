#ifndef FNET_GAMES_HPP
#define FNET_GAMES_HPP

// The edge-removal game. Banks strategize over subsets of their incoming
// edges; a profile is evaluated by applying the removals, running the
// configured cash-injection policy on the post-removal network, and taking
// total assets under the greatest clearing as utilities.
//
// Tie-breaks are pinned so everything is deterministic: best responses
// prefer higher utility, then fewer removals, then the lexicographically
// smallest removed set; injections prefer lower-index banks.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <unordered_map>
#include <vector>

#include "fnet/bailout.hpp"
#include "fnet/clearing.hpp"
#include "fnet/network.hpp"

namespace fnet {

template <class S>
struct PolicySpec {
    enum class Kind { None, Greedy, Optimal };
    Kind kind{Kind::None};
    S budget{0};

    static PolicySpec none() { return {Kind::None, S(0)}; }
    static PolicySpec greedy(S m) { return {Kind::Greedy, std::move(m)}; }
    static PolicySpec optimal(S m) { return {Kind::Optimal, std::move(m)}; }
};

template <class S>
struct Ratio {
    enum class Kind { Finite, Infinite, Undefined };
    Kind kind{Kind::Undefined};
    S value{0};

    static Ratio finite(S v) { return {Kind::Finite, std::move(v)}; }
    static Ratio infinite() { return {Kind::Infinite, S(0)}; }
    static Ratio undefined() { return {Kind::Undefined, S(0)}; }
};

template <class S>
Ratio<S> make_ratio(const S& numerator, const S& denominator) {
    if (scalar_traits<S>::is_zero(denominator)) return Ratio<S>::infinite();
    return Ratio<S>::finite(numerator / denominator);
}

template <class S>
struct GameReport {
    std::vector<StrategyProfile> equilibria;
    std::optional<std::vector<StrategyProfile>> cycle;
    S f_original{0};
    S f_optimal{0};
    std::optional<S> f_worst_eq;
    std::optional<S> f_best_eq;
    Ratio<S> poa, pos, eoa, eos;
};

template <class S>
struct ProfileOutcome {
    InjectionPlan<S> plan;
    ClearingResult<S> clearing;
    std::vector<S> utilities;  // total assets, injected cash included
};

template <class S>
ProfileOutcome<S> evaluate_profile(const FinancialNetwork<S>& net, const StrategyProfile& profile,
                                   const PolicySpec<S>& policy) {
    using Kind = typename PolicySpec<S>::Kind;
    const auto stripped = apply_removals(net, profile);
    ProfileOutcome<S> out;
    switch (policy.kind) {
        case Kind::None: {
            out.clearing = greatest_clearing(stripped);
            break;
        }
        case Kind::Greedy: {
            auto greedy = greedy_injections(stripped, policy.budget);
            out.plan = std::move(greedy.plan);
            out.clearing = std::move(greedy.clearing);
            break;
        }
        case Kind::Optimal: {
            auto lp = optimal_injections_lp(stripped, policy.budget);
            out.plan = std::move(lp.plan);
            out.clearing = std::move(lp.clearing);
            break;
        }
    }
    // assets already include injected cash: the clearing ran on the injected net
    out.utilities = out.clearing.assets;
    return out;
}

template <class S>
std::vector<S> utilities(const FinancialNetwork<S>& net, const StrategyProfile& profile,
                         const PolicySpec<S>& policy) {
    return evaluate_profile(net, profile, policy).utilities;
}

namespace detail {

// Packed profile codes for the exhaustive searches: one bit per (incoming
// edge, lender). Only built behind the 2^20 profile-space guard, so codes
// always fit. The per-bank operations below use profile-keyed caching
// instead and work at any network size.
struct ProfileCodec {
    std::vector<std::vector<int>> incoming;  // per lender, ascending borrowers
    std::vector<int> offset;
    int total_bits{0};

    template <class S>
    static ProfileCodec build(const FinancialNetwork<S>& net) {
        ProfileCodec codec;
        codec.incoming.resize(net.size());
        codec.offset.resize(net.size());
        for (int j = 0; j < net.size(); ++j) {
            codec.offset[j] = codec.total_bits;
            codec.incoming[j] = incoming_borrowers(net, j);
            codec.total_bits += static_cast<int>(codec.incoming[j].size());
        }
        return codec;
    }

    StrategyProfile decode(std::uint64_t code) const {
        StrategyProfile profile = StrategyProfile::keep_all(static_cast<int>(incoming.size()));
        for (int j = 0; j < static_cast<int>(incoming.size()); ++j)
            for (int b = 0; b < static_cast<int>(incoming[j].size()); ++b)
                if (code & (std::uint64_t(1) << (offset[j] + b)))
                    profile.removed[j].push_back(incoming[j][b]);
        return profile;
    }

    std::uint64_t replace(std::uint64_t code, int lender, std::uint64_t bank_mask) const {
        const int width = static_cast<int>(incoming[lender].size());
        const std::uint64_t field = ((std::uint64_t(1) << width) - 1) << offset[lender];
        return (code & ~field) | (bank_mask << offset[lender]);
    }

    std::uint64_t extract(std::uint64_t code, int lender) const {
        const int width = static_cast<int>(incoming[lender].size());
        return (code >> offset[lender]) & ((std::uint64_t(1) << width) - 1);
    }
};

// Lazily evaluated outcomes, keyed by the packed code.
template <class S>
class CodedCache {
public:
    CodedCache(const FinancialNetwork<S>& net, const PolicySpec<S>& policy, const ProfileCodec& codec)
        : net_(net), policy_(policy), codec_(codec) {}

    const ProfileOutcome<S>& outcome(std::uint64_t code) {
        auto it = cache_.find(code);
        if (it == cache_.end())
            it = cache_.emplace(code, evaluate_profile(net_, codec_.decode(code), policy_)).first;
        return it->second;
    }

private:
    const FinancialNetwork<S>& net_;
    PolicySpec<S> policy_;
    const ProfileCodec& codec_;
    std::unordered_map<std::uint64_t, ProfileOutcome<S>> cache_;
};

// Lazily evaluated outcomes keyed by the profile itself; no size limit.
template <class S>
class ProfileCache {
public:
    ProfileCache(const FinancialNetwork<S>& net, const PolicySpec<S>& policy)
        : net_(net), policy_(policy) {}

    const ProfileOutcome<S>& outcome(const StrategyProfile& profile) {
        auto it = cache_.find(profile.removed);
        if (it == cache_.end())
            it = cache_.emplace(profile.removed, evaluate_profile(net_, profile, policy_)).first;
        return it->second;
    }

private:
    const FinancialNetwork<S>& net_;
    PolicySpec<S> policy_;
    std::map<std::vector<std::vector<int>>, ProfileOutcome<S>> cache_;
};

// strategy_a beats strategy_b at equal utility: fewer removals, then the
// lexicographically smaller removed set (both are sorted borrower lists)
inline bool strategy_preferred(const std::vector<int>& strategy_a, const std::vector<int>& strategy_b) {
    if (strategy_a.size() != strategy_b.size()) return strategy_a.size() < strategy_b.size();
    return strategy_a < strategy_b;
}

// subsets of `incoming` in mask order; mask bit b picks incoming[b]
inline std::vector<int> subset_of(const std::vector<int>& incoming, std::uint64_t mask) {
    std::vector<int> out;
    for (std::size_t b = 0; b < incoming.size(); ++b)
        if (mask & (std::uint64_t(1) << b)) out.push_back(incoming[b]);
    return out;
}

// best strategy for one bank with everyone else held fixed
template <class S>
std::pair<std::vector<int>, S> best_bank_strategy(ProfileCache<S>& cache, const StrategyProfile& profile,
                                                  int bank, const std::vector<int>& incoming) {
    using T = scalar_traits<S>;
    StrategyProfile trial = profile;
    std::vector<int> best_strategy;
    S best_utility(0);
    bool first = true;
    for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << incoming.size()); ++mask) {
        trial.removed[bank] = subset_of(incoming, mask);
        const S& u = cache.outcome(trial).utilities[bank];
        if (first || T::lt(best_utility, u)) {
            best_strategy = trial.removed[bank];
            best_utility = u;
            first = false;
        } else if (T::eq(u, best_utility) && strategy_preferred(trial.removed[bank], best_strategy)) {
            best_strategy = trial.removed[bank];
        }
    }
    return {std::move(best_strategy), std::move(best_utility)};
}

} // namespace detail

template <class S>
struct BestResponse {
    std::vector<int> removed;  // borrowers of the bank's removed incoming edges
    S utility{0};
};

template <class S>
BestResponse<S> best_response(const FinancialNetwork<S>& net, const StrategyProfile& profile,
                              int bank, const PolicySpec<S>& policy) {
    require_valid(net);
    if (bank < 0 || bank >= net.size()) throw input_error("best_response: bank out of range");
    const auto incoming = incoming_borrowers(net, bank);
    if (incoming.size() > 20) throw guard_error("best_response: bank has more than 20 incoming edges");

    detail::ProfileCache<S> cache(net, policy);
    auto [strategy, utility] = detail::best_bank_strategy(cache, profile, bank, incoming);
    return {std::move(strategy), std::move(utility)};
}

template <class S>
struct Deviation {
    int bank;
    std::vector<int> removed;
    S utility;
};

template <class S>
struct EquilibriumCheck {
    bool equilibrium{true};
    std::optional<Deviation<S>> deviation;
};

template <class S>
EquilibriumCheck<S> is_equilibrium(const FinancialNetwork<S>& net, const StrategyProfile& profile,
                                   const PolicySpec<S>& policy) {
    using T = scalar_traits<S>;
    require_valid(net);
    detail::ProfileCache<S> cache(net, policy);
    const auto& base = cache.outcome(profile);
    for (int bank = 0; bank < net.size(); ++bank) {
        const auto incoming = incoming_borrowers(net, bank);
        if (incoming.empty()) continue;
        if (incoming.size() > 20)
            throw guard_error("is_equilibrium: bank has more than 20 incoming edges");
        auto [strategy, utility] = detail::best_bank_strategy(cache, profile, bank, incoming);
        if (T::lt(base.utilities[bank], utility))
            return {false, Deviation<S>{bank, std::move(strategy), std::move(utility)}};
    }
    return {true, std::nullopt};
}

struct DynamicsResult {
    enum class Kind { Equilibrium, Cycle, Truncated };
    Kind kind{Kind::Truncated};
    StrategyProfile final_profile;
    std::vector<StrategyProfile> cycle;  // visit order, first repeated state first
    long steps{0};
};

// Round-robin best-response dynamics with exact cycle detection.
template <class S>
DynamicsResult br_dynamics(const FinancialNetwork<S>& net, const StrategyProfile& start,
                           const PolicySpec<S>& policy, long max_steps = 1000) {
    using T = scalar_traits<S>;
    require_valid(net);
    std::vector<std::vector<int>> incoming(net.size());
    for (int j = 0; j < net.size(); ++j) {
        incoming[j] = incoming_borrowers(net, j);
        if (incoming[j].size() > 20)
            throw guard_error("br_dynamics: bank with more than 20 incoming edges");
    }

    detail::ProfileCache<S> cache(net, policy);
    StrategyProfile profile = start;
    std::map<std::vector<std::vector<int>>, int> seen{{profile.removed, 0}};
    std::vector<StrategyProfile> order{profile};

    DynamicsResult result;
    while (result.steps < max_steps) {
        bool moved = false;
        for (int bank = 0; bank < net.size(); ++bank) {
            if (incoming[bank].empty()) continue;
            const S current = cache.outcome(profile).utilities[bank];
            auto [strategy, utility] = detail::best_bank_strategy(cache, profile, bank, incoming[bank]);
            if (!T::lt(current, utility)) continue;

            profile.removed[bank] = std::move(strategy);
            ++result.steps;
            moved = true;
            auto it = seen.find(profile.removed);
            if (it != seen.end()) {
                result.kind = DynamicsResult::Kind::Cycle;
                for (std::size_t i = it->second; i < order.size(); ++i)
                    result.cycle.push_back(order[i]);
                result.final_profile = profile;
                return result;
            }
            seen.emplace(profile.removed, static_cast<int>(order.size()));
            order.push_back(profile);
            if (result.steps >= max_steps) break;
        }
        if (!moved) {
            result.kind = DynamicsResult::Kind::Equilibrium;
            result.final_profile = profile;
            return result;
        }
    }
    result.kind = DynamicsResult::Kind::Truncated;
    result.final_profile = profile;
    return result;
}

template <class S>
std::vector<StrategyProfile> enumerate_equilibria(const FinancialNetwork<S>& net,
                                                  const PolicySpec<S>& policy) {
    using T = scalar_traits<S>;
    require_valid(net);
    const auto codec = detail::ProfileCodec::build(net);
    if (codec.total_bits > 20)
        throw guard_error("enumerate_equilibria: profile space beyond 2^20");

    detail::CodedCache<S> cache(net, policy, codec);
    std::vector<StrategyProfile> equilibria;
    const std::uint64_t limit = std::uint64_t(1) << codec.total_bits;
    for (std::uint64_t code = 0; code < limit; ++code) {
        bool stable = true;
        for (int bank = 0; bank < net.size() && stable; ++bank) {
            const int width = static_cast<int>(codec.incoming[bank].size());
            if (width == 0) continue;
            const S current = cache.outcome(code).utilities[bank];
            for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << width) && stable; ++mask) {
                if (mask == codec.extract(code, bank)) continue;
                if (T::lt(current, cache.outcome(codec.replace(code, bank, mask)).utilities[bank]))
                    stable = false;
            }
        }
        if (stable) equilibria.push_back(codec.decode(code));
    }
    return equilibria;
}

// F_optimal ranges over every profile, the outcome a regulator could dictate.
template <class S>
GameReport<S> quality_report(const FinancialNetwork<S>& net, const PolicySpec<S>& policy) {
    using T = scalar_traits<S>;
    require_valid(net);
    const auto codec = detail::ProfileCodec::build(net);
    if (codec.total_bits > 20) throw guard_error("quality_report: profile space beyond 2^20");

    detail::CodedCache<S> cache(net, policy, codec);
    GameReport<S> report;
    report.f_original = cache.outcome(0).clearing.liquidity;

    const std::uint64_t limit = std::uint64_t(1) << codec.total_bits;
    bool first = true;
    for (std::uint64_t code = 0; code < limit; ++code) {
        const S f = cache.outcome(code).clearing.liquidity;
        if (first || T::lt(report.f_optimal, f)) report.f_optimal = f;
        first = false;

        bool stable = true;
        for (int bank = 0; bank < net.size() && stable; ++bank) {
            const int width = static_cast<int>(codec.incoming[bank].size());
            if (width == 0) continue;
            const S current = cache.outcome(code).utilities[bank];
            for (std::uint64_t mask = 0; mask < (std::uint64_t(1) << width) && stable; ++mask) {
                if (mask == codec.extract(code, bank)) continue;
                if (T::lt(current, cache.outcome(codec.replace(code, bank, mask)).utilities[bank]))
                    stable = false;
            }
        }
        if (stable) {
            report.equilibria.push_back(codec.decode(code));
            if (!report.f_worst_eq || T::lt(f, *report.f_worst_eq)) report.f_worst_eq = f;
            if (!report.f_best_eq || T::lt(*report.f_best_eq, f)) report.f_best_eq = f;
        }
    }

    if (report.equilibria.empty()) {
        report.poa = report.pos = report.eoa = report.eos = Ratio<S>::undefined();
    } else {
        report.poa = make_ratio(report.f_optimal, *report.f_worst_eq);
        report.pos = make_ratio(report.f_optimal, *report.f_best_eq);
        report.eoa = make_ratio(report.f_original, *report.f_worst_eq);
        report.eos = make_ratio(report.f_original, *report.f_best_eq);
    }
    return report;
}

} // namespace fnet

#endif
