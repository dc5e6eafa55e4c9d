#include <catch2/catch_amalgamated.hpp>

#include "fnet/games.hpp"
#include "fnet/random_nets.hpp"
#include "fnet/scenarios.hpp"

using fnet::FinancialNetwork;
using fnet::PolicySpec;
using fnet::Rational;
using fnet::StrategyProfile;
using fnet::frac;

namespace {

const Rational kEps = frac<Rational>(1, 100);

StrategyProfile profile_of(int n, std::initializer_list<std::pair<int, int>> removed) {
    StrategyProfile p = StrategyProfile::keep_all(n);
    for (auto [borrower, lender] : removed) p.removed[lender].push_back(borrower);
    return p;
}

FinancialNetwork<Rational> two_bank_cycle() {
    FinancialNetwork<Rational> net(2);
    net.liabilities(0, 1) = 1;
    net.liabilities(1, 0) = 1;
    return net;
}

} // namespace

TEST_CASE("utilities across the four states of the default-cost game") {
    const auto net = fnet::fig8<Rational>();
    const auto none = PolicySpec<Rational>::none();

    const auto state_a = fnet::utilities(net, StrategyProfile::keep_all(5), none);
    CHECK(state_a[0] == frac<Rational>(2, 5));
    CHECK(state_a[1] == frac<Rational>(2, 5));

    const auto state_b = fnet::utilities(net, profile_of(5, {{3, 0}}), none);
    CHECK(state_b[0] == frac<Rational>(8, 9));
    CHECK(state_b[1] == frac<Rational>(4, 9));

    const auto state_c = fnet::utilities(net, profile_of(5, {{3, 0}, {3, 1}}), none);
    CHECK(state_c[0] == frac<Rational>(8, 9));
    CHECK(state_c[1] == Rational(4));

    const auto state_d = fnet::utilities(net, profile_of(5, {{3, 1}}), none);
    CHECK(state_d[0] == frac<Rational>(10, 9));
    CHECK(state_d[1] == frac<Rational>(2, 9));
}

TEST_CASE("utilities under the greedy policy on the injection game") {
    const auto net = fnet::fig5<Rational>(kEps);
    const auto policy = PolicySpec<Rational>::greedy(Rational(2) - 3 * kEps);

    const auto state_a = fnet::utilities(net, StrategyProfile::keep_all(6), policy);
    CHECK(state_a[0] == frac<Rational>(1, 2) + kEps);
    CHECK(state_a[1] == 1);

    const auto state_b = fnet::utilities(net, profile_of(6, {{2, 1}}), policy);
    CHECK(state_b[0] == 1);
    CHECK(state_b[1] == Rational(2) - 2 * kEps);

    const auto state_c = fnet::utilities(net, profile_of(6, {{1, 0}, {2, 1}}), policy);
    CHECK(state_c[0] == Rational(2) - 2 * kEps);
    CHECK(state_c[1] == kEps);

    const auto state_d = fnet::utilities(net, profile_of(6, {{1, 0}}), policy);
    CHECK(state_d[0] == kEps);
    CHECK(state_d[1] == 1);
}

TEST_CASE("the optimal policy inside games needs trivial default costs") {
    const auto net = fnet::fig8<Rational>();
    CHECK_THROWS_AS(fnet::utilities(net, StrategyProfile::keep_all(5), PolicySpec<Rational>::optimal(Rational(1))),
                    fnet::input_error);
}

TEST_CASE("best responses on the default-cost game") {
    const auto net = fnet::fig8<Rational>();
    const auto none = PolicySpec<Rational>::none();

    // state B: v2 tears up its claim on v4 for utility 4
    const auto br = fnet::best_response(net, profile_of(5, {{3, 0}}), 1, none);
    CHECK(br.removed == std::vector<int>{3});
    CHECK(br.utility == 4);

    // v5's single incoming edge comes from a cash-rich borrower: keep it
    const auto keep = fnet::best_response(net, StrategyProfile::keep_all(5), 4, none);
    CHECK(keep.removed.empty());

    // v4 has no incoming edges at all
    const auto idle = fnet::best_response(net, StrategyProfile::keep_all(5), 3, none);
    CHECK(idle.removed.empty());
    CHECK(idle.utility == 8);
}

TEST_CASE("keep-all is an equilibrium without default costs") {
    for (std::uint64_t seed = 0; seed < 40; ++seed) {
        const auto net = fnet::random_network<Rational>(seed);
        const auto check = fnet::is_equilibrium(net, StrategyProfile::keep_all(net.size()),
                                                PolicySpec<Rational>::none());
        CHECK(check.equilibrium);
    }
}

TEST_CASE("the all-removed profile of a two-bank cycle is also an equilibrium") {
    const auto net = two_bank_cycle();
    const auto none = PolicySpec<Rational>::none();
    CHECK(fnet::is_equilibrium(net, profile_of(2, {{1, 0}, {0, 1}}), none).equilibrium);
    CHECK(fnet::is_equilibrium(net, StrategyProfile::keep_all(2), none).equilibrium);
    CHECK_FALSE(fnet::is_equilibrium(net, profile_of(2, {{1, 0}}), none).equilibrium);
}

TEST_CASE("keep-all fails on the default-cost game with a deviation witness") {
    const auto net = fnet::fig8<Rational>();
    const auto check =
        fnet::is_equilibrium(net, StrategyProfile::keep_all(5), PolicySpec<Rational>::none());
    REQUIRE_FALSE(check.equilibrium);
    REQUIRE(check.deviation);
    CHECK(check.deviation->bank == 0);
    CHECK(check.deviation->removed == std::vector<int>{3});
    CHECK(check.deviation->utility == frac<Rational>(8, 9));
}

TEST_CASE("best-response dynamics cycle through the four states") {
    const auto net = fnet::fig8<Rational>();
    const auto run = fnet::br_dynamics(net, StrategyProfile::keep_all(5),
                                       PolicySpec<Rational>::none(), 100);
    REQUIRE(run.kind == fnet::DynamicsResult::Kind::Cycle);
    REQUIRE(run.cycle.size() == 4);
    CHECK(run.cycle[0] == StrategyProfile::keep_all(5));
    CHECK(run.cycle[1] == profile_of(5, {{3, 0}}));
    CHECK(run.cycle[2] == profile_of(5, {{3, 0}, {3, 1}}));
    CHECK(run.cycle[3] == profile_of(5, {{3, 1}}));
}

TEST_CASE("injection game dynamics cycle as well") {
    const auto net = fnet::fig5<Rational>(kEps);
    const auto policy = PolicySpec<Rational>::greedy(Rational(2) - 3 * kEps);
    const auto run = fnet::br_dynamics(net, StrategyProfile::keep_all(6), policy, 100);
    REQUIRE(run.kind == fnet::DynamicsResult::Kind::Cycle);
    CHECK(run.cycle.size() == 4);
}

TEST_CASE("trees settle immediately at keep-all") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        fnet::RandomNetOptions opt;
        opt.random_costs = true;
        const auto net = fnet::random_tree<Rational>(seed, opt);
        const auto run = fnet::br_dynamics(net, StrategyProfile::keep_all(net.size()),
                                           PolicySpec<Rational>::none(), 50);
        REQUIRE(run.kind == fnet::DynamicsResult::Kind::Equilibrium);
        CHECK(run.final_profile == StrategyProfile::keep_all(net.size()));
    }
}

TEST_CASE("equilibrium enumeration matches the reference sets") {
    const auto none = PolicySpec<Rational>::none();
    CHECK(fnet::enumerate_equilibria(fnet::fig8<Rational>(), none).empty());

    const auto cycle_eq = fnet::enumerate_equilibria(two_bank_cycle(), none);
    REQUIRE(cycle_eq.size() == 2);
    CHECK(cycle_eq[0] == StrategyProfile::keep_all(2));
    CHECK(cycle_eq[1] == profile_of(2, {{1, 0}, {0, 1}}));

    const auto stability_eq = fnet::enumerate_equilibria(fnet::fig6<Rational>(Rational(100)), none);
    REQUIRE(stability_eq.size() == 1);
    CHECK(stability_eq[0] == StrategyProfile::keep_all(3));
}

TEST_CASE("no pure equilibrium exists in the injection game") {
    const auto net = fnet::fig5<Rational>(kEps);
    const auto policy = PolicySpec<Rational>::greedy(Rational(2) - 3 * kEps);
    CHECK(fnet::enumerate_equilibria(net, policy).empty());
}

TEST_CASE("quality report on the two-bank cycle has an unbounded effect of anarchy") {
    const auto report = fnet::quality_report(two_bank_cycle(), PolicySpec<Rational>::none());
    CHECK(report.f_original == 2);
    CHECK(report.f_optimal == 2);
    REQUIRE(report.f_worst_eq);
    CHECK(*report.f_worst_eq == 0);
    CHECK(report.eoa.kind == fnet::Ratio<Rational>::Kind::Infinite);
    CHECK(report.poa.kind == fnet::Ratio<Rational>::Kind::Infinite);
    CHECK(report.eos.kind == fnet::Ratio<Rational>::Kind::Finite);
    CHECK(report.eos.value == 1);
}

TEST_CASE("quality report reproduces the unbounded price of stability") {
    const auto report =
        fnet::quality_report(fnet::fig6<Rational>(Rational(100)), PolicySpec<Rational>::none());
    CHECK(report.f_optimal == 200);
    REQUIRE(report.f_best_eq);
    CHECK(*report.f_best_eq == 3);
    CHECK(report.pos.kind == fnet::Ratio<Rational>::Kind::Finite);
    CHECK(report.pos.value == frac<Rational>(200, 3));
}

TEST_CASE("chain with unit budget: keep-all pays n-1, an equilibrium pays 1") {
    const int n = 6;
    const auto net = fnet::fig7<Rational>(n);
    const auto policy = PolicySpec<Rational>::greedy(Rational(1));

    const auto keep_all = fnet::evaluate_profile(net, StrategyProfile::keep_all(n), policy);
    CHECK(keep_all.clearing.liquidity == n - 1);

    // everyone except v1 forgives its incoming debt
    StrategyProfile lonely = StrategyProfile::keep_all(n);
    for (int lender = 1; lender < n - 1; ++lender) lonely.removed[lender] = {lender + 1};
    const auto lonely_run = fnet::evaluate_profile(net, lonely, policy);
    CHECK(lonely_run.clearing.liquidity == 1);
    CHECK(fnet::is_equilibrium(net, lonely, policy).equilibrium);

    const auto report = fnet::quality_report(net, policy);
    CHECK(report.f_original == n - 1);
    REQUIRE(report.f_worst_eq);
    CHECK(*report.f_worst_eq == 1);
    CHECK(report.eoa.kind == fnet::Ratio<Rational>::Kind::Finite);
    CHECK(report.eoa.value == n - 1);
}

TEST_CASE("chain-and-shortcut game rewards the equilibrium over the original network") {
    const int n = 6;
    const Rational eps = frac<Rational>(1, 10);
    const auto net = fnet::fig9<Rational>(n, eps);
    const auto base = fnet::greatest_clearing(net);
    CHECK(base.payments(0, 1) == eps / 2);
    CHECK(base.payments(0, n - 1) == eps / 2);
    CHECK(base.liquidity < eps / (1 - eps));

    const auto report = fnet::quality_report(net, PolicySpec<Rational>::none());
    REQUIRE(report.f_best_eq);
    CHECK(*report.f_best_eq == n - 1);
    CHECK(report.f_original == base.liquidity);
}

TEST_CASE("a removal that helps the remover helps everyone without injections") {
    int checked = 0;
    for (std::uint64_t seed = 0; checked < 60; ++seed) {
        fnet::RandomNetOptions opt;
        opt.random_costs = true;
        const auto net = fnet::random_network<Rational>(seed, opt);
        fnet::SplitMix64 rng(seed * 31 + 7);

        StrategyProfile profile = StrategyProfile::keep_all(net.size());
        for (int lender = 0; lender < net.size(); ++lender)
            for (int borrower : fnet::incoming_borrowers(net, lender))
                if (rng.below(4) == 0) profile.removed[lender].push_back(borrower);

        // pick a unilateral extra removal
        std::vector<std::pair<int, int>> open;
        const auto current = fnet::apply_removals(net, profile);
        for (int lender = 0; lender < net.size(); ++lender)
            for (int borrower : fnet::incoming_borrowers(current, lender))
                open.push_back({borrower, lender});
        if (open.empty()) continue;
        const auto [borrower, lender] = open[rng.below(open.size())];
        auto deviated = profile;
        deviated.removed[lender].push_back(borrower);

        const auto none = PolicySpec<Rational>::none();
        const auto before = fnet::utilities(net, profile, none);
        const auto after = fnet::utilities(net, deviated, none);
        ++checked;
        if (after[lender] >= before[lender]) {
            for (int i = 0; i < net.size(); ++i) CHECK(after[i] >= before[i]);
            CHECK(fnet::evaluate_profile(net, deviated, none).clearing.liquidity >=
                  fnet::evaluate_profile(net, profile, none).clearing.liquidity);
        }
    }
}

TEST_CASE("equilibrium-free games report undefined ratios") {
    const auto report = fnet::quality_report(fnet::fig8<Rational>(), PolicySpec<Rational>::none());
    CHECK(report.equilibria.empty());
    CHECK(report.poa.kind == fnet::Ratio<Rational>::Kind::Undefined);
    CHECK(report.pos.kind == fnet::Ratio<Rational>::Kind::Undefined);
    CHECK(report.eoa.kind == fnet::Ratio<Rational>::Kind::Undefined);
    CHECK(report.eos.kind == fnet::Ratio<Rational>::Kind::Undefined);
    CHECK_FALSE(report.f_worst_eq);
}

TEST_CASE("quality ratios ignore uniform scaling of the money") {
    for (std::uint64_t seed = 300; seed < 315; ++seed) {
        fnet::RandomNetOptions opt;
        opt.max_banks = 4;
        opt.random_costs = (seed % 2 == 0);
        const auto net = fnet::random_network<Rational>(seed, opt);
        auto scaled = net;
        const Rational c = frac<Rational>(13, 4);
        for (int i = 0; i < net.size(); ++i) {
            scaled.externals[i] *= c;
            for (int j = 0; j < net.size(); ++j) scaled.liabilities(i, j) *= c;
        }
        const auto none = PolicySpec<Rational>::none();
        const auto base = fnet::quality_report(net, none);
        const auto big = fnet::quality_report(scaled, none);
        CHECK(base.equilibria == big.equilibria);
        CHECK(base.poa.kind == big.poa.kind);
        CHECK(base.eoa.kind == big.eoa.kind);
        if (base.poa.kind == fnet::Ratio<Rational>::Kind::Finite) CHECK(base.poa.value == big.poa.value);
        if (base.pos.kind == fnet::Ratio<Rational>::Kind::Finite) CHECK(base.pos.value == big.pos.value);
        if (base.eoa.kind == fnet::Ratio<Rational>::Kind::Finite) CHECK(base.eoa.value == big.eoa.value);
        if (base.eos.kind == fnet::Ratio<Rational>::Kind::Finite) CHECK(base.eos.value == big.eos.value);
    }
}

TEST_CASE("profile space guards trip on oversized games") {
    FinancialNetwork<Rational> net(8);
    for (int i = 1; i < 8; ++i)
        for (int j = 0; j < i; ++j) net.liabilities(i, j) = 1;  // 28 edges
    CHECK_THROWS_AS(fnet::enumerate_equilibria(net, PolicySpec<Rational>::none()), fnet::guard_error);
    CHECK_THROWS_AS(fnet::quality_report(net, PolicySpec<Rational>::none()), fnet::guard_error);
}

TEST_CASE("float mode walks the same best-response cycle") {
    FinancialNetwork<double> net(5);
    net.externals = {0, 0, 0, 8, 0};
    net.alpha = 0.25;
    net.beta = 0.25;
    net.liabilities(3, 0) = 1;
    net.liabilities(3, 1) = 1;
    net.liabilities(3, 2) = 4;
    net.liabilities(3, 4) = 4;
    net.liabilities(2, 1) = 4;
    net.liabilities(4, 0) = 8.0 / 9.0;

    const auto none = PolicySpec<double>::none();
    const auto keep_all = fnet::utilities(net, StrategyProfile::keep_all(5), none);
    CHECK(keep_all[0] == Catch::Approx(0.4).margin(1e-9));
    const auto run = fnet::br_dynamics(net, StrategyProfile::keep_all(5), none, 100);
    REQUIRE(run.kind == fnet::DynamicsResult::Kind::Cycle);
    CHECK(run.cycle.size() == 4);
    CHECK(fnet::enumerate_equilibria(net, none).empty());
}

TEST_CASE("per-bank operations scale past 64 total edges") {
    // a long chain: way more edges than fit a packed profile word, but each
    // bank has at most one incoming edge
    const int n = 70;
    FinancialNetwork<Rational> net(n);
    for (int i = 1; i < n; ++i) net.liabilities(i, i - 1) = 1;
    net.externals[n - 1] = 1;
    const auto none = PolicySpec<Rational>::none();
    const auto profile = StrategyProfile::keep_all(n);
    CHECK(fnet::utilities(net, profile, none)[0] == 1);
    const auto br = fnet::best_response(net, profile, 0, none);
    CHECK(br.removed.empty());
    CHECK(br.utility == 1);
}
