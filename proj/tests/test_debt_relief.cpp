#include <catch2/catch_amalgamated.hpp>

#include "fnet/debt_relief.hpp"
#include "fnet/random_nets.hpp"
#include "fnet/scenarios.hpp"

using fnet::EdgeSet;
using fnet::FinancialNetwork;
using fnet::Rational;
using fnet::RemovalKind;
using fnet::RemovalObjective;
using fnet::frac;

TEST_CASE("forgiving v4's debt to v5 raises liquidity on the bailout example") {
    const auto net = fnet::fig1<Rational>();
    const auto keep_all = fnet::greatest_clearing(net).liquidity;
    const auto run = fnet::optimal_removal(net, {RemovalKind::MaxLiquidity});
    CHECK(run.removed == EdgeSet{{3, 4}});
    CHECK(run.value > keep_all);
    CHECK(run.value == frac<Rational>(56, 5));  // v4 solvent, v3 solvent, v2 pays 5.2
}

TEST_CASE("greedy removal picks the same first edge here") {
    const auto run = fnet::greedy_removal(fnet::fig1<Rational>());
    REQUIRE_FALSE(run.removed.empty());
    CHECK(run.removed[0] == fnet::Edge{3, 4});
}

TEST_CASE("a solvent network keeps every edge") {
    FinancialNetwork<Rational> net(3);
    net.externals = {Rational(5), Rational(5), Rational(5)};
    net.liabilities(0, 1) = 2;
    net.liabilities(1, 2) = 2;
    CHECK(fnet::optimal_removal(net, {RemovalKind::MaxLiquidity}).removed.empty());
    CHECK(fnet::greedy_removal(net).removed.empty());
}

TEST_CASE("subset-sum gadget: minimum forgiven debt is the complement of the best subset") {
    const auto net = fnet::gadget_subset_sum<Rational>({2, 3, 5}, 5);
    const auto run =
        fnet::optimal_removal(net, {RemovalKind::MinForgivenTargetSolvent, 0});
    CHECK(run.value == 5);
    CHECK(run.removed == EdgeSet{{0, 3}});  // keep the 2 and 3 edges, forgive the 5
    CHECK_FALSE(run.clearing.in_default(0));

    // independent oracle: scan all 8 keep/remove patterns directly
    const auto edges = fnet::edges_of(net);
    Rational best_forgiven(-1);
    for (std::uint32_t mask = 0; mask < 8; ++mask) {
        auto trimmed = net;
        Rational forgiven(0);
        for (int b = 0; b < 3; ++b)
            if (mask & (1u << b)) {
                forgiven += net.liabilities(edges[b].borrower, edges[b].lender);
                trimmed.liabilities(edges[b].borrower, edges[b].lender) = 0;
            }
        if (fnet::greatest_clearing(trimmed).in_default(0)) continue;
        if (best_forgiven < 0 || forgiven < best_forgiven) best_forgiven = forgiven;
    }
    CHECK(run.value == best_forgiven);
}

TEST_CASE("all-solvent objectives always have the empty-network fallback") {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        fnet::RandomNetOptions opt;
        opt.max_banks = 4;
        opt.random_costs = true;
        const auto net = fnet::random_network<Rational>(seed, opt);
        const auto run = fnet::optimal_removal(net, {RemovalKind::MinForgivenAllSolvent});
        CHECK(run.clearing.defaults.empty());
        Rational forgiven(0);
        for (const auto& e : run.removed) forgiven += net.liabilities(e.borrower, e.lender);
        CHECK(run.value == forgiven);
    }
}

TEST_CASE("max liquidity with solvency pays for the constraint") {
    for (std::uint64_t seed = 40; seed < 60; ++seed) {
        fnet::RandomNetOptions opt;
        opt.max_banks = 4;
        opt.random_costs = true;
        const auto net = fnet::random_network<Rational>(seed, opt);
        const auto free = fnet::optimal_removal(net, {RemovalKind::MaxLiquidity});
        const auto constrained = fnet::optimal_removal(net, {RemovalKind::MaxLiquidityAllSolvent});
        CHECK(constrained.clearing.defaults.empty());
        CHECK(free.value >= constrained.value);
    }
}

TEST_CASE("exact search dominates keep-all and the greedy baseline") {
    for (std::uint64_t seed = 100; seed < 130; ++seed) {
        fnet::RandomNetOptions opt;
        opt.max_banks = 4;
        opt.random_costs = (seed % 2 == 0);
        const auto net = fnet::random_network<Rational>(seed, opt);
        if (fnet::edges_of(net).size() > 12) continue;
        const auto best = fnet::optimal_removal(net, {RemovalKind::MaxLiquidity});
        CHECK(best.value >= fnet::greatest_clearing(net).liquidity);
        CHECK(best.value >= fnet::greedy_removal(net).clearing.liquidity);
    }
}

TEST_CASE("greedy removal never lowers liquidity, gadget included") {
    const auto net = fnet::gadget_rxc3<Rational>(1, {{{1, 2, 3}}, {{1, 2, 3}}, {{1, 2, 3}}}, Rational(1000));
    const auto keep_all = fnet::greatest_clearing(net).liquidity;
    const auto run = fnet::greedy_removal(net);
    CHECK(run.clearing.liquidity >= keep_all);
}

TEST_CASE("the candidate guard refuses oversized searches") {
    FinancialNetwork<Rational> net(6);
    net.alpha = frac<Rational>(1, 2);
    net.beta = frac<Rational>(1, 2);
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j)
            if (i != j) net.liabilities(i, j) = 1;  // 30 edges
    CHECK_THROWS_AS(fnet::optimal_removal(net, {RemovalKind::MaxLiquidity}), fnet::guard_error);
}

TEST_CASE("target objective validates the bank index") {
    const auto net = fnet::fig1<Rational>();
    CHECK_THROWS_AS(fnet::optimal_removal(net, {RemovalKind::MinForgivenTargetSolvent, 17}),
                    fnet::input_error);
}
