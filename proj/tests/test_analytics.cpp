#include <catch2/catch_amalgamated.hpp>

#include "fnet/analytics.hpp"
#include "fnet/random_nets.hpp"
#include "fnet/scenarios.hpp"

using fnet::FinancialNetwork;
using fnet::Rational;
using fnet::frac;

TEST_CASE("liquidity sums every payment") {
    const auto res = fnet::greatest_clearing(fnet::fig1<Rational>());
    CHECK(fnet::liquidity(res.payments) == frac<Rational>(48, 5));
    fnet::Matrix<Rational> zero(4, 4, Rational(0));
    CHECK(fnet::liquidity(zero) == 0);
}

TEST_CASE("keep-all liquidity of the stability example is 3") {
    const auto net = fnet::fig6<Rational>(Rational(100));
    CHECK(fnet::greatest_clearing(net).liquidity == 3);
}

TEST_CASE("increased liquidity subtracts in order") {
    const auto net = fnet::fig1<Rational>();
    const auto before = fnet::greatest_clearing(net);
    CHECK(fnet::increased_liquidity(before, before) == 0);

    fnet::InjectionPlan<Rational> optimal;
    optimal.budget = frac<Rational>(8, 5);
    optimal.transfers.push_back({3, frac<Rational>(8, 5)});
    const auto after = fnet::greatest_clearing(fnet::inject_externals(net, optimal));
    CHECK(fnet::increased_liquidity(before, after) == frac<Rational>(16, 5));  // 3.2
    CHECK(fnet::increased_liquidity(after, before) == -frac<Rational>(16, 5));
}

TEST_CASE("increased liquidity rejects mismatched shapes") {
    const auto a = fnet::greatest_clearing(fnet::fig1<Rational>());
    const auto b = fnet::greatest_clearing(fnet::fig6<Rational>(Rational(10)));
    CHECK_THROWS_AS(fnet::increased_liquidity(a, b), fnet::input_error);
}

TEST_CASE("threat indices of the bailout example") {
    const auto net = fnet::fig1<Rational>();
    const auto mu = fnet::threat_index(net, fnet::greatest_clearing(net));
    CHECK(mu == std::vector<Rational>{Rational(0), Rational(1), Rational(2), Rational(2), Rational(0)});
}

TEST_CASE("threat indices of the no-equilibrium injection example") {
    const auto net = fnet::fig5<Rational>(frac<Rational>(1, 100));
    const auto mu = fnet::threat_index(net, fnet::greatest_clearing(net));
    CHECK(mu[0] == 1);
    CHECK(mu[1] == frac<Rational>(3, 2));
    CHECK(mu[2] == frac<Rational>(7, 4));
    CHECK(mu[3] == 0);
    CHECK(mu[4] == 0);
    CHECK(mu[5] == 0);
}

TEST_CASE("chain threat indices telescope") {
    const int n = 6;
    const auto net = fnet::fig7<Rational>(n);
    const auto mu = fnet::threat_index(net, fnet::greatest_clearing(net));
    CHECK(mu[0] == 0);
    for (int i = 1; i < n; ++i) CHECK(mu[i] == i);
}

TEST_CASE("an all-solvent network has a zero threat vector") {
    FinancialNetwork<Rational> net(3);
    net.externals = {Rational(5), Rational(5), Rational(5)};
    net.liabilities(0, 1) = 1;
    net.liabilities(1, 2) = 1;
    const auto mu = fnet::threat_index(net, fnet::greatest_clearing(net));
    CHECK(mu == std::vector<Rational>(3, Rational(0)));
}

TEST_CASE("defaulting banks carry threat at least one") {
    for (std::uint64_t seed = 0; seed < 80; ++seed) {
        const auto net = fnet::random_network<Rational>(seed);
        const auto clearing = fnet::greatest_clearing(net);
        const auto mu = fnet::threat_index(net, clearing);
        for (int i = 0; i < net.size(); ++i) {
            if (clearing.in_default(i))
                CHECK(mu[i] >= 1);
            else
                CHECK(mu[i] == 0);
        }
    }
}

TEST_CASE("threat vector ignores uniform scaling of money") {
    for (std::uint64_t seed = 100; seed < 130; ++seed) {
        const auto net = fnet::random_network<Rational>(seed);
        auto scaled = net;
        const Rational c = frac<Rational>(9, 2);
        for (int i = 0; i < net.size(); ++i) {
            scaled.externals[i] *= c;
            for (int j = 0; j < net.size(); ++j) scaled.liabilities(i, j) *= c;
        }
        CHECK(fnet::threat_index(net, fnet::greatest_clearing(net)) ==
              fnet::threat_index(scaled, fnet::greatest_clearing(scaled)));
    }
}

TEST_CASE("a closed defaulting cycle has no finite threat index") {
    // with beta < 1 the pair defaults while paying only each other, so the
    // threat system (I - Pi) mu = 1 is singular
    FinancialNetwork<Rational> net(2);
    net.alpha = frac<Rational>(1, 4);
    net.beta = frac<Rational>(1, 4);
    net.externals = {frac<Rational>(1, 10), frac<Rational>(1, 10)};
    net.liabilities(0, 1) = 4;
    net.liabilities(1, 0) = 2;
    const auto clearing = fnet::greatest_clearing(net);
    REQUIRE(clearing.defaults.size() == 2);
    CHECK_THROWS_AS(fnet::threat_index(net, clearing), fnet::numeric_error);
}
