#ifndef FNET_ANALYTICS_HPP
#define FNET_ANALYTICS_HPP

// Liquidity measures and the threat index. The threat index of a solvent
// bank is 0; for the defaulting set D it solves
//     (I_{DxD} - Pi_{DxD}) mu_D = 1_D
// over the relative liabilities of the current network. A closed defaulting
// cycle that pays only to itself makes the system singular; that is
// reported as an explicit error rather than patched over.

#include <string>
#include <vector>

#include "fnet/clearing.hpp"
#include "fnet/network.hpp"

namespace fnet {

template <class S>
S liquidity(const Matrix<S>& payments) {
    S sum(0);
    for (int i = 0; i < payments.rows(); ++i)
        for (int j = 0; j < payments.cols(); ++j) sum += payments(i, j);
    return sum;
}

template <class S>
S increased_liquidity(const ClearingResult<S>& before, const ClearingResult<S>& after) {
    if (before.payments.rows() != after.payments.rows())
        throw input_error("increased_liquidity: dimension mismatch");
    return after.liquidity - before.liquidity;
}

template <class S>
std::vector<S> threat_index(const FinancialNetwork<S>& net, const ClearingResult<S>& clearing) {
    require_valid(net);
    const int n = net.size();
    if (static_cast<int>(clearing.assets.size()) != n)
        throw input_error("threat_index: clearing does not match network");

    std::vector<S> mu(n, S(0));
    const auto& defaults = clearing.defaults;
    if (defaults.empty()) return mu;

    const auto pi = relative_liabilities(net);
    const int k = static_cast<int>(defaults.size());
    Matrix<S> a(k, k, S(0));
    std::vector<S> rhs(k, S(1));
    for (int r = 0; r < k; ++r)
        for (int c = 0; c < k; ++c)
            a(r, c) = (r == c ? S(1) : S(0)) - pi(defaults[r], defaults[c]);
    auto solved = solve_linear(a, rhs);
    if (!solved)
        throw numeric_error("threat_index: singular system (defaulting cycle pays only to itself)");
    for (int r = 0; r < k; ++r) mu[defaults[r]] = (*solved)[r];
    return mu;
}

} // namespace fnet

#endif
