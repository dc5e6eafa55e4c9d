#ifndef FNET_RANDOM_NETS_HPP
#define FNET_RANDOM_NETS_HPP

// Seeded generators for the property ensembles. A hand-rolled splitmix64
// keeps draws identical across platforms and standard libraries, so seeded
// runs are reproducible everywhere.

#include <algorithm>
#include <cstdint>
#include <vector>

#include "fnet/network.hpp"

namespace fnet {

class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    // uniform in [0, bound)
    std::uint64_t below(std::uint64_t bound) {
        return static_cast<std::uint64_t>((static_cast<unsigned __int128>(next()) * bound) >> 64);
    }

private:
    std::uint64_t state_;
};

struct RandomNetOptions {
    int min_banks{2};
    int max_banks{6};
    long long max_value{10};     // externals and liabilities are integers in [0, max_value]
    int edge_percent{40};        // chance that an ordered pair carries debt
    bool random_costs{false};    // alpha, beta from {0, 1/4, 1/2, 3/4, 1}; otherwise 1
};

namespace detail {

template <class S>
S grid_cost(SplitMix64& rng) {
    return frac<S>(static_cast<long long>(rng.below(5)), 4);
}

} // namespace detail

template <class S>
FinancialNetwork<S> random_network(std::uint64_t seed, const RandomNetOptions& opt = {}) {
    SplitMix64 rng(seed);
    const int n = opt.min_banks + static_cast<int>(rng.below(opt.max_banks - opt.min_banks + 1));
    FinancialNetwork<S> net(n);
    for (int i = 0; i < n; ++i)
        net.externals[i] = S(static_cast<long long>(rng.below(opt.max_value + 1)));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            if (i == j) continue;
            if (rng.below(100) < static_cast<std::uint64_t>(opt.edge_percent))
                net.liabilities(i, j) = S(1 + static_cast<long long>(rng.below(opt.max_value)));
        }
    if (opt.random_costs) {
        net.alpha = detail::grid_cost<S>(rng);
        net.beta = detail::grid_cost<S>(rng);
    }
    return net;
}

// Underlying undirected graph is a uniform random tree; each edge gets a
// random orientation.
template <class S>
FinancialNetwork<S> random_tree(std::uint64_t seed, const RandomNetOptions& opt = {}) {
    SplitMix64 rng(seed);
    const int n = opt.min_banks + static_cast<int>(rng.below(opt.max_banks - opt.min_banks + 1));
    FinancialNetwork<S> net(n);
    for (int i = 0; i < n; ++i)
        net.externals[i] = S(static_cast<long long>(rng.below(opt.max_value + 1)));
    for (int v = 1; v < n; ++v) {
        const int parent = static_cast<int>(rng.below(v));
        const S amount = S(1 + static_cast<long long>(rng.below(opt.max_value)));
        if (rng.below(2) == 0)
            net.liabilities(v, parent) = amount;
        else
            net.liabilities(parent, v) = amount;
    }
    if (opt.random_costs) {
        net.alpha = detail::grid_cost<S>(rng);
        net.beta = detail::grid_cost<S>(rng);
    }
    return net;
}

template <class S>
FinancialNetwork<S> random_cycle(std::uint64_t seed, const RandomNetOptions& opt = {}) {
    SplitMix64 rng(seed);
    const int lo = std::max(3, opt.min_banks);
    const int n = lo + static_cast<int>(rng.below(opt.max_banks - lo + 1));
    FinancialNetwork<S> net(n);
    for (int i = 0; i < n; ++i)
        net.externals[i] = S(static_cast<long long>(rng.below(opt.max_value + 1)));
    for (int i = 0; i < n; ++i)
        net.liabilities(i, (i + 1) % n) = S(1 + static_cast<long long>(rng.below(opt.max_value)));
    if (opt.random_costs) {
        net.alpha = detail::grid_cost<S>(rng);
        net.beta = detail::grid_cost<S>(rng);
    }
    return net;
}

} // namespace fnet

#endif
