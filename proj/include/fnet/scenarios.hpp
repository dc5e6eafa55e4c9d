#ifndef FNET_SCENARIOS_HPP
#define FNET_SCENARIOS_HPP

// Worked instances and hardness gadgets as network constructors. Each
// instance is pinned down by the verification tests, which re-derive its
// reference payments, threat indices and utilities before anything else
// relies on it.

#include <array>
#include <string>
#include <vector>

#include "fnet/network.hpp"

namespace fnet {

// 5 banks; v2, v3, v4 default; canonical bailout example.
template <class S>
FinancialNetwork<S> fig1() {
    FinancialNetwork<S> net(5);
    net.externals = {S(0), frac<S>(12, 10), frac<S>(22, 10), S(2), S(0)};
    net.liabilities(1, 0) = S(6);
    net.liabilities(2, 1) = S(4);
    net.liabilities(3, 2) = S(2);
    net.liabilities(3, 4) = S(2);
    return net;
}

// 6 banks, no default costs; with greedy injections and budget 2 - 3 eps
// the edge-removal game has no pure equilibrium.
template <class S>
FinancialNetwork<S> fig5(const S& eps) {
    if (!(eps > S(0)) || !(eps < frac<S>(1, 3))) throw input_error("fig5: eps must be in (0, 1/3)");
    FinancialNetwork<S> net(6);
    net.externals = {eps, eps, eps, S(0), S(0), S(0)};
    net.liabilities(0, 3) = S(2);  // v1 -> v4
    net.liabilities(1, 0) = S(1);  // v2 -> v1
    net.liabilities(1, 4) = S(1);  // v2 -> v5
    net.liabilities(2, 1) = S(1);  // v3 -> v2
    net.liabilities(2, 5) = S(1);  // v3 -> v6
    return net;
}

// 3 banks; unbounded price of stability as Z grows.
template <class S>
FinancialNetwork<S> fig6(const S& z) {
    if (!(z >= S(3))) throw input_error("fig6: Z must be at least 3");
    FinancialNetwork<S> net(3);
    net.externals = {S(1), S(0), S(0)};
    net.liabilities(0, 1) = z;
    net.liabilities(0, 2) = z;
    net.liabilities(1, 0) = z;
    return net;
}

// Directed chain v_n -> ... -> v_1, unit liabilities, no externals.
template <class S>
FinancialNetwork<S> fig7(int n) {
    if (n < 3) throw input_error("fig7: need at least 3 banks");
    FinancialNetwork<S> net(n);
    for (int i = 1; i < n; ++i) net.liabilities(i, i - 1) = S(1);
    return net;
}

// 5 banks with default costs 1/4; the plain edge-removal game cycles.
template <class S>
FinancialNetwork<S> fig8() {
    FinancialNetwork<S> net(5);
    net.externals = {S(0), S(0), S(0), S(8), S(0)};
    net.alpha = frac<S>(1, 4);
    net.beta = frac<S>(1, 4);
    net.liabilities(3, 0) = S(1);        // v4 -> v1
    net.liabilities(3, 1) = S(1);        // v4 -> v2
    net.liabilities(3, 2) = S(4);        // v4 -> v3
    net.liabilities(3, 4) = S(4);        // v4 -> v5
    net.liabilities(2, 1) = S(4);        // v3 -> v2
    net.liabilities(4, 0) = frac<S>(8, 9);  // v5 -> v1
    return net;
}

// v1 owes both v2 and v_n; a chain v2 -> ... -> v_n; default costs eps.
template <class S>
FinancialNetwork<S> fig9(int n, const S& eps) {
    if (n < 3) throw input_error("fig9: need at least 3 banks");
    if (!(eps > S(0)) || !(eps < S(1))) throw input_error("fig9: eps must be in (0, 1)");
    FinancialNetwork<S> net(n);
    net.externals[0] = S(1);
    net.alpha = eps;
    net.beta = eps;
    net.liabilities(0, 1) = S(1);
    net.liabilities(0, n - 1) = S(1);
    for (int i = 1; i + 1 < n; ++i) net.liabilities(i, i + 1) = S(1);
    return net;
}

// The tight greedy-vs-optimal family: a path out of v whose threat index is
// mu_v, and a split node w tuned so that mu_w = mu_v. Bank order: v, the
// path nodes, then u, w, z, so greedy's smallest-index tie-break feeds v
// first. All externals are zero.
template <class S>
FinancialNetwork<S> greedy_family(const S& mu_v, const S& t1) {
    if (!(mu_v >= S(2))) throw input_error("greedy_family: mu_v must be at least 2");
    if (!(t1 > S(0))) throw input_error("greedy_family: t1 must be positive");

    long long floor_mu = static_cast<long long>(scalar_traits<S>::to_double(mu_v));
    while (S(floor_mu) > mu_v) --floor_mu;
    while (S(floor_mu + 1) <= mu_v) ++floor_mu;
    const bool integral = (S(floor_mu) == mu_v);
    const long long ceil_mu = integral ? floor_mu : floor_mu + 1;

    const S a = integral ? t1 : (mu_v - S(floor_mu)) * t1;
    const S b = t1 - a;

    const int path_len = static_cast<int>(ceil_mu);  // nodes v_1..v_ceil
    const int v = 0;
    const int u = path_len + 1;
    const int w = path_len + 2;
    const int z = path_len + 3;
    FinancialNetwork<S> net(path_len + 4);

    // path v -> v_1 -> ... -> v_ceil; first floor(mu)-1 edges carry t1
    for (int k = 0; k < path_len; ++k) {
        const int from = k;      // v is 0, v_i is i
        const int to = k + 1;
        net.liabilities(from, to) = (k < floor_mu - 1) ? t1 : a;
    }
    if (b > S(0)) net.liabilities(static_cast<int>(floor_mu) - 1, u) = b;
    net.liabilities(w, v) = t1;
    net.liabilities(w, z) = t1 / (mu_v - S(1));
    return net;
}

// Exact-cover gadget with a large liability Z from every set agent to S.
// Triples are 1-based over the element set {1, .., 3k}; each element must
// appear in exactly three triples. Bank order: s_1..s_3k, t_1..t_3k, S, T.
template <class S>
FinancialNetwork<S> gadget_rxc3(int k, const std::vector<std::array<int, 3>>& triples, const S& z) {
    if (k < 1) throw input_error("gadget_rxc3: k must be positive");
    const int elements = 3 * k;
    if (static_cast<int>(triples.size()) != elements)
        throw input_error("gadget_rxc3: need exactly 3k triples");
    std::vector<int> occurrences(elements + 1, 0);
    for (const auto& t : triples)
        for (int x : t) {
            if (x < 1 || x > elements) throw input_error("gadget_rxc3: element out of range");
            ++occurrences[x];
        }
    for (int x = 1; x <= elements; ++x)
        if (occurrences[x] != 3)
            throw input_error("gadget_rxc3: element " + std::to_string(x) +
                              " appears " + std::to_string(occurrences[x]) + " times, want 3");

    const int n = 2 * elements + 2;
    const int big_s = 2 * elements;
    const int big_t = 2 * elements + 1;
    FinancialNetwork<S> net(n);
    for (int i = 0; i < elements; ++i) {
        net.externals[i] = S(4);
        for (int x : triples[i]) net.liabilities(i, elements + x - 1) += S(1);
        net.liabilities(i, big_s) = z;
    }
    for (int x = 0; x < elements; ++x) net.liabilities(elements + x, big_t) = S(1);
    return net;
}

// Partition gadget: v_i with externals x_i owing 4x_i/3 to S and 2x_i/3 to
// T, S owing (2+alpha)/3 * sum(x) to L. Bank order: v_1..v_k, S, T, L.
template <class S>
FinancialNetwork<S> gadget_partition(const std::vector<long long>& xs, const S& alpha) {
    if (xs.empty()) throw input_error("gadget_partition: empty element set");
    if (!(alpha >= S(0)) || !(alpha < S(1)))
        throw input_error("gadget_partition: alpha must be in [0, 1)");
    const int k = static_cast<int>(xs.size());
    const int big_s = k, big_t = k + 1, big_l = k + 2;
    FinancialNetwork<S> net(k + 3);
    net.alpha = alpha;
    net.beta = S(1);
    S total(0);
    for (int i = 0; i < k; ++i) {
        if (xs[i] <= 0) throw input_error("gadget_partition: elements must be positive");
        const S e = S(xs[i]);
        net.externals[i] = e;
        net.liabilities(i, big_s) = S(4) * e / S(3);
        net.liabilities(i, big_t) = S(2) * e / S(3);
        total += e;
    }
    net.liabilities(big_s, big_l) = (S(2) + alpha) * total / S(3);
    return net;
}

// Subset-sum gadget: v_0 with externals t owes x_i to each v_i. Forgiving
// debt down to t is exactly the subset-sum question. Default costs 1/2 keep
// the instance in the with-default-costs regime.
template <class S>
FinancialNetwork<S> gadget_subset_sum(const std::vector<long long>& xs, long long target) {
    if (xs.empty()) throw input_error("gadget_subset_sum: empty element set");
    if (target < 0) throw input_error("gadget_subset_sum: negative target");
    const int k = static_cast<int>(xs.size());
    FinancialNetwork<S> net(k + 1);
    net.alpha = frac<S>(1, 2);
    net.beta = frac<S>(1, 2);
    net.externals[0] = S(target);
    for (int i = 0; i < k; ++i) {
        if (xs[i] <= 0) throw input_error("gadget_subset_sum: elements must be positive");
        net.liabilities(0, i + 1) = S(xs[i]);
    }
    return net;
}

// Exact-cover-by-3-sets gadget for integer payments: u_i owes 1 to each
// element agent of its triple, each element agent owes 1 to T; no externals.
// Bank order: u_1..u_m, t_1..t_3k, T.
template <class S>
FinancialNetwork<S> gadget_x3c(int k, const std::vector<std::array<int, 3>>& triples) {
    if (k < 1) throw input_error("gadget_x3c: k must be positive");
    const int elements = 3 * k;
    const int m = static_cast<int>(triples.size());
    if (m < 1) throw input_error("gadget_x3c: need at least one triple");
    const int big_t = m + elements;
    FinancialNetwork<S> net(m + elements + 1);
    for (int i = 0; i < m; ++i)
        for (int x : triples[i]) {
            if (x < 1 || x > elements) throw input_error("gadget_x3c: element out of range");
            net.liabilities(i, m + x - 1) += S(1);
        }
    for (int x = 0; x < elements; ++x) net.liabilities(m + x, big_t) = S(1);
    return net;
}

// Equilibrium-computation gadget: v_i owes x_i to each of S and T, T owes
// sum/2 + 1/4 to S, default costs 1/sum. S's best response encodes the
// partition question. Bank order: v_1..v_k, S, T.
template <class S>
FinancialNetwork<S> gadget_ne_hardness(const std::vector<long long>& xs) {
    if (xs.empty()) throw input_error("gadget_ne_hardness: empty element set");
    const int k = static_cast<int>(xs.size());
    const int big_s = k, big_t = k + 1;
    FinancialNetwork<S> net(k + 2);
    S total(0);
    for (int i = 0; i < k; ++i) {
        if (xs[i] <= 0) throw input_error("gadget_ne_hardness: elements must be positive");
        const S e = S(xs[i]);
        net.externals[i] = e;
        net.liabilities(i, big_s) = e;
        net.liabilities(i, big_t) = e;
        total += e;
    }
    net.alpha = S(1) / total;
    net.beta = S(1) / total;
    net.liabilities(big_t, big_s) = total / S(2) + frac<S>(1, 4);
    return net;
}

} // namespace fnet

#endif
