#ifndef FNET_NETWORK_HPP
#define FNET_NETWORK_HPP

// Financial-network data model: banks with external assets, a liability
// matrix, and default costs (alpha, beta). Plus the two network
// transformations the rest of the library builds on: edge removal and
// external-asset injection. Everything is a value; operations are pure.

#include <algorithm>
#include <string>
#include <vector>

#include "fnet/linalg.hpp"
#include "fnet/scalar.hpp"

namespace fnet {

template <class S>
struct FinancialNetwork {
    std::vector<S> externals;   // e_i >= 0
    Matrix<S> liabilities;      // l_ij >= 0, zero diagonal
    S alpha{1};                 // usable fraction of external assets in default
    S beta{1};                  // usable fraction of incoming payments in default

    FinancialNetwork() = default;
    explicit FinancialNetwork(int n)
        : externals(n, S(0)), liabilities(n, n, S(0)) {}

    int size() const { return static_cast<int>(externals.size()); }

    // L_i, the total liabilities of bank i
    S total_liability(int i) const {
        S sum(0);
        for (int j = 0; j < size(); ++j) sum += liabilities(i, j);
        return sum;
    }

    std::vector<S> total_liabilities() const {
        std::vector<S> out(size());
        for (int i = 0; i < size(); ++i) out[i] = total_liability(i);
        return out;
    }
};

// A liability edge, borrower pays lender.
struct Edge {
    int borrower;
    int lender;

    friend bool operator==(const Edge& a, const Edge& b) {
        return a.borrower == b.borrower && a.lender == b.lender;
    }
    friend bool operator<(const Edge& a, const Edge& b) {
        if (a.borrower != b.borrower) return a.borrower < b.borrower;
        return a.lender < b.lender;
    }
};

using EdgeSet = std::vector<Edge>;  // kept sorted

template <class S>
EdgeSet edges_of(const FinancialNetwork<S>& net) {
    EdgeSet edges;
    for (int i = 0; i < net.size(); ++i)
        for (int j = 0; j < net.size(); ++j)
            if (net.liabilities(i, j) > S(0)) edges.push_back({i, j});
    return edges;
}

// Per lender j, the set of borrowers whose edge into j has been removed.
// A bank may only remove its own incoming edges.
struct StrategyProfile {
    std::vector<std::vector<int>> removed;

    static StrategyProfile keep_all(int n) {
        StrategyProfile p;
        p.removed.assign(n, {});
        return p;
    }

    int size() const { return static_cast<int>(removed.size()); }

    bool removes(int borrower, int lender) const {
        const auto& r = removed[lender];
        return std::find(r.begin(), r.end(), borrower) != r.end();
    }

    EdgeSet removed_edges() const {
        EdgeSet out;
        for (int j = 0; j < size(); ++j)
            for (int i : removed[j]) out.push_back({i, j});
        std::sort(out.begin(), out.end());
        return out;
    }

    friend bool operator==(const StrategyProfile& a, const StrategyProfile& b) {
        return a.removed == b.removed;
    }
};

template <class S>
struct Transfer {
    int bank;
    S amount;
};

// An ordered sequence of (bank, amount) transfers under a total budget.
template <class S>
struct InjectionPlan {
    std::vector<Transfer<S>> transfers;
    S budget{0};

    S total() const {
        S sum(0);
        for (const auto& t : transfers) sum += t.amount;
        return sum;
    }
};

enum class ViolationKind {
    NegativeExternal,
    NegativeLiability,
    NonzeroDiagonal,
    AlphaOutOfRange,
    BetaOutOfRange,
    NonFiniteValue,
};

struct Violation {
    ViolationKind kind;
    int bank;         // primary bank index, -1 when not applicable
    int other;        // lender index for liability violations, else -1
    std::string message;
};

template <class S>
std::vector<Violation> validate_network(const FinancialNetwork<S>& net) {
    using T = scalar_traits<S>;
    std::vector<Violation> out;
    const int n = net.size();
    if (net.liabilities.rows() != n || net.liabilities.cols() != n) {
        out.push_back({ViolationKind::NonFiniteValue, -1, -1, "liability matrix shape does not match bank count"});
        return out;
    }
    for (int i = 0; i < n; ++i) {
        if (!T::is_finite(net.externals[i]))
            out.push_back({ViolationKind::NonFiniteValue, i, -1, "external assets of bank " + std::to_string(i) + " are not finite"});
        else if (net.externals[i] < S(0))
            out.push_back({ViolationKind::NegativeExternal, i, -1, "negative external assets at bank " + std::to_string(i)});
    }
    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const S& l = net.liabilities(i, j);
            if (!T::is_finite(l)) {
                out.push_back({ViolationKind::NonFiniteValue, i, j, "liability (" + std::to_string(i) + "," + std::to_string(j) + ") is not finite"});
            } else if (l < S(0)) {
                out.push_back({ViolationKind::NegativeLiability, i, j, "negative liability (" + std::to_string(i) + "," + std::to_string(j) + ")"});
            } else if (i == j && l != S(0)) {
                out.push_back({ViolationKind::NonzeroDiagonal, i, j, "nonzero self-liability at bank " + std::to_string(i)});
            }
        }
    }
    if (net.alpha < S(0) || net.alpha > S(1))
        out.push_back({ViolationKind::AlphaOutOfRange, -1, -1, "alpha out of [0,1]"});
    if (net.beta < S(0) || net.beta > S(1))
        out.push_back({ViolationKind::BetaOutOfRange, -1, -1, "beta out of [0,1]"});
    return out;
}

template <class S>
void require_valid(const FinancialNetwork<S>& net) {
    auto violations = validate_network(net);
    if (violations.empty()) return;
    std::string msg = "invalid network:";
    for (const auto& v : violations) msg += " " + v.message + ";";
    throw input_error(msg);
}

// pi_ij = l_ij / L_i when L_i > 0, else 0. Rows sum to 1 or 0.
template <class S>
Matrix<S> relative_liabilities(const FinancialNetwork<S>& net) {
    require_valid(net);
    const int n = net.size();
    Matrix<S> pi(n, n, S(0));
    for (int i = 0; i < n; ++i) {
        const S li = net.total_liability(i);
        if (li == S(0)) continue;
        for (int j = 0; j < n; ++j)
            if (net.liabilities(i, j) != S(0)) pi(i, j) = net.liabilities(i, j) / li;
    }
    return pi;
}

// Returns net with l_ij zeroed for every removed (i, j). Removing a pair
// that carries no debt is a no-op, which keeps removal idempotent; a pair
// that cannot name an edge at all is an error identifying the pair.
template <class S>
FinancialNetwork<S> apply_removals(const FinancialNetwork<S>& net, const StrategyProfile& profile) {
    if (profile.size() != net.size())
        throw input_error("strategy profile sized for " + std::to_string(profile.size()) +
                          " banks, network has " + std::to_string(net.size()));
    FinancialNetwork<S> out = net;
    for (int lender = 0; lender < profile.size(); ++lender) {
        for (int borrower : profile.removed[lender]) {
            if (borrower < 0 || borrower >= net.size() || borrower == lender)
                throw input_error("removal references non-edge (" + std::to_string(borrower) +
                                  "," + std::to_string(lender) + ")");
            out.liabilities(borrower, lender) = S(0);
        }
    }
    return out;
}

// Raises each bank's externals by the sum of its transfers.
template <class S>
FinancialNetwork<S> inject_externals(const FinancialNetwork<S>& net, const InjectionPlan<S>& plan) {
    FinancialNetwork<S> out = net;
    for (const auto& t : plan.transfers) {
        if (t.bank < 0 || t.bank >= net.size())
            throw input_error("injection references bank " + std::to_string(t.bank) + " out of range");
        if (t.amount < S(0)) throw input_error("negative injection amount at bank " + std::to_string(t.bank));
        out.externals[t.bank] += t.amount;
    }
    return out;
}

// Incoming borrowers of a bank, ascending; the bank's removable edges.
template <class S>
std::vector<int> incoming_borrowers(const FinancialNetwork<S>& net, int lender) {
    std::vector<int> out;
    for (int i = 0; i < net.size(); ++i)
        if (net.liabilities(i, lender) > S(0)) out.push_back(i);
    return out;
}

} // namespace fnet

#endif
