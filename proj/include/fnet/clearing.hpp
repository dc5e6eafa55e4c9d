#ifndef FNET_CLEARING_HPP
#define FNET_CLEARING_HPP

// Clearing payments under proportional payments with default costs.
//
// greatest_clearing: exact mode runs the fictitious-default iteration. Start
// from the all-solvent hypothesis p = L; each round recomputes the default
// set under the current payments and solves the linear payment system with
// that set fixed; the default set grows monotonically, so at most n rounds.
// Float mode iterates Phi from L until the sup-norm step drops below 1e-12.
//
// least_clearing: exact mode iterates the matching scheme from below. The
// subtlety is that payments inside a defaulting cluster that keeps all its
// liabilities internal (beta = 1) either stay put (no cash enters) or grow
// without bound until a member reaches solvency; both cases are resolved
// exactly by an SCC decomposition plus, for the growing case, stepping Phi
// until the first bank crosses its liability level.

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "fnet/linalg.hpp"
#include "fnet/network.hpp"
#include "fnet/scalar.hpp"

namespace fnet {

template <class S>
struct ClearingResult {
    Matrix<S> payments;        // p_ij
    std::vector<S> assets;     // a_i = e_i + sum_j p_ji
    std::vector<int> defaults; // sorted indices with a_i < L_i
    S liquidity{0};            // sum of all payments

    bool in_default(int bank) const {
        return std::binary_search(defaults.begin(), defaults.end(), bank);
    }
};

namespace detail {

template <class S>
std::vector<S> inflows_from_totals(const Matrix<S>& pi, const std::vector<S>& totals) {
    const int n = pi.rows();
    std::vector<S> in(n, S(0));
    for (int j = 0; j < n; ++j) {
        if (totals[j] == S(0)) continue;
        for (int i = 0; i < n; ++i)
            if (pi(j, i) != S(0)) in[i] += pi(j, i) * totals[j];
    }
    return in;
}

// Builds the payment matrix, assets, default list and liquidity from
// per-bank outgoing totals and a default classification.
template <class S>
ClearingResult<S> assemble_result(const FinancialNetwork<S>& net, const Matrix<S>& pi,
                                  const std::vector<S>& totals,
                                  const std::vector<char>& defaulting) {
    const int n = net.size();
    ClearingResult<S> res;
    res.payments = Matrix<S>(n, n, S(0));
    for (int i = 0; i < n; ++i) {
        if (defaulting[i]) {
            for (int j = 0; j < n; ++j)
                if (pi(i, j) != S(0)) res.payments(i, j) = totals[i] * pi(i, j);
        } else {
            for (int j = 0; j < n; ++j)
                if (net.liabilities(i, j) != S(0)) res.payments(i, j) = net.liabilities(i, j);
        }
    }
    res.assets.assign(n, S(0));
    res.liquidity = S(0);
    for (int i = 0; i < n; ++i) {
        S in(0);
        for (int j = 0; j < n; ++j) in += res.payments(j, i);
        res.assets[i] = net.externals[i] + in;
        res.liquidity += in;
        if (defaulting[i]) res.defaults.push_back(i);
    }
    return res;
}

// One application of Phi on outgoing totals, exact branch test.
template <class S>
std::vector<S> phi_step(const FinancialNetwork<S>& net, const Matrix<S>& pi,
                        const std::vector<S>& liab, const std::vector<S>& totals) {
    const int n = net.size();
    std::vector<S> in = inflows_from_totals(pi, totals);
    std::vector<S> out(n);
    for (int i = 0; i < n; ++i) {
        const S funds = net.externals[i] + in[i];
        out[i] = (liab[i] <= funds) ? liab[i] : net.alpha * net.externals[i] + net.beta * in[i];
    }
    return out;
}

// Strongly connected components of the payment-flow graph restricted to
// `members` (global bank ids); edge j -> i when pi(j, i) > 0. Returned in
// topological order, payers before receivers.
template <class S>
std::vector<std::vector<int>> payment_sccs(const Matrix<S>& pi, const std::vector<int>& members) {
    const int k = static_cast<int>(members.size());
    std::vector<int> local(pi.rows(), -1);
    for (int r = 0; r < k; ++r) local[members[r]] = r;

    std::vector<std::vector<int>> adjacency(k);
    for (int c = 0; c < k; ++c)
        for (int r = 0; r < k; ++r)
            if (r != c && pi(members[c], members[r]) != S(0)) adjacency[c].push_back(r);

    // iterative Tarjan
    std::vector<int> index(k, -1), low(k, 0), stack_pos(k, -1);
    std::vector<int> stack;
    std::vector<std::vector<int>> sccs;
    int counter = 0;
    for (int start = 0; start < k; ++start) {
        if (index[start] >= 0) continue;
        std::vector<std::pair<int, std::size_t>> frames{{start, 0}};
        while (!frames.empty()) {
            auto& [v, edge] = frames.back();
            if (edge == 0) {
                index[v] = low[v] = counter++;
                stack_pos[v] = static_cast<int>(stack.size());
                stack.push_back(v);
            }
            bool descended = false;
            while (edge < adjacency[v].size()) {
                int w = adjacency[v][edge++];
                if (index[w] < 0) {
                    frames.push_back({w, 0});
                    descended = true;
                    break;
                }
                if (stack_pos[w] >= 0) low[v] = std::min(low[v], index[w]);
            }
            if (descended) continue;
            if (low[v] == index[v]) {
                std::vector<int> scc;
                const int boundary = stack_pos[v];
                while (static_cast<int>(stack.size()) > boundary) {
                    int w = stack.back();
                    stack.pop_back();
                    stack_pos[w] = -1;
                    scc.push_back(w);
                }
                sccs.push_back(std::move(scc));
            }
            int child = v;
            frames.pop_back();
            if (!frames.empty()) low[frames.back().first] = std::min(low[frames.back().first], low[child]);
        }
    }
    // Tarjan emits receivers-first; reverse for payers-first and map back
    std::reverse(sccs.begin(), sccs.end());
    for (auto& scc : sccs) {
        for (int& v : scc) v = members[v];
        std::sort(scc.begin(), scc.end());
    }
    return sccs;
}

} // namespace detail

// Phi on per-bank outgoing totals. Requires 0 <= p_i <= L_i.
template <class S>
std::vector<S> phi(const FinancialNetwork<S>& net, const std::vector<S>& totals) {
    require_valid(net);
    if (static_cast<int>(totals.size()) != net.size()) throw input_error("phi: totals size mismatch");
    const auto liab = net.total_liabilities();
    using T = scalar_traits<S>;
    for (int i = 0; i < net.size(); ++i)
        if (T::lt(totals[i], S(0)) || T::lt(liab[i], totals[i]))
            throw input_error("phi: totals out of [0, L] at bank " + std::to_string(i));
    const auto pi = relative_liabilities(net);
    return detail::phi_step(net, pi, liab, totals);
}

template <class S>
ClearingResult<S> greatest_clearing(const FinancialNetwork<S>& net) {
    require_valid(net);
    const int n = net.size();
    const auto pi = relative_liabilities(net);
    const auto liab = net.total_liabilities();
    using T = scalar_traits<S>;

    if constexpr (T::exact) {
        std::vector<S> totals = liab;
        std::vector<char> defaulting(n, 0);
        bool have_set = false;
        for (int round = 0; round <= n + 1; ++round) {
            const auto in = detail::inflows_from_totals(pi, totals);
            std::vector<char> fresh(n, 0);
            for (int i = 0; i < n; ++i)
                fresh[i] = (liab[i] > S(0) && net.externals[i] + in[i] < liab[i]) ? 1 : 0;
            if (have_set && fresh == defaulting) return detail::assemble_result(net, pi, totals, defaulting);
            defaulting = fresh;
            have_set = true;

            std::vector<int> members;
            for (int i = 0; i < n; ++i)
                if (defaulting[i]) members.push_back(i);
            if (members.empty()) {
                totals = liab;
                continue;
            }
            const int k = static_cast<int>(members.size());
            Matrix<S> a(k, k, S(0));
            std::vector<S> rhs(k, S(0));
            for (int r = 0; r < k; ++r) {
                const int i = members[r];
                for (int c = 0; c < k; ++c) {
                    a(r, c) = (r == c ? S(1) : S(0)) - net.beta * pi(members[c], i);
                }
                S solvent_in(0);
                for (int j = 0; j < n; ++j)
                    if (!defaulting[j]) solvent_in += net.liabilities(j, i);
                rhs[r] = net.alpha * net.externals[i] + net.beta * solvent_in;
            }
            auto solved = solve_linear(a, rhs);
            if (!solved) throw numeric_error("greatest_clearing: singular default system");
            for (int r = 0; r < k; ++r) {
                if ((*solved)[r] < S(0) || (*solved)[r] > liab[members[r]])
                    throw numeric_error("greatest_clearing: default system left the payment box");
                totals[members[r]] = (*solved)[r];
            }
            for (int i = 0; i < n; ++i)
                if (!defaulting[i]) totals[i] = liab[i];
        }
        throw numeric_error("greatest_clearing: default set failed to stabilize");
    } else {
        std::vector<S> totals = liab;
        bool converged = false;
        for (int iter = 0; iter < 10000; ++iter) {
            auto next = detail::phi_step(net, pi, liab, totals);
            double delta = 0.0;
            for (int i = 0; i < n; ++i)
                delta = std::max(delta, std::fabs(T::to_double(next[i] - totals[i])));
            totals = std::move(next);
            if (delta <= 1e-12) {
                converged = true;
                break;
            }
        }
        if (!converged) throw numeric_error("greatest_clearing: no convergence within 10000 iterations");
        const auto in = detail::inflows_from_totals(pi, totals);
        std::vector<char> defaulting(n, 0);
        for (int i = 0; i < n; ++i)
            defaulting[i] = (!T::is_zero(liab[i]) && T::lt(net.externals[i] + in[i], liab[i])) ? 1 : 0;
        return detail::assemble_result(net, pi, totals, defaulting);
    }
}

template <class S>
ClearingResult<S> least_clearing(const FinancialNetwork<S>& net) {
    require_valid(net);
    const int n = net.size();
    const auto pi = relative_liabilities(net);
    const auto liab = net.total_liabilities();
    using T = scalar_traits<S>;

    if constexpr (T::exact) {
        std::vector<S> totals(n, S(0));
        for (int round = 0; round <= n + 1; ++round) {
            auto in = detail::inflows_from_totals(pi, totals);
            std::vector<char> solvent(n, 0);
            std::vector<int> members;
            for (int i = 0; i < n; ++i) {
                if (liab[i] == S(0) || net.externals[i] + in[i] >= liab[i])
                    solvent[i] = 1;
                else
                    members.push_back(i);
            }
            if (members.empty()) {
                std::vector<char> defaulting(n, 0);
                return detail::assemble_result(net, pi, liab, defaulting);
            }

            std::vector<int> local(n, -1);
            const int k = static_cast<int>(members.size());
            for (int r = 0; r < k; ++r) local[members[r]] = r;

            // base input: alpha e + inflow from banks currently paying in full
            std::vector<S> input(k, S(0));
            for (int r = 0; r < k; ++r) {
                const int i = members[r];
                S solvent_in(0);
                for (int j = 0; j < n; ++j)
                    if (solvent[j]) solvent_in += net.liabilities(j, i);
                input[r] = net.alpha * net.externals[i] + net.beta * solvent_in;
            }

            const auto sccs = detail::payment_sccs(pi, members);
            std::vector<S> solved(k, S(0));
            bool divergent = false;
            for (const auto& scc : sccs) {
                // add inflow from classes already solved
                std::vector<S> u;
                u.reserve(scc.size());
                bool internal_only = true;
                for (int bank : scc) {
                    S extra(0);
                    for (int r = 0; r < k; ++r) {
                        const int payer = members[r];
                        if (local[payer] >= 0 && std::binary_search(scc.begin(), scc.end(), payer)) continue;
                        if (pi(payer, bank) != S(0)) extra += net.beta * pi(payer, bank) * solved[r];
                    }
                    u.push_back(input[local[bank]] + extra);
                    S mass(0);
                    for (int other : scc) mass += pi(bank, other);
                    if (mass != S(1)) internal_only = false;
                }
                const bool closed = internal_only && net.beta == S(1);
                if (closed) {
                    bool any_input = false;
                    for (const auto& v : u)
                        if (v != S(0)) any_input = true;
                    if (any_input) {
                        divergent = true;
                        break;
                    }
                    for (int bank : scc) solved[local[bank]] = totals[bank];
                } else {
                    const int m = static_cast<int>(scc.size());
                    Matrix<S> a(m, m, S(0));
                    std::vector<S> rhs(m);
                    for (int r = 0; r < m; ++r) {
                        for (int c = 0; c < m; ++c)
                            a(r, c) = (r == c ? S(1) : S(0)) - net.beta * pi(scc[c], scc[r]);
                        rhs[r] = u[r];
                    }
                    auto x = solve_linear(a, rhs);
                    if (!x) throw numeric_error("least_clearing: dissipative class came back singular");
                    for (int r = 0; r < m; ++r) solved[local[scc[r]]] = (*x)[r];
                }
            }

            auto walk_to_crossing = [&]() {
                // step Phi from the current lower bound until some member
                // reaches solvency, then rebuild the solvent set
                bool crossed = false;
                for (long step = 0; step < 1000000 && !crossed; ++step) {
                    totals = detail::phi_step(net, pi, liab, totals);
                    auto stepped = detail::inflows_from_totals(pi, totals);
                    for (int i : members)
                        if (net.externals[i] + stepped[i] >= liab[i]) crossed = true;
                }
                if (!crossed) throw numeric_error("least_clearing: expected crossing never happened");
            };

            if (divergent) {
                walk_to_crossing();
                continue;
            }

            std::vector<S> candidate(n);
            for (int i = 0; i < n; ++i) candidate[i] = solvent[i] ? liab[i] : solved[local[i]];
            auto in2 = detail::inflows_from_totals(pi, candidate);
            bool overshoot = false, grew = false;
            for (int i : members) {
                const S assets = net.externals[i] + in2[i];
                if (assets > liab[i]) overshoot = true;
                else if (assets == liab[i]) grew = true;
            }
            if (overshoot) {
                // the all-default solve skipped a branch switch; the true
                // trajectory caps at the first crossing strictly below it
                walk_to_crossing();
                continue;
            }
            totals = std::move(candidate);
            if (grew) continue;
            std::vector<char> defaulting(n, 0);
            for (int i : members) defaulting[i] = 1;
            return detail::assemble_result(net, pi, totals, defaulting);
        }
        throw numeric_error("least_clearing: solvent set failed to stabilize");
    } else {
        std::vector<S> totals(n, S(0));
        bool converged = false;
        for (int iter = 0; iter < 10000; ++iter) {
            auto next = detail::phi_step(net, pi, liab, totals);
            double delta = 0.0;
            for (int i = 0; i < n; ++i)
                delta = std::max(delta, std::fabs(T::to_double(next[i] - totals[i])));
            totals = std::move(next);
            if (delta <= 1e-12) {
                converged = true;
                break;
            }
        }
        if (!converged) throw numeric_error("least_clearing: no convergence within 10000 iterations");
        const auto in = detail::inflows_from_totals(pi, totals);
        std::vector<char> defaulting(n, 0);
        for (int i = 0; i < n; ++i)
            defaulting[i] = (!T::is_zero(liab[i]) && T::lt(net.externals[i] + in[i], liab[i])) ? 1 : 0;
        return detail::assemble_result(net, pi, totals, defaulting);
    }
}

template <class S>
struct ClearingCheck {
    bool ok{true};
    std::vector<std::string> violations;
};

// Verifies limited liability, absolute priority and proportionality.
template <class S>
ClearingCheck<S> is_clearing(const FinancialNetwork<S>& net, const Matrix<S>& payments) {
    using T = scalar_traits<S>;
    ClearingCheck<S> check;
    const int n = net.size();
    if (payments.rows() != n || payments.cols() != n) {
        check.ok = false;
        check.violations.push_back("payment matrix shape mismatch");
        return check;
    }
    auto fail = [&](std::string msg) {
        check.ok = false;
        check.violations.push_back(std::move(msg));
    };

    for (int i = 0; i < n; ++i) {
        for (int j = 0; j < n; ++j) {
            const S& p = payments(i, j);
            if (i == j && !T::is_zero(p)) fail("nonzero self-payment at bank " + std::to_string(i));
            if (T::lt(p, S(0))) fail("negative payment (" + std::to_string(i) + "," + std::to_string(j) + ")");
            if (T::lt(net.liabilities(i, j), p))
                fail("payment above liability (" + std::to_string(i) + "," + std::to_string(j) + ")");
        }
    }

    const auto liab = net.total_liabilities();
    const auto pi = relative_liabilities(net);
    for (int i = 0; i < n; ++i) {
        S in(0), out(0);
        for (int j = 0; j < n; ++j) {
            in += payments(j, i);
            out += payments(i, j);
        }
        const S assets = net.externals[i] + in;
        if (!T::lt(assets, liab[i])) {
            // solvent: every liability paid in full (limited liability upper
            // bound was already checked)
            for (int j = 0; j < n; ++j)
                if (!T::eq(payments(i, j), net.liabilities(i, j)))
                    fail("solvent bank " + std::to_string(i) + " underpays lender " + std::to_string(j));
        } else {
            const S due = net.alpha * net.externals[i] + net.beta * in;
            if (!T::eq(out, due))
                fail("defaulting bank " + std::to_string(i) + " pays " + format_amount(out) +
                     " instead of " + format_amount(due));
            for (int j = 0; j < n; ++j)
                if (!T::eq(payments(i, j), due * pi(i, j)))
                    fail("defaulting bank " + std::to_string(i) + " splits non-proportionally to " +
                         std::to_string(j));
        }
    }
    return check;
}

} // namespace fnet

#endif
