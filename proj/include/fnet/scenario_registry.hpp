#ifndef FNET_SCENARIO_REGISTRY_HPP
#define FNET_SCENARIO_REGISTRY_HPP

// Stable scenario names for the CLI, plus the facts each instance is
// expected to reproduce. A fact is either a reported reference value or a
// value re-derived by the oracles in the verification tests.

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "fnet/io.hpp"
#include "fnet/random_nets.hpp"
#include "fnet/scenarios.hpp"

namespace fnet {

struct ScenarioFact {
    enum class Source { Reported, Derived };
    std::string description;
    Source source{Source::Derived};
};

struct ScenarioDescriptor {
    std::string name;
    std::string parameters;  // "key=value key=value" help text with defaults
    std::vector<ScenarioFact> facts;
};

using ScenarioParams = std::map<std::string, std::string>;

inline const std::vector<ScenarioDescriptor>& scenario_descriptors() {
    using Source = ScenarioFact::Source;
    static const std::vector<ScenarioDescriptor> table = {
        {"fig1", "",
         {{"clearing pays 4.4, 3.2, 1, 1 with defaults {v2,v3,v4}", Source::Reported},
          {"threat indices (0, 1, 2, 2, 0)", Source::Reported},
          {"greedy with budget 1.6 gains 2.4, the optimum gains 3.2", Source::Reported}}},
        {"fig5", "eps=1/100",
         {{"four policy cases and an equilibrium-free game", Source::Reported}}},
        {"fig6", "Z=100",
         {{"keep-all liquidity 3, removing v3's incoming edge reaches 2Z", Source::Reported}}},
        {"fig7", "n=6",
         {{"keep-all with unit budget reaches n-1, an equilibrium reaches 1", Source::Reported}}},
        {"fig8", "",
         {{"four-state best-response cycle under costs 1/4", Source::Reported}}},
        {"fig9", "n=6 eps=1/10",
         {{"keep-all liquidity below eps/(1-eps), best equilibrium n-1", Source::Reported}}},
        {"greedy_family", "mu_v=2 t1=1",
         {{"greedy-to-optimal ratio 3/4 at budget t1*mu/(mu-1)", Source::Reported}}},
        {"gadget_rxc3", "k=1 triples=1,2,3;1,2,3;1,2,3 Z=1000",
         {{"max-liquidity removal value 14k on yes-instances", Source::Reported}}},
        {"gadget_partition", "xs=1,2,3,4 alpha=1/2",
         {{"even splits reach liquidity (5a+10)/6 * sum", Source::Reported}}},
        {"gadget_subset_sum", "xs=2,3,5 t=5",
         {{"min forgiven debt equals sum minus best subset at most t", Source::Derived}}},
        {"gadget_x3c", "k=1 triples=1,2,3;1,2,3;1,2,3", {}},
        {"gadget_ne_hardness", "xs=1,2",
         {{"S's best response encodes the partition question", Source::Reported}}},
        {"random", "n=6 max_value=10 edge_percent=40 costs=0 (uses --seed)", {}},
        {"random_tree", "n=7 max_value=10 costs=1 (uses --seed)", {}},
        {"random_cycle", "n=7 max_value=10 costs=1 (uses --seed)", {}},
    };
    return table;
}

namespace detail {

inline std::string param_or(const ScenarioParams& params, const std::string& key,
                            const std::string& fallback) {
    auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
}

inline int param_int(const ScenarioParams& params, const std::string& key, int fallback) {
    auto it = params.find(key);
    if (it == params.end()) return fallback;
    try {
        return std::stoi(it->second);
    } catch (const std::exception&) {
        throw input_error("parameter '" + key + "' wants an integer, got '" + it->second + "'");
    }
}

inline std::vector<long long> param_list(const ScenarioParams& params, const std::string& key,
                                         const std::vector<long long>& fallback) {
    auto it = params.find(key);
    if (it == params.end()) return fallback;
    std::vector<long long> out;
    std::string token;
    for (char c : it->second + ",") {
        if (c == ',') {
            if (!token.empty()) out.push_back(std::stoll(token));
            token.clear();
        } else {
            token += c;
        }
    }
    if (out.empty()) throw input_error("parameter '" + key + "' wants a comma-separated list");
    return out;
}

inline std::vector<std::array<int, 3>> param_triples(const ScenarioParams& params, const std::string& key,
                                                     const std::vector<std::array<int, 3>>& fallback) {
    auto it = params.find(key);
    if (it == params.end()) return fallback;
    std::vector<std::array<int, 3>> out;
    std::string group;
    for (char c : it->second + ";") {
        if (c == ';') {
            if (group.empty()) continue;
            std::array<int, 3> triple{};
            int at = 0;
            std::string token;
            for (char g : group + ",") {
                if (g == ',') {
                    if (at >= 3 || token.empty())
                        throw input_error("parameter '" + key + "' wants triples like 1,2,3;4,5,6");
                    triple[at++] = std::stoi(token);
                    token.clear();
                } else {
                    token += g;
                }
            }
            if (at != 3) throw input_error("parameter '" + key + "' wants triples of exactly 3 elements");
            out.push_back(triple);
            group.clear();
        } else {
            group += c;
        }
    }
    return out;
}

inline std::vector<std::string> numbered_ids(const std::string& prefix, int count, int start = 1) {
    std::vector<std::string> ids;
    for (int i = 0; i < count; ++i) ids.push_back(prefix + std::to_string(start + i));
    return ids;
}

} // namespace detail

template <class S>
NetworkDocument<S> build_scenario(const std::string& name, const ScenarioParams& params,
                                  std::uint64_t seed) {
    using detail::numbered_ids;
    NetworkDocument<S> doc;
    if (name == "fig1") {
        doc.net = fig1<S>();
        doc.ids = numbered_ids("v", 5);
    } else if (name == "fig5") {
        doc.net = fig5<S>(parse_amount<S>(detail::param_or(params, "eps", "1/100")));
        doc.ids = numbered_ids("v", 6);
    } else if (name == "fig6") {
        doc.net = fig6<S>(parse_amount<S>(detail::param_or(params, "Z", "100")));
        doc.ids = numbered_ids("v", 3);
    } else if (name == "fig7") {
        const int n = detail::param_int(params, "n", 6);
        doc.net = fig7<S>(n);
        doc.ids = numbered_ids("v", n);
    } else if (name == "fig8") {
        doc.net = fig8<S>();
        doc.ids = numbered_ids("v", 5);
    } else if (name == "fig9") {
        const int n = detail::param_int(params, "n", 6);
        doc.net = fig9<S>(n, parse_amount<S>(detail::param_or(params, "eps", "1/10")));
        doc.ids = numbered_ids("v", n);
    } else if (name == "greedy_family") {
        doc.net = greedy_family<S>(parse_amount<S>(detail::param_or(params, "mu_v", "2")),
                                   parse_amount<S>(detail::param_or(params, "t1", "1")));
        const int path = doc.net.size() - 4;
        doc.ids.push_back("v");
        for (const auto& id : numbered_ids("v", path)) doc.ids.push_back(id);
        doc.ids.push_back("u");
        doc.ids.push_back("w");
        doc.ids.push_back("z");
    } else if (name == "gadget_rxc3") {
        const int k = detail::param_int(params, "k", 1);
        const auto triples = detail::param_triples(params, "triples", {{{1, 2, 3}}, {{1, 2, 3}}, {{1, 2, 3}}});
        doc.net = gadget_rxc3<S>(k, triples, parse_amount<S>(detail::param_or(params, "Z", "1000")));
        doc.ids = numbered_ids("s", 3 * k);
        for (const auto& id : numbered_ids("t", 3 * k)) doc.ids.push_back(id);
        doc.ids.push_back("S");
        doc.ids.push_back("T");
    } else if (name == "gadget_partition") {
        const auto xs = detail::param_list(params, "xs", {1, 2, 3, 4});
        doc.net = gadget_partition<S>(xs, parse_amount<S>(detail::param_or(params, "alpha", "1/2")));
        doc.ids = numbered_ids("v", static_cast<int>(xs.size()));
        doc.ids.push_back("S");
        doc.ids.push_back("T");
        doc.ids.push_back("L");
    } else if (name == "gadget_subset_sum") {
        const auto xs = detail::param_list(params, "xs", {2, 3, 5});
        doc.net = gadget_subset_sum<S>(xs, detail::param_int(params, "t", 5));
        doc.ids = numbered_ids("v", static_cast<int>(xs.size()) + 1, 0);
    } else if (name == "gadget_x3c") {
        const int k = detail::param_int(params, "k", 1);
        const auto triples = detail::param_triples(params, "triples", {{{1, 2, 3}}, {{1, 2, 3}}, {{1, 2, 3}}});
        doc.net = gadget_x3c<S>(k, triples);
        doc.ids = numbered_ids("u", static_cast<int>(triples.size()));
        for (const auto& id : numbered_ids("t", 3 * k)) doc.ids.push_back(id);
        doc.ids.push_back("T");
    } else if (name == "gadget_ne_hardness") {
        const auto xs = detail::param_list(params, "xs", {1, 2});
        doc.net = gadget_ne_hardness<S>(xs);
        doc.ids = numbered_ids("v", static_cast<int>(xs.size()));
        doc.ids.push_back("S");
        doc.ids.push_back("T");
    } else if (name == "random" || name == "random_tree" || name == "random_cycle") {
        RandomNetOptions opt;
        opt.max_banks = detail::param_int(params, "n", name == "random" ? 6 : 7);
        opt.max_value = detail::param_int(params, "max_value", 10);
        opt.edge_percent = detail::param_int(params, "edge_percent", 40);
        opt.random_costs = detail::param_int(params, "costs", name == "random" ? 0 : 1) != 0;
        if (name == "random")
            doc.net = random_network<S>(seed, opt);
        else if (name == "random_tree")
            doc.net = random_tree<S>(seed, opt);
        else
            doc.net = random_cycle<S>(seed, opt);
        doc.ids = numbered_ids("v", doc.net.size());
    } else {
        throw input_error("unknown scenario '" + name + "'");
    }
    return doc;
}

} // namespace fnet

#endif
