#ifndef FNET_IO_HPP
#define FNET_IO_HPP

// Network documents and report documents, both JSON. Amounts travel as
// strings ("6", "8/9", "2.2") so the exact mode is lossless; plain JSON
// integers are accepted too. Reports order banks by declaration and
// payments row-major, which keeps exact-mode output byte-stable.

#include <json.hpp>

#include <map>
#include <string>
#include <vector>

#include "fnet/clearing.hpp"
#include "fnet/games.hpp"
#include "fnet/network.hpp"

namespace fnet {

template <class S>
struct NetworkDocument {
    FinancialNetwork<S> net;
    std::vector<std::string> ids;

    int index_of(const std::string& id) const {
        for (int i = 0; i < static_cast<int>(ids.size()); ++i)
            if (ids[i] == id) return i;
        throw input_error("unknown bank id '" + id + "'");
    }
};

namespace detail {

template <class S>
S parse_json_amount(const nlohmann::json& value, const std::string& where) {
    if (value.is_string()) return parse_amount<S>(value.get<std::string>());
    if (value.is_number_integer()) return S(value.get<long long>());
    if (value.is_number()) {
        if constexpr (scalar_traits<S>::exact)
            throw input_error(where + ": write non-integer amounts as strings to keep them exact");
        else
            return value.get<double>();
    }
    throw input_error(where + ": expected an amount");
}

} // namespace detail

template <class S>
NetworkDocument<S> parse_network(const nlohmann::json& doc) {
    if (!doc.is_object()) throw input_error("network document must be a JSON object");
    if (!doc.contains("banks") || !doc["banks"].is_array())
        throw input_error("network document needs a 'banks' array");

    NetworkDocument<S> out;
    std::map<std::string, int> index;
    for (const auto& bank : doc["banks"]) {
        if (!bank.is_object() || !bank.contains("id") || !bank["id"].is_string())
            throw input_error("each bank needs a string 'id'");
        const std::string id = bank["id"].get<std::string>();
        if (index.count(id)) throw input_error("duplicate bank id '" + id + "'");
        index[id] = static_cast<int>(out.ids.size());
        out.ids.push_back(id);
    }
    const int n = static_cast<int>(out.ids.size());
    out.net = FinancialNetwork<S>(n);
    for (int i = 0; i < n; ++i) {
        const auto& bank = doc["banks"][i];
        if (bank.contains("external"))
            out.net.externals[i] = detail::parse_json_amount<S>(bank["external"], "banks[" + std::to_string(i) + "].external");
    }

    if (doc.contains("liabilities")) {
        if (!doc["liabilities"].is_array()) throw input_error("'liabilities' must be an array");
        int row = 0;
        for (const auto& edge : doc["liabilities"]) {
            const std::string where = "liabilities[" + std::to_string(row++) + "]";
            if (!edge.is_object() || !edge.contains("from") || !edge.contains("to") || !edge.contains("amount"))
                throw input_error(where + ": need from, to, amount");
            const std::string from = edge["from"].get<std::string>();
            const std::string to = edge["to"].get<std::string>();
            if (!index.count(from)) throw input_error(where + ": unknown 'from' id '" + from + "'");
            if (!index.count(to)) throw input_error(where + ": unknown 'to' id '" + to + "'");
            const S amount = detail::parse_json_amount<S>(edge["amount"], where + ".amount");
            if (amount < S(0)) throw input_error(where + ": negative amount");
            if (index[from] == index[to]) throw input_error(where + ": self-liability on '" + from + "'");
            // duplicate pairs merge by summation
            out.net.liabilities(index[from], index[to]) += amount;
        }
    }

    if (doc.contains("default_costs")) {
        const auto& costs = doc["default_costs"];
        if (!costs.is_object()) throw input_error("'default_costs' must be an object");
        if (costs.contains("alpha")) out.net.alpha = detail::parse_json_amount<S>(costs["alpha"], "default_costs.alpha");
        if (costs.contains("beta")) out.net.beta = detail::parse_json_amount<S>(costs["beta"], "default_costs.beta");
    }

    require_valid(out.net);
    return out;
}

template <class S>
nlohmann::json serialize_network(const NetworkDocument<S>& doc) {
    nlohmann::json banks = nlohmann::json::array();
    for (int i = 0; i < doc.net.size(); ++i)
        banks.push_back({{"id", doc.ids[i]}, {"external", format_amount(doc.net.externals[i])}});
    nlohmann::json liabilities = nlohmann::json::array();
    for (int i = 0; i < doc.net.size(); ++i)
        for (int j = 0; j < doc.net.size(); ++j)
            if (doc.net.liabilities(i, j) != S(0))
                liabilities.push_back({{"from", doc.ids[i]},
                                       {"to", doc.ids[j]},
                                       {"amount", format_amount(doc.net.liabilities(i, j))}});
    return nlohmann::json{{"banks", banks},
                          {"liabilities", liabilities},
                          {"default_costs",
                           {{"alpha", format_amount(doc.net.alpha)}, {"beta", format_amount(doc.net.beta)}}}};
}

template <class S>
nlohmann::json clearing_report(const NetworkDocument<S>& doc, const ClearingResult<S>& clearing) {
    nlohmann::json payments = nlohmann::json::array();
    for (int i = 0; i < doc.net.size(); ++i)
        for (int j = 0; j < doc.net.size(); ++j)
            if (!scalar_traits<S>::is_zero(clearing.payments(i, j)))
                payments.push_back({{"from", doc.ids[i]},
                                    {"to", doc.ids[j]},
                                    {"amount", format_amount(clearing.payments(i, j))}});
    nlohmann::json assets = nlohmann::json::object();
    for (int i = 0; i < doc.net.size(); ++i) assets[doc.ids[i]] = format_amount(clearing.assets[i]);
    nlohmann::json defaults = nlohmann::json::array();
    for (int i : clearing.defaults) defaults.push_back(doc.ids[i]);
    return nlohmann::json{{"payments", payments},
                          {"assets", assets},
                          {"defaults", defaults},
                          {"liquidity", format_amount(clearing.liquidity)}};
}

template <class S>
nlohmann::json plan_report(const NetworkDocument<S>& doc, const InjectionPlan<S>& plan) {
    nlohmann::json transfers = nlohmann::json::array();
    for (const auto& t : plan.transfers)
        transfers.push_back({{"bank", doc.ids[t.bank]}, {"amount", format_amount(t.amount)}});
    return nlohmann::json{{"transfers", transfers}, {"budget", format_amount(plan.budget)}};
}

template <class S>
nlohmann::json profile_report(const NetworkDocument<S>& doc, const StrategyProfile& profile) {
    nlohmann::json removals = nlohmann::json::object();
    for (int lender = 0; lender < profile.size(); ++lender) {
        if (profile.removed[lender].empty()) continue;
        nlohmann::json borrowers = nlohmann::json::array();
        for (int b : profile.removed[lender]) borrowers.push_back(doc.ids[b]);
        removals[doc.ids[lender]] = borrowers;
    }
    return removals;
}

template <class S>
StrategyProfile parse_profile(const NetworkDocument<S>& doc, const nlohmann::json& json) {
    if (!json.is_object()) throw input_error("strategy profile must map lender id to borrower ids");
    StrategyProfile profile = StrategyProfile::keep_all(doc.net.size());
    for (auto it = json.begin(); it != json.end(); ++it) {
        const int lender = doc.index_of(it.key());
        if (!it.value().is_array()) throw input_error("profile entry for '" + it.key() + "' must be an array");
        for (const auto& borrower : it.value())
            profile.removed[lender].push_back(doc.index_of(borrower.get<std::string>()));
        std::sort(profile.removed[lender].begin(), profile.removed[lender].end());
    }
    return profile;
}

template <class S>
nlohmann::json ratio_report(const Ratio<S>& ratio) {
    switch (ratio.kind) {
        case Ratio<S>::Kind::Finite:
            return format_amount(ratio.value);
        case Ratio<S>::Kind::Infinite:
            return "inf";
        case Ratio<S>::Kind::Undefined:
            return "undefined";
    }
    return "undefined";
}

} // namespace fnet

#endif
