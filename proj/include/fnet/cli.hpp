#ifndef FNET_CLI_HPP
#define FNET_CLI_HPP

// Command-line front end. Subcommands:
//   clear <file>
//   inject <file> --budget M --policy greedy|optimal|enumerative
//   remove-debt <file> --objective <kind> [--target id] [--method exact|greedy]
//   game <file> --policy none|greedy:M|optimal:M (--dynamics|--enumerate|--report)
//   scenario <name> [key=value ...] [--seed N] --emit <file|->
// Exit codes: 0 success, 2 input error, 3 guard refusal, 4 numeric failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "fnet/analytics.hpp"
#include "fnet/bailout.hpp"
#include "fnet/clearing.hpp"
#include "fnet/debt_relief.hpp"
#include "fnet/games.hpp"
#include "fnet/io.hpp"
#include "fnet/scenario_registry.hpp"

namespace fnet {

namespace cli_detail {

inline nlohmann::json load_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw input_error("cannot open '" + path + "'");
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw input_error("cannot parse '" + path + "': " + e.what());
    }
}

template <class S>
PolicySpec<S> parse_policy(const std::string& text) {
    if (text == "none") return PolicySpec<S>::none();
    auto colon = text.find(':');
    const std::string kind = text.substr(0, colon);
    if (kind == "greedy" || kind == "optimal") {
        if (colon == std::string::npos)
            throw input_error("policy '" + kind + "' needs a budget, e.g. " + kind + ":1.6");
        const S budget = parse_amount<S>(text.substr(colon + 1));
        return kind == "greedy" ? PolicySpec<S>::greedy(budget) : PolicySpec<S>::optimal(budget);
    }
    throw input_error("unknown policy '" + text + "' (use none, greedy:M or optimal:M)");
}

inline RemovalObjective parse_objective(const std::string& kind, const std::string& target_id,
                                        const std::vector<std::string>& ids) {
    RemovalObjective obj;
    if (kind == "max-liquidity") {
        obj.kind = RemovalKind::MaxLiquidity;
    } else if (kind == "max-liquidity-all-solvent") {
        obj.kind = RemovalKind::MaxLiquidityAllSolvent;
    } else if (kind == "min-forgiven-all-solvent") {
        obj.kind = RemovalKind::MinForgivenAllSolvent;
    } else if (kind == "min-forgiven-target-solvent") {
        obj.kind = RemovalKind::MinForgivenTargetSolvent;
        if (target_id.empty()) throw input_error("objective min-forgiven-target-solvent needs --target");
        for (int i = 0; i < static_cast<int>(ids.size()); ++i)
            if (ids[i] == target_id) obj.target = i;
        if (obj.target < 0) throw input_error("unknown target id '" + target_id + "'");
    } else {
        throw input_error("unknown objective '" + kind + "'");
    }
    return obj;
}

template <class S>
int run_clear(const std::string& file, std::ostream& out) {
    auto doc = parse_network<S>(load_json(file));
    auto clearing = greatest_clearing(doc.net);
    auto report = clearing_report(doc, clearing);
    nlohmann::json threat = nlohmann::json::object();
    auto mu = threat_index(doc.net, clearing);
    for (int i = 0; i < doc.net.size(); ++i) threat[doc.ids[i]] = format_amount(mu[i]);
    report["threat_index"] = threat;
    out << report.dump(2) << "\n";
    return 0;
}

template <class S>
int run_inject(const std::string& file, const std::string& budget_text, const std::string& policy,
               std::ostream& out) {
    auto doc = parse_network<S>(load_json(file));
    const S budget = parse_amount<S>(budget_text);
    const auto before = greatest_clearing(doc.net);

    nlohmann::json report;
    InjectionPlan<S> plan;
    ClearingResult<S> after;
    if (policy == "greedy") {
        auto run = greedy_injections(doc.net, budget);
        plan = std::move(run.plan);
        after = std::move(run.clearing);
        nlohmann::json trace = nlohmann::json::array();
        for (const auto& round : run.trace.rounds) {
            nlohmann::json threat = nlohmann::json::object();
            for (int i = 0; i < doc.net.size(); ++i)
                threat[doc.ids[i]] = format_amount(round.threat_before[i]);
            trace.push_back({{"bank", doc.ids[round.bank]},
                             {"amount", format_amount(round.amount)},
                             {"threat_before", threat}});
        }
        report["trace"] = trace;
    } else if (policy == "optimal") {
        auto run = optimal_injections_lp(doc.net, budget);
        plan = std::move(run.plan);
        after = std::move(run.clearing);
    } else if (policy == "enumerative") {
        auto run = optimal_injections_enumerative(doc.net, budget);
        plan = std::move(run.plan);
        after = std::move(run.clearing);
    } else {
        throw input_error("unknown policy '" + policy + "' (use greedy, optimal or enumerative)");
    }

    report["policy"] = policy;
    report["plan"] = plan_report(doc, plan);
    report["before"] = clearing_report(doc, before);
    report["after"] = clearing_report(doc, after);
    report["increased_liquidity"] = format_amount(increased_liquidity(before, after));
    out << report.dump(2) << "\n";
    return 0;
}

template <class S>
int run_remove_debt(const std::string& file, const std::string& objective, const std::string& target,
                    const std::string& method, std::ostream& out) {
    auto doc = parse_network<S>(load_json(file));
    const auto obj = parse_objective(objective, target, doc.ids);

    EdgeSet removed;
    ClearingResult<S> clearing;
    S value;
    if (method == "greedy") {
        if (obj.kind != RemovalKind::MaxLiquidity)
            throw input_error("--method greedy only supports max-liquidity");
        auto run = greedy_removal(doc.net);
        removed = std::move(run.removed);
        clearing = std::move(run.clearing);
        value = clearing.liquidity;
    } else if (method == "exact") {
        auto run = optimal_removal(doc.net, obj);
        removed = std::move(run.removed);
        clearing = std::move(run.clearing);
        value = run.value;
    } else {
        throw input_error("unknown method '" + method + "' (use exact or greedy)");
    }

    nlohmann::json edges = nlohmann::json::array();
    for (const auto& e : removed)
        edges.push_back({{"from", doc.ids[e.borrower]},
                         {"to", doc.ids[e.lender]},
                         {"amount", format_amount(doc.net.liabilities(e.borrower, e.lender))}});
    nlohmann::json report{{"objective", objective},
                          {"method", method},
                          {"removed", edges},
                          {"value", format_amount(value)},
                          {"clearing", clearing_report(doc, clearing)}};
    out << report.dump(2) << "\n";
    return 0;
}

template <class S>
int run_game(const std::string& file, const std::string& policy_text, bool dynamics, bool enumerate,
             bool quality, const std::string& start_json, long max_steps, std::ostream& out) {
    auto doc = parse_network<S>(load_json(file));
    const auto policy = parse_policy<S>(policy_text);
    const int modes = (dynamics ? 1 : 0) + (enumerate ? 1 : 0) + (quality ? 1 : 0);
    if (modes != 1) throw input_error("choose exactly one of --dynamics, --enumerate, --report");

    nlohmann::json report{{"policy", policy_text}};
    if (dynamics) {
        StrategyProfile start = StrategyProfile::keep_all(doc.net.size());
        if (!start_json.empty()) start = parse_profile(doc, nlohmann::json::parse(start_json));
        auto result = br_dynamics(doc.net, start, policy, max_steps);
        const char* kind = result.kind == DynamicsResult::Kind::Equilibrium ? "equilibrium"
                           : result.kind == DynamicsResult::Kind::Cycle     ? "cycle"
                                                                            : "truncated";
        report["outcome"] = kind;
        report["steps"] = result.steps;
        report["final"] = profile_report(doc, result.final_profile);
        if (result.kind == DynamicsResult::Kind::Cycle) {
            nlohmann::json cycle = nlohmann::json::array();
            for (const auto& p : result.cycle) cycle.push_back(profile_report(doc, p));
            report["cycle"] = cycle;
        }
    } else if (enumerate) {
        auto equilibria = enumerate_equilibria(doc.net, policy);
        nlohmann::json list = nlohmann::json::array();
        for (const auto& p : equilibria) list.push_back(profile_report(doc, p));
        report["equilibria"] = list;
        report["count"] = equilibria.size();
    } else {
        auto q = quality_report(doc.net, policy);
        report["f_original"] = format_amount(q.f_original);
        report["f_optimal"] = format_amount(q.f_optimal);
        report["f_worst_equilibrium"] = q.f_worst_eq ? nlohmann::json(format_amount(*q.f_worst_eq))
                                                     : nlohmann::json("undefined");
        report["f_best_equilibrium"] = q.f_best_eq ? nlohmann::json(format_amount(*q.f_best_eq))
                                                   : nlohmann::json("undefined");
        report["poa"] = ratio_report(q.poa);
        report["pos"] = ratio_report(q.pos);
        report["eoa"] = ratio_report(q.eoa);
        report["eos"] = ratio_report(q.eos);
        nlohmann::json list = nlohmann::json::array();
        for (const auto& p : q.equilibria) list.push_back(profile_report(doc, p));
        report["equilibria"] = list;
    }
    out << report.dump(2) << "\n";
    return 0;
}

template <class S>
int run_scenario(const std::string& name, const std::vector<std::string>& kv,
                 std::uint64_t seed, const std::string& emit, std::ostream& out) {
    ScenarioParams params;
    for (const auto& pair : kv) {
        auto eq = pair.find('=');
        if (eq == std::string::npos) throw input_error("scenario parameters look like key=value, got '" + pair + "'");
        params[pair.substr(0, eq)] = pair.substr(eq + 1);
    }
    auto doc = build_scenario<S>(name, params, seed);
    const auto json = serialize_network(doc);
    if (emit == "-" || emit.empty()) {
        out << json.dump(2) << "\n";
    } else {
        std::ofstream file(emit);
        if (!file) throw input_error("cannot write '" + emit + "'");
        file << json.dump(2) << "\n";
    }
    return 0;
}

} // namespace cli_detail

inline int run_command(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"clearing, bailouts and debt-forgiveness games on financial networks"};
    app.require_subcommand(1);
    std::string mode = "exact";
    app.add_option("--mode", mode, "numeric mode: exact or float")
        ->check(CLI::IsMember({"exact", "float"}));

    std::string file, budget, policy = "greedy", objective = "max-liquidity", target, method = "exact";
    std::string game_policy = "none", start_profile, scenario_name, emit;
    bool dynamics = false, enumerate = false, quality = false;
    long max_steps = 1000;
    std::uint64_t seed = 12345;
    std::vector<std::string> scenario_params;

    auto* clear_cmd = app.add_subcommand("clear", "compute the greatest clearing of a network file");
    clear_cmd->add_option("file", file)->required();

    auto* inject_cmd = app.add_subcommand("inject", "plan cash injections under a budget");
    inject_cmd->add_option("file", file)->required();
    inject_cmd->add_option("--budget", budget, "total budget M")->required();
    inject_cmd->add_option("--policy", policy, "greedy, optimal or enumerative");

    auto* remove_cmd = app.add_subcommand("remove-debt", "plan debt forgiveness");
    remove_cmd->add_option("file", file)->required();
    remove_cmd->add_option("--objective", objective,
                           "max-liquidity, max-liquidity-all-solvent, min-forgiven-all-solvent, "
                           "min-forgiven-target-solvent");
    remove_cmd->add_option("--target", target, "target bank id for target-solvent objectives");
    remove_cmd->add_option("--method", method, "exact or greedy");

    auto* game_cmd = app.add_subcommand("game", "analyze the edge-removal game");
    game_cmd->add_option("file", file)->required();
    game_cmd->add_option("--policy", game_policy, "none, greedy:M or optimal:M");
    game_cmd->add_flag("--dynamics", dynamics, "run best-response dynamics");
    game_cmd->add_flag("--enumerate", enumerate, "enumerate pure equilibria");
    game_cmd->add_flag("--report", quality, "full quality report with PoA/PoS/EoA/EoS");
    game_cmd->add_option("--start", start_profile, "starting profile as JSON {lender: [borrowers]}");
    game_cmd->add_option("--max-steps", max_steps, "dynamics step cap");

    auto* scenario_cmd = app.add_subcommand("scenario", "emit a named scenario as a network file");
    scenario_cmd->add_option("name", scenario_name)->required();
    scenario_cmd->add_option("params", scenario_params, "key=value parameters");
    scenario_cmd->add_option("--seed", seed, "seed for the random scenarios");
    scenario_cmd->add_option("--emit", emit, "output path, or - for stdout");

    std::vector<const char*> argv;
    argv.push_back("fnet");
    for (const auto& a : args) argv.push_back(a.c_str());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? 0 : 2;
    }

    try {
        const bool exact = (mode == "exact");
        if (clear_cmd->parsed())
            return exact ? cli_detail::run_clear<Rational>(file, out)
                         : cli_detail::run_clear<double>(file, out);
        if (inject_cmd->parsed())
            return exact ? cli_detail::run_inject<Rational>(file, budget, policy, out)
                         : cli_detail::run_inject<double>(file, budget, policy, out);
        if (remove_cmd->parsed())
            return exact ? cli_detail::run_remove_debt<Rational>(file, objective, target, method, out)
                         : cli_detail::run_remove_debt<double>(file, objective, target, method, out);
        if (game_cmd->parsed())
            return exact ? cli_detail::run_game<Rational>(file, game_policy, dynamics, enumerate,
                                                          quality, start_profile, max_steps, out)
                         : cli_detail::run_game<double>(file, game_policy, dynamics, enumerate,
                                                        quality, start_profile, max_steps, out);
        if (scenario_cmd->parsed())
            return exact ? cli_detail::run_scenario<Rational>(scenario_name, scenario_params, seed, emit, out)
                         : cli_detail::run_scenario<double>(scenario_name, scenario_params, seed, emit, out);
        err << "no subcommand\n";
        return 2;
    } catch (const guard_error& e) {
        err << "guard refusal: " << e.what() << "\n";
        return 3;
    } catch (const numeric_error& e) {
        err << "numeric failure: " << e.what() << "\n";
        return 4;
    } catch (const input_error& e) {
        err << "input error: " << e.what() << "\n";
        return 2;
    } catch (const nlohmann::json::exception& e) {
        err << "input error: " << e.what() << "\n";
        return 2;
    }
}

} // namespace fnet

#endif
