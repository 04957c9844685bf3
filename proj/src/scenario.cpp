#include "shardgame/scenario.hpp"

#include <fstream>
#include <json.hpp>
#include <sstream>

namespace shardgame {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& origin, const std::string& what) {
    throw ScenarioError(origin + ": " + what);
}

void reject_unknown_keys(const json& obj, std::initializer_list<const char*> allowed,
                         const std::string& origin, const std::string& where) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool known = false;
        for (const char* key : allowed)
            if (it.key() == key) {
                known = true;
                break;
            }
        if (!known) fail(origin, where + ": unknown key '" + it.key() + "'");
    }
}

double require_number(const json& obj, const char* key, const std::string& origin,
                      const std::string& where) {
    if (!obj.contains(key)) fail(origin, where + ": missing key '" + key + "'");
    if (!obj[key].is_number()) fail(origin, where + "." + key + ": expected a number");
    return obj[key].get<double>();
}

std::string require_string(const json& obj, const char* key, const std::string& origin,
                           const std::string& where) {
    if (!obj.contains(key)) fail(origin, where + ": missing key '" + key + "'");
    if (!obj[key].is_string()) fail(origin, where + "." + key + ": expected a string");
    return obj[key].get<std::string>();
}

}  // namespace

ScenarioConfig parse_scenario(const std::string& text, const std::string& origin) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        fail(origin, std::string("parse error: ") + e.what());
    }
    if (!doc.is_object()) fail(origin, "top level must be an object");
    reject_unknown_keys(doc, {"followers", "shards", "payments", "solver", "leader", "seed"},
                        origin, "top level");

    ScenarioConfig config;

    if (!doc.contains("followers") || !doc["followers"].is_array())
        fail(origin, "missing 'followers' array");
    std::size_t idx = 0;
    for (const auto& f : doc["followers"]) {
        std::string where = "followers[" + std::to_string(idx) + "]";
        if (!f.is_object()) fail(origin, where + ": expected an object");
        reject_unknown_keys(f, {"id", "capacity", "unit_cost"}, origin, where);
        FollowerSpec spec;
        spec.id = require_string(f, "id", origin, where);
        where += " (id '" + spec.id + "')";
        spec.capacity = require_number(f, "capacity", origin, where);
        spec.unit_cost = require_number(f, "unit_cost", origin, where);
        config.followers.push_back(std::move(spec));
        ++idx;
    }

    if (!doc.contains("shards") || !doc["shards"].is_array())
        fail(origin, "missing 'shards' array");
    idx = 0;
    for (const auto& s : doc["shards"]) {
        std::string where = "shards[" + std::to_string(idx) + "]";
        if (!s.is_object()) fail(origin, where + ": expected an object");
        reject_unknown_keys(s, {"id", "alpha"}, origin, where);
        ShardSpec spec;
        spec.id = require_string(s, "id", origin, where);
        spec.alpha = require_number(s, "alpha", origin, where + " (id '" + spec.id + "')");
        config.shards.push_back(std::move(spec));
        ++idx;
    }

    if (doc.contains("payments")) {
        if (!doc["payments"].is_array()) fail(origin, "payments: expected an array");
        PaymentVector payments;
        for (const auto& p : doc["payments"]) {
            if (!p.is_number())
                fail(origin, "payments[" + std::to_string(payments.size()) +
                                 "]: expected a number");
            payments.push_back(p.get<double>());
        }
        config.payments = std::move(payments);
    }

    if (doc.contains("solver")) {
        const auto& solver = doc["solver"];
        if (!solver.is_object()) fail(origin, "solver: expected an object");
        reject_unknown_keys(solver, {"br_tolerance", "max_sweeps", "epsilon_grain"}, origin,
                            "solver");
        if (solver.contains("br_tolerance"))
            config.br_tolerance = require_number(solver, "br_tolerance", origin, "solver");
        if (solver.contains("epsilon_grain"))
            config.epsilon_grain = require_number(solver, "epsilon_grain", origin, "solver");
        if (solver.contains("max_sweeps")) {
            double v = require_number(solver, "max_sweeps", origin, "solver");
            config.max_sweeps = int(v);
        }
    }

    if (doc.contains("leader")) {
        const auto& leader = doc["leader"];
        if (!leader.is_object()) fail(origin, "leader: expected an object");
        reject_unknown_keys(leader, {"variant", "payment_grid_max"}, origin, "leader");
        if (leader.contains("variant")) {
            std::string v = require_string(leader, "variant", origin, "leader");
            if (v == "log")
                config.leader_variant = LeaderVariant::Log;
            else if (v == "linear")
                config.leader_variant = LeaderVariant::Linear;
            else
                fail(origin, "leader.variant: expected 'log' or 'linear', got '" + v + "'");
        }
        if (leader.contains("payment_grid_max")) {
            double v = require_number(leader, "payment_grid_max", origin, "leader");
            config.payment_grid_max = int(v);
        }
    }

    if (doc.contains("seed")) {
        if (!doc["seed"].is_number_integer())
            fail(origin, "seed: expected an integer");
        config.rng_seed = doc["seed"].get<std::uint64_t>();
    }

    try {
        config.validate();
    } catch (const std::domain_error& e) {
        fail(origin, e.what());
    }
    return config;
}

ScenarioConfig load_scenario(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ScenarioError(path + ": cannot open file");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario(buf.str(), path);
}

std::string scenario_to_json(const ScenarioConfig& config) {
    json doc;
    doc["followers"] = json::array();
    for (const auto& f : config.followers)
        doc["followers"].push_back(
            {{"id", f.id}, {"capacity", f.capacity}, {"unit_cost", f.unit_cost}});
    doc["shards"] = json::array();
    for (const auto& s : config.shards)
        doc["shards"].push_back({{"id", s.id}, {"alpha", s.alpha}});
    if (config.payments) doc["payments"] = *config.payments;
    doc["solver"] = {{"br_tolerance", config.br_tolerance},
                     {"max_sweeps", config.max_sweeps},
                     {"epsilon_grain", config.epsilon_grain}};
    doc["leader"] = {
        {"variant", config.leader_variant == LeaderVariant::Log ? "log" : "linear"},
        {"payment_grid_max", config.payment_grid_max}};
    doc["seed"] = config.rng_seed;
    return doc.dump(2) + "\n";
}

}  // namespace shardgame
