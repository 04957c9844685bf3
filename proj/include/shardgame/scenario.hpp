#ifndef SHARDGAME_SCENARIO_HPP
#define SHARDGAME_SCENARIO_HPP

#include <string>

#include "shardgame/types.hpp"

namespace shardgame {

/// Raised for unreadable, unparseable, or invalid scenario files. The message
/// carries the origin (path) and the offending field or byte position.
struct ScenarioError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Parses scenario JSON. Top-level keys: followers, shards, payments,
/// solver, leader, seed. Unknown keys are rejected.
ScenarioConfig parse_scenario(const std::string& text, const std::string& origin = "<string>");

/// Reads and parses a scenario file.
ScenarioConfig load_scenario(const std::string& path);

/// Serializes a config back to scenario JSON (used to ship the bundled
/// example scenarios).
std::string scenario_to_json(const ScenarioConfig& config);

}  // namespace shardgame

#endif
