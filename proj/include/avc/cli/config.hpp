#pragma once

#include "avc/agent/agent.hpp"
#include "avc/checker/inference.hpp"

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>

namespace avc::cli {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// The subset of TOML used by avc.toml: [section] headers, `key = value`
// with basic strings, integers, floats and booleans, and # comments.
using TomlValue = std::variant<std::string, std::int64_t, double, bool>;
using TomlTable = std::map<std::string, TomlValue>;  // keys are "section.key"

TomlTable parse_toml(std::string_view text);

struct RunConfig {
    checker::SolverConfig solver;  // disabled unless a command is configured
    int port = 7341;
    agent::AgentConfig agent;
};

// Reads `path` when it exists. Throws ConfigError on malformed input or
// values of the wrong type.
RunConfig load_config(const std::optional<std::string>& path);

// AVC_SOLVER overrides the file; an empty value disables Tier 2.
void apply_environment(RunConfig& cfg);

}  // namespace avc::cli
