#pragma once

/**
 * @file config_io.hpp
 * @brief Sectioned key = value configuration files.
 *
 * Sections: [geometry], [physics], [numerics], [schedule], [output]. Lines starting
 * with '#' or ';' are comments. Unknown sections or keys, duplicates, missing
 * required keys (geometry.kind, physics.rho_plus, physics.rho_minus) and values out
 * of range raise ConfigError with the offending line number.
 */

#include <string>
#include <vector>

#include "muskat/scenario.hpp"

namespace muskat {

struct ParsedConfig {
    ScenarioConfig config;
    std::vector<std::string> defaults_applied;  // "section.key = value" for every key left at its default
};

ParsedConfig parse_config(const std::string& text);
ParsedConfig load_config(const std::string& path);

/// Full listing of every key; parse_config(serialize_config(c)).config == c.
std::string serialize_config(const ScenarioConfig& config);

/// Shortest decimal string that reads back to the same double.
std::string format_double(double x);

}  // namespace muskat
