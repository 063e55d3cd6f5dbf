#pragma once

#include "clusterbench/model.hpp"

#include "json.hpp"

#include <filesystem>

namespace clusterbench {

struct LoadedConfig {
    ScenarioConfig config;
    bool seed_given = false; // "seed" key was present
};

/// Every key is optional; unknown keys (including nested ones) raise Error(Config) listing all of them.
LoadedConfig config_from_json(const nlohmann::json& doc);
LoadedConfig load_config_file(const std::filesystem::path& path);

nlohmann::json to_json(const ScenarioConfig& config);

} // namespace clusterbench
