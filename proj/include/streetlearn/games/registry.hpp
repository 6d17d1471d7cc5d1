#pragma once

#include <filesystem>
#include <memory>
#include <string>
#include <vector>

#include <json.hpp>

#include "streetlearn/engine/environment.hpp"
#include "streetlearn/engine/game.hpp"

namespace streetlearn {

const std::vector<std::string>& game_names();

// Throws std::invalid_argument for an unknown name or a bad config.
std::unique_ptr<Game> make_game(const std::string& name, const nlohmann::json& config);

// Relative graph paths that do not exist are looked up under $STREETLEARN_DATA.
std::filesystem::path resolve_data_path(const std::string& path);

// Loads config.graph_path and wires graph, pano source and game together.
std::unique_ptr<Environment> make_environment(const EnvConfig& config);

}  // namespace streetlearn
