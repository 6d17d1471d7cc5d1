#include "streetlearn/games/registry.hpp"

#include <algorithm>
#include <cstdlib>
#include <initializer_list>
#include <string_view>
#include <stdexcept>

#include "streetlearn/engine/pano_source.hpp"
#include "streetlearn/games/coin_game.hpp"
#include "streetlearn/games/courier_game.hpp"
#include "streetlearn/games/instruction_game.hpp"
#include "streetlearn/panograph/slpack.hpp"

namespace streetlearn {

const std::vector<std::string>& game_names() {
  static const std::vector<std::string> names{"coin_game",
                                              "courier_game",
                                              "curriculum_courier_game",
                                              "goal_instruction_game",
                                              "incremental_instruction_game",
                                              "step_by_step_instruction_game"};
  return names;
}

namespace {

void reject_unknown_keys(const nlohmann::json& cfg, std::initializer_list<std::string_view> known) {
  for (const auto& [key, value] : cfg.items()) {
    if (std::find(known.begin(), known.end(), key) == known.end()) {
      throw std::invalid_argument("unknown game_config key: " + key);
    }
  }
}

}  // namespace

std::unique_ptr<Game> make_game(const std::string& name, const nlohmann::json& config) {
  const nlohmann::json cfg = config.is_null() ? nlohmann::json::object() : config;
  if (!cfg.is_object()) throw std::invalid_argument("game_config must be a JSON object");
  if (name == "coin_game") {
    reject_unknown_keys(cfg, {"coin_fraction"});
  } else if (name.find("courier") != std::string::npos) {
    reject_unknown_keys(cfg, {"goal_radius", "early_radius", "early_rewards", "early_fraction", "coin_fraction",
                              "reward_unit", "reward_per_meter", "curriculum", "goal_mask", "goal_mode"});
  } else if (name.find("instruction") != std::string::npos) {
    reject_unknown_keys(cfg, {"num_instructions", "goal_radius", "waypoint_reward", "goal_reward", "shaping",
                              "shaping_radius", "shaping_fraction", "min_route_hops", "max_route_hops"});
  }
  if (name == "coin_game") return std::make_unique<CoinGame>(CoinGameConfig::from_json(cfg));
  if (name == "courier_game") return std::make_unique<CourierGame>(CourierConfig::from_json(cfg));
  if (name == "curriculum_courier_game") {
    CourierConfig c = CourierConfig::from_json(cfg);
    if (!c.curriculum) c.curriculum = CurriculumSchedule{};
    return std::make_unique<CourierGame>(std::move(c), true);
  }
  if (name == "goal_instruction_game") {
    return std::make_unique<InstructionGame>(InstructionVariant::kGoal, InstructionConfig::from_json(cfg));
  }
  if (name == "incremental_instruction_game") {
    return std::make_unique<InstructionGame>(InstructionVariant::kIncremental, InstructionConfig::from_json(cfg));
  }
  if (name == "step_by_step_instruction_game") {
    return std::make_unique<InstructionGame>(InstructionVariant::kStepByStep, InstructionConfig::from_json(cfg));
  }
  throw std::invalid_argument("unknown game: " + name);
}

std::filesystem::path resolve_data_path(const std::string& path) {
  std::filesystem::path p(path);
  if (p.is_relative() && !std::filesystem::exists(p)) {
    if (const char* root = std::getenv("STREETLEARN_DATA"); root != nullptr && *root != '\0') {
      return std::filesystem::path(root) / p;
    }
  }
  return p;
}

std::unique_ptr<Environment> make_environment(const EnvConfig& config) {
  config.validate();
  if (config.graph_path.empty()) throw std::invalid_argument("graph_path is required");
  Slpack pack = load_slpack(resolve_data_path(config.graph_path));
  auto graph = std::make_shared<const StreetGraph>(std::move(pack.graph));
  pack.graph = StreetGraph{};
  auto source = open_pano_source(pack, graph);
  return std::make_unique<Environment>(graph, source, make_game(config.game, config.game_config), config);
}

}  // namespace streetlearn
