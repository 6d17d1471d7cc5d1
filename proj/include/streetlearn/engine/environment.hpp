#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "streetlearn/engine/actions.hpp"
#include "streetlearn/engine/game.hpp"
#include "streetlearn/engine/graph_image.hpp"
#include "streetlearn/engine/observation.hpp"
#include "streetlearn/engine/pano_cache.hpp"
#include "streetlearn/engine/pano_source.hpp"
#include "streetlearn/projector/projector.hpp"

namespace streetlearn {

struct EnvConfig {
  std::string graph_path;
  std::string game = "courier_game";
  std::vector<std::string> observations{"view_image"};
  int frame_size = 84;
  double fov = 60.0;
  int episode_length = 1000;
  std::uint64_t seed = 0;
  bool auto_reset = true;
  std::size_t cache_bytes = std::size_t{256} << 20;
  // Game-specific options, passed through to the game factory.
  nlohmann::json game_config = nlohmann::json::object();

  // Unknown keys are rejected with std::invalid_argument.
  static EnvConfig from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
  void validate() const;
};

// Thrown by step() before the first reset() and after a finished episode
// when auto_reset is off.
class NotResetError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Gym-style environment over a street graph. Not thread-safe; many
// instances may share one graph and pano source.
class Environment final : private GameHost {
 public:
  Environment(std::shared_ptr<const StreetGraph> graph, std::shared_ptr<const PanoSource> source,
              std::unique_ptr<Game> game, EnvConfig config);

  Observation reset();
  StepResult step(const ActionTuple& action);
  // Throws std::out_of_range for an invalid index.
  StepResult step(std::size_t discrete_action);

  const AgentPose& pose() const { return pose_; }
  const Game& game() const { return *game_; }
  const EnvConfig& config() const { return config_; }
  const StreetGraph& street_graph() const { return *graph_; }
  const DiscreteActionSet& action_set() const { return actions_; }
  const PanoCache& cache() const { return cache_; }
  // Info map of the last reset or step.
  const nlohmann::json& last_info() const { return info_; }
  // Restarts the RNG and all counters; the pano cache is kept.
  void reseed(std::uint64_t seed);
  bool episode_active() const { return episode_active_; }
  int current_episode_step() const { return episode_step_; }
  std::int64_t lifetime_steps() const { return total_steps_; }

  // Signed bearing from the agent's yaw to the next pano towards the
  // current target, or nullopt when there is none.
  std::optional<double> bearing_to_next_pano() const;

 private:
  // GameHost
  const StreetGraph& graph() const override { return *graph_; }
  Rng& rng() override { return rng_; }
  Image render_view(NodeIndex node, double yaw) override;
  int episode_step() const override { return episode_step_; }
  std::int64_t total_steps() const override { return total_steps_; }

  void begin_episode();
  Observation observe();
  nlohmann::json make_info(double reward) const;
  const Image& pano_at(NodeIndex node);

  std::shared_ptr<const StreetGraph> graph_;
  std::unique_ptr<Game> game_;
  EnvConfig config_;
  ChannelSet channels_;
  DiscreteActionSet actions_;
  PanoCache cache_;
  Projector projector_;
  std::optional<GraphImageRenderer> graph_renderer_;
  Rng rng_;

  AgentPose pose_;
  NodeIndex loaded_node_ = kNoNode;
  std::shared_ptr<const Image> loaded_pano_;
  int episode_step_ = 0;
  std::int64_t total_steps_ = 0;
  std::int64_t episode_index_ = 0;
  bool was_reset_ = false;
  bool episode_active_ = false;
  nlohmann::json info_ = nlohmann::json::object();
};

}  // namespace streetlearn
