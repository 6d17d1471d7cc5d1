#pragma once

#include <cstdint>
#include <string_view>

#include <json.hpp>

#include "streetlearn/engine/actions.hpp"
#include "streetlearn/engine/observation.hpp"
#include "streetlearn/image.hpp"
#include "streetlearn/panograph/shortest_path.hpp"
#include "streetlearn/random.hpp"

namespace streetlearn {

// Environment services available to a game.
class GameHost {
 public:
  virtual ~GameHost() = default;
  virtual const StreetGraph& graph() const = 0;
  virtual Rng& rng() = 0;
  // First-person view at a node, level pitch, the configured fov and frame size.
  virtual Image render_view(NodeIndex node, double yaw) = 0;
  virtual int episode_step() const = 0;
  // Steps taken over the lifetime of the environment.
  virtual std::int64_t total_steps() const = 0;
};

struct StepOutcome {
  double reward = 0.0;
  bool done = false;
};

// Reward and termination rules. A game is owned by one environment and
// shares its single-threaded contract.
class Game {
 public:
  virtual ~Game() = default;

  virtual std::string_view name() const = 0;

  // Resets the episode state and returns the start pose (pano and yaw).
  virtual AgentPose new_episode(GameHost& host) = 0;

  // Called after the action has been applied.
  virtual StepOutcome on_step(GameHost& host, const AgentPose& pose) = 0;

  // Current goal or next waypoint; kNoNode when the game has none.
  virtual NodeIndex target() const { return kNoNode; }
  virtual const ShortestPaths* target_paths() const { return nullptr; }

  // Game state for the info map.
  virtual void annotate(nlohmann::json& info) const { (void)info; }

  // Game-owned channels (instructions, thumbnails).
  virtual void fill_observation(Observation& obs, const ChannelSet& requested) const {
    (void)obs;
    (void)requested;
  }
};

}  // namespace streetlearn
