#pragma once

#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "streetlearn/engine/game.hpp"

namespace streetlearn {

enum class InstructionVariant {
  kGoal,         // reward only at the goal
  kIncremental,  // +waypoint_reward per waypoint reached in order
  kStepByStep,   // as incremental, but only the current instruction is shown
};

// A route split into num_instructions legs. targets holds the waypoints
// followed by the goal; thumbnails[i] is the view at targets[i].
struct InstructionRoute {
  std::vector<NodeIndex> path;  // start .. goal inclusive
  std::vector<NodeIndex> targets;
  std::vector<std::string> instructions;
  std::vector<Image> thumbnails;
};

using ViewRenderer = std::function<Image(NodeIndex node, double yaw)>;

// Waypoint k (1..n) sits at path index round(k * D / (n + 1)), D the hop
// length. Throws std::invalid_argument if start == goal, the pair is not
// connected or the path is too short to hold n distinct waypoints.
// Thumbnails are skipped when render is empty.
InstructionRoute build_instruction_route(const StreetGraph& graph, NodeIndex start, NodeIndex goal,
                                         int num_instructions, const ViewRenderer& render);

// "Go straight for 40 meters" and friends, from the turn at a waypoint.
std::string instruction_text(double turn_deg, double leg_m);

struct InstructionConfig {
  int num_instructions = 3;
  double goal_radius = 25.0;
  double waypoint_reward = 1.0;
  double goal_reward = 10.0;
  bool shaping = false;
  double shaping_radius = 50.0;
  double shaping_fraction = 0.5;
  int min_route_hops = 20;
  int max_route_hops = 200;

  static InstructionConfig from_json(const nlohmann::json& j);
  void validate() const;
};

class InstructionGame final : public Game {
 public:
  InstructionGame(InstructionVariant variant, InstructionConfig config);

  std::string_view name() const override;
  AgentPose new_episode(GameHost& host) override;
  StepOutcome on_step(GameHost& host, const AgentPose& pose) override;
  NodeIndex target() const override { return route_.targets.empty() ? kNoNode : route_.targets[next_]; }
  const ShortestPaths* target_paths() const override;
  void annotate(nlohmann::json& info) const override;
  void fill_observation(Observation& obs, const ChannelSet& requested) const override;

  const InstructionRoute& route() const { return route_; }
  std::size_t next_target() const { return next_; }

 private:
  InstructionVariant variant_;
  InstructionConfig config_;
  InstructionRoute route_;
  std::vector<ShortestPaths> paths_;  // one per target
  std::size_t next_ = 0;
  std::vector<char> shaped_;

  double last_waypoint_reward_ = 0.0;
  double last_goal_reward_ = 0.0;
  double last_shaping_reward_ = 0.0;
};

}  // namespace streetlearn
