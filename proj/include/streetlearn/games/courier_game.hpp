#pragma once

#include <optional>
#include <vector>

#include <json.hpp>

#include "streetlearn/engine/game.hpp"
#include "streetlearn/games/coin_game.hpp"
#include "streetlearn/games/goal_sampling.hpp"

namespace streetlearn {

enum class CourierRewardUnit {
  kPanos,   // 1 per pano on the shortest path at assignment time
  kMeters,  // reward_per_meter per meter of that path
};

struct CourierConfig {
  double goal_radius = 100.0;
  double early_radius = 200.0;
  bool early_rewards = false;  // one-off shaping on first entering early_radius
  double early_fraction = 0.5;
  double coin_fraction = 0.0;
  CourierRewardUnit reward_unit = CourierRewardUnit::kPanos;
  double reward_per_meter = 0.1;
  std::optional<CurriculumSchedule> curriculum;
  std::optional<GoalMask> goal_mask;
  GoalMode goal_mode = GoalMode::kTrain;

  // Keys: goal_radius, early_radius, early_rewards, early_fraction,
  // coin_fraction, reward_unit ("panos"|"meters"), reward_per_meter,
  // curriculum {phase1_max, phase1_steps, growth_steps, full_range},
  // goal_mask {cell_deg, lat_phase, lng_phase}, goal_mode ("train"|"held_out").
  static CourierConfig from_json(const nlohmann::json& j);
  void validate() const;
};

struct GoalAssignment {
  NodeIndex goal = kNoNode;
  NodeIndex from = kNoNode;    // agent node at assignment
  int assigned_step = 0;
  double initial_distance_m = 0.0;
  int path_panos = -1;         // -1 when unreachable
  double goal_value = 0.0;     // reward paid on arrival
  bool reached = false;
  int reached_step = -1;
};

// Repeated goal reaching; also the curriculum variant when a schedule is set.
class CourierGame final : public Game {
 public:
  explicit CourierGame(CourierConfig config, bool curriculum_name = false);

  std::string_view name() const override { return curriculum_name_ ? "curriculum_courier_game" : "courier_game"; }
  AgentPose new_episode(GameHost& host) override;
  StepOutcome on_step(GameHost& host, const AgentPose& pose) override;
  NodeIndex target() const override { return goal_; }
  const ShortestPaths* target_paths() const override { return &paths_; }
  void annotate(nlohmann::json& info) const override;

  const CourierConfig& config() const { return config_; }
  const std::vector<GoalAssignment>& episode_goals() const { return goals_; }
  // Distance cap the next assignment will use, if a curriculum is active.
  std::optional<double> current_max_range(GameHost& host);

 private:
  void assign_goal(GameHost& host, NodeIndex from);
  double goal_value(const StreetGraph& graph, NodeIndex from) const;

  CourierConfig config_;
  bool curriculum_name_;
  CoinField coins_;
  NodeIndex goal_ = kNoNode;
  ShortestPaths paths_;
  std::vector<GoalAssignment> goals_;
  bool early_granted_ = false;
  double full_range_m_ = 0.0;

  // Per-step results for annotate().
  double last_goal_reward_ = 0.0;
  double last_shaping_reward_ = 0.0;
  double last_coin_reward_ = 0.0;
  bool last_new_goal_ = false;
  double last_distance_m_ = 0.0;
};

}  // namespace streetlearn
