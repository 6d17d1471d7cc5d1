#include "streetlearn/games/courier_game.hpp"

#include <stdexcept>

namespace streetlearn {

CourierConfig CourierConfig::from_json(const nlohmann::json& j) {
  CourierConfig c;
  try {
    c.goal_radius = j.value("goal_radius", c.goal_radius);
    c.early_radius = j.value("early_radius", c.early_radius);
    c.early_rewards = j.value("early_rewards", c.early_rewards);
    c.early_fraction = j.value("early_fraction", c.early_fraction);
    c.coin_fraction = j.value("coin_fraction", c.coin_fraction);
    const std::string unit = j.value("reward_unit", std::string("panos"));
    if (unit == "panos") {
      c.reward_unit = CourierRewardUnit::kPanos;
    } else if (unit == "meters") {
      c.reward_unit = CourierRewardUnit::kMeters;
    } else {
      throw std::invalid_argument("reward_unit must be \"panos\" or \"meters\"");
    }
    c.reward_per_meter = j.value("reward_per_meter", c.reward_per_meter);
    if (j.contains("curriculum") && !j.at("curriculum").is_null()) {
      const auto& cj = j.at("curriculum");
      CurriculumSchedule s;
      s.phase1_max_m = cj.value("phase1_max", s.phase1_max_m);
      s.phase1_steps = cj.value("phase1_steps", s.phase1_steps);
      s.growth_steps = cj.value("growth_steps", s.growth_steps);
      s.full_range_m = cj.value("full_range", s.full_range_m);
      c.curriculum = s;
    }
    if (j.contains("goal_mask") && !j.at("goal_mask").is_null()) {
      const auto& mj = j.at("goal_mask");
      c.goal_mask = GoalMask(mj.value("cell_deg", GoalMask::kMediumCellDeg), mj.value("lat_phase", 0),
                             mj.value("lng_phase", 0));
    }
    const std::string mode = j.value("goal_mode", std::string("train"));
    if (mode == "train") {
      c.goal_mode = GoalMode::kTrain;
    } else if (mode == "held_out") {
      c.goal_mode = GoalMode::kHeldOut;
    } else {
      throw std::invalid_argument("goal_mode must be \"train\" or \"held_out\"");
    }
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("bad courier config: ") + e.what());
  }
  c.validate();
  return c;
}

void CourierConfig::validate() const {
  if (!(goal_radius > 0.0)) throw std::invalid_argument("goal_radius must be positive");
  if (!(goal_radius < early_radius)) throw std::invalid_argument("goal_radius must be below early_radius");
  if (!(coin_fraction >= 0.0 && coin_fraction <= 1.0)) throw std::invalid_argument("coin_fraction must be in [0, 1]");
  if (curriculum && !(curriculum->phase1_max_m > 0.0)) throw std::invalid_argument("phase1_max must be positive");
  if (goal_mode == GoalMode::kHeldOut && !goal_mask) throw std::invalid_argument("held_out mode needs a goal_mask");
}

CourierGame::CourierGame(CourierConfig config, bool curriculum_name)
    : config_(std::move(config)), curriculum_name_(curriculum_name) {
  config_.validate();
}

std::optional<double> CourierGame::current_max_range(GameHost& host) {
  if (!config_.curriculum) return std::nullopt;
  if (full_range_m_ == 0.0) {
    full_range_m_ = config_.curriculum->full_range_m > 0.0 ? config_.curriculum->full_range_m : graph_span_m(host.graph());
  }
  CurriculumSchedule schedule = *config_.curriculum;
  schedule.full_range_m = full_range_m_;
  return schedule.max_range(host.total_steps());
}

double CourierGame::goal_value(const StreetGraph& graph, NodeIndex from) const {
  if (!paths_.reachable(from)) return 0.0;
  if (config_.reward_unit == CourierRewardUnit::kPanos) return static_cast<double>(paths_.hops(from));
  double meters = 0.0;
  for (NodeIndex v = from; paths_.next(v) != kNoNode; v = paths_.next(v)) {
    meters += haversine_m(graph.position(v), graph.position(paths_.next(v)));
  }
  return meters * config_.reward_per_meter;
}

void CourierGame::assign_goal(GameHost& host, NodeIndex from) {
  GoalConstraints constraints;
  constraints.goal_radius_m = config_.goal_radius;
  constraints.max_distance_m = current_max_range(host);
  constraints.mask = config_.goal_mask;
  constraints.mode = config_.goal_mode;
  const StreetGraph& graph = host.graph();
  goal_ = sample_goal(graph, from, constraints, host.rng());
  paths_ = shortest_paths_to(graph, goal_);

  GoalAssignment a;
  a.goal = goal_;
  a.from = from;
  a.assigned_step = host.episode_step();
  a.initial_distance_m = haversine_m(graph.position(from), graph.position(goal_));
  a.path_panos = paths_.reachable(from) ? paths_.hops(from) : -1;
  a.goal_value = goal_value(graph, from);
  goals_.push_back(a);
  early_granted_ = false;
}

AgentPose CourierGame::new_episode(GameHost& host) {
  const AgentPose start = random_start(host);
  coins_.scatter(host.graph(), config_.coin_fraction, host.rng());
  goals_.clear();
  assign_goal(host, start.pano);
  last_goal_reward_ = last_shaping_reward_ = last_coin_reward_ = 0.0;
  last_new_goal_ = true;
  last_distance_m_ = goals_.back().initial_distance_m;
  return start;
}

StepOutcome CourierGame::on_step(GameHost& host, const AgentPose& pose) {
  const StreetGraph& graph = host.graph();
  last_goal_reward_ = last_shaping_reward_ = 0.0;
  last_new_goal_ = false;
  last_coin_reward_ = config_.coin_fraction > 0.0 ? coins_.collect(pose.pano) : 0.0;

  const double d = haversine_m(graph.position(pose.pano), graph.position(goal_));
  if (d <= config_.goal_radius) {
    GoalAssignment& current = goals_.back();
    current.reached = true;
    current.reached_step = host.episode_step();
    last_goal_reward_ = current.goal_value;
    assign_goal(host, pose.pano);
    last_new_goal_ = true;
    last_distance_m_ = goals_.back().initial_distance_m;
  } else {
    last_distance_m_ = d;
    if (config_.early_rewards && !early_granted_ && d <= config_.early_radius) {
      early_granted_ = true;
      last_shaping_reward_ = config_.early_fraction * goals_.back().goal_value * (1.0 - d / config_.early_radius);
    }
  }
  return {last_goal_reward_ + last_shaping_reward_ + last_coin_reward_, false};
}

void CourierGame::annotate(nlohmann::json& info) const {
  const GoalAssignment& g = goals_.back();
  info["goal_index"] = goals_.size() - 1;
  info["goal_node"] = g.goal;
  info["goal_path_panos"] = g.path_panos;
  info["goal_value"] = g.goal_value;
  info["goal_assigned_step"] = g.assigned_step;
  info["goal_initial_distance_m"] = g.initial_distance_m;
  info["new_goal"] = last_new_goal_;
  info["goal_reward"] = last_goal_reward_;
  info["shaping_reward"] = last_shaping_reward_;
  info["coin_reward"] = last_coin_reward_;
  info["distance_to_goal_m"] = last_distance_m_;
  info["goals_reached"] = goals_.size() - 1;
  if (full_range_m_ > 0.0 && config_.curriculum) info["curriculum_full_range_m"] = full_range_m_;
}

}  // namespace streetlearn
