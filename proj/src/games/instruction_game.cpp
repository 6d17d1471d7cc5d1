#include "streetlearn/games/instruction_game.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "streetlearn/games/coin_game.hpp"
#include "streetlearn/games/goal_sampling.hpp"

namespace streetlearn {

std::string instruction_text(double turn_deg, double leg_m) {
  const long meters = std::max(10L, std::lround(leg_m / 10.0) * 10L);
  char buf[96];
  const double a = std::fabs(turn_deg);
  if (a < 30.0) {
    std::snprintf(buf, sizeof buf, "Go straight for %ld meters", meters);
  } else if (a <= 150.0) {
    std::snprintf(buf, sizeof buf, "Turn %s at the next intersection and continue for %ld meters",
                  turn_deg > 0 ? "right" : "left", meters);
  } else {
    std::snprintf(buf, sizeof buf, "Turn around and continue for %ld meters", meters);
  }
  return buf;
}

InstructionRoute build_instruction_route(const StreetGraph& graph, NodeIndex start, NodeIndex goal,
                                         int num_instructions, const ViewRenderer& render) {
  if (num_instructions < 1) throw std::invalid_argument("need at least one instruction");
  if (start == goal) throw std::invalid_argument("route start equals goal");
  const ShortestPaths sp = shortest_paths_to(graph, goal);
  InstructionRoute r;
  r.path = sp.path_from(start);
  if (r.path.empty()) throw std::invalid_argument("route endpoints are not connected");
  const int d = static_cast<int>(r.path.size()) - 1;
  const int n = num_instructions;
  if (d < n + 1) throw std::invalid_argument("route too short for the requested instructions");

  std::vector<int> at;  // path indices of the targets
  for (int k = 1; k <= n; ++k) at.push_back(static_cast<int>(std::lround(static_cast<double>(k) * d / (n + 1))));
  at.push_back(d);

  auto bearing = [&](int i, int j) {
    return initial_bearing_deg(graph.position(r.path[static_cast<std::size_t>(i)]),
                               graph.position(r.path[static_cast<std::size_t>(j)]));
  };
  for (std::size_t k = 0; k < at.size(); ++k) {
    r.targets.push_back(r.path[static_cast<std::size_t>(at[k])]);
    if (k + 1 < at.size()) {
      const int w = at[k];
      double leg = 0.0;
      for (int i = w; i < at[k + 1]; ++i) {
        leg += haversine_m(graph.position(r.path[static_cast<std::size_t>(i)]),
                           graph.position(r.path[static_cast<std::size_t>(i + 1)]));
      }
      r.instructions.push_back(instruction_text(signed_angle_deg(bearing(w, w + 1) - bearing(w - 1, w)), leg));
    }
  }
  if (render) {
    for (std::size_t k = 0; k < at.size(); ++k) {
      const int w = at[k];
      const double yaw = k + 1 < at.size() ? bearing(w, w + 1) : bearing(w - 1, w);
      r.thumbnails.push_back(render(r.targets[k], yaw));
    }
  }
  return r;
}

InstructionConfig InstructionConfig::from_json(const nlohmann::json& j) {
  InstructionConfig c;
  try {
    c.num_instructions = j.value("num_instructions", c.num_instructions);
    c.goal_radius = j.value("goal_radius", c.goal_radius);
    c.waypoint_reward = j.value("waypoint_reward", c.waypoint_reward);
    c.goal_reward = j.value("goal_reward", c.goal_reward);
    c.shaping = j.value("shaping", c.shaping);
    c.shaping_radius = j.value("shaping_radius", c.shaping_radius);
    c.shaping_fraction = j.value("shaping_fraction", c.shaping_fraction);
    c.min_route_hops = j.value("min_route_hops", c.min_route_hops);
    c.max_route_hops = j.value("max_route_hops", c.max_route_hops);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("bad instruction config: ") + e.what());
  }
  c.validate();
  return c;
}

void InstructionConfig::validate() const {
  if (num_instructions < 1) throw std::invalid_argument("num_instructions must be positive");
  if (!(goal_radius > 0.0)) throw std::invalid_argument("goal_radius must be positive");
  if (!(goal_radius < shaping_radius)) throw std::invalid_argument("goal_radius must be below shaping_radius");
  if (min_route_hops < num_instructions + 1 || max_route_hops < min_route_hops) {
    throw std::invalid_argument("route hop range must satisfy num_instructions < min <= max");
  }
}

InstructionGame::InstructionGame(InstructionVariant variant, InstructionConfig config)
    : variant_(variant), config_(config) {
  config_.validate();
}

std::string_view InstructionGame::name() const {
  switch (variant_) {
    case InstructionVariant::kGoal: return "goal_instruction_game";
    case InstructionVariant::kIncremental: return "incremental_instruction_game";
    case InstructionVariant::kStepByStep: return "step_by_step_instruction_game";
  }
  return "";
}

const ShortestPaths* InstructionGame::target_paths() const {
  return paths_.empty() ? nullptr : &paths_[next_];
}

AgentPose InstructionGame::new_episode(GameHost& host) {
  const StreetGraph& graph = host.graph();
  constexpr int kAttempts = 64;
  for (int attempt = 0; attempt < kAttempts; ++attempt) {
    const AgentPose start = random_start(host);
    const ShortestPaths from_start = shortest_paths_to(graph, start.pano);
    std::vector<NodeIndex> candidates;
    for (NodeIndex v = 0; v < static_cast<NodeIndex>(graph.size()); ++v) {
      const auto h = from_start.hops(v);
      if (h != kUnreachable && h >= config_.min_route_hops && h <= config_.max_route_hops) candidates.push_back(v);
    }
    if (candidates.empty()) continue;
    const NodeIndex goal = candidates[host.rng().index(candidates.size())];
    route_ = build_instruction_route(graph, start.pano, goal, config_.num_instructions,
                                     [&host](NodeIndex node, double yaw) { return host.render_view(node, yaw); });
    paths_.clear();
    for (NodeIndex t : route_.targets) paths_.push_back(shortest_paths_to(graph, t));
    next_ = 0;
    shaped_.assign(route_.targets.size(), 0);
    last_waypoint_reward_ = last_goal_reward_ = last_shaping_reward_ = 0.0;
    return start;
  }
  throw GoalSamplingError("no route with the requested hop length");
}

StepOutcome InstructionGame::on_step(GameHost& host, const AgentPose& pose) {
  const StreetGraph& graph = host.graph();
  const LatLng here = graph.position(pose.pano);
  last_waypoint_reward_ = last_goal_reward_ = last_shaping_reward_ = 0.0;
  const std::size_t goal_index = route_.targets.size() - 1;

  while (next_ < goal_index && haversine_m(here, graph.position(route_.targets[next_])) <= config_.goal_radius) {
    if (variant_ != InstructionVariant::kGoal) last_waypoint_reward_ += config_.waypoint_reward;
    ++next_;
  }
  if (haversine_m(here, graph.position(route_.targets[goal_index])) <= config_.goal_radius) {
    last_goal_reward_ = config_.goal_reward;
    next_ = goal_index;
    return {last_waypoint_reward_ + last_goal_reward_, true};
  }
  if (config_.shaping) {
    // Only targets that pay a reward get a shaping bonus.
    const bool rewarded = next_ == goal_index || variant_ != InstructionVariant::kGoal;
    const double d = haversine_m(here, graph.position(route_.targets[next_]));
    if (rewarded && !shaped_[next_] && d <= config_.shaping_radius) {
      shaped_[next_] = 1;
      last_shaping_reward_ = config_.shaping_fraction * (1.0 - d / config_.shaping_radius);
    }
  }
  return {last_waypoint_reward_ + last_shaping_reward_, false};
}

void InstructionGame::annotate(nlohmann::json& info) const {
  info["waypoints_reached"] = next_;
  info["num_targets"] = route_.targets.size();
  info["route_hops"] = route_.path.empty() ? 0 : route_.path.size() - 1;
  info["waypoint_reward"] = last_waypoint_reward_;
  info["goal_reward"] = last_goal_reward_;
  info["shaping_reward"] = last_shaping_reward_;
}

void InstructionGame::fill_observation(Observation& obs, const ChannelSet& requested) const {
  if (variant_ == InstructionVariant::kStepByStep) {
    const std::size_t n = route_.instructions.size();
    const std::size_t idx = std::min(next_, n - 1);
    if (requested.has(Channel::kInstructions)) obs.instructions = std::vector<std::string>{route_.instructions[idx]};
    if (requested.has(Channel::kThumbnails) && route_.thumbnails.size() > idx + 1) {
      obs.thumbnails = std::vector<Image>{route_.thumbnails[idx], route_.thumbnails[idx + 1]};
    }
    return;
  }
  if (requested.has(Channel::kInstructions)) obs.instructions = route_.instructions;
  if (requested.has(Channel::kThumbnails)) obs.thumbnails = route_.thumbnails;
}

}  // namespace streetlearn
