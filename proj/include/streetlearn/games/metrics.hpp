#pragma once

#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "streetlearn/panograph/geo.hpp"

namespace streetlearn {

struct GoalRecord {
  std::string goal_id;
  LatLng goal;
  int assigned_step = 0;
  LatLng assigned_position;  // agent position when the goal was drawn
  double initial_distance_m = 0.0;
  int path_panos = -1;  // -1 when unreachable
  std::optional<int> reached_step;
};

struct StepRecord {
  int step = 0;
  LatLng position;
  int goal_index = 0;  // goal that was active while this step was taken
  double goal_reward = 0.0;
};

// One courier episode as seen through the info maps.
struct EpisodeTrace {
  int episode_length = 0;
  std::vector<GoalRecord> goals;
  std::vector<StepRecord> steps;
};

// Builds an EpisodeTrace from the info of reset() and of every step().
class TraceRecorder {
 public:
  void begin(const nlohmann::json& reset_info, int episode_length);
  void record(const nlohmann::json& step_info);
  const EpisodeTrace& trace() const { return trace_; }

 private:
  void push_goal(const nlohmann::json& info);

  EpisodeTrace trace_;
  int active_ = 0;
};

// Unreached goals are censored (left out of Fail) when fewer than
// 2 + 4 * path_panos steps remained after they were assigned.
inline int goal_step_budget(int path_panos) { return 2 + 4 * path_panos; }

struct EpisodeMetrics {
  double goal_rewards = 0.0;
  int goals_assigned = 0;
  int goals_reached = 0;
  int goals_failed = 0;
  int goals_censored = 0;
  double fail_pct = 0.0;                 // fraction in [0, 1]
  std::vector<int> half_distance_steps;  // per goal that got halfway
  std::optional<double> t_half;          // mean of the above
  std::vector<int> steps_to_goal;        // per reached goal
};

EpisodeMetrics compute_metrics(const EpisodeTrace& trace);

struct MetricsSummary {
  int episodes = 0;
  double mean_goal_rewards = 0.0;
  int goals_assigned = 0;
  int goals_reached = 0;
  int goals_failed = 0;
  int goals_censored = 0;
  double fail_pct = 0.0;  // fraction in [0, 1], pooled over episodes
  std::optional<double> t_half;

  nlohmann::json to_json() const;
};

MetricsSummary summarize(const std::vector<EpisodeMetrics>& episodes);

}  // namespace streetlearn
