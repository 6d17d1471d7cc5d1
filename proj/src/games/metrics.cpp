#include "streetlearn/games/metrics.hpp"

#include <stdexcept>

namespace streetlearn {

void TraceRecorder::push_goal(const nlohmann::json& info) {
  GoalRecord g;
  g.goal_id = info.at("target_id").get<std::string>();
  g.goal = {info.at("target_lat").get<double>(), info.at("target_lng").get<double>()};
  g.assigned_step = info.at("goal_assigned_step").get<int>();
  g.assigned_position = {info.at("lat").get<double>(), info.at("lng").get<double>()};
  g.initial_distance_m = info.at("goal_initial_distance_m").get<double>();
  g.path_panos = info.at("goal_path_panos").get<int>();
  trace_.goals.push_back(std::move(g));
  active_ = static_cast<int>(trace_.goals.size()) - 1;
}

void TraceRecorder::begin(const nlohmann::json& reset_info, int episode_length) {
  trace_ = EpisodeTrace{};
  trace_.episode_length = episode_length;
  push_goal(reset_info);
}

void TraceRecorder::record(const nlohmann::json& info) {
  if (trace_.goals.empty()) throw std::logic_error("TraceRecorder::record before begin");
  StepRecord s;
  s.step = info.at("step").get<int>();
  s.position = {info.at("lat").get<double>(), info.at("lng").get<double>()};
  s.goal_index = active_;
  s.goal_reward = info.at("goal_reward").get<double>();
  trace_.steps.push_back(s);
  if (info.at("new_goal").get<bool>()) {
    trace_.goals[static_cast<std::size_t>(active_)].reached_step = s.step;
    push_goal(info);
  }
}

EpisodeMetrics compute_metrics(const EpisodeTrace& trace) {
  EpisodeMetrics m;
  m.goals_assigned = static_cast<int>(trace.goals.size());
  std::vector<std::optional<int>> halfway(trace.goals.size());
  for (std::size_t i = 0; i < trace.goals.size(); ++i) {
    const GoalRecord& g = trace.goals[i];
    if (haversine_m(g.assigned_position, g.goal) <= 0.5 * g.initial_distance_m) halfway[i] = 0;
  }
  for (const StepRecord& s : trace.steps) {
    m.goal_rewards += s.goal_reward;
    const auto gi = static_cast<std::size_t>(s.goal_index);
    if (gi >= trace.goals.size()) throw std::invalid_argument("step refers to an unknown goal");
    const GoalRecord& g = trace.goals[gi];
    if (!halfway[gi] && haversine_m(s.position, g.goal) <= 0.5 * g.initial_distance_m) {
      halfway[gi] = s.step - g.assigned_step;
    }
  }
  for (std::size_t i = 0; i < trace.goals.size(); ++i) {
    const GoalRecord& g = trace.goals[i];
    if (g.reached_step) {
      ++m.goals_reached;
      m.steps_to_goal.push_back(*g.reached_step - g.assigned_step);
    } else if (g.path_panos >= 0 && trace.episode_length - g.assigned_step < goal_step_budget(g.path_panos)) {
      ++m.goals_censored;
    } else {
      ++m.goals_failed;
    }
    if (halfway[i]) m.half_distance_steps.push_back(*halfway[i]);
  }
  const int counted = m.goals_reached + m.goals_failed;
  m.fail_pct = counted > 0 ? static_cast<double>(m.goals_failed) / counted : 0.0;
  if (!m.half_distance_steps.empty()) {
    double sum = 0.0;
    for (int t : m.half_distance_steps) sum += t;
    m.t_half = sum / static_cast<double>(m.half_distance_steps.size());
  }
  return m;
}

MetricsSummary summarize(const std::vector<EpisodeMetrics>& episodes) {
  MetricsSummary s;
  s.episodes = static_cast<int>(episodes.size());
  double reward_sum = 0.0;
  double half_sum = 0.0;
  std::size_t half_count = 0;
  for (const EpisodeMetrics& m : episodes) {
    reward_sum += m.goal_rewards;
    s.goals_assigned += m.goals_assigned;
    s.goals_reached += m.goals_reached;
    s.goals_failed += m.goals_failed;
    s.goals_censored += m.goals_censored;
    for (int t : m.half_distance_steps) half_sum += t;
    half_count += m.half_distance_steps.size();
  }
  if (s.episodes > 0) s.mean_goal_rewards = reward_sum / s.episodes;
  const int counted = s.goals_reached + s.goals_failed;
  s.fail_pct = counted > 0 ? static_cast<double>(s.goals_failed) / counted : 0.0;
  if (half_count > 0) s.t_half = half_sum / static_cast<double>(half_count);
  return s;
}

nlohmann::json MetricsSummary::to_json() const {
  nlohmann::json j = {{"episodes", episodes},
                      {"goal_rewards", mean_goal_rewards},
                      {"goals_assigned", goals_assigned},
                      {"goals_reached", goals_reached},
                      {"goals_failed", goals_failed},
                      {"goals_censored", goals_censored},
                      {"fail_pct", fail_pct}};
  j["t_half"] = t_half ? nlohmann::json(*t_half) : nlohmann::json(nullptr);
  return j;
}

}  // namespace streetlearn
