#include "streetlearn/service/bench.hpp"

#include <chrono>
#include <stdexcept>

#include "streetlearn/games/oracle.hpp"

namespace streetlearn {
namespace {

struct Pass {
  std::vector<EpisodeTrace> traces;
  std::int64_t steps = 0;
  double seconds = 0.0;
};

Pass run_pass(Environment& env, const BenchOptions& options) {
  using Clock = std::chrono::steady_clock;
  env.reseed(options.seed);
  Rng agent_rng(hash_combine(options.seed, 0x5eedULL));
  const int length = env.config().episode_length;
  Pass pass;
  const auto t0 = Clock::now();
  for (int e = 0; e < options.episodes; ++e) {
    env.reset();
    TraceRecorder recorder;
    recorder.begin(env.last_info(), length);
    bool done = false;
    bool first = true;
    while (!done) {
      ActionTuple action;
      if (options.agent == BenchAgent::kRandom) {
        action = env.action_set().at(agent_rng.index(env.action_set().size()));
      } else if (!first) {
        const ShortestPaths* paths = env.game().target_paths();
        if (paths == nullptr) throw std::invalid_argument("oracle bench needs a game with a goal");
        try {
          action = oracle_policy(env.street_graph(), *paths, env.pose().pano, env.pose().yaw,
                                 options.horizontal_rotation);
        } catch (const GoalUnreachableError&) {
          action = ActionTuple{};
        }
      }
      first = false;
      const StepResult r = env.step(action);
      recorder.record(r.info);
      done = r.done;
      ++pass.steps;
    }
    pass.traces.push_back(recorder.trace());
  }
  pass.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
  return pass;
}

}  // namespace

BenchReport run_oracle_bench(Environment& env, const BenchOptions& options) {
  if (env.config().auto_reset) throw std::invalid_argument("oracle bench needs auto_reset off");
  if (options.episodes < 1) throw std::invalid_argument("episodes must be positive");
  BenchReport report;
  if (options.warmup) report.warmup_seconds = run_pass(env, options).seconds;
  const std::size_t hits0 = env.cache().hits();
  const std::size_t loads0 = env.cache().loads();
  Pass pass = run_pass(env, options);
  report.cache_hits = env.cache().hits() - hits0;
  report.cache_loads = env.cache().loads() - loads0;
  report.steps = pass.steps;
  report.seconds = pass.seconds;
  report.steps_per_second = pass.seconds > 0.0 ? static_cast<double>(pass.steps) / pass.seconds : 0.0;
  for (const EpisodeTrace& t : pass.traces) {
    report.episodes.push_back(compute_metrics(t));
    for (const GoalRecord& g : t.goals) {
      if (g.reached_step && g.path_panos >= 0 && *g.reached_step - g.assigned_step > goal_step_budget(g.path_panos)) {
        ++report.budget_violations;
      }
    }
  }
  report.summary = summarize(report.episodes);
  report.traces = std::move(pass.traces);
  return report;
}

nlohmann::json BenchReport::to_json() const {
  nlohmann::json j = summary.to_json();
  j["steps"] = steps;
  j["seconds"] = seconds;
  j["steps_per_second"] = steps_per_second;
  j["warmup_seconds"] = warmup_seconds;
  j["budget_violations"] = budget_violations;
  j["cache_hits"] = cache_hits;
  j["cache_loads"] = cache_loads;
  return j;
}

}  // namespace streetlearn
