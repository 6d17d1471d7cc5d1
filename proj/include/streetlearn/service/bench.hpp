#pragma once

#include <cstdint>
#include <vector>

#include <json.hpp>

#include "streetlearn/engine/environment.hpp"
#include "streetlearn/games/metrics.hpp"

namespace streetlearn {

enum class BenchAgent { kOracle, kRandom };

struct BenchOptions {
  int episodes = 20;
  BenchAgent agent = BenchAgent::kOracle;
  double horizontal_rotation = 22.5;
  bool warmup = true;  // run every episode once untimed to fill the cache
  std::uint64_t seed = 0;
};

struct BenchReport {
  MetricsSummary summary;
  std::vector<EpisodeMetrics> episodes;
  std::vector<EpisodeTrace> traces;
  std::int64_t steps = 0;
  double seconds = 0.0;
  double steps_per_second = 0.0;
  double warmup_seconds = 0.0;
  int budget_violations = 0;  // reached goals that took more than 2 + 4 * hops steps
  std::size_t cache_hits = 0;
  std::size_t cache_loads = 0;

  nlohmann::json to_json() const;
};

// Courier episodes of config().episode_length steps each. The environment
// must not auto-reset. Oracle: first action is a no-op, then rotate by the
// horizontal rotation until the next hop is within it, then move forward.
BenchReport run_oracle_bench(Environment& env, const BenchOptions& options);

}  // namespace streetlearn
