#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "streetlearn/panograph/street_graph.hpp"
#include "streetlearn/random.hpp"

namespace streetlearn {

// Held-out goal areas: the lat/lng plane is tiled into square cells of
// cell_deg degrees and one cell in every 2x2 group is held out (25%).
class GoalMask {
 public:
  static constexpr double kCoarseCellDeg = 0.01;
  static constexpr double kMediumCellDeg = 0.005;

  explicit GoalMask(double cell_deg, int lat_phase = 0, int lng_phase = 0);

  double cell_deg() const { return cell_deg_; }
  std::pair<std::int64_t, std::int64_t> cell(LatLng p) const;
  bool held_out(LatLng p) const;

 private:
  double cell_deg_;
  int lat_phase_;
  int lng_phase_;
};

enum class GoalMode { kTrain, kHeldOut };

struct GoalConstraints {
  double goal_radius_m = 100.0;             // nodes this close to the agent are excluded
  std::optional<double> max_distance_m;     // curriculum cap
  std::optional<GoalMask> mask;
  GoalMode mode = GoalMode::kTrain;         // kHeldOut: only masked cells are eligible
};

class GoalSamplingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::vector<NodeIndex> eligible_goals(const StreetGraph& graph, NodeIndex agent, const GoalConstraints& constraints);

// Uniform over the eligible set. Throws GoalSamplingError when it is empty.
NodeIndex sample_goal(const StreetGraph& graph, NodeIndex agent, const GoalConstraints& constraints, Rng& rng);

// Goal range cap: phase1_max_m for the first phase1_steps steps, then a
// linear ramp to full_range_m over growth_steps steps.
struct CurriculumSchedule {
  double phase1_max_m = 500.0;
  std::int64_t phase1_steps = 100'000;
  std::int64_t growth_steps = 1'000'000;
  double full_range_m = 0.0;  // 0: diagonal of the graph bounds

  double max_range(std::int64_t total_steps) const;
};

// Great-circle diagonal of the graph bounding box; no two nodes are farther apart.
double graph_span_m(const StreetGraph& graph);

}  // namespace streetlearn
