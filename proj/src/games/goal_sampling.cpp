#include "streetlearn/games/goal_sampling.hpp"

#include <algorithm>
#include <cmath>

namespace streetlearn {

GoalMask::GoalMask(double cell_deg, int lat_phase, int lng_phase)
    : cell_deg_(cell_deg), lat_phase_(lat_phase & 1), lng_phase_(lng_phase & 1) {
  if (!(cell_deg > 0.0)) throw std::invalid_argument("goal mask cell size must be positive");
}

std::pair<std::int64_t, std::int64_t> GoalMask::cell(LatLng p) const {
  return {static_cast<std::int64_t>(std::floor(p.lat / cell_deg_)),
          static_cast<std::int64_t>(std::floor(p.lng / cell_deg_))};
}

bool GoalMask::held_out(LatLng p) const {
  const auto [row, col] = cell(p);
  // Parity of negative indices via & 1 works on two's complement.
  return ((row + lat_phase_) & 1) == 0 && ((col + lng_phase_) & 1) == 0;
}

std::vector<NodeIndex> eligible_goals(const StreetGraph& graph, NodeIndex agent, const GoalConstraints& constraints) {
  std::vector<NodeIndex> out;
  const LatLng here = graph.position(agent);
  for (std::size_t i = 0; i < graph.size(); ++i) {
    const auto v = static_cast<NodeIndex>(i);
    const LatLng p = graph.position(v);
    const double d = haversine_m(here, p);
    if (d <= constraints.goal_radius_m) continue;
    if (constraints.max_distance_m && d > *constraints.max_distance_m) continue;
    if (constraints.mask) {
      const bool masked = constraints.mask->held_out(p);
      if (masked != (constraints.mode == GoalMode::kHeldOut)) continue;
    }
    out.push_back(v);
  }
  return out;
}

NodeIndex sample_goal(const StreetGraph& graph, NodeIndex agent, const GoalConstraints& constraints, Rng& rng) {
  const auto eligible = eligible_goals(graph, agent, constraints);
  if (eligible.empty()) {
    throw GoalSamplingError("no eligible goal for agent at " + graph.node(agent).id);
  }
  return eligible[rng.index(eligible.size())];
}

double CurriculumSchedule::max_range(std::int64_t total_steps) const {
  if (total_steps < phase1_steps || full_range_m <= phase1_max_m) return phase1_max_m;
  if (growth_steps <= 0) return full_range_m;
  const double t = std::min(1.0, static_cast<double>(total_steps - phase1_steps) / static_cast<double>(growth_steps));
  return phase1_max_m + (full_range_m - phase1_max_m) * t;
}

double graph_span_m(const StreetGraph& graph) {
  const LatLngBounds& b = graph.bounds();
  // Both diagonals; at city scale either bounds the pairwise distance.
  return std::max(haversine_m({b.min_lat, b.min_lng}, {b.max_lat, b.max_lng}),
                  haversine_m({b.min_lat, b.max_lng}, {b.max_lat, b.min_lng}));
}

}  // namespace streetlearn
