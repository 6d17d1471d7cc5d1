#include "streetlearn/games/oracle.hpp"

#include <algorithm>
#include <cmath>

namespace streetlearn {

ActionTuple oracle_action(double bearing, double h) {
  ActionTuple a;
  if (std::fabs(bearing) > h) {
    a.rotate_yaw = bearing > 0 ? h : -h;
  } else {
    a.move_forward = 1.0;
  }
  return a;
}

ActionTuple oracle_policy(const StreetGraph& graph, const ShortestPaths& paths, NodeIndex pano, double yaw, double h) {
  if (!paths.reachable(pano)) throw GoalUnreachableError("goal is not reachable from " + graph.node(pano).id);
  if (pano == paths.goal) throw std::invalid_argument("agent is already at the goal");
  const NodeIndex next = paths.next(pano);
  const auto nbs = graph.neighbors(pano);
  const auto it = std::find(nbs.begin(), nbs.end(), next);
  const double b = graph.neighbor_bearings(pano)[static_cast<std::size_t>(it - nbs.begin())];
  return oracle_action(signed_angle_deg(b - yaw), h);
}

}  // namespace streetlearn
