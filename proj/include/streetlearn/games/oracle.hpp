#pragma once

#include <stdexcept>

#include "streetlearn/engine/actions.hpp"
#include "streetlearn/panograph/shortest_path.hpp"

namespace streetlearn {

class GoalUnreachableError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Rotate by +-h until the next hop is within h of the heading, then move.
// bearing is the signed angle from the agent's yaw to the next hop.
ActionTuple oracle_action(double bearing_to_next_pano, double horizontal_rotation = 22.5);

// Same rule computed from the graph. Throws GoalUnreachableError when no
// path exists and std::invalid_argument when pano is already the goal.
ActionTuple oracle_policy(const StreetGraph& graph, const ShortestPaths& paths, NodeIndex pano, double yaw,
                          double horizontal_rotation = 22.5);

}  // namespace streetlearn
