#pragma once

#include <cstdint>
#include <limits>
#include <vector>

#include "streetlearn/panograph/street_graph.hpp"

namespace streetlearn {

inline constexpr std::int32_t kUnreachable = std::numeric_limits<std::int32_t>::max();

// Hop distances from every node to one goal, plus the next hop towards it.
struct ShortestPaths {
  NodeIndex goal = kNoNode;
  std::vector<std::int32_t> distance;  // kUnreachable when disconnected
  std::vector<NodeIndex> next_hop;     // kNoNode at the goal and when unreachable

  bool reachable(NodeIndex from) const { return distance[static_cast<std::size_t>(from)] != kUnreachable; }
  std::int32_t hops(NodeIndex from) const { return distance[static_cast<std::size_t>(from)]; }
  NodeIndex next(NodeIndex from) const { return next_hop[static_cast<std::size_t>(from)]; }

  // Node sequence from `from` to the goal, both inclusive. Empty if unreachable.
  std::vector<NodeIndex> path_from(NodeIndex from) const;
};

// Breadth-first search outwards from the goal. Among equally short next hops
// the lexicographically smallest pano id wins.
ShortestPaths shortest_paths_to(const StreetGraph& graph, NodeIndex goal);
ShortestPaths shortest_paths_to(const StreetGraph& graph, std::string_view goal_id);

}  // namespace streetlearn
