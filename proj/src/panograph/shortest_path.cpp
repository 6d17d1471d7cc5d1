#include "streetlearn/panograph/shortest_path.hpp"

namespace streetlearn {

std::vector<NodeIndex> ShortestPaths::path_from(NodeIndex from) const {
  std::vector<NodeIndex> path;
  if (!reachable(from)) return path;
  path.reserve(static_cast<std::size_t>(hops(from)) + 1);
  for (NodeIndex v = from; v != kNoNode; v = next(v)) path.push_back(v);
  return path;
}

ShortestPaths shortest_paths_to(const StreetGraph& graph, NodeIndex goal) {
  if (goal < 0 || static_cast<std::size_t>(goal) >= graph.size()) {
    throw GraphError("shortest_paths_to: goal index out of range");
  }
  ShortestPaths sp;
  sp.goal = goal;
  sp.distance.assign(graph.size(), kUnreachable);
  sp.next_hop.assign(graph.size(), kNoNode);

  std::vector<NodeIndex> frontier{goal};
  std::vector<NodeIndex> upcoming;
  sp.distance[static_cast<std::size_t>(goal)] = 0;
  for (std::int32_t depth = 1; !frontier.empty(); ++depth) {
    upcoming.clear();
    for (NodeIndex v : frontier) {
      for (NodeIndex w : graph.neighbors(v)) {
        if (sp.distance[static_cast<std::size_t>(w)] == kUnreachable) {
          sp.distance[static_cast<std::size_t>(w)] = depth;
          upcoming.push_back(w);
        }
      }
    }
    frontier.swap(upcoming);
  }

  // Neighbors are sorted by id, so the first one a hop closer is the tie-break winner.
  for (std::size_t v = 0; v < graph.size(); ++v) {
    const std::int32_t d = sp.distance[v];
    if (d == kUnreachable || d == 0) continue;
    for (NodeIndex w : graph.neighbors(static_cast<NodeIndex>(v))) {
      if (sp.distance[static_cast<std::size_t>(w)] == d - 1) {
        sp.next_hop[v] = w;
        break;
      }
    }
  }
  return sp;
}

ShortestPaths shortest_paths_to(const StreetGraph& graph, std::string_view goal_id) {
  return shortest_paths_to(graph, graph.index_of(goal_id));
}

}  // namespace streetlearn
