#pragma once

#include <cstddef>
#include <string>

#include "streetlearn/panograph/street_graph.hpp"

namespace streetlearn {

// Region summary in the column order "#nodes #edges av. edge len. elev. change area".
struct GraphStats {
  std::size_t num_nodes = 0;
  std::size_t num_edges = 0;   // undirected, counted once
  double avg_edge_len = 0.0;   // meters
  double elev_change = 0.0;    // max altitude - min altitude, meters
  double area = 0.0;           // convex hull in a local tangent plane, km^2
};

// Precondition: non-empty graph.
GraphStats compute_stats(const StreetGraph& graph);

// Header and value lines, tab separated, in the column order above.
std::string stats_header();
std::string format_stats(const GraphStats& stats);

}  // namespace streetlearn
