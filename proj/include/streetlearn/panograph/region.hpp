#pragma once

#include <string>
#include <vector>

#include "streetlearn/panograph/street_graph.hpp"

namespace streetlearn {

enum class RegionKind { kBfs, kBbox, kPolygon };

struct RegionSpec {
  RegionKind kind = RegionKind::kBfs;
  // bfs
  std::string center_id;
  int depth = 0;
  // bbox
  LatLngBounds box;
  // polygon, (lat, lng) vertices in order
  std::vector<LatLng> vertices;

  static RegionSpec bfs(std::string center_id, int depth);
  static RegionSpec bbox(LatLngBounds box);
  static RegionSpec polygon(std::vector<LatLng> vertices);

  // Throws std::invalid_argument when the spec itself is malformed.
  void validate() const;
};

struct CarvedRegion {
  StreetGraph graph;
  int component_count = 0;
};

// Induced subgraph for the region. BFS regions are connected by construction;
// bbox and polygon cuts may fall apart into several components.
// Throws GraphError for an unknown center or an empty result.
CarvedRegion carve_region(const StreetGraph& graph, const RegionSpec& spec);

// Induced subgraph on an explicit node set.
StreetGraph induced_subgraph(const StreetGraph& graph, const std::vector<NodeIndex>& nodes);

bool point_in_polygon(LatLng p, const std::vector<LatLng>& vertices);

}  // namespace streetlearn
