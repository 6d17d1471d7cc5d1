#include "streetlearn/panograph/region.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

namespace streetlearn {

RegionSpec RegionSpec::bfs(std::string center_id, int depth) {
  RegionSpec s;
  s.kind = RegionKind::kBfs;
  s.center_id = std::move(center_id);
  s.depth = depth;
  return s;
}

RegionSpec RegionSpec::bbox(LatLngBounds box) {
  RegionSpec s;
  s.kind = RegionKind::kBbox;
  s.box = box;
  return s;
}

RegionSpec RegionSpec::polygon(std::vector<LatLng> vertices) {
  RegionSpec s;
  s.kind = RegionKind::kPolygon;
  s.vertices = std::move(vertices);
  return s;
}

void RegionSpec::validate() const {
  switch (kind) {
    case RegionKind::kBfs:
      if (depth < 0) throw std::invalid_argument("bfs region depth must be non-negative");
      if (center_id.empty()) throw std::invalid_argument("bfs region needs a center pano id");
      break;
    case RegionKind::kBbox:
      if (!(box.min_lat < box.max_lat) || !(box.min_lng < box.max_lng)) {
        throw std::invalid_argument("bbox region needs min < max on both axes");
      }
      break;
    case RegionKind::kPolygon:
      if (vertices.size() < 3) throw std::invalid_argument("polygon region needs at least 3 vertices");
      break;
  }
}

bool point_in_polygon(LatLng p, const std::vector<LatLng>& vertices) {
  // Even-odd ray casting in the (lng, lat) plane.
  bool inside = false;
  const std::size_t n = vertices.size();
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const LatLng& a = vertices[i];
    const LatLng& b = vertices[j];
    if ((a.lat > p.lat) != (b.lat > p.lat)) {
      const double x = a.lng + (p.lat - a.lat) * (b.lng - a.lng) / (b.lat - a.lat);
      if (p.lng < x) inside = !inside;
    }
  }
  return inside;
}

StreetGraph induced_subgraph(const StreetGraph& graph, const std::vector<NodeIndex>& nodes) {
  std::unordered_set<NodeIndex> keep(nodes.begin(), nodes.end());
  std::vector<PanoRecord> records;
  records.reserve(keep.size());
  for (NodeIndex v : nodes) {
    PanoRecord r = graph.node(v);
    r.neighbors.clear();
    for (NodeIndex w : graph.neighbors(v)) {
      if (keep.count(w)) r.neighbors.push_back(graph.node(w).id);
    }
    records.push_back(std::move(r));
  }
  return StreetGraph::build(std::move(records));
}

CarvedRegion carve_region(const StreetGraph& graph, const RegionSpec& spec) {
  spec.validate();
  std::vector<NodeIndex> selected;
  switch (spec.kind) {
    case RegionKind::kBfs: {
      const NodeIndex center = graph.index_of(spec.center_id);
      std::vector<int> hops(graph.size(), -1);
      std::vector<NodeIndex> frontier{center};
      hops[static_cast<std::size_t>(center)] = 0;
      selected.push_back(center);
      for (int depth = 1; depth <= spec.depth && !frontier.empty(); ++depth) {
        std::vector<NodeIndex> upcoming;
        for (NodeIndex v : frontier) {
          for (NodeIndex w : graph.neighbors(v)) {
            if (hops[static_cast<std::size_t>(w)] < 0) {
              hops[static_cast<std::size_t>(w)] = depth;
              upcoming.push_back(w);
              selected.push_back(w);
            }
          }
        }
        frontier = std::move(upcoming);
      }
      break;
    }
    case RegionKind::kBbox:
      selected = graph.within_bounds(spec.box);
      break;
    case RegionKind::kPolygon: {
      LatLngBounds hull{spec.vertices[0].lat, spec.vertices[0].lng, spec.vertices[0].lat, spec.vertices[0].lng};
      for (const LatLng& v : spec.vertices) {
        hull.min_lat = std::min(hull.min_lat, v.lat);
        hull.max_lat = std::max(hull.max_lat, v.lat);
        hull.min_lng = std::min(hull.min_lng, v.lng);
        hull.max_lng = std::max(hull.max_lng, v.lng);
      }
      for (NodeIndex v : graph.within_bounds(hull)) {
        if (point_in_polygon(graph.position(v), spec.vertices)) selected.push_back(v);
      }
      break;
    }
  }
  if (selected.empty()) throw GraphError("carved region is empty");
  std::sort(selected.begin(), selected.end());
  CarvedRegion out;
  out.graph = induced_subgraph(graph, selected);
  out.component_count = out.graph.component_count();
  return out;
}

}  // namespace streetlearn
