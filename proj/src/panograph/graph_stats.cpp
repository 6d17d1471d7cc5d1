#include "streetlearn/panograph/graph_stats.hpp"

#include <algorithm>
#include <cstdio>
#include <vector>

namespace streetlearn {
namespace {

struct Point {
  double x;
  double y;
};

double cross(const Point& o, const Point& a, const Point& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

// Andrew's monotone chain followed by the shoelace formula.
double convex_hull_area(std::vector<Point> pts) {
  if (pts.size() < 3) return 0.0;
  std::sort(pts.begin(), pts.end(), [](const Point& a, const Point& b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  });
  std::vector<Point> hull(2 * pts.size());
  std::size_t k = 0;
  for (const Point& p : pts) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  if (hull.size() < 3) return 0.0;
  double twice = 0.0;
  for (std::size_t i = 0; i < hull.size(); ++i) {
    const Point& a = hull[i];
    const Point& b = hull[(i + 1) % hull.size()];
    twice += a.x * b.y - b.x * a.y;
  }
  return std::abs(twice) / 2.0;
}

}  // namespace

GraphStats compute_stats(const StreetGraph& graph) {
  GraphStats s;
  s.num_nodes = graph.size();
  s.num_edges = graph.num_edges();
  if (graph.empty()) return s;

  double total_len = 0.0;
  double min_alt = graph.node(0).altitude;
  double max_alt = min_alt;
  LatLng centroid{0.0, 0.0};
  for (std::size_t i = 0; i < graph.size(); ++i) {
    const auto v = static_cast<NodeIndex>(i);
    const PanoRecord& r = graph.node(v);
    min_alt = std::min(min_alt, r.altitude);
    max_alt = std::max(max_alt, r.altitude);
    centroid.lat += r.lat;
    centroid.lng += r.lng;
    for (NodeIndex w : graph.neighbors(v)) {
      if (w > v) total_len += haversine_m(r.position(), graph.position(w));
    }
  }
  s.avg_edge_len = s.num_edges > 0 ? total_len / static_cast<double>(s.num_edges) : 0.0;
  s.elev_change = max_alt - min_alt;

  centroid.lat /= static_cast<double>(graph.size());
  centroid.lng /= static_cast<double>(graph.size());
  std::vector<Point> pts;
  pts.reserve(graph.size());
  for (const PanoRecord& r : graph.nodes()) {
    const EastNorth en = to_east_north(centroid, r.position());
    pts.push_back({en.east, en.north});
  }
  s.area = convex_hull_area(std::move(pts)) / 1e6;
  return s;
}

std::string stats_header() { return "#nodes\t#edges\tav. edge len.\telev. change\tarea"; }

std::string format_stats(const GraphStats& stats) {
  char buf[160];
  std::snprintf(buf, sizeof(buf), "%zu\t%zu\t%.2fm\t%.1fm\t%.3fkm^2", stats.num_nodes, stats.num_edges,
                stats.avg_edge_len, stats.elev_change, stats.area);
  return buf;
}

}  // namespace streetlearn
