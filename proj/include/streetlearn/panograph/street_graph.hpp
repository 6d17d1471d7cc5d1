#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "streetlearn/panograph/geo.hpp"

namespace streetlearn {

// Dense node index into a StreetGraph. Indices follow lexicographic id order.
using NodeIndex = std::int32_t;
inline constexpr NodeIndex kNoNode = -1;

struct PanoRecord {
  std::string id;
  double lat = 0.0;
  double lng = 0.0;
  double altitude = 0.0;  // meters
  double pitch = 0.0;     // camera attitude, degrees
  double roll = 0.0;
  double yaw = 0.0;       // camera heading, 0 = North
  std::string date;       // ISO-8601
  std::vector<std::string> neighbors;
  std::string image_ref;  // blob key; defaults to the id

  LatLng position() const { return {lat, lng}; }

  friend bool operator==(const PanoRecord&, const PanoRecord&) = default;
};

class GraphError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct LatLngBounds {
  double min_lat = 0.0;
  double min_lng = 0.0;
  double max_lat = 0.0;
  double max_lng = 0.0;

  bool contains(LatLng p) const {
    return p.lat >= min_lat && p.lat <= max_lat && p.lng >= min_lng && p.lng <= max_lng;
  }
  LatLng center() const { return {(min_lat + max_lat) / 2.0, (min_lng + max_lng) / 2.0}; }
};

// Immutable undirected panorama graph. Nodes are stored sorted by id, so a
// smaller NodeIndex always means a lexicographically smaller pano id.
class StreetGraph {
 public:
  StreetGraph() = default;

  // Validates the records, mirrors one-way neighbor listings and builds the
  // adjacency and spatial index. Throws GraphError on invariant violations
  // (empty/duplicate ids, out-of-range coordinates, self loops, dangling ids).
  static StreetGraph build(std::vector<PanoRecord> records);

  std::size_t size() const { return nodes_.size(); }
  bool empty() const { return nodes_.empty(); }
  std::size_t num_edges() const { return num_edges_; }

  const PanoRecord& node(NodeIndex i) const { return nodes_[static_cast<std::size_t>(i)]; }
  std::span<const PanoRecord> nodes() const { return nodes_; }
  LatLng position(NodeIndex i) const { return node(i).position(); }

  std::optional<NodeIndex> find(std::string_view id) const;
  // Like find() but throws GraphError naming the id.
  NodeIndex index_of(std::string_view id) const;

  // Neighbors sorted by index (hence by id).
  std::span<const NodeIndex> neighbors(NodeIndex i) const;
  // Initial bearing from node i to each neighbor, parallel to neighbors(i).
  std::span<const double> neighbor_bearings(NodeIndex i) const;

  const LatLngBounds& bounds() const { return bounds_; }

  // Nearest node by haversine distance; kNoNode for an empty graph.
  NodeIndex nearest(LatLng p) const;
  // All nodes within radius_m of p, in index order.
  std::vector<NodeIndex> within_radius(LatLng p, double radius_m) const;
  // All nodes inside the bounds, in index order.
  std::vector<NodeIndex> within_bounds(const LatLngBounds& box) const;

  // Number of connected components.
  int component_count() const;

 private:
  struct Cell {
    std::int32_t row;
    std::int32_t col;
  };
  Cell cell_of(LatLng p) const;
  std::span<const NodeIndex> cell_nodes(std::int32_t row, std::int32_t col) const;
  void build_spatial_index();

  std::vector<PanoRecord> nodes_;
  std::unordered_map<std::string, NodeIndex> index_;
  std::vector<std::int32_t> adj_offsets_;
  std::vector<NodeIndex> adj_;
  std::vector<double> adj_bearings_;
  std::size_t num_edges_ = 0;
  LatLngBounds bounds_;

  // Uniform lat/lng bucket grid.
  double cell_deg_ = 1.0;
  std::int32_t grid_rows_ = 0;
  std::int32_t grid_cols_ = 0;
  std::vector<std::int32_t> cell_offsets_;
  std::vector<NodeIndex> cell_items_;
};

}  // namespace streetlearn
