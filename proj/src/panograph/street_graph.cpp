#include "streetlearn/panograph/street_graph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>

namespace streetlearn {

StreetGraph StreetGraph::build(std::vector<PanoRecord> records) {
  StreetGraph g;
  std::sort(records.begin(), records.end(),
            [](const PanoRecord& a, const PanoRecord& b) { return a.id < b.id; });

  for (std::size_t i = 0; i < records.size(); ++i) {
    const PanoRecord& r = records[i];
    if (r.id.empty()) throw GraphError("pano with empty id");
    if (i > 0 && records[i - 1].id == r.id) throw GraphError("duplicate pano id: " + r.id);
    if (!(r.lat >= -90.0 && r.lat <= 90.0) || !(r.lng >= -180.0 && r.lng <= 180.0)) {
      throw GraphError("pano " + r.id + " has out-of-range coordinates");
    }
    g.index_.emplace(r.id, static_cast<NodeIndex>(i));
  }

  // Collect the symmetric closure of the listed edges.
  std::vector<std::set<NodeIndex>> adjacency(records.size());
  std::vector<std::string> dangling;
  for (std::size_t i = 0; i < records.size(); ++i) {
    for (const std::string& nb : records[i].neighbors) {
      if (nb == records[i].id) throw GraphError("pano " + nb + " lists itself as a neighbor");
      auto it = g.index_.find(nb);
      if (it == g.index_.end()) {
        dangling.push_back(records[i].id + " -> " + nb);
        continue;
      }
      adjacency[i].insert(it->second);
      adjacency[static_cast<std::size_t>(it->second)].insert(static_cast<NodeIndex>(i));
    }
  }
  if (!dangling.empty()) {
    std::string msg = "dangling neighbor ids:";
    for (const auto& d : dangling) msg += " " + d;
    throw GraphError(msg);
  }

  g.adj_offsets_.reserve(records.size() + 1);
  g.adj_offsets_.push_back(0);
  for (std::size_t i = 0; i < records.size(); ++i) {
    records[i].neighbors.clear();
    for (NodeIndex j : adjacency[i]) {
      g.adj_.push_back(j);
      records[i].neighbors.push_back(records[static_cast<std::size_t>(j)].id);
    }
    if (records[i].image_ref.empty()) records[i].image_ref = records[i].id;
    g.adj_offsets_.push_back(static_cast<std::int32_t>(g.adj_.size()));
  }
  g.num_edges_ = g.adj_.size() / 2;
  g.nodes_ = std::move(records);

  g.adj_bearings_.resize(g.adj_.size());
  for (std::size_t i = 0; i < g.nodes_.size(); ++i) {
    for (auto k = g.adj_offsets_[i]; k < g.adj_offsets_[i + 1]; ++k) {
      const LatLng a = g.nodes_[i].position();
      const LatLng b = g.nodes_[static_cast<std::size_t>(g.adj_[k])].position();
      // Co-located panoramas get bearing 0.
      g.adj_bearings_[k] = (a == b) ? 0.0 : initial_bearing_deg(a, b);
    }
  }

  if (!g.nodes_.empty()) {
    LatLngBounds b{g.nodes_[0].lat, g.nodes_[0].lng, g.nodes_[0].lat, g.nodes_[0].lng};
    for (const auto& n : g.nodes_) {
      b.min_lat = std::min(b.min_lat, n.lat);
      b.max_lat = std::max(b.max_lat, n.lat);
      b.min_lng = std::min(b.min_lng, n.lng);
      b.max_lng = std::max(b.max_lng, n.lng);
    }
    g.bounds_ = b;
  }
  g.build_spatial_index();
  return g;
}

std::optional<NodeIndex> StreetGraph::find(std::string_view id) const {
  auto it = index_.find(std::string(id));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

NodeIndex StreetGraph::index_of(std::string_view id) const {
  auto found = find(id);
  if (!found) throw GraphError("unknown pano id: " + std::string(id));
  return *found;
}

std::span<const NodeIndex> StreetGraph::neighbors(NodeIndex i) const {
  const auto begin = static_cast<std::size_t>(adj_offsets_[static_cast<std::size_t>(i)]);
  const auto end = static_cast<std::size_t>(adj_offsets_[static_cast<std::size_t>(i) + 1]);
  return std::span<const NodeIndex>(adj_).subspan(begin, end - begin);
}

std::span<const double> StreetGraph::neighbor_bearings(NodeIndex i) const {
  const auto begin = static_cast<std::size_t>(adj_offsets_[static_cast<std::size_t>(i)]);
  const auto end = static_cast<std::size_t>(adj_offsets_[static_cast<std::size_t>(i) + 1]);
  return std::span<const double>(adj_bearings_).subspan(begin, end - begin);
}

void StreetGraph::build_spatial_index() {
  if (nodes_.empty()) return;
  const double span_lat = bounds_.max_lat - bounds_.min_lat;
  const double span_lng = bounds_.max_lng - bounds_.min_lng;
  const double extent = std::max(span_lat, span_lng);
  // Aim for a handful of nodes per bucket.
  const double target_cells = std::max(1.0, static_cast<double>(nodes_.size()) / 4.0);
  cell_deg_ = extent > 0.0 ? std::max(std::sqrt(std::max(span_lat, 1e-9) * std::max(span_lng, 1e-9) / target_cells), 1e-7)
                           : 1.0;
  grid_rows_ = static_cast<std::int32_t>(std::floor(span_lat / cell_deg_)) + 1;
  grid_cols_ = static_cast<std::int32_t>(std::floor(span_lng / cell_deg_)) + 1;
  while (static_cast<std::int64_t>(grid_rows_) * grid_cols_ > 4'000'000) {
    cell_deg_ *= 2.0;
    grid_rows_ = static_cast<std::int32_t>(std::floor(span_lat / cell_deg_)) + 1;
    grid_cols_ = static_cast<std::int32_t>(std::floor(span_lng / cell_deg_)) + 1;
  }

  const std::size_t ncells = static_cast<std::size_t>(grid_rows_) * static_cast<std::size_t>(grid_cols_);
  std::vector<std::int32_t> counts(ncells + 1, 0);
  std::vector<std::size_t> cell_idx(nodes_.size());
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    const Cell c = cell_of(nodes_[i].position());
    cell_idx[i] = static_cast<std::size_t>(c.row) * static_cast<std::size_t>(grid_cols_) + static_cast<std::size_t>(c.col);
    ++counts[cell_idx[i] + 1];
  }
  std::partial_sum(counts.begin(), counts.end(), counts.begin());
  cell_offsets_ = counts;
  cell_items_.resize(nodes_.size());
  std::vector<std::int32_t> fill(counts.begin(), counts.end() - 1);
  for (std::size_t i = 0; i < nodes_.size(); ++i) {
    cell_items_[static_cast<std::size_t>(fill[cell_idx[i]]++)] = static_cast<NodeIndex>(i);
  }
}

StreetGraph::Cell StreetGraph::cell_of(LatLng p) const {
  auto row = static_cast<std::int32_t>(std::floor((p.lat - bounds_.min_lat) / cell_deg_));
  auto col = static_cast<std::int32_t>(std::floor((p.lng - bounds_.min_lng) / cell_deg_));
  return {std::clamp(row, 0, grid_rows_ - 1), std::clamp(col, 0, grid_cols_ - 1)};
}

std::span<const NodeIndex> StreetGraph::cell_nodes(std::int32_t row, std::int32_t col) const {
  const std::size_t c = static_cast<std::size_t>(row) * static_cast<std::size_t>(grid_cols_) + static_cast<std::size_t>(col);
  const auto begin = static_cast<std::size_t>(cell_offsets_[c]);
  const auto end = static_cast<std::size_t>(cell_offsets_[c + 1]);
  return std::span<const NodeIndex>(cell_items_).subspan(begin, end - begin);
}

NodeIndex StreetGraph::nearest(LatLng p) const {
  if (nodes_.empty()) return kNoNode;
  const Cell center = cell_of(p);
  const double max_abs_lat = std::max(std::abs(bounds_.min_lat), std::abs(bounds_.max_lat));
  const double cell_m = deg_to_rad(cell_deg_) * kEarthRadiusM * std::max(std::cos(deg_to_rad(max_abs_lat)), 1e-6);
  NodeIndex best = kNoNode;
  double best_d = std::numeric_limits<double>::infinity();
  const std::int32_t max_ring = std::max(grid_rows_, grid_cols_);
  for (std::int32_t ring = 0; ring <= max_ring; ++ring) {
    for (std::int32_t r = center.row - ring; r <= center.row + ring; ++r) {
      if (r < 0 || r >= grid_rows_) continue;
      for (std::int32_t c = center.col - ring; c <= center.col + ring; ++c) {
        if (c < 0 || c >= grid_cols_) continue;
        if (std::max(std::abs(r - center.row), std::abs(c - center.col)) != ring) continue;
        for (NodeIndex i : cell_nodes(r, c)) {
          const double d = haversine_m(p, position(i));
          if (d < best_d || (d == best_d && i < best)) {
            best_d = d;
            best = i;
          }
        }
      }
    }
    // Anything in ring+1 or beyond is at least ring * cell_m away.
    if (best != kNoNode && best_d < static_cast<double>(ring) * cell_m) break;
  }
  return best;
}

std::vector<NodeIndex> StreetGraph::within_radius(LatLng p, double radius_m) const {
  std::vector<NodeIndex> out;
  if (nodes_.empty()) return out;
  const double dlat = rad_to_deg(radius_m / kEarthRadiusM);
  const double cos_lat = std::max(std::cos(deg_to_rad(std::min(89.9, std::abs(p.lat) + dlat))), 1e-6);
  const double dlng = std::min(360.0, dlat / cos_lat);
  for (NodeIndex i : within_bounds({p.lat - dlat, p.lng - dlng, p.lat + dlat, p.lng + dlng})) {
    if (haversine_m(p, position(i)) <= radius_m) out.push_back(i);
  }
  return out;
}

std::vector<NodeIndex> StreetGraph::within_bounds(const LatLngBounds& box) const {
  std::vector<NodeIndex> out;
  if (nodes_.empty()) return out;
  if (box.max_lat < bounds_.min_lat || box.min_lat > bounds_.max_lat || box.max_lng < bounds_.min_lng ||
      box.min_lng > bounds_.max_lng) {
    return out;
  }
  const Cell lo = cell_of({box.min_lat, box.min_lng});
  const Cell hi = cell_of({box.max_lat, box.max_lng});
  for (std::int32_t r = lo.row; r <= hi.row; ++r) {
    for (std::int32_t c = lo.col; c <= hi.col; ++c) {
      for (NodeIndex i : cell_nodes(r, c)) {
        if (box.contains(position(i))) out.push_back(i);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

int StreetGraph::component_count() const {
  std::vector<char> seen(nodes_.size(), 0);
  std::vector<NodeIndex> stack;
  int components = 0;
  for (std::size_t s = 0; s < nodes_.size(); ++s) {
    if (seen[s]) continue;
    ++components;
    seen[s] = 1;
    stack.push_back(static_cast<NodeIndex>(s));
    while (!stack.empty()) {
      const NodeIndex v = stack.back();
      stack.pop_back();
      for (NodeIndex w : neighbors(v)) {
        if (!seen[static_cast<std::size_t>(w)]) {
          seen[static_cast<std::size_t>(w)] = 1;
          stack.push_back(w);
        }
      }
    }
  }
  return components;
}

}  // namespace streetlearn
