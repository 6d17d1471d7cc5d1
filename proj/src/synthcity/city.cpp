#include "streetlearn/synthcity/city.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <stdexcept>
#include <vector>

#include "streetlearn/panograph/slpack.hpp"
#include "streetlearn/random.hpp"
#include "streetlearn/synthcity/panorama.hpp"

namespace streetlearn::synthcity {

void CityParams::validate() const {
  if (blocks_x < 1 || blocks_y < 1) throw std::invalid_argument("city needs at least 1x1 blocks");
  if (!(node_spacing > 0.0)) throw std::invalid_argument("node_spacing must be positive");
  if (!(block_len > 0.0)) throw std::invalid_argument("block_len must be positive");
  if (!(irregularity >= 0.0 && irregularity <= 1.0)) throw std::invalid_argument("irregularity must be in [0, 1]");
  if (pano_height < 1) throw std::invalid_argument("pano_height must be positive");
  if (!(origin.lat > -85.0 && origin.lat < 85.0) || !(origin.lng >= -180.0 && origin.lng <= 180.0)) {
    throw std::invalid_argument("origin out of range");
  }
}

nlohmann::json to_json(const CityParams& p) {
  nlohmann::ordered_json j;
  j["seed"] = p.seed;
  j["blocks_x"] = p.blocks_x;
  j["blocks_y"] = p.blocks_y;
  j["block_len"] = p.block_len;
  j["node_spacing"] = p.node_spacing;
  j["irregularity"] = p.irregularity;
  j["origin"] = {p.origin.lat, p.origin.lng};
  j["pano_height"] = p.pano_height;
  j["altitude_base"] = p.altitude_base;
  j["altitude_gradient"] = p.altitude_gradient;
  j["city"] = p.city;
  return j;
}

CityParams city_params_from_json(const nlohmann::json& j) {
  CityParams p;
  p.seed = j.value("seed", p.seed);
  p.blocks_x = j.value("blocks_x", p.blocks_x);
  p.blocks_y = j.value("blocks_y", p.blocks_y);
  p.block_len = j.value("block_len", p.block_len);
  p.node_spacing = j.value("node_spacing", p.node_spacing);
  p.irregularity = j.value("irregularity", p.irregularity);
  if (j.contains("origin")) p.origin = {j.at("origin").at(0).get<double>(), j.at("origin").at(1).get<double>()};
  p.pano_height = j.value("pano_height", p.pano_height);
  p.altitude_base = j.value("altitude_base", p.altitude_base);
  p.altitude_gradient = j.value("altitude_gradient", p.altitude_gradient);
  p.city = j.value("city", p.city);
  return p;
}

namespace {

std::string prefix(const CityParams& p) { return "s" + std::to_string(p.seed) + "-"; }

std::string intersection_id(const CityParams& p, int i, int j) {
  return prefix(p) + "x" + std::to_string(i) + "y" + std::to_string(j);
}

std::string street_node_id(const CityParams& p, char dir, int i, int j, int k) {
  return prefix(p) + dir + std::to_string(i) + "." + std::to_string(j) + "." + std::to_string(k);
}

std::string date_for(std::uint64_t h) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", 2014 + static_cast<int>(h % 5),
                1 + static_cast<int>((h >> 8) % 12), 1 + static_cast<int>((h >> 16) % 28));
  return buf;
}

}  // namespace

StreetGraph generate_city(const CityParams& params) {
  params.validate();
  const int nx = params.blocks_x + 1;
  const int ny = params.blocks_y + 1;
  const double jitter = params.irregularity * 0.25 * params.block_len;

  // Intersection offsets from the origin in meters.
  std::vector<EastNorth> corners(static_cast<std::size_t>(nx) * static_cast<std::size_t>(ny));
  auto corner = [&](int i, int j) -> EastNorth& { return corners[static_cast<std::size_t>(j) * nx + i]; };
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      Rng rng(hash_combine(hash_combine(params.seed, static_cast<std::uint64_t>(i)), static_cast<std::uint64_t>(j)));
      const double de = jitter * rng.uniform(-1.0, 1.0);
      const double dn = jitter * rng.uniform(-1.0, 1.0);
      corner(i, j) = {i * params.block_len + de, j * params.block_len + dn};
    }
  }

  std::vector<PanoRecord> records;
  auto add_node = [&](std::string id, EastNorth en) -> std::size_t {
    PanoRecord r;
    const LatLng ll = from_east_north(params.origin, en);
    r.id = std::move(id);
    r.lat = ll.lat;
    r.lng = ll.lng;
    r.altitude = params.altitude_base + params.altitude_gradient * en.north;
    r.date = date_for(hash_combine(params.seed, fnv1a(r.id)));
    r.image_ref = r.id;
    records.push_back(std::move(r));
    return records.size() - 1;
  };
  auto link = [&](std::size_t a, std::size_t b) {
    records[a].neighbors.push_back(records[b].id);
    records[b].neighbors.push_back(records[a].id);
  };

  std::vector<std::size_t> corner_node(corners.size());
  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      corner_node[static_cast<std::size_t>(j) * nx + i] = add_node(intersection_id(params, i, j), corner(i, j));
    }
  }

  auto subdivide = [&](char dir, int i, int j, int i2, int j2) {
    const EastNorth a = corner(i, j);
    const EastNorth b = corner(i2, j2);
    const double len = std::hypot(b.east - a.east, b.north - a.north);
    const int edges = std::max(1, static_cast<int>(std::lround(len / params.node_spacing)));
    std::size_t prev = corner_node[static_cast<std::size_t>(j) * nx + i];
    for (int k = 1; k < edges; ++k) {
      const double t = static_cast<double>(k) / edges;
      const std::size_t cur = add_node(street_node_id(params, dir, i, j, k),
                                       {a.east + t * (b.east - a.east), a.north + t * (b.north - a.north)});
      link(prev, cur);
      prev = cur;
    }
    link(prev, corner_node[static_cast<std::size_t>(j2) * nx + i2]);
  };

  for (int j = 0; j < ny; ++j) {
    for (int i = 0; i < nx; ++i) {
      if (i + 1 < nx) subdivide('h', i, j, i + 1, j);
      if (j + 1 < ny) subdivide('v', i, j, i, j + 1);
    }
  }
  if (records.empty()) throw std::invalid_argument("city parameters produce no nodes");
  return StreetGraph::build(std::move(records));
}

BlockId home_block(const CityParams& params, LatLng p) {
  const EastNorth en = to_east_north(params.origin, p);
  const int bx = static_cast<int>(std::floor(en.east / params.block_len));
  const int by = static_cast<int>(std::floor(en.north / params.block_len));
  return {std::clamp(bx, 0, params.blocks_x - 1), std::clamp(by, 0, params.blocks_y - 1)};
}

void write_city_slpack(const StreetGraph& graph, const CityParams& params, const std::string& root, bool with_images) {
  namespace fs = std::filesystem;
  save_graph(graph, root, params.city, to_json(params));
  if (!with_images) return;
  fs::create_directories(fs::path(root) / "images");
  for (std::size_t i = 0; i < graph.size(); ++i) {
    const auto v = static_cast<NodeIndex>(i);
    write_png(slpack_image_path(root, graph.node(v).image_ref), render_panorama(graph, v, params));
  }
}

}  // namespace streetlearn::synthcity
