#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "streetlearn/panograph/street_graph.hpp"

namespace streetlearn {

// On-disk graph container: a directory holding
//   manifest.json  format tag, version, city name, node count, coordinate bounds
//   nodes.jsonl    one pano per line: id, lat, lng, altitude, pitch, roll, yaw, date, neighbors
//   images/<id>.png  equirectangular RGB, width = 2 * height
inline constexpr int kSlpackVersion = 1;
inline constexpr const char* kSlpackFormat = "slpack";

struct SlpackManifest {
  int version = kSlpackVersion;
  std::string city;
  std::size_t node_count = 0;
  LatLngBounds bounds;
  // Parameters of the procedural generator that produced the pack, if any.
  nlohmann::json generator;
};

struct Slpack {
  std::filesystem::path root;
  SlpackManifest manifest;
  StreetGraph graph;
};

Slpack load_slpack(const std::filesystem::path& root);
StreetGraph load_graph(const std::filesystem::path& root);

// Writes manifest.json and nodes.jsonl (images are written separately).
// Output is byte-stable for a given graph.
void save_graph(const StreetGraph& graph, const std::filesystem::path& root, const std::string& city,
                const nlohmann::json& generator = nlohmann::json());

std::filesystem::path slpack_image_path(const std::filesystem::path& root, const std::string& image_ref);

}  // namespace streetlearn
