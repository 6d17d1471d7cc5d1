#include "streetlearn/panograph/slpack.hpp"

#include <fstream>
#include <sstream>

namespace streetlearn {
namespace fs = std::filesystem;
using nlohmann::json;
using nlohmann::ordered_json;

namespace {

json read_json_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw GraphError("missing file: " + path.string());
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw GraphError("malformed " + path.filename().string() + ": " + e.what());
  }
}

PanoRecord record_from_json(const json& j) {
  PanoRecord r;
  r.id = j.at("id").get<std::string>();
  r.lat = j.at("lat").get<double>();
  r.lng = j.at("lng").get<double>();
  r.altitude = j.value("altitude", 0.0);
  r.pitch = j.value("pitch", 0.0);
  r.roll = j.value("roll", 0.0);
  r.yaw = j.value("yaw", 0.0);
  r.date = j.value("date", std::string());
  r.neighbors = j.value("neighbors", std::vector<std::string>());
  r.image_ref = r.id;
  return r;
}

ordered_json record_to_json(const PanoRecord& r) {
  ordered_json j;
  j["id"] = r.id;
  j["lat"] = r.lat;
  j["lng"] = r.lng;
  j["altitude"] = r.altitude;
  j["pitch"] = r.pitch;
  j["roll"] = r.roll;
  j["yaw"] = r.yaw;
  j["date"] = r.date;
  j["neighbors"] = r.neighbors;
  return j;
}

}  // namespace

Slpack load_slpack(const fs::path& root) {
  if (!fs::is_directory(root)) throw GraphError("missing slpack directory: " + root.string());
  Slpack pack;
  pack.root = root;

  const json manifest = read_json_file(root / "manifest.json");
  try {
    if (manifest.at("format").get<std::string>() != kSlpackFormat) throw GraphError("manifest.json: not an slpack");
    pack.manifest.version = manifest.at("version").get<int>();
    if (pack.manifest.version != kSlpackVersion) {
      throw GraphError("manifest.json: unsupported version " + std::to_string(pack.manifest.version));
    }
    pack.manifest.city = manifest.value("city", std::string());
    pack.manifest.node_count = manifest.at("node_count").get<std::size_t>();
    if (manifest.contains("bounds")) {
      const json& b = manifest.at("bounds");
      pack.manifest.bounds = {b.at("min_lat").get<double>(), b.at("min_lng").get<double>(),
                              b.at("max_lat").get<double>(), b.at("max_lng").get<double>()};
    }
    if (manifest.contains("generator")) pack.manifest.generator = manifest.at("generator");
  } catch (const json::exception& e) {
    throw GraphError(std::string("malformed manifest.json: ") + e.what());
  }

  const fs::path nodes_path = root / "nodes.jsonl";
  std::ifstream in(nodes_path);
  if (!in) throw GraphError("missing file: " + nodes_path.string());
  std::vector<PanoRecord> records;
  records.reserve(pack.manifest.node_count);
  std::string line;
  for (std::size_t lineno = 1; std::getline(in, line); ++lineno) {
    if (line.empty()) continue;
    try {
      records.push_back(record_from_json(json::parse(line)));
    } catch (const json::exception& e) {
      throw GraphError("malformed nodes.jsonl line " + std::to_string(lineno) + ": " + e.what());
    }
  }
  if (records.size() != pack.manifest.node_count) {
    throw GraphError("malformed manifest.json: node_count " + std::to_string(pack.manifest.node_count) +
                     " but nodes.jsonl has " + std::to_string(records.size()));
  }
  pack.graph = StreetGraph::build(std::move(records));
  return pack;
}

StreetGraph load_graph(const fs::path& root) { return load_slpack(root).graph; }

void save_graph(const StreetGraph& graph, const fs::path& root, const std::string& city, const json& generator) {
  fs::create_directories(root);
  ordered_json manifest;
  manifest["format"] = kSlpackFormat;
  manifest["version"] = kSlpackVersion;
  manifest["city"] = city;
  manifest["node_count"] = graph.size();
  const LatLngBounds& b = graph.bounds();
  manifest["bounds"] = {{"min_lat", b.min_lat}, {"min_lng", b.min_lng}, {"max_lat", b.max_lat}, {"max_lng", b.max_lng}};
  if (!generator.is_null()) manifest["generator"] = generator;
  {
    std::ofstream out(root / "manifest.json", std::ios::trunc);
    if (!out) throw GraphError("cannot write " + (root / "manifest.json").string());
    out << manifest.dump(2) << '\n';
  }
  std::ofstream out(root / "nodes.jsonl", std::ios::trunc);
  if (!out) throw GraphError("cannot write " + (root / "nodes.jsonl").string());
  for (const PanoRecord& r : graph.nodes()) out << record_to_json(r).dump() << '\n';
  if (!out) throw GraphError("write failed: " + (root / "nodes.jsonl").string());
}

fs::path slpack_image_path(const fs::path& root, const std::string& image_ref) {
  return root / "images" / (image_ref + ".png");
}

}  // namespace streetlearn
