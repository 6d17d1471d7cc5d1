#pragma once

#include <filesystem>
#include <memory>
#include <stdexcept>

#include "streetlearn/image.hpp"
#include "streetlearn/panograph/slpack.hpp"
#include "streetlearn/panograph/street_graph.hpp"
#include "streetlearn/synthcity/city.hpp"

namespace streetlearn {

class BlobMissingError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Read-only store of equirectangular panoramas, shared between environments.
class PanoSource {
 public:
  virtual ~PanoSource() = default;
  // Loads and decodes the panorama of one node. Thread-safe.
  virtual Image load(const PanoRecord& record) const = 0;
};

// images/<image_ref>.png inside an slpack directory.
class SlpackPanoSource final : public PanoSource {
 public:
  explicit SlpackPanoSource(std::filesystem::path root) : root_(std::move(root)) {}
  Image load(const PanoRecord& record) const override;

 private:
  std::filesystem::path root_;
};

// Renders panoramas on demand from the generator parameters.
class ProceduralPanoSource final : public PanoSource {
 public:
  ProceduralPanoSource(std::shared_ptr<const StreetGraph> graph, synthcity::CityParams params)
      : graph_(std::move(graph)), params_(std::move(params)) {}
  Image load(const PanoRecord& record) const override;

 private:
  std::shared_ptr<const StreetGraph> graph_;
  synthcity::CityParams params_;
};

// Image files when the pack has an images/ directory, otherwise procedural
// rendering from the manifest's generator block.
std::shared_ptr<const PanoSource> open_pano_source(const Slpack& pack, std::shared_ptr<const StreetGraph> graph);

}  // namespace streetlearn
