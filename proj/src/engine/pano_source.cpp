#include "streetlearn/engine/pano_source.hpp"

#include "streetlearn/synthcity/panorama.hpp"

namespace streetlearn {
namespace fs = std::filesystem;

Image SlpackPanoSource::load(const PanoRecord& record) const {
  const fs::path path = slpack_image_path(root_, record.image_ref.empty() ? record.id : record.image_ref);
  if (!fs::exists(path)) throw BlobMissingError("panorama blob missing for " + record.id + ": " + path.string());
  Image img = read_png(path);
  if (img.width != 2 * img.height) throw ImageIoError("panorama " + record.id + " is not 2:1");
  return img;
}

Image ProceduralPanoSource::load(const PanoRecord& record) const {
  const auto node = graph_->find(record.id);
  if (!node) throw BlobMissingError("panorama blob missing for " + record.id);
  return synthcity::render_panorama(*graph_, *node, params_);
}

std::shared_ptr<const PanoSource> open_pano_source(const Slpack& pack, std::shared_ptr<const StreetGraph> graph) {
  if (fs::is_directory(pack.root / "images")) return std::make_shared<SlpackPanoSource>(pack.root);
  if (!pack.manifest.generator.is_null()) {
    return std::make_shared<ProceduralPanoSource>(std::move(graph),
                                                  synthcity::city_params_from_json(pack.manifest.generator));
  }
  throw BlobMissingError("slpack " + pack.root.string() + " has neither images/ nor generator parameters");
}

}  // namespace streetlearn
