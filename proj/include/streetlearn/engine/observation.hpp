#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "streetlearn/engine/actions.hpp"
#include "streetlearn/image.hpp"
#include "streetlearn/panograph/street_graph.hpp"

namespace streetlearn {

enum class Channel {
  kViewImage,
  kGraphImage,
  kPitch,
  kYaw,
  kYawLabel,
  kMetadata,
  kTargetMetadata,
  kLatlng,
  kLatlngLabel,
  kTargetLatlng,
  kTargetLatlngLabel,
  kThumbnails,
  kInstructions,
  kNeighbors,
  kGroundTruthDirection,
};

inline constexpr std::array kAllChannels = {
    Channel::kViewImage,    Channel::kGraphImage,     Channel::kPitch,        Channel::kYaw,
    Channel::kYawLabel,     Channel::kMetadata,       Channel::kTargetMetadata, Channel::kLatlng,
    Channel::kLatlngLabel,  Channel::kTargetLatlng,   Channel::kTargetLatlngLabel, Channel::kThumbnails,
    Channel::kInstructions, Channel::kNeighbors,      Channel::kGroundTruthDirection,
};

std::string_view channel_name(Channel c);
// Throws std::invalid_argument for an unknown name.
Channel parse_channel(std::string_view name);

// Set of requested channels.
class ChannelSet {
 public:
  ChannelSet() = default;
  explicit ChannelSet(const std::vector<Channel>& channels);
  static ChannelSet parse(const std::vector<std::string>& names);

  bool has(Channel c) const { return (bits_ >> static_cast<unsigned>(c)) & 1u; }
  void add(Channel c) { bits_ |= 1u << static_cast<unsigned>(c); }
  std::vector<Channel> list() const;
  std::vector<std::string> names() const;

  friend bool operator==(const ChannelSet&, const ChannelSet&) = default;

 private:
  std::uint32_t bits_ = 0;
};

// One observation; exactly the requested channels are engaged.
struct Observation {
  std::optional<Image> view_image;
  std::optional<Image> graph_image;
  std::optional<double> pitch;
  std::optional<double> yaw;
  std::optional<int> yaw_label;
  std::optional<PanoRecord> metadata;
  std::optional<PanoRecord> target_metadata;
  std::optional<LatLng> latlng;
  std::optional<int> latlng_label;
  std::optional<LatLng> target_latlng;
  std::optional<int> target_latlng_label;
  std::optional<std::vector<Image>> thumbnails;
  std::optional<std::vector<std::string>> instructions;
  std::optional<std::array<std::uint8_t, kNeighborBins>> neighbors;
  std::optional<double> ground_truth_direction;

  bool has(Channel c) const;
  ChannelSet present() const;

  friend bool operator==(const Observation&, const Observation&) = default;
};

nlohmann::json pano_to_json(const PanoRecord& r);

// Scalar and metadata channels as JSON; image channels are left out.
nlohmann::json scalar_channels_json(const Observation& obs);

struct StepResult {
  Observation observation;
  double reward = 0.0;
  bool done = false;
  nlohmann::json info = nlohmann::json::object();
};

}  // namespace streetlearn
