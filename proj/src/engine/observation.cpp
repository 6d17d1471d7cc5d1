#include "streetlearn/engine/observation.hpp"

#include <stdexcept>

namespace streetlearn {

std::string_view channel_name(Channel c) {
  switch (c) {
    case Channel::kViewImage: return "view_image";
    case Channel::kGraphImage: return "graph_image";
    case Channel::kPitch: return "pitch";
    case Channel::kYaw: return "yaw";
    case Channel::kYawLabel: return "yaw_label";
    case Channel::kMetadata: return "metadata";
    case Channel::kTargetMetadata: return "target_metadata";
    case Channel::kLatlng: return "latlng";
    case Channel::kLatlngLabel: return "latlng_label";
    case Channel::kTargetLatlng: return "target_latlng";
    case Channel::kTargetLatlngLabel: return "target_latlng_label";
    case Channel::kThumbnails: return "thumbnails";
    case Channel::kInstructions: return "instructions";
    case Channel::kNeighbors: return "neighbors";
    case Channel::kGroundTruthDirection: return "ground_truth_direction";
  }
  return "";
}

Channel parse_channel(std::string_view name) {
  for (Channel c : kAllChannels) {
    if (channel_name(c) == name) return c;
  }
  throw std::invalid_argument("unknown observation channel: " + std::string(name));
}

ChannelSet::ChannelSet(const std::vector<Channel>& channels) {
  for (Channel c : channels) add(c);
}

ChannelSet ChannelSet::parse(const std::vector<std::string>& names) {
  ChannelSet set;
  for (const auto& n : names) set.add(parse_channel(n));
  return set;
}

std::vector<Channel> ChannelSet::list() const {
  std::vector<Channel> out;
  for (Channel c : kAllChannels) {
    if (has(c)) out.push_back(c);
  }
  return out;
}

std::vector<std::string> ChannelSet::names() const {
  std::vector<std::string> out;
  for (Channel c : list()) out.emplace_back(channel_name(c));
  return out;
}

bool Observation::has(Channel c) const {
  switch (c) {
    case Channel::kViewImage: return view_image.has_value();
    case Channel::kGraphImage: return graph_image.has_value();
    case Channel::kPitch: return pitch.has_value();
    case Channel::kYaw: return yaw.has_value();
    case Channel::kYawLabel: return yaw_label.has_value();
    case Channel::kMetadata: return metadata.has_value();
    case Channel::kTargetMetadata: return target_metadata.has_value();
    case Channel::kLatlng: return latlng.has_value();
    case Channel::kLatlngLabel: return latlng_label.has_value();
    case Channel::kTargetLatlng: return target_latlng.has_value();
    case Channel::kTargetLatlngLabel: return target_latlng_label.has_value();
    case Channel::kThumbnails: return thumbnails.has_value();
    case Channel::kInstructions: return instructions.has_value();
    case Channel::kNeighbors: return neighbors.has_value();
    case Channel::kGroundTruthDirection: return ground_truth_direction.has_value();
  }
  return false;
}

ChannelSet Observation::present() const {
  ChannelSet set;
  for (Channel c : kAllChannels) {
    if (has(c)) set.add(c);
  }
  return set;
}

nlohmann::json pano_to_json(const PanoRecord& r) {
  return {{"id", r.id},       {"lat", r.lat},   {"lng", r.lng},   {"altitude", r.altitude}, {"pitch", r.pitch},
          {"roll", r.roll},   {"yaw", r.yaw},   {"date", r.date}, {"neighbors", r.neighbors}};
}

nlohmann::json scalar_channels_json(const Observation& obs) {
  nlohmann::json j = nlohmann::json::object();
  if (obs.pitch) j["pitch"] = *obs.pitch;
  if (obs.yaw) j["yaw"] = *obs.yaw;
  if (obs.yaw_label) j["yaw_label"] = *obs.yaw_label;
  if (obs.metadata) j["metadata"] = pano_to_json(*obs.metadata);
  if (obs.target_metadata) j["target_metadata"] = pano_to_json(*obs.target_metadata);
  if (obs.latlng) j["latlng"] = {obs.latlng->lat, obs.latlng->lng};
  if (obs.latlng_label) j["latlng_label"] = *obs.latlng_label;
  if (obs.target_latlng) j["target_latlng"] = {obs.target_latlng->lat, obs.target_latlng->lng};
  if (obs.target_latlng_label) j["target_latlng_label"] = *obs.target_latlng_label;
  if (obs.instructions) j["instructions"] = *obs.instructions;
  if (obs.neighbors) j["neighbors"] = std::vector<int>(obs.neighbors->begin(), obs.neighbors->end());
  if (obs.ground_truth_direction) j["ground_truth_direction"] = *obs.ground_truth_direction;
  return j;
}

}  // namespace streetlearn
