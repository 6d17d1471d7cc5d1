#include "streetlearn/engine/actions.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace streetlearn {

void ActionTuple::validate() const {
  if (!std::isfinite(rotate_yaw) || !std::isfinite(rotate_pitch) || !std::isfinite(zoom)) {
    throw std::invalid_argument("action values must be finite");
  }
  if (move_forward != 0.0 && move_forward != 1.0) throw std::invalid_argument("move_forward must be 0 or 1");
}

DiscreteActionSet::DiscreteActionSet()
    : actions_{ActionTuple{0.0, 0.0, 1.0, 0.0}, ActionTuple{-22.5, 0.0, 0.0, 0.0}, ActionTuple{-67.5, 0.0, 0.0, 0.0},
               ActionTuple{22.5, 0.0, 0.0, 0.0}, ActionTuple{67.5, 0.0, 0.0, 0.0}} {}

const ActionTuple& DiscreteActionSet::at(std::size_t index) const {
  if (index >= actions_.size()) {
    throw std::out_of_range("discrete action " + std::to_string(index) + " out of range [0, " +
                            std::to_string(actions_.size()) + ")");
  }
  return actions_[index];
}

const DiscreteActionSet& default_action_set() {
  static const DiscreteActionSet set;
  return set;
}

NodeIndex forward_neighbor(const StreetGraph& graph, NodeIndex pano, double yaw) {
  const auto nbs = graph.neighbors(pano);
  const auto bearings = graph.neighbor_bearings(pano);
  NodeIndex best = kNoNode;
  double best_diff = kMoveToleranceDeg;
  for (std::size_t k = 0; k < nbs.size(); ++k) {
    const double diff = std::abs(signed_angle_deg(bearings[k] - yaw));
    // Neighbors come in id order, so strict < keeps the smaller id on ties.
    if (diff < best_diff || (diff == best_diff && best == kNoNode)) {
      best_diff = diff;
      best = nbs[k];
    }
  }
  return best;
}

AgentPose apply_move_forward(const AgentPose& pose, const StreetGraph& graph) {
  AgentPose next = pose;
  const NodeIndex target = forward_neighbor(graph, pose.pano, pose.yaw);
  if (target != kNoNode) next.pano = target;
  return next;
}

AgentPose apply_action(const AgentPose& pose, const ActionTuple& action, const StreetGraph& graph) {
  action.validate();
  AgentPose next = pose;
  next.yaw = normalize_deg(pose.yaw + action.rotate_yaw);
  next.pitch = std::clamp(pose.pitch + action.rotate_pitch, -90.0, 90.0);
  if (action.move_forward == 1.0) next = apply_move_forward(next, graph);
  next.fov = std::clamp(pose.fov + action.zoom, kMinFovDeg, kMaxFovDeg);
  return next;
}

int discretize_yaw(double yaw_deg) {
  const int bin = static_cast<int>(std::floor(normalize_deg(yaw_deg + 11.25) / 22.5));
  return std::min(bin, kYawBins - 1);
}

int discretize_latlng(LatLng p, const LatLngBounds& bounds) {
  auto bin = [](double value, double lo, double hi) {
    if (!(hi > lo)) return 0;
    const int b = static_cast<int>(std::floor((value - lo) / (hi - lo) * kLatLngBinsPerAxis));
    return std::clamp(b, 0, kLatLngBinsPerAxis - 1);
  };
  return bin(p.lat, bounds.min_lat, bounds.max_lat) * kLatLngBinsPerAxis + bin(p.lng, bounds.min_lng, bounds.max_lng);
}

std::array<std::uint8_t, kNeighborBins> neighbors_vector(const AgentPose& pose, const StreetGraph& graph) {
  std::array<std::uint8_t, kNeighborBins> out{};
  for (double bearing : graph.neighbor_bearings(pose.pano)) {
    out[static_cast<std::size_t>(discretize_yaw(bearing - pose.yaw))] = 1;
  }
  return out;
}

}  // namespace streetlearn
