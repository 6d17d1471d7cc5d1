#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "streetlearn/panograph/street_graph.hpp"

namespace streetlearn {

inline constexpr double kMoveToleranceDeg = 30.0;
inline constexpr double kMinFovDeg = 30.0;
inline constexpr double kMaxFovDeg = 120.0;
inline constexpr int kYawBins = 16;
inline constexpr int kLatLngBinsPerAxis = 32;
inline constexpr int kNeighborBins = 16;

struct AgentPose {
  NodeIndex pano = kNoNode;
  double yaw = 0.0;    // [0, 360)
  double pitch = 0.0;  // [-90, 90]
  double fov = 60.0;

  friend bool operator==(const AgentPose&, const AgentPose&) = default;
};

// The four scalars of a continuous action, in wire order.
struct ActionTuple {
  double rotate_yaw = 0.0;    // degrees, positive turns right
  double rotate_pitch = 0.0;  // degrees, positive looks up
  double move_forward = 0.0;  // 0 or 1
  double zoom = 0.0;          // signed fov delta, degrees

  // Throws std::invalid_argument unless move_forward is 0 or 1 and all values are finite.
  void validate() const;

  friend bool operator==(const ActionTuple&, const ActionTuple&) = default;
};

class DiscreteActionSet {
 public:
  DiscreteActionSet();  // the default five-action set
  explicit DiscreteActionSet(std::vector<ActionTuple> actions) : actions_(std::move(actions)) {}

  std::size_t size() const { return actions_.size(); }
  // Throws std::out_of_range for an invalid index.
  const ActionTuple& at(std::size_t index) const;
  const std::vector<ActionTuple>& actions() const { return actions_; }

 private:
  std::vector<ActionTuple> actions_;
};

// Forward, turn left 22.5, turn left 67.5, turn right 22.5, turn right 67.5.
const DiscreteActionSet& default_action_set();

// Neighbor the agent would move to: the one whose bearing is closest to yaw
// within the 30 degree tolerance, ties to the smaller id; kNoNode otherwise.
NodeIndex forward_neighbor(const StreetGraph& graph, NodeIndex pano, double yaw);

AgentPose apply_move_forward(const AgentPose& pose, const StreetGraph& graph);

// Rotate, then move forward, then zoom.
AgentPose apply_action(const AgentPose& pose, const ActionTuple& action, const StreetGraph& graph);

// Bins centered on multiples of 22.5 degrees, bin 0 centered on North.
int discretize_yaw(double yaw_deg);

// Row-major lat_bin * 32 + lng_bin on a 32x32 grid over bounds; clamps.
int discretize_latlng(LatLng p, const LatLngBounds& bounds);

// Egocentric traversability: bin k is set iff a neighbor lies at a relative
// bearing in [22.5k - 11.25, 22.5k + 11.25).
std::array<std::uint8_t, kNeighborBins> neighbors_vector(const AgentPose& pose, const StreetGraph& graph);

}  // namespace streetlearn
