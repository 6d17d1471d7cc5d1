#pragma once

#include "streetlearn/engine/actions.hpp"
#include "streetlearn/image.hpp"
#include "streetlearn/panograph/street_graph.hpp"

namespace streetlearn {

// Top-down street map with the agent drawn as a green view cone and the
// current target as a red dot. The edge layer is rasterized once per size.
class GraphImageRenderer {
 public:
  GraphImageRenderer(const StreetGraph& graph, int size);

  int size() const { return size_; }
  Image render(const AgentPose& pose, NodeIndex target) const;

 private:
  struct Pixel {
    double x;
    double y;
  };
  Pixel to_pixel(LatLng p) const;

  const StreetGraph* graph_;
  int size_;
  LatLng origin_;
  double meters_per_pixel_ = 1.0;
  double offset_x_ = 0.0;
  double offset_y_ = 0.0;
  Image base_;
};

}  // namespace streetlearn
