#include "streetlearn/engine/graph_image.hpp"

#include <algorithm>
#include <cmath>

namespace streetlearn {
namespace {

constexpr Rgb kBackground{16, 16, 20};
constexpr Rgb kEdge{150, 150, 160};
constexpr Rgb kAgent{40, 220, 60};
constexpr Rgb kTarget{235, 40, 40};

void plot(Image& img, int x, int y, Rgb c) {
  if (x < 0 || y < 0 || x >= img.width || y >= img.height) return;
  std::uint8_t* p = img.at(x, y);
  p[0] = c.r;
  p[1] = c.g;
  p[2] = c.b;
}

void line(Image& img, double x0, double y0, double x1, double y1, Rgb c) {
  const int steps = std::max(1, static_cast<int>(std::ceil(std::max(std::abs(x1 - x0), std::abs(y1 - y0)))));
  for (int i = 0; i <= steps; ++i) {
    const double t = static_cast<double>(i) / steps;
    plot(img, static_cast<int>(std::floor(x0 + t * (x1 - x0))), static_cast<int>(std::floor(y0 + t * (y1 - y0))), c);
  }
}

}  // namespace

GraphImageRenderer::GraphImageRenderer(const StreetGraph& graph, int size)
    : graph_(&graph), size_(size), origin_(graph.bounds().center()), base_(size, size) {
  const LatLngBounds& b = graph.bounds();
  const EastNorth lo = to_east_north(origin_, {b.min_lat, b.min_lng});
  const EastNorth hi = to_east_north(origin_, {b.max_lat, b.max_lng});
  const double extent = std::max({hi.east - lo.east, hi.north - lo.north, 1.0});
  const double margin = 2.0;
  meters_per_pixel_ = extent / std::max(1.0, size - 2.0 * margin);
  offset_x_ = size / 2.0;
  offset_y_ = size / 2.0;

  for (std::size_t i = 0; i < base_.pixels.size(); i += 3) {
    base_.pixels[i] = kBackground.r;
    base_.pixels[i + 1] = kBackground.g;
    base_.pixels[i + 2] = kBackground.b;
  }
  for (std::size_t i = 0; i < graph.size(); ++i) {
    const auto v = static_cast<NodeIndex>(i);
    const Pixel a = to_pixel(graph.position(v));
    for (NodeIndex w : graph.neighbors(v)) {
      if (w < v) continue;
      const Pixel b2 = to_pixel(graph.position(w));
      line(base_, a.x, a.y, b2.x, b2.y, kEdge);
    }
  }
}

GraphImageRenderer::Pixel GraphImageRenderer::to_pixel(LatLng p) const {
  const EastNorth en = to_east_north(origin_, p);
  return {offset_x_ + en.east / meters_per_pixel_, offset_y_ - en.north / meters_per_pixel_};
}

Image GraphImageRenderer::render(const AgentPose& pose, NodeIndex target) const {
  Image img = base_;
  if (target != kNoNode) {
    const Pixel t = to_pixel(graph_->position(target));
    for (int dy = -1; dy <= 1; ++dy) {
      for (int dx = -1; dx <= 1; ++dx) plot(img, static_cast<int>(t.x) + dx, static_cast<int>(t.y) + dy, kTarget);
    }
  }
  if (pose.pano != kNoNode) {
    // Filled wedge spanning the field of view.
    const Pixel a = to_pixel(graph_->position(pose.pano));
    const double radius = std::max(4.0, size_ / 12.0);
    const double half = std::min(pose.fov, 120.0) / 2.0;
    for (double off = -half; off <= half; off += 2.0) {
      const double b = deg_to_rad(pose.yaw + off);
      line(img, a.x, a.y, a.x + radius * std::sin(b), a.y - radius * std::cos(b), kAgent);
    }
  }
  return img;
}

}  // namespace streetlearn
