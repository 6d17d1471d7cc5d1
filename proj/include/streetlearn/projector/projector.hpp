#pragma once

#include <cstdint>
#include <vector>

#include "streetlearn/image.hpp"

namespace streetlearn {

// Square pinhole view into a panorama.
struct ViewSpec {
  double yaw = 0.0;    // degrees, 0 = North, positive clockwise
  double pitch = 0.0;  // degrees, positive up
  double fov = 60.0;   // degrees, horizontal = vertical
  int out_size = 84;   // pixels per side

  // Throws std::invalid_argument outside fov in (0, 180), pitch in [-90, 90], out_size >= 1.
  void validate() const;
};

struct Ray {
  double bearing = 0.0;    // degrees in [0, 360)
  double elevation = 0.0;  // degrees in [-90, 90]
};

// Ray through the center of output pixel (px, py); py = 0 is the top row.
// Focal length is (out_size / 2) / tan(fov / 2).
Ray pixel_ray(const ViewSpec& view, int px, int py);

// Continuous panorama coordinate: column u in [0, width), row v in [0, height],
// pixel (c, r) covering [c, c+1) x [r, r+1). Pixel centers sit at +0.5.
struct SourceCoord {
  double u = 0.0;
  double v = 0.0;
};

// Equirectangular-to-perspective projector. The per-pixel ray table depends
// only on (pitch, fov, out_size); yaw is a pure column offset on top of it.
class Projector {
 public:
  // Sample positions per output pixel in 1/2^22 px.
  static constexpr int kFracBits = 22;

  // The exact coordinate project() samples for every output pixel, row-major.
  // Rows are clamped to [0.5, height - 0.5] near the poles.
  std::vector<SourceCoord> source_coordinates(const ViewSpec& view, int pano_width, int pano_height);

  // Bilinear sampling with 1/256 weights, wrapping horizontally at the
  // +-180 seam and clamping at the poles. Throws std::invalid_argument when
  // the panorama is not 2:1.
  Image project(const Image& pano, const ViewSpec& view);
  void project_into(const Image& pano, const ViewSpec& view, Image& out);

 private:
  struct RelativeRay {
    double bearing_offset;  // signed bearing relative to the view yaw, degrees
    double elevation;
  };
  void ensure_table(const ViewSpec& view);
  void ensure_fixed_point(int pano_width, int pano_height);
  std::int64_t column_base(const ViewSpec& view, int pano_width) const;

  double table_pitch_ = 0.0;
  double table_fov_ = 0.0;
  int table_size_ = 0;
  std::vector<RelativeRay> rays_;

  int fixed_width_ = 0;
  int fixed_height_ = 0;
  std::vector<std::int64_t> fixed_x_;  // before the yaw offset
  std::vector<std::int64_t> fixed_y_;
};

// One-shot convenience wrapper.
Image project(const Image& pano, const ViewSpec& view);

}  // namespace streetlearn
