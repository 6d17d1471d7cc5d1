#include "streetlearn/projector/projector.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "streetlearn/panograph/geo.hpp"

namespace streetlearn {

void ViewSpec::validate() const {
  if (!(fov > 0.0 && fov < 180.0)) throw std::invalid_argument("fov must be in (0, 180)");
  if (!(pitch >= -90.0 && pitch <= 90.0)) throw std::invalid_argument("pitch must be in [-90, 90]");
  if (out_size < 1) throw std::invalid_argument("out_size must be positive");
}

namespace {

// Ray at yaw 0: bearing offset in (-180, 180] and elevation.
void camera_ray(double pitch_deg, double fov_deg, int size, int px, int py, double& bearing, double& elevation) {
  const double half = size / 2.0;
  const double focal = half / std::tan(deg_to_rad(fov_deg) / 2.0);
  const double x = (px + 0.5) - half;  // right
  const double y = half - (py + 0.5);  // up
  const double p = deg_to_rad(pitch_deg);
  const double north = focal * std::cos(p) - y * std::sin(p);
  const double east = x;
  const double up = focal * std::sin(p) + y * std::cos(p);
  bearing = rad_to_deg(std::atan2(east, north));
  elevation = rad_to_deg(std::atan2(up, std::hypot(north, east)));
}

}  // namespace

Ray pixel_ray(const ViewSpec& view, int px, int py) {
  double bearing = 0.0;
  double elevation = 0.0;
  camera_ray(view.pitch, view.fov, view.out_size, px, py, bearing, elevation);
  return {normalize_deg(bearing + view.yaw), elevation};
}

void Projector::ensure_table(const ViewSpec& view) {
  view.validate();
  if (!rays_.empty() && table_pitch_ == view.pitch && table_fov_ == view.fov && table_size_ == view.out_size) return;
  table_pitch_ = view.pitch;
  table_fov_ = view.fov;
  table_size_ = view.out_size;
  rays_.resize(static_cast<std::size_t>(view.out_size) * static_cast<std::size_t>(view.out_size));
  for (int py = 0; py < view.out_size; ++py) {
    for (int px = 0; px < view.out_size; ++px) {
      RelativeRay& r = rays_[static_cast<std::size_t>(py) * view.out_size + px];
      camera_ray(view.pitch, view.fov, view.out_size, px, py, r.bearing_offset, r.elevation);
    }
  }
  fixed_width_ = 0;
}

void Projector::ensure_fixed_point(int pano_width, int pano_height) {
  if (fixed_width_ == pano_width && fixed_height_ == pano_height && fixed_x_.size() == rays_.size()) return;
  fixed_width_ = pano_width;
  fixed_height_ = pano_height;
  fixed_x_.resize(rays_.size());
  fixed_y_.resize(rays_.size());
  const double one = static_cast<double>(std::int64_t{1} << kFracBits);
  const std::int64_t max_y = static_cast<std::int64_t>(pano_height - 1) << kFracBits;
  for (std::size_t i = 0; i < rays_.size(); ++i) {
    fixed_x_[i] = std::llround(rays_[i].bearing_offset / 360.0 * pano_width * one);
    const double v = (90.0 - rays_[i].elevation) / 180.0 * pano_height;
    fixed_y_[i] = std::clamp<std::int64_t>(std::llround((v - 0.5) * one), 0, max_y);
  }
}

// Sample position of the optical axis, in pixel-center space. Column 0 is the
// -180 seam, so yaw 0 looks at width / 2. Rounding the yaw term on its own
// keeps column shifts and mirroring exact.
std::int64_t Projector::column_base(const ViewSpec& view, int pano_width) const {
  const std::int64_t half = std::int64_t{1} << (kFracBits - 1);
  const double one = static_cast<double>(std::int64_t{1} << kFracBits);
  return static_cast<std::int64_t>(pano_width) * half - half +
         std::llround(signed_angle_deg(view.yaw) / 360.0 * pano_width * one);
}

std::vector<SourceCoord> Projector::source_coordinates(const ViewSpec& view, int pano_width, int pano_height) {
  ensure_table(view);
  ensure_fixed_point(pano_width, pano_height);
  const std::int64_t period = static_cast<std::int64_t>(pano_width) << kFracBits;
  const std::int64_t base = column_base(view, pano_width);
  const double one = static_cast<double>(std::int64_t{1} << kFracBits);
  std::vector<SourceCoord> out(rays_.size());
  for (std::size_t i = 0; i < rays_.size(); ++i) {
    std::int64_t x = (base + fixed_x_[i]) % period;
    if (x < 0) x += period;
    double u = static_cast<double>(x) / one + 0.5;
    if (u >= pano_width) u -= pano_width;
    out[i] = {u, static_cast<double>(fixed_y_[i]) / one + 0.5};
  }
  return out;
}

namespace {

// Fraction of a pixel as a 0..256 weight, rounding half to even so that
// f and one - f always map to complementary weights.
inline std::uint32_t weight8(std::int64_t frac) {
  constexpr int kShift = Projector::kFracBits - 8;
  constexpr std::int64_t kHalf = std::int64_t{1} << (kShift - 1);
  const std::int64_t q = frac >> kShift;
  const std::int64_t r = frac & ((std::int64_t{1} << kShift) - 1);
  return static_cast<std::uint32_t>(q + ((r > kHalf || (r == kHalf && (q & 1))) ? 1 : 0));
}

}  // namespace

Image Projector::project(const Image& pano, const ViewSpec& view) {
  Image out;
  project_into(pano, view, out);
  return out;
}

void Projector::project_into(const Image& pano, const ViewSpec& view, Image& out) {
  if (pano.width <= 0 || pano.width != 2 * pano.height ||
      pano.pixels.size() != static_cast<std::size_t>(pano.width) * pano.height * 3) {
    throw std::invalid_argument("malformed pano dimensions");
  }
  ensure_table(view);
  ensure_fixed_point(pano.width, pano.height);
  if (out.width != view.out_size || out.height != view.out_size) out = Image(view.out_size, view.out_size);

  const std::int64_t period = static_cast<std::int64_t>(pano.width) << kFracBits;
  const std::int64_t base = column_base(view, pano.width);
  const std::int64_t frac_mask = (std::int64_t{1} << kFracBits) - 1;
  const std::uint8_t* src = pano.pixels.data();
  const std::size_t stride = static_cast<std::size_t>(pano.width) * 3;
  const auto width = static_cast<std::size_t>(pano.width);
  const auto last_row = static_cast<std::size_t>(pano.height - 1);
  std::uint8_t* dst = out.pixels.data();

  for (std::size_t i = 0; i < fixed_x_.size(); ++i) {
    std::int64_t x = (base + fixed_x_[i]) % period;
    if (x < 0) x += period;
    const auto x0 = static_cast<std::size_t>(x >> kFracBits);
    const std::uint32_t fx = weight8(x & frac_mask);
    const std::size_t x1 = x0 + 1 == width ? 0 : x0 + 1;
    const std::int64_t y = fixed_y_[i];
    const auto y0 = static_cast<std::size_t>(y >> kFracBits);
    const std::uint32_t fy = weight8(y & frac_mask);
    const std::size_t y1 = std::min(y0 + 1, last_row);

    const std::uint8_t* p00 = src + y0 * stride + x0 * 3;
    const std::uint8_t* p10 = src + y0 * stride + x1 * 3;
    const std::uint8_t* p01 = src + y1 * stride + x0 * 3;
    const std::uint8_t* p11 = src + y1 * stride + x1 * 3;
    const std::uint32_t w00 = (256 - fx) * (256 - fy);
    const std::uint32_t w10 = fx * (256 - fy);
    const std::uint32_t w01 = (256 - fx) * fy;
    const std::uint32_t w11 = fx * fy;
    for (int ch = 0; ch < 3; ++ch) {
      dst[ch] = static_cast<std::uint8_t>((p00[ch] * w00 + p10[ch] * w10 + p01[ch] * w01 + p11[ch] * w11 + 32768) >> 16);
    }
    dst += 3;
  }
}

Image project(const Image& pano, const ViewSpec& view) {
  Projector projector;
  return projector.project(pano, view);
}

}  // namespace streetlearn
